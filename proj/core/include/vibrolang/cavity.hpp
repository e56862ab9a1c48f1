// cavity.hpp — cavity transmission, Purcell antiresonance and polariton cross-talk
#pragma once

#include "vibrolang/kernels.hpp"
#include "vibrolang/model.hpp"
#include "vibrolang/spectra.hpp"

#include <vector>

namespace vibrolang {

struct CavityParams {
    double omega_c{0.0};
    double kappa{1.0};
    double g{0.0};
    double eta_c{0.0};
    double omega_l{0.0};

    void validate() const;
};

struct PolaritonState {
    double P_U{0.0};
    double P_L{0.0};
    double omega_plus{0.0};
    double omega_minus{0.0};
    double gamma_pm{0.0};
    double kappa_plus{0.0};
    double kappa_minus{0.0};
};

/// H at detunings Δ from the (polaron-shifted) transition.
struct MolecularResponse {
    std::vector<double> detuning;
    std::vector<cplx> h;
    double polaron_shift{0.0};
    bool fft{false};
};

/// Discrete line sum without phonons; FFT of the correlation product with them.
MolecularResponse molecular_response(const std::vector<double>& detuning, const MoleculeParams& molecule,
                                     const KernelParams& kp, const ThermalState& thermal,
                                     const SpectralDensity* sd = nullptr);

struct TransmissionResult {
    std::vector<double> envelope;   // Fourier variable of the slowly varying envelope
    std::vector<double> detuning;   // probe frequency minus the shifted transition
    std::vector<cplx> t;
    std::vector<double> abs_t2;
    double polaron_shift{0.0};
    bool factorization_warning{false};
};

/// 𝒯(ω) = κ / (g² H + κ - i(ω_ℓ + ω - ω_c)) with H evaluated at ω_ℓ + ω - ω̃₀.
TransmissionResult transmission(const std::vector<double>& envelope, const CavityParams& cavity,
                                const MoleculeParams& molecule, const KernelParams& kp,
                                const ThermalState& thermal, const SpectralDensity* sd = nullptr);

double effective_rabi(double g, double f_fc, double f_dw);

/// Local maxima refined by a parabola through the three surrounding samples.
struct Peak {
    double position{0.0};
    double height{0.0};
};
std::vector<Peak> find_peaks(const std::vector<double>& x, const std::vector<double>& y);

struct Dip {
    double position{0.0};
    double minimum{0.0};
    double baseline{0.0};
    double depth{0.0};   // 1 - minimum/baseline
    double hwhm{0.0};
};
/// Dip closest to `center`; the baseline is the mean level at ±window from the minimum.
Dip measure_dip(const std::vector<double>& x, const std::vector<double>& y, double center, double window);

std::pair<double, double> polariton_frequencies(double omega0, double g, double lambda, double nu);

struct PolaritonRates {
    double kappa_plus{0.0};
    double kappa_minus{0.0};
    bool weak_coupling_violated{false};
};

/// Near-resonant single-term rates.
PolaritonRates polariton_rates_main(const MoleculeParams& molecule, const KernelParams& kp,
                                    const ThermalState& thermal, double omega_plus, double omega_minus, double g);
/// Two-term rates (default).
PolaritonRates polariton_rates(const MoleculeParams& molecule, const KernelParams& kp, const ThermalState& thermal,
                               double omega_plus, double omega_minus, double g);

struct PopulationTrace {
    std::vector<double> t;
    std::vector<double> P_U;
    std::vector<double> P_L;
};

PopulationTrace polariton_populations(const std::vector<double>& t, double pu0, double pl0, double gamma_plus,
                                      double gamma_minus, double kappa_plus, double kappa_minus);

} // namespace vibrolang
