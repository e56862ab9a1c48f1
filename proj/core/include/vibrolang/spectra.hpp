// spectra.hpp — vibronic and phononic absorption spectra, Franck-Condon and Debye-Waller factors
#pragma once

#include "vibrolang/kernels.hpp"
#include "vibrolang/model.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace vibrolang {

struct Line {
    double position{0.0};  // detuning of the line centre
    double weight{0.0};
    double width{1.0};     // half-width
};

/// Sum of Lorentzian lines sampled on a detuning grid.
/// value = 𝒫_e/η²; response = Σ w/(width - i(Δ - position)).
struct LineSpectrum {
    std::vector<Line> lines;
    std::vector<double> detuning;
    std::vector<double> value;
    std::vector<cplx> response;
    double reference{1.0};   // 𝒫_0/η² = 1/γ²
    int n_max{0};
    double tail_bound{0.0};
    bool validity_violated{false};
};

/// FFT-evaluated spectrum with the correlation trace it was built from.
struct SampledSpectrum {
    std::vector<double> detuning;
    std::vector<double> value;
    std::vector<cplx> response;
    double polaron_shift{0.0};
    double dt{0.0};
    double horizon{0.0};
    std::size_t fft_size{0};
    std::vector<double> tau;
    std::vector<cplx> correlation;
};

using PhononWingResult = SampledSpectrum;

struct FullOptions {
    double dt{0.0};        // 0: min(2π/(32ν), 1/(8ω_max))
    double horizon{0.0};   // 0: 12/γ
    std::size_t pad_factor{16};
    bool keep_trace{false};
};

double franck_condon(double lambda, double nbar);

/// Probability mass of a Poisson(mu) variable above n_max.
double poisson_tail(double mu, int n_max);
/// Smallest order meeting the default rule with tail below 1e-8.
int default_n_max(double mu);

cplx displacement_correlation_vibron(double tau, const MoleculeParams& molecule, const KernelParams& kp,
                                     const ThermalState& thermal);

/// Double sum over n, l. n_max empty selects it automatically.
LineSpectrum absorption_discrete(const std::vector<double>& detuning, const MoleculeParams& molecule,
                                 const KernelParams& kp, const ThermalState& thermal,
                                 std::optional<int> n_max = std::nullopt);

/// Single sum with modified Bessel weights; validity_violated when 2λ²√(n̄(n̄+1)) > 0.1.
LineSpectrum absorption_bessel(const std::vector<double>& detuning, const MoleculeParams& molecule,
                               const KernelParams& kp, const ThermalState& thermal);

/// Evaluate a line list on a grid (value normalised by γ).
void sample_lines(LineSpectrum& spec, const std::vector<double>& detuning, double gamma);

double spectral_density(double omega, const SpectralDensity& sd);
double polaron_shift(const SpectralDensity& sd);

/// φ(τ) = ∫ J/ω² [coth(βω/2)(cos ωτ - 1) - i sin ωτ] dω (lines: with e^{-γ_ph|τ|}).
cplx phonon_exponent(double tau, const SpectralDensity& sd, const ThermalState& thermal);
cplx phonon_correlation(double tau, const SpectralDensity& sd, const ThermalState& thermal);

/// φ(n·dt), n = 0..count-1, from one fixed quadrature node set.
std::vector<cplx> phonon_exponent_series(double dt, std::size_t count, const SpectralDensity& sd,
                                         const ThermalState& thermal);

double debye_waller(const SpectralDensity& sd, const ThermalState& thermal);

/// ∫ J/ω coth(βω/2) sin(ωt) dω.
double dephasing_rate(double t, const SpectralDensity& sd, const ThermalState& thermal);
/// (1/t) ∫ J/ω² coth(βω/2)(1 - cos ωt) dω, the rate accumulated up to t.
double mean_dephasing_rate(double t, const SpectralDensity& sd, const ThermalState& thermal);

/// Detuning measured from the polaron-shifted transition ω̃₀.
SampledSpectrum absorption_full(const std::vector<double>& detuning, const MoleculeParams& molecule,
                                const KernelParams& kp, const SpectralDensity& sd, const ThermalState& thermal,
                                const FullOptions& opts = {});

/// Vibron double sum times a product over at most four discrete phonon lines.
LineSpectrum absorption_multimode_discrete(const std::vector<double>& detuning, const MoleculeParams& molecule,
                                           const KernelParams& kp, const std::vector<SpectralLine>& modes,
                                           const ThermalState& thermal);

SampledSpectrum mirror_emission(const SampledSpectrum& absorption, double zpl);

} // namespace vibrolang
