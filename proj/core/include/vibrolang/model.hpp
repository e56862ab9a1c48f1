// model.hpp — physical parameter types, 1D host chain modes and thermal occupation
#pragma once

#include <limits>
#include <variant>
#include <vector>

namespace vibrolang {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// k_B/ħ in rad/ps per kelvin, for presets expressed in THz (angular) units.
inline constexpr double kKelvinToRadPerPs = 0.13092034;

struct MoleculeParams {
    double omega0{0.0};  // electronic transition frequency
    double gamma{1.0};   // radiative half-linewidth
    double nu{1.0};      // vibron frequency
    double lambda{0.0};  // sqrt of the Huang-Rhys factor
    double eta_l{0.0};   // laser drive amplitude

    void validate() const;
    bool weak_drive_violated() const { return eta_l >= gamma; }
};

/// Microscopic 1D chain with the molecule at site N+1 (2N+1 host atoms).
struct DiscreteBath {
    int n{500};
    double k0{1.0};
    double m0{1.0};
    double dk{0.0};      // coupling asymmetry Δk
    double ktot{0.0};    // summed neighbour spring constant
    double dx{0.0};      // excited-state displacement of the neighbours
    double mu{1.0};      // reduced molecular mass
    double qfactor{kInf};

    double omega_max() const;
    void validate() const;

    /// Chain with m0 = μ = 1 whose continuum limit has the requested (ω_max, Γ_m).
    static DiscreteBath from_targets(int n, double omega_max, double gamma_m, double qfactor = kInf);
};

struct ContinuumBath {
    double omega_max{1.0};
    double gamma_m{0.0};

    void validate() const;
};

struct PhononBathSpec {
    std::variant<DiscreteBath, ContinuumBath> mode{ContinuumBath{}};
    double temperature{0.0};
};

struct ChainModes {
    std::vector<double> frequencies;
    std::vector<double> alpha;
    std::vector<double> lambda_k;
};

struct ThermalState {
    double temperature{0.0};

    double beta() const { return temperature > 0.0 ? 1.0 / temperature : kInf; }
    /// Temperature at which a mode of frequency omega holds nbar quanta.
    static ThermalState from_occupation(double nbar, double omega);
};

enum class DensityKind { OneD, ThreeD, Lines };

struct SpectralLine {
    double omega{1.0};
    double lambda{0.0};
    double gamma_ph{0.0};
};

/// Electron-phonon spectral density J(ω). Lines holds discrete modes and is
/// used by the multimode oracle and single-mode checks.
struct SpectralDensity {
    DensityKind kind{DensityKind::ThreeD};
    double coupling{0.0};
    double omega_max{1.0};
    double omega_min{0.0};
    std::vector<SpectralLine> lines;

    static constexpr double kDefaultRangeRatio = 1e4;

    static SpectralDensity one_d(double coupling, double omega_max);
    static SpectralDensity three_d(double coupling, double omega_max);
    static SpectralDensity from_lines(std::vector<SpectralLine> lines);

    void validate() const;
    bool divergent() const { return kind == DensityKind::OneD && omega_min <= 0.0; }
    bool empty() const;
};

struct MarkovParams {
    double nu_s{0.0};
    double gamma_m{0.0};
    double gamma_m_equal_mass{0.0};
};

double occupation(double omega, const ThermalState& thermal);

std::vector<double> chain_eigenmodes(const PhononBathSpec& spec);
std::vector<double> chain_eigenmodes(const DiscreteBath& bath);

/// α_k for a molecule at site N+1+offset (offset = 0 for a single molecule).
std::vector<double> vibron_phonon_couplings(const DiscreteBath& bath, double nu,
                                            const std::vector<double>& frequencies, int offset = 0);
std::vector<double> electron_phonon_couplings(const DiscreteBath& bath, const std::vector<double>& frequencies);

ChainModes chain_modes(const DiscreteBath& bath, double nu);

MarkovParams derived_markov_params(const DiscreteBath& bath, double nu);
ContinuumBath continuum_reduction(const DiscreteBath& bath, double nu);

/// Coupling of the 1D spectral density that matches Σ λ_k² ω_k² of the chain.
double electron_phonon_coupling_1d(const DiscreteBath& bath);

/// Microscopic λ = μ ν Q_zpm Δx with Q_zpm = sqrt(1/(2μν)).
double vibronic_coupling_from_displacement(double mu, double nu, double dx);

} // namespace vibrolang
