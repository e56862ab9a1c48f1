// model.cpp — chain dispersion, couplings and occupation numbers
#include "vibrolang/model.hpp"

#include "vibrolang/error.hpp"

#include <cmath>
#include <numbers>

namespace vibrolang {
namespace {

constexpr double pi = std::numbers::pi;

void require(bool ok, const char* msg) {
    if (!ok) throw DomainError(msg);
}

// cos(πk/2) evaluated exactly.
double parity_cos(int k) {
    if (k % 2 != 0) return 0.0;
    return (k % 4 == 0) ? 1.0 : -1.0;
}

// cos(πks/(2N+2)) with exact zeros where ks/(N+1) is an odd integer.
double site_cos(int k, int s, int n) {
    const long num = long(k) * long(s);
    const long den = 2L * (n + 1);
    const long r = num % (2 * den);
    if (r * 2 == den || r * 2 == 3 * den) return 0.0;
    return std::cos(pi * double(r) / double(den));
}

} // namespace

void MoleculeParams::validate() const {
    require(gamma > 0.0, "MoleculeParams: gamma must be > 0");
    require(nu > 0.0, "MoleculeParams: nu must be > 0");
    require(lambda >= 0.0, "MoleculeParams: lambda must be >= 0");
    require(eta_l >= 0.0, "MoleculeParams: eta_l must be >= 0");
    require(std::isfinite(omega0), "MoleculeParams: omega0 must be finite");
}

double DiscreteBath::omega_max() const { return 2.0 * std::sqrt(k0 / m0); }

void DiscreteBath::validate() const {
    require(n >= 1, "DiscreteBath: N must be >= 1");
    require(k0 > 0.0, "DiscreteBath: k0 must be > 0");
    require(m0 > 0.0, "DiscreteBath: m0 must be > 0");
    require(mu > 0.0, "DiscreteBath: mu must be > 0");
    require(dk >= 0.0, "DiscreteBath: dk must be >= 0");
    require(ktot >= 0.0, "DiscreteBath: ktot must be >= 0");
    require(std::isfinite(dx), "DiscreteBath: dx must be finite");
    require(qfactor > 0.0, "DiscreteBath: qfactor must be > 0 or infinite");
}

DiscreteBath DiscreteBath::from_targets(int n, double omega_max, double gamma_m, double qfactor) {
    require(omega_max > 0.0, "from_targets: omega_max must be > 0");
    require(gamma_m >= 0.0, "from_targets: gamma_m must be >= 0");
    DiscreteBath b;
    b.n = n;
    b.m0 = 1.0;
    b.mu = 1.0;
    b.k0 = 0.25 * omega_max * omega_max;
    b.dk = b.k0 * std::sqrt(4.0 * gamma_m / omega_max);
    b.qfactor = qfactor;
    b.validate();
    return b;
}

void ContinuumBath::validate() const {
    require(omega_max > 0.0, "ContinuumBath: omega_max must be > 0");
    require(gamma_m >= 0.0, "ContinuumBath: gamma_m must be >= 0");
}

ThermalState ThermalState::from_occupation(double nbar, double omega) {
    require(nbar >= 0.0, "from_occupation: nbar must be >= 0");
    require(omega > 0.0, "from_occupation: omega must be > 0");
    if (nbar == 0.0) return {0.0};
    return {omega / std::log1p(1.0 / nbar)};
}

SpectralDensity SpectralDensity::one_d(double coupling, double omega_max) {
    SpectralDensity sd;
    sd.kind = DensityKind::OneD;
    sd.coupling = coupling;
    sd.omega_max = omega_max;
    sd.omega_min = omega_max / kDefaultRangeRatio;
    sd.validate();
    return sd;
}

SpectralDensity SpectralDensity::three_d(double coupling, double omega_max) {
    SpectralDensity sd;
    sd.kind = DensityKind::ThreeD;
    sd.coupling = coupling;
    sd.omega_max = omega_max;
    sd.validate();
    return sd;
}

SpectralDensity SpectralDensity::from_lines(std::vector<SpectralLine> lines) {
    SpectralDensity sd;
    sd.kind = DensityKind::Lines;
    sd.lines = std::move(lines);
    sd.omega_max = 0.0;
    for (const auto& l : sd.lines) sd.omega_max = std::max(sd.omega_max, l.omega);
    sd.validate();
    return sd;
}

void SpectralDensity::validate() const {
    if (kind == DensityKind::Lines) {
        for (const auto& l : lines) {
            require(l.omega > 0.0, "SpectralDensity: line frequency must be > 0");
            require(l.lambda >= 0.0, "SpectralDensity: line coupling must be >= 0");
            require(l.gamma_ph >= 0.0, "SpectralDensity: line damping must be >= 0");
        }
        return;
    }
    require(coupling >= 0.0, "SpectralDensity: coupling must be >= 0");
    require(omega_max > 0.0, "SpectralDensity: omega_max must be > 0");
    require(omega_min >= 0.0 && omega_min < omega_max, "SpectralDensity: need 0 <= omega_min < omega_max");
}

bool SpectralDensity::empty() const {
    if (kind == DensityKind::Lines) {
        for (const auto& l : lines)
            if (l.lambda > 0.0) return false;
        return true;
    }
    return coupling == 0.0;
}

double occupation(double omega, const ThermalState& thermal) {
    if (!(omega > 0.0)) throw DomainError("occupation: omega must be > 0");
    if (!(thermal.temperature > 0.0)) return 0.0;
    return 1.0 / std::expm1(omega / thermal.temperature);
}

std::vector<double> chain_eigenmodes(const PhononBathSpec& spec) {
    const auto* d = std::get_if<DiscreteBath>(&spec.mode);
    if (!d) throw DomainError("chain_eigenmodes: requires the Discrete bath variant");
    return chain_eigenmodes(*d);
}

std::vector<double> chain_eigenmodes(const DiscreteBath& bath) {
    bath.validate();
    const int count = 2 * bath.n + 1;
    const double wmax = bath.omega_max();
    std::vector<double> w(count);
    for (int k = 1; k <= count; ++k) w[k - 1] = wmax * std::sin(pi * k / (2.0 * (2 * bath.n + 2)));
    return w;
}

std::vector<double> vibron_phonon_couplings(const DiscreteBath& bath, double nu,
                                            const std::vector<double>& frequencies, int offset) {
    bath.validate();
    require(nu > 0.0, "vibron_phonon_couplings: nu must be > 0");
    const int s = bath.n + 1 + offset;
    require(s >= 2 && s <= 2 * bath.n, "vibron_phonon_couplings: molecule must sit inside the chain");
    const double xzpm = std::sqrt(1.0 / (2.0 * bath.mu * nu));
    const double norm = 2.0 * bath.dk * std::sqrt(1.0 / (bath.n + 1.0)) * xzpm;
    std::vector<double> a(frequencies.size());
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        const int k = int(i) + 1;
        const double c = offset == 0 ? parity_cos(k) : site_cos(k, s, bath.n);
        const double uzpm = std::sqrt(1.0 / (2.0 * bath.m0 * frequencies[i]));
        a[i] = norm * c * std::sin(pi * k / (2.0 * bath.n + 2.0)) * uzpm;
    }
    return a;
}

std::vector<double> electron_phonon_couplings(const DiscreteBath& bath, const std::vector<double>& frequencies) {
    bath.validate();
    const double norm = 2.0 * bath.ktot * std::sqrt(1.0 / (bath.n + 1.0)) * bath.dx;
    std::vector<double> l(frequencies.size());
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        const int k = int(i) + 1;
        const double w = frequencies[i];
        const double uzpm = std::sqrt(1.0 / (2.0 * bath.m0 * w));
        l[i] = norm / w * parity_cos(k) * std::sin(pi * k / (2.0 * bath.n + 2.0)) * uzpm;
    }
    return l;
}

ChainModes chain_modes(const DiscreteBath& bath, double nu) {
    ChainModes m;
    m.frequencies = chain_eigenmodes(bath);
    m.alpha = vibron_phonon_couplings(bath, nu, m.frequencies);
    m.lambda_k = electron_phonon_couplings(bath, m.frequencies);
    return m;
}

MarkovParams derived_markov_params(const DiscreteBath& bath, double nu) {
    bath.validate();
    require(nu > 0.0, "derived_markov_params: nu must be > 0");
    const double wmax = bath.omega_max();
    const double kM = bath.mu * nu * nu;
    MarkovParams p;
    p.nu_s = nu * bath.dk * bath.dk / (2.0 * bath.k0 * kM);
    p.gamma_m = 2.0 * nu * p.nu_s / wmax;
    p.gamma_m_equal_mass = bath.dk * bath.dk * wmax / (4.0 * bath.k0 * bath.k0);
    return p;
}

ContinuumBath continuum_reduction(const DiscreteBath& bath, double nu) {
    return {bath.omega_max(), derived_markov_params(bath, nu).gamma_m};
}

double electron_phonon_coupling_1d(const DiscreteBath& bath) {
    bath.validate();
    const double w = bath.omega_max();
    return 16.0 * bath.ktot * bath.ktot * bath.dx * bath.dx / (pi * bath.m0 * w * w * w);
}

double vibronic_coupling_from_displacement(double mu, double nu, double dx) {
    require(mu > 0.0 && nu > 0.0, "vibronic_coupling_from_displacement: mu, nu must be > 0");
    return mu * nu * std::sqrt(1.0 / (2.0 * mu * nu)) * dx;
}

} // namespace vibrolang
