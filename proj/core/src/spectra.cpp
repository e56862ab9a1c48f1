// spectra.cpp — vibronic line sums and FFT absorption spectra
#include "vibrolang/spectra.hpp"

#include "vibrolang/error.hpp"
#include "vibrolang/fourier.hpp"
#include "vibrolang/special.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace vibrolang {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double kAutoTail = 1e-8;
constexpr double kUserTail = 1e-6;

void check_inputs(const MoleculeParams& molecule, const KernelParams& kp) {
    molecule.validate();
    kp.validate();
    if (std::abs(kp.nu - molecule.nu) > 1e-12 * molecule.nu) {
        throw DomainError("kernel nu must equal the molecule's vibron frequency");
    }
}

double vibron_occupation(const KernelParams& kp, const ThermalState& th) { return occupation(kp.nu, th); }

EffectiveParams vibron_effective(const MoleculeParams& molecule, const KernelParams& kp) {
    if (molecule.lambda == 0.0) return {kp.nu, kp.markovian() ? kp.gamma_m : 0.0};
    return effective_params(kp);
}

// log of L(n) B(n, l)
double log_weight(int n, int l, double lambda, double nbar) {
    const double mu = lambda * lambda * (1.0 + 2.0 * nbar);
    double v = -mu - std::lgamma(n + 1.0);
    if (n > 0) v += 2.0 * n * std::log(lambda);
    v += std::lgamma(n + 1.0) - std::lgamma(l + 1.0) - std::lgamma(n - l + 1.0);
    v += (n - l) * std::log1p(nbar);
    if (l > 0) v += l * std::log(nbar);
    return v;
}

struct Factor {
    double position;
    double weight;
    double width;
};

// (n, l) terms of one displaced oscillator.
std::vector<Factor> oscillator_terms(double lambda, double nbar, double freq, double width_per_quantum,
                                     int n_max) {
    std::vector<Factor> out;
    if (lambda == 0.0) {
        out.push_back({0.0, 1.0, 0.0});
        return out;
    }
    for (int n = 0; n <= n_max; ++n) {
        const int lmax = nbar > 0.0 ? n : 0;
        for (int l = 0; l <= lmax; ++l) {
            const double w = std::exp(log_weight(n, l, lambda, nbar));
            out.push_back({(n - 2 * l) * freq, w, n * width_per_quantum});
        }
    }
    return out;
}

void check_grid(const std::vector<double>& grid, double gamma, double dt) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (std::abs(grid[i] - grid[i - 1]) > gamma) {
            throw ResolutionError("detuning grid spacing exceeds gamma; refine the grid");
        }
    }
    const double limit = pi / dt;
    for (double d : grid) {
        if (std::abs(d) > limit) throw ResolutionError("detuning outside the resolvable range +-pi/dt");
    }
}

} // namespace

double franck_condon(double lambda, double nbar) {
    if (lambda < 0.0 || nbar < 0.0) throw DomainError("franck_condon: lambda and nbar must be >= 0");
    return std::exp(-lambda * lambda * (1.0 + 2.0 * nbar));
}

double poisson_tail(double mu, int n_max) {
    if (mu <= 0.0) return 0.0;
    if (n_max < 0) return 1.0;
    return boost::math::gamma_p(double(n_max) + 1.0, mu);
}

int default_n_max(double mu) {
    int n = int(std::ceil(mu) + 10.0 * std::sqrt(mu) + 10.0);
    while (poisson_tail(mu, n) >= kAutoTail) ++n;
    return n;
}

cplx displacement_correlation_vibron(double tau, const MoleculeParams& molecule, const KernelParams& kp,
                                     const ThermalState& thermal) {
    check_inputs(molecule, kp);
    if (molecule.lambda == 0.0 || tau == 0.0) return {1.0, 0.0};
    const double nbar = vibron_occupation(kp, thermal);
    const cplx m = momentum_correlation(tau, kp, thermal);
    return std::exp(-2.0 * molecule.lambda * molecule.lambda * ((nbar + 0.5) - m));
}

void sample_lines(LineSpectrum& spec, const std::vector<double>& detuning, double gamma) {
    spec.detuning = detuning;
    spec.value.assign(detuning.size(), 0.0);
    spec.response.assign(detuning.size(), cplx{});
    for (std::size_t i = 0; i < detuning.size(); ++i) {
        cplx acc{};
        for (const Line& l : spec.lines) acc += l.weight / cplx(l.width, -(detuning[i] - l.position));
        spec.response[i] = acc;
        spec.value[i] = acc.real() / gamma;
    }
    spec.reference = 1.0 / (gamma * gamma);
}

LineSpectrum absorption_discrete(const std::vector<double>& detuning, const MoleculeParams& molecule,
                                 const KernelParams& kp, const ThermalState& thermal, std::optional<int> n_max) {
    check_inputs(molecule, kp);
    const double nbar = vibron_occupation(kp, thermal);
    const double lam = molecule.lambda;
    const double mu = lam * lam * (1.0 + 2.0 * nbar);
    const EffectiveParams e = vibron_effective(molecule, kp);

    int order;
    if (n_max) {
        if (*n_max < 0) throw DomainError("absorption_discrete: n_max must be >= 0");
        order = *n_max;
        const double tail = poisson_tail(mu, order);
        if (tail > kUserTail) {
            throw TruncationError("absorption_discrete: weight beyond n_max = " + std::to_string(order) +
                                      " is " + std::to_string(tail),
                                  tail);
        }
    } else {
        order = lam == 0.0 ? 0 : default_n_max(mu);
    }

    LineSpectrum spec;
    spec.n_max = order;
    spec.tail_bound = poisson_tail(mu, order);
    for (const Factor& f : oscillator_terms(lam, nbar, e.nu_prime, 0.5 * e.gamma_prime, order)) {
        spec.lines.push_back({f.position, f.weight, molecule.gamma + f.width});
    }
    sample_lines(spec, detuning, molecule.gamma);
    return spec;
}

LineSpectrum absorption_bessel(const std::vector<double>& detuning, const MoleculeParams& molecule,
                               const KernelParams& kp, const ThermalState& thermal) {
    check_inputs(molecule, kp);
    const double nbar = vibron_occupation(kp, thermal);
    const double lam = molecule.lambda;
    const double mu = lam * lam * (1.0 + 2.0 * nbar);
    const EffectiveParams e = vibron_effective(molecule, kp);
    const double nbig = std::sqrt(nbar * (nbar + 1.0));
    const double x = 2.0 * lam * lam * nbig;

    LineSpectrum spec;
    spec.validity_violated = x > 0.1;
    const int order = lam == 0.0 ? 0 : default_n_max(mu);
    spec.n_max = order;
    spec.tail_bound = poisson_tail(mu, order);
    const int lo = nbar > 0.0 ? -order : 0;
    for (int n = lo; n <= order; ++n) {
        double w;
        if (lam == 0.0) {
            w = n == 0 ? 1.0 : 0.0;
        } else if (nbar == 0.0) {
            w = std::exp(-mu + 2.0 * n * std::log(lam) - std::lgamma(n + 1.0));
        } else {
            const double is = special::bessel_i_scaled(std::abs(n), x);
            if (is <= 0.0) continue;
            w = std::exp(-mu + 0.5 * n * std::log1p(1.0 / nbar) + std::log(is) + x);
        }
        if (w == 0.0) continue;
        spec.lines.push_back({n * e.nu_prime, w, molecule.gamma + std::abs(n) * 0.5 * e.gamma_prime});
    }
    sample_lines(spec, detuning, molecule.gamma);
    return spec;
}

SampledSpectrum absorption_full(const std::vector<double>& detuning, const MoleculeParams& molecule,
                                const KernelParams& kp, const SpectralDensity& sd, const ThermalState& thermal,
                                const FullOptions& opts) {
    check_inputs(molecule, kp);
    sd.validate();
    const bool phonons = !sd.empty();
    const double wmax = phonons ? sd.omega_max : 0.0;
    double dt = opts.dt;
    if (dt == 0.0) {
        dt = 2.0 * pi / (32.0 * molecule.nu);
        if (wmax > 0.0) dt = std::min(dt, 1.0 / (8.0 * wmax));
    }
    if (!(dt > 0.0)) throw DomainError("absorption_full: dt must be > 0");
    const double horizon = opts.horizon > 0.0 ? opts.horizon : 12.0 / molecule.gamma;
    check_grid(detuning, molecule.gamma, dt);

    const std::size_t count = std::size_t(std::ceil(horizon / dt)) + 1;
    std::vector<cplx> phi(count);
    if (phonons) phi = phonon_exponent_series(dt, count, sd, thermal);

    std::vector<cplx> f(count);
    for (std::size_t n = 0; n < count; ++n) {
        const double tau = double(n) * dt;
        const cplx cb = displacement_correlation_vibron(tau, molecule, kp, thermal);
        f[n] = std::exp(-molecule.gamma * tau + phi[n]) * cb;
    }
    const auto tr = fourier::causal_transform(f, dt, opts.pad_factor);

    SampledSpectrum out;
    out.detuning = detuning;
    out.value.resize(detuning.size());
    out.response.resize(detuning.size());
    for (std::size_t i = 0; i < detuning.size(); ++i) {
        const cplx v = tr.at(detuning[i]);
        out.response[i] = v;
        out.value[i] = v.real() / molecule.gamma;
    }
    out.polaron_shift = phonons ? polaron_shift(sd) : 0.0;
    out.dt = dt;
    out.horizon = horizon;
    out.fft_size = tr.omega.size();
    if (opts.keep_trace) {
        out.tau.resize(count);
        out.correlation.resize(count);
        for (std::size_t n = 0; n < count; ++n) {
            out.tau[n] = double(n) * dt;
            out.correlation[n] = f[n] * std::exp(molecule.gamma * out.tau[n]);
        }
    }
    return out;
}

LineSpectrum absorption_multimode_discrete(const std::vector<double>& detuning, const MoleculeParams& molecule,
                                           const KernelParams& kp, const std::vector<SpectralLine>& modes,
                                           const ThermalState& thermal) {
    check_inputs(molecule, kp);
    if (modes.size() > 4) {
        throw CombinatorialLimitError("absorption_multimode_discrete: at most 4 phonon modes (got " +
                                      std::to_string(modes.size()) + ")");
    }
    SpectralDensity::from_lines(modes);  // validates

    std::vector<std::vector<Factor>> factors;
    double tail = 0.0;
    int max_order = 0;
    {
        const double nbar = vibron_occupation(kp, thermal);
        const double mu = molecule.lambda * molecule.lambda * (1.0 + 2.0 * nbar);
        const EffectiveParams e = vibron_effective(molecule, kp);
        const int order = molecule.lambda == 0.0 ? 0 : default_n_max(mu);
        factors.push_back(oscillator_terms(molecule.lambda, nbar, e.nu_prime, 0.5 * e.gamma_prime, order));
        tail += poisson_tail(mu, order);
        max_order = std::max(max_order, order);
    }
    for (const auto& m : modes) {
        const double nbar = occupation(m.omega, thermal);
        const double mu = m.lambda * m.lambda * (1.0 + 2.0 * nbar);
        const int order = m.lambda == 0.0 ? 0 : default_n_max(mu);
        factors.push_back(oscillator_terms(m.lambda, nbar, m.omega, m.gamma_ph, order));
        tail += poisson_tail(mu, order);
        max_order = std::max(max_order, order);
    }

    constexpr double prune = 1e-16;
    std::vector<Factor> acc{{0.0, 1.0, 0.0}};
    for (const auto& fl : factors) {
        std::vector<Factor> next;
        next.reserve(acc.size() * fl.size());
        for (const Factor& a : acc)
            for (const Factor& b : fl) {
                const double w = a.weight * b.weight;
                if (w < prune) continue;
                next.push_back({a.position + b.position, w, a.width + b.width});
            }
        acc = std::move(next);
    }

    LineSpectrum spec;
    spec.n_max = max_order;
    spec.tail_bound = tail;
    spec.lines.reserve(acc.size());
    for (const Factor& f : acc) spec.lines.push_back({f.position, f.weight, molecule.gamma + f.width});
    sample_lines(spec, detuning, molecule.gamma);
    return spec;
}

SampledSpectrum mirror_emission(const SampledSpectrum& absorption, double zpl) {
    SampledSpectrum out = absorption;
    const std::size_t n = absorption.detuning.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = n - 1 - i;
        out.detuning[i] = 2.0 * zpl - absorption.detuning[j];
        if (j < absorption.value.size()) out.value[i] = absorption.value[j];
        if (j < absorption.response.size()) out.response[i] = std::conj(absorption.response[j]);
    }
    return out;
}

} // namespace vibrolang
