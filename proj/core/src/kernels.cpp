// kernels.cpp — Brownian-motion kernels and two-time correlations
#include "vibrolang/kernels.hpp"

#include "vibrolang/error.hpp"
#include "vibrolang/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vibrolang {
namespace {

constexpr double pi = std::numbers::pi;

// Noise weight (coth(βω/2) + 1)·ω = 2ω/(1 - e^{-βω}) without the 1/ν prefactor.
double noise_weight(double omega, const ThermalState& th) {
    if (!(th.temperature > 0.0)) return omega > 0.0 ? 2.0 * omega : 0.0;
    const double x = omega / th.temperature;
    if (std::abs(x) < 1e-8) return 2.0 * th.temperature + omega;
    return -2.0 * omega / std::expm1(-x);
}

} // namespace

void KernelParams::validate() const {
    if (!(gamma_m >= 0.0)) throw DomainError("KernelParams: gamma_m must be >= 0");
    if (!(omega_max > 0.0)) throw DomainError("KernelParams: omega_max must be > 0");
    if (!(nu > 0.0)) throw DomainError("KernelParams: nu must be > 0");
    if (nu_tilde && !(*nu_tilde > 0.0)) throw DomainError("KernelParams: nu_tilde must be > 0");
}

KernelParams KernelParams::from_bath(const ContinuumBath& bath, double nu) {
    bath.validate();
    KernelParams kp;
    kp.gamma_m = bath.gamma_m;
    kp.omega_max = bath.omega_max;
    kp.nu = nu;
    kp.validate();
    return kp;
}

double gamma_time(double t, const KernelParams& kp) {
    if (kp.markovian()) throw UnsupportedError("gamma_time: Markovian kernel is a delta function");
    if (t < 0.0) return 0.0;
    return kp.gamma_m * kp.omega_max * special::bessel_j1_over_x(kp.omega_max * t);
}

ComplexKernel gamma_freq(double omega, const KernelParams& kp) {
    if (kp.markovian()) return {kp.gamma_m, 0.0};
    const double w = kp.omega_max;
    const double a = std::abs(omega);
    if (a <= w) return {kp.gamma_m * std::sqrt((w - a) * (w + a)) / w, kp.gamma_m * omega / w};
    const double root = std::sqrt((a - w) * (a + w));
    const double branch = omega > 0.0 ? omega - root : omega + root;
    return {0.0, kp.gamma_m * branch / w};
}

double collective_gamma_time(double t, int j, const KernelParams& kp) {
    if (j < 1) throw DomainError("collective_gamma_time: j must be >= 1");
    if (kp.markovian()) throw UnsupportedError("collective_gamma_time: requires finite omega_max");
    if (t <= 0.0) return 0.0;
    const double x = kp.omega_max * t;
    return kp.gamma_m * kp.omega_max * 4.0 * j * special::bessel_j(4 * j, x) / x;
}

cplx collective_gamma_freq(double omega, int j, const KernelParams& kp) {
    if (j < 1) throw DomainError("collective_gamma_freq: j must be >= 1");
    if (kp.markovian()) return {kp.gamma_m, 0.0};
    const double x = omega / kp.omega_max;
    if (std::abs(x) > 1.0) throw UnsupportedError("collective_gamma_freq: defined only inside the band");
    const double re = special::chebyshev_t(4 * j, x);
    const double im = -std::sqrt(1.0 - x * x) * special::chebyshev_u(4 * j - 1, x);
    return kp.gamma_m * cplx(re, im);
}

cplx susceptibility(double omega, const KernelParams& kp) {
    const double v = kp.response_frequency();
    const cplx g = gamma_freq(omega, kp).value();
    const cplx den = v * v - omega * omega - cplx(0.0, 1.0) * g * omega;
    return cplx(0.0, -omega) / den;
}

double thermal_spectrum(double omega, const KernelParams& kp, const ThermalState& thermal) {
    const double gr = gamma_freq(omega, kp).real;
    if (gr == 0.0) return 0.0;
    return gr * noise_weight(omega, thermal) / kp.nu;
}

EffectiveParams effective_params(const KernelParams& kp) {
    kp.validate();
    if (kp.markovian()) return {kp.nu, kp.gamma_m};
    if (kp.omega_max <= kp.nu) {
        throw RegimeError("effective_params: pole approximation needs omega_max > nu");
    }
    const double gi = gamma_freq(kp.nu, kp).imag;
    EffectiveParams e;
    e.nu_prime = std::sqrt(kp.nu * kp.nu + gi * kp.nu);
    e.gamma_prime = gamma_freq(e.nu_prime, kp).real;
    return e;
}

cplx momentum_correlation(double tau, const KernelParams& kp, const ThermalState& thermal) {
    const EffectiveParams e = effective_params(kp);
    const double nbar = occupation(kp.nu, thermal);
    const double damp = std::exp(-0.5 * e.gamma_prime * std::abs(tau));
    return cplx((nbar + 0.5) * std::cos(e.nu_prime * tau), -0.5 * std::sin(e.nu_prime * tau)) * damp;
}

cplx momentum_correlation_numeric(double tau, const KernelParams& kp, const ThermalState& thermal,
                                  const quad::Tolerance& tol) {
    kp.validate();
    const double nu = kp.nu;
    const double v = kp.response_frequency();
    const bool markov = kp.markovian();

    auto density = [&](double w) {
        if (markov) {
            // white noise: 2Γ(n̄+1) above zero, 2Γn̄ below
            const double den2 = std::pow(v * v - w * w, 2) + std::pow(kp.gamma_m * w, 2);
            return kp.gamma_m * std::abs(w) * noise_weight(w, thermal) / den2 / (2.0 * pi);
        }
        const double sth = thermal_spectrum(w, kp, thermal);
        if (sth == 0.0) return 0.0;
        return std::norm(susceptibility(w, kp)) * sth / (2.0 * pi);
    };

    // breakpoints around the resonance
    double peak = nu, width = std::max(kp.gamma_m, 1e-12 * nu);
    double pole = nu;
    if (!markov) {
        if (kp.omega_max > nu) {
            const EffectiveParams e = effective_params(kp);
            peak = e.nu_prime;
            width = std::max(e.gamma_prime, 1e-12 * nu);
        }
        const double ratio = kp.gamma_m / kp.omega_max;
        if (ratio < 1.0) pole = v / std::sqrt(1.0 - ratio);
    }

    double lo, hi;
    if (markov) {
        hi = std::max(v, nu) + std::max(20.0 * nu, 1e4 * kp.gamma_m);
        lo = thermal.temperature > 0.0 ? -hi : 0.0;
    } else {
        hi = kp.omega_max;
        lo = thermal.temperature > 0.0 ? -hi : 0.0;
    }

    std::vector<double> pts{lo, hi, 0.0};
    for (double c : {peak, pole, v}) {
        for (double m : {0.0, -5.0, 5.0, -20.0, 20.0, -100.0, 100.0}) {
            const double p = c + m * width;
            for (double s : {1.0, -1.0}) {
                const double q = s * p;
                if (q > lo && q < hi) pts.push_back(q);
            }
        }
    }
    if (!markov) {
        // square-root edges of the band
        for (int k = 1; k <= 40; ++k) {
            const double e = hi * (1.0 - std::ldexp(1.0, -k));
            pts.push_back(e);
            if (lo < 0.0) pts.push_back(-e);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    // refine panels so each holds at most one oscillation of e^{-iωτ}
    std::vector<double> fine;
    const double max_len = tau != 0.0 ? 2.0 * pi / std::abs(tau) : kInf;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double len = pts[i + 1] - pts[i];
        const int pieces = std::isfinite(max_len) ? std::max(1, int(std::ceil(len / max_len))) : 1;
        for (int p = 0; p < pieces; ++p) fine.push_back(pts[i] + len * p / pieces);
    }
    fine.push_back(pts.back());

    const double re =
        quad::integrate_panels([&](double w) { return density(w) * std::cos(w * tau); }, fine, tol).value;
    const double im =
        quad::integrate_panels([&](double w) { return -density(w) * std::sin(w * tau); }, fine, tol).value;
    cplx result(re, im);

    if (markov) {
        // tails beyond ±hi behave as A/ω²
        const double a_hi = density(hi) * hi * hi;
        const double a_lo = thermal.temperature > 0.0 ? density(lo) * lo * lo : 0.0;
        auto tail = [&](double a, double edge) -> cplx {
            if (a == 0.0) return {};
            const double w = std::abs(edge);
            if (tau == 0.0) return a / w;
            // two integration-by-parts terms of ∫_W^∞ (a/ω²) e^{∓iωτ} dω
            const double s = edge > 0.0 ? 1.0 : -1.0;
            const double t = s * tau;
            const cplx ph = std::exp(cplx(0.0, -w * t));
            const double f = a / (w * w);
            const double fp = -2.0 * a / (w * w * w);
            if (std::abs(t) * w >= 20.0) return ph * (cplx(0.0, -f / t) - fp / (t * t));
            const quad::Tolerance loose{1e-8, 1e-12, 18};
            const double r = quad::integrate([&](double x) { return a / (x * x) * std::cos(x * t); }, w, kInf, loose).value;
            const double i = quad::integrate([&](double x) { return -a / (x * x) * std::sin(x * t); }, w, kInf, loose).value;
            return {r, i};
        };
        result += tail(a_hi, hi);
        if (a_lo != 0.0) result += tail(a_lo, lo);
    }
    return result;
}

double discrete_gamma_time(double t, const std::vector<double>& frequencies,
                           const std::vector<double>& alpha, double nu) {
    return discrete_cross_gamma_time(t, frequencies, alpha, alpha, nu);
}

double discrete_cross_gamma_time(double t, const std::vector<double>& frequencies,
                                 const std::vector<double>& alpha1, const std::vector<double>& alpha2,
                                 double nu) {
    if (frequencies.size() != alpha1.size() || frequencies.size() != alpha2.size()) {
        throw DomainError("discrete_gamma_time: length mismatch");
    }
    if (t < 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t k = 0; k < frequencies.size(); ++k) {
        if (alpha1[k] == 0.0 || alpha2[k] == 0.0) continue;
        s += alpha1[k] * alpha2[k] * nu / frequencies[k] * std::cos(frequencies[k] * t);
    }
    return s;
}

fourier::CausalTransform kernel_fft(const KernelParams& kp, int j, double dt, double horizon) {
    if (!(dt > 0.0) || !(horizon > dt)) throw DomainError("kernel_fft: need 0 < dt < horizon");
    const std::size_t n = std::size_t(std::ceil(horizon / dt)) + 1;
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = double(i) * dt;
        s[i] = j == 0 ? gamma_time(t, kp) : collective_gamma_time(t, j, kp);
    }
    return fourier::causal_transform(s, dt);
}

} // namespace vibrolang
