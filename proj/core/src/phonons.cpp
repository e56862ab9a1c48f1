// phonons.cpp — spectral densities, phonon displacement correlations, Debye-Waller factor, dephasing
#include "vibrolang/error.hpp"
#include "vibrolang/quadrature.hpp"
#include "vibrolang/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace vibrolang {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double half_pi = 0.5 * std::numbers::pi;

const quad::Tolerance kTol{1e-10, 1e-15, 20};

double coth_half(double omega, const ThermalState& th) {
    if (!(th.temperature > 0.0)) return 1.0;
    return 1.0 + 2.0 * occupation(omega, th);
}

// (1 - cos x), accurate for small x.
double one_minus_cos(double x) {
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s;
}

double theta_low(const SpectralDensity& sd) {
    return sd.kind == DensityKind::OneD ? std::asin(std::min(1.0, sd.omega_min / sd.omega_max)) : 0.0;
}

// J(ω)/ω² dω/dθ with ω = ω_max sin θ.
double weight(double theta, const SpectralDensity& sd) {
    const double s = std::sin(theta), c = std::cos(theta);
    if (sd.kind == DensityKind::ThreeD) return sd.coupling * sd.omega_max * sd.omega_max * s * c * c;
    return sd.coupling * c * c / s;
}

// Panel boundaries in θ: geometric near a positive lower limit, a few uniform
// panels, and uniform-in-ω cuts spaced by one period of e^{iωτ}.
std::vector<double> theta_points(const SpectralDensity& sd, double tau) {
    const double lo = theta_low(sd);
    std::vector<double> pts{lo, half_pi};
    double start = lo;
    if (lo > 0.0) {
        double x = lo;
        while (2.0 * x < 0.2) {
            x *= 2.0;
            pts.push_back(x);
        }
        start = x;
    }
    for (int i = 1; i < 8; ++i) pts.push_back(start + (half_pi - start) * i / 8.0);
    const double period = tau != 0.0 ? 2.0 * pi / std::abs(tau) : kInf;
    if (std::isfinite(period)) {
        const double wlo = sd.omega_max * std::sin(lo);
        const int cuts = int(std::ceil((sd.omega_max - wlo) / period));
        for (int i = 1; i < cuts; ++i) pts.push_back(std::asin((wlo + i * period) / sd.omega_max));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

void check_convergent(const SpectralDensity& sd, const ThermalState& th, const char* where) {
    if (sd.divergent() && th.temperature > 0.0) {
        throw DivergenceError(std::string(where) +
                              ": 1D spectral density with omega_min = 0 diverges at T > 0 (set omega_min > 0)");
    }
}

double integrate_theta(const std::function<double(double)>& f, const SpectralDensity& sd, double tau) {
    return quad::integrate_panels(f, theta_points(sd, tau), kTol).value;
}

} // namespace

double spectral_density(double omega, const SpectralDensity& sd) {
    sd.validate();
    if (sd.kind == DensityKind::Lines) return 0.0;
    if (!(omega > 0.0) || omega >= sd.omega_max) return 0.0;
    const double edge = std::sqrt(sd.omega_max * sd.omega_max - omega * omega) / sd.omega_max;
    if (sd.kind == DensityKind::ThreeD) return sd.coupling * omega * omega * omega * edge;
    if (omega < sd.omega_min) return 0.0;
    return sd.coupling * omega * edge;
}

double polaron_shift(const SpectralDensity& sd) {
    sd.validate();
    if (sd.kind == DensityKind::Lines) {
        double s = 0.0;
        for (const auto& l : sd.lines) s += l.lambda * l.lambda * l.omega;
        return s;
    }
    if (sd.coupling == 0.0) return 0.0;
    return integrate_theta([&](double th) { return weight(th, sd) * sd.omega_max * std::sin(th); }, sd, 0.0);
}

cplx phonon_exponent(double tau, const SpectralDensity& sd, const ThermalState& thermal) {
    sd.validate();
    if (sd.kind == DensityKind::Lines) {
        cplx s{};
        for (const auto& l : sd.lines) {
            const double c = coth_half(l.omega, thermal);
            const double damp = std::exp(-l.gamma_ph * std::abs(tau));
            const cplx osc(c * std::cos(l.omega * tau), -std::sin(l.omega * tau));
            s += l.lambda * l.lambda * (osc * damp - c);
        }
        return s;
    }
    check_convergent(sd, thermal, "phonon_correlation");
    if (sd.coupling == 0.0 || tau == 0.0) return {};
    const double re = integrate_theta(
        [&](double th) {
            const double w = sd.omega_max * std::sin(th);
            return -weight(th, sd) * coth_half(w, thermal) * one_minus_cos(w * tau);
        },
        sd, tau);
    const double im = integrate_theta(
        [&](double th) { return -weight(th, sd) * std::sin(sd.omega_max * std::sin(th) * tau); }, sd, tau);
    return {re, im};
}

cplx phonon_correlation(double tau, const SpectralDensity& sd, const ThermalState& thermal) {
    return std::exp(phonon_exponent(tau, sd, thermal));
}

std::vector<cplx> phonon_exponent_series(double dt, std::size_t count, const SpectralDensity& sd,
                                         const ThermalState& thermal) {
    sd.validate();
    std::vector<cplx> out(count);
    if (count == 0) return out;
    if (sd.kind == DensityKind::Lines) {
        for (std::size_t n = 0; n < count; ++n) out[n] = phonon_exponent(double(n) * dt, sd, thermal);
        return out;
    }
    check_convergent(sd, thermal, "phonon_correlation");
    if (sd.coupling == 0.0) return out;

    const double tau_max = dt * double(count - 1);
    const auto pts = theta_points(sd, tau_max);
    std::vector<double> th, wq;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) quad::composite_nodes(pts[i], pts[i + 1], 1, th, wq);

    const std::size_t m = th.size();
    std::vector<double> a(m), b(m), rr(m), ri(m), zr(m, 1.0), zi(m, 0.0), om(m);
    double offset = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        om[i] = sd.omega_max * std::sin(th[i]);
        const double wt = weight(th[i], sd) * wq[i];
        a[i] = wt * coth_half(om[i], thermal);
        b[i] = wt;
        rr[i] = std::cos(om[i] * dt);
        ri[i] = std::sin(om[i] * dt);
        offset += a[i];
    }
    constexpr std::size_t resync = 512;
    for (std::size_t n = 0; n < count; ++n) {
        if (n % resync == 0 && n > 0) {
            const double t = double(n) * dt;
            for (std::size_t i = 0; i < m; ++i) {
                zr[i] = std::cos(om[i] * t);
                zi[i] = std::sin(om[i] * t);
            }
        }
        double sc = 0.0, ss = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            sc += a[i] * zr[i];
            ss += b[i] * zi[i];
            const double nr = zr[i] * rr[i] - zi[i] * ri[i];
            zi[i] = zr[i] * ri[i] + zi[i] * rr[i];
            zr[i] = nr;
        }
        out[n] = {sc - offset, -ss};
    }
    out[0] = {};
    return out;
}

double debye_waller(const SpectralDensity& sd, const ThermalState& thermal) {
    sd.validate();
    if (sd.kind == DensityKind::Lines) {
        double s = 0.0;
        for (const auto& l : sd.lines) s += l.lambda * l.lambda * coth_half(l.omega, thermal);
        return std::exp(-s);
    }
    if (sd.divergent()) {
        throw DivergenceError("debye_waller: 1D spectral density with omega_min = 0 diverges (set omega_min > 0)");
    }
    if (sd.coupling == 0.0) return 1.0;
    const double s = integrate_theta(
        [&](double th) { return weight(th, sd) * coth_half(sd.omega_max * std::sin(th), thermal); }, sd, 0.0);
    return std::exp(-s);
}

double dephasing_rate(double t, const SpectralDensity& sd, const ThermalState& thermal) {
    sd.validate();
    if (sd.kind == DensityKind::Lines) {
        double s = 0.0;
        for (const auto& l : sd.lines)
            s += l.lambda * l.lambda * l.omega * coth_half(l.omega, thermal) * std::sin(l.omega * t);
        return s;
    }
    check_convergent(sd, thermal, "dephasing_rate");
    if (sd.coupling == 0.0 || t == 0.0) return 0.0;
    return integrate_theta(
        [&](double th) {
            const double w = sd.omega_max * std::sin(th);
            return weight(th, sd) * w * coth_half(w, thermal) * std::sin(w * t);
        },
        sd, t);
}

double mean_dephasing_rate(double t, const SpectralDensity& sd, const ThermalState& thermal) {
    if (!(t > 0.0)) throw DomainError("mean_dephasing_rate: t must be > 0");
    sd.validate();
    if (sd.kind == DensityKind::Lines) {
        double s = 0.0;
        for (const auto& l : sd.lines)
            s += l.lambda * l.lambda * coth_half(l.omega, thermal) * one_minus_cos(l.omega * t);
        return s / t;
    }
    check_convergent(sd, thermal, "mean_dephasing_rate");
    return -phonon_exponent(t, sd, thermal).real() / t;
}

} // namespace vibrolang
