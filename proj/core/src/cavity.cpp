// cavity.cpp — input-output transmission and polariton rate equations
#include "vibrolang/cavity.hpp"

#include "vibrolang/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vibrolang {

void CavityParams::validate() const {
    if (!(kappa > 0.0)) throw DomainError("CavityParams: kappa must be > 0");
    if (!(g >= 0.0)) throw DomainError("CavityParams: g must be >= 0");
    if (!std::isfinite(omega_c) || !std::isfinite(omega_l)) throw DomainError("CavityParams: frequencies must be finite");
}

MolecularResponse molecular_response(const std::vector<double>& detuning, const MoleculeParams& molecule,
                                     const KernelParams& kp, const ThermalState& thermal,
                                     const SpectralDensity* sd) {
    MolecularResponse r;
    r.detuning = detuning;
    if (sd == nullptr || sd->empty()) {
        r.h = absorption_discrete(detuning, molecule, kp, thermal).response;
        return r;
    }
    const SampledSpectrum s = absorption_full(detuning, molecule, kp, *sd, thermal);
    r.h = s.response;
    r.polaron_shift = s.polaron_shift;
    r.fft = true;
    return r;
}

TransmissionResult transmission(const std::vector<double>& envelope, const CavityParams& cavity,
                                const MoleculeParams& molecule, const KernelParams& kp,
                                const ThermalState& thermal, const SpectralDensity* sd) {
    cavity.validate();
    molecule.validate();
    const double shift = (sd && !sd->empty()) ? polaron_shift(*sd) : 0.0;
    const double w0 = molecule.omega0 - shift;

    TransmissionResult out;
    out.envelope = envelope;
    out.polaron_shift = shift;
    out.detuning.resize(envelope.size());
    for (std::size_t i = 0; i < envelope.size(); ++i) out.detuning[i] = cavity.omega_l + envelope[i] - w0;

    std::vector<cplx> h(envelope.size());
    if (cavity.g > 0.0) h = molecular_response(out.detuning, molecule, kp, thermal, sd).h;

    if (molecule.lambda > 0.0) {
        const EffectiveParams e = effective_params(kp);
        out.factorization_warning = e.gamma_prime < cavity.kappa;
    }
    out.t.resize(envelope.size());
    out.abs_t2.resize(envelope.size());
    const double g2 = cavity.g * cavity.g;
    for (std::size_t i = 0; i < envelope.size(); ++i) {
        const double probe = cavity.omega_l + envelope[i];
        const cplx den = g2 * h[i] + cplx(cavity.kappa, -(probe - cavity.omega_c));
        out.t[i] = cavity.kappa / den;
        out.abs_t2[i] = std::norm(out.t[i]);
    }
    return out;
}

double effective_rabi(double g, double f_fc, double f_dw) {
    if (g < 0.0 || f_fc < 0.0 || f_dw < 0.0) throw DomainError("effective_rabi: arguments must be >= 0");
    return g * std::sqrt(f_fc * f_dw);
}

std::vector<Peak> find_peaks(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DomainError("find_peaks: length mismatch");
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
        const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
        const double h = x[i + 1] - x[i];
        const double den = y0 - 2.0 * y1 + y2;
        double off = 0.0;
        if (den != 0.0) off = 0.5 * (y0 - y2) / den;
        off = std::clamp(off, -1.0, 1.0);
        peaks.push_back({x[i] + off * h, y1 - 0.25 * (y0 - y2) * off});
    }
    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.height > b.height; });
    return peaks;
}

namespace {

double interp(const std::vector<double>& x, const std::vector<double>& y, double at) {
    if (at <= x.front()) return y.front();
    if (at >= x.back()) return y.back();
    const auto it = std::upper_bound(x.begin(), x.end(), at);
    const std::size_t i = std::size_t(it - x.begin());
    const double f = (at - x[i - 1]) / (x[i] - x[i - 1]);
    return y[i - 1] + f * (y[i] - y[i - 1]);
}

} // namespace

Dip measure_dip(const std::vector<double>& x, const std::vector<double>& y, double center, double window) {
    if (x.size() != y.size() || x.size() < 3) throw DomainError("measure_dip: need matching arrays of >= 3 points");
    if (!(window > 0.0)) throw DomainError("measure_dip: window must be > 0");
    std::size_t best = x.size();
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        if (std::abs(x[i] - center) > window) continue;
        if (y[i] <= y[i - 1] && y[i] <= y[i + 1]) {
            if (best == x.size() || std::abs(x[i] - center) < std::abs(x[best] - center)) best = i;
        }
    }
    if (best == x.size()) throw NumericError("measure_dip: no local minimum near the requested centre");

    Dip d;
    const double y0 = y[best - 1], y1 = y[best], y2 = y[best + 1];
    const double den = y0 - 2.0 * y1 + y2;
    const double off = den != 0.0 ? std::clamp(0.5 * (y0 - y2) / den, -1.0, 1.0) : 0.0;
    d.position = x[best] + off * (x[best + 1] - x[best]);
    d.minimum = y1 - 0.25 * (y0 - y2) * off;
    d.baseline = 0.5 * (interp(x, y, d.position - window) + interp(x, y, d.position + window));
    d.depth = 1.0 - d.minimum / d.baseline;

    const double half = 0.5 * (d.baseline + d.minimum);
    auto crossing = [&](int dir) {
        std::size_t i = best;
        while (true) {
            const std::size_t j = dir > 0 ? i + 1 : i - 1;
            if ((dir > 0 && j >= x.size()) || (dir < 0 && i == 0)) {
                throw NumericError("measure_dip: half level not reached inside the grid");
            }
            if ((y[i] - half) * (y[j] - half) <= 0.0) {
                const double f = (half - y[i]) / (y[j] - y[i]);
                return x[i] + f * (x[j] - x[i]);
            }
            i = j;
        }
    };
    d.hwhm = 0.5 * (crossing(+1) - crossing(-1));
    return d;
}

std::pair<double, double> polariton_frequencies(double omega0, double g, double lambda, double nu) {
    const double shift = 0.25 * lambda * lambda * nu;
    return {omega0 + g + shift, omega0 - g + shift};
}

namespace {

struct RateInputs {
    double pref, gm, nbar, split;
    bool weak_violated;
};

RateInputs rate_inputs(const MoleculeParams& molecule, const KernelParams& kp, const ThermalState& thermal,
                       double omega_plus, double omega_minus, double g) {
    molecule.validate();
    kp.validate();
    RateInputs r;
    r.gm = kp.gamma_m;
    if (!(r.gm > 0.0)) throw DomainError("polariton_rates: gamma_m must be > 0");
    r.nbar = occupation(molecule.nu, thermal);
    r.pref = 0.25 * molecule.lambda * molecule.lambda * molecule.nu * molecule.nu * r.gm;
    r.split = omega_plus - omega_minus;
    r.weak_violated = !(molecule.lambda * molecule.nu < 2.0 * g);
    return r;
}

} // namespace

PolaritonRates polariton_rates_main(const MoleculeParams& molecule, const KernelParams& kp,
                                    const ThermalState& thermal, double omega_plus, double omega_minus, double g) {
    const RateInputs r = rate_inputs(molecule, kp, thermal, omega_plus, omega_minus, g);
    const double d = std::pow(0.5 * r.gm, 2) + std::pow(r.split - molecule.nu, 2);
    return {r.pref * (r.nbar + 1.0) / d, r.pref * r.nbar / d, r.weak_violated};
}

PolaritonRates polariton_rates(const MoleculeParams& molecule, const KernelParams& kp, const ThermalState& thermal,
                               double omega_plus, double omega_minus, double g) {
    const RateInputs r = rate_inputs(molecule, kp, thermal, omega_plus, omega_minus, g);
    const double dm = std::pow(0.5 * r.gm, 2) + std::pow(r.split - molecule.nu, 2);
    const double dp = std::pow(0.5 * r.gm, 2) + std::pow(r.split + molecule.nu, 2);
    return {r.pref * ((r.nbar + 1.0) / dm + r.nbar / dp), r.pref * ((r.nbar + 1.0) / dp + r.nbar / dm),
            r.weak_violated};
}

PopulationTrace polariton_populations(const std::vector<double>& t, double pu0, double pl0, double gamma_plus,
                                      double gamma_minus, double kappa_plus, double kappa_minus) {
    if (kappa_plus < 0.0 || kappa_minus < 0.0) throw DomainError("polariton_populations: rates must be >= 0");
    if (gamma_plus < 0.0 || gamma_minus < 0.0) throw DomainError("polariton_populations: decay rates must be >= 0");
    // M = [[a, b], [c, d]]
    const double a = -(2.0 * gamma_plus + kappa_plus), b = kappa_minus;
    const double c = kappa_plus, d = -(2.0 * gamma_minus + kappa_minus);
    const double s = 0.5 * (a + d);
    const double q2 = 0.25 * (a - d) * (a - d) + b * c;  // >= 0 for non-negative rates
    const double q = std::sqrt(std::max(q2, 0.0));

    PopulationTrace out;
    out.t = t;
    out.P_U.resize(t.size());
    out.P_L.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double tt = t[i];
        const double e2 = std::exp((s - q) * tt);
        const double ch = e2 * (1.0 + 0.5 * std::expm1(2.0 * q * tt));
        const double sh = q > 0.0 ? e2 * std::expm1(2.0 * q * tt) / (2.0 * q) : tt * std::exp(s * tt);
        out.P_U[i] = ch * pu0 + sh * ((a - s) * pu0 + b * pl0);
        out.P_L[i] = ch * pl0 + sh * (c * pu0 + (d - s) * pl0);
    }
    return out;
}

} // namespace vibrolang
