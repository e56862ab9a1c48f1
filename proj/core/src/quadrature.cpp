// quadrature.cpp — Boost.Math backed integration helpers
#include "vibrolang/quadrature.hpp"

#include "vibrolang/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace vibrolang::quad {
namespace {

std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

} // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, const Tolerance& tol) {
    if (a == b) return {};
    double err = 0.0, l1 = 0.0, v = 0.0, target = tol.abs;
    // Boost's recursion can end with a worse estimate when asked for a very tight
    // tolerance; a looser request often meets the caller's target, so try those too.
    for (double request = tol.rel; request <= std::max(tol.rel, 1e-6); request *= 100.0) {
        v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, tol.max_depth, request, &err,
                                                                           &l1);
        if (!std::isfinite(v)) throw ConvergenceError("quadrature produced a non-finite value", err);
        target = std::max(tol.rel * l1, tol.abs);
        if (err <= target) return {v, err};
    }
    throw ConvergenceError("quadrature missed tolerance on [" + std::to_string(a) + ", " + std::to_string(b) +
                               "]: error " + fmt_sci(err) + " (l1 " + fmt_sci(l1) + ")",
                           l1 > 0.0 ? err / l1 : err);
}

Result integrate_panels(const std::function<double(double)>& f, std::vector<double> points,
                        const Tolerance& tol) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 2) return {};
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const std::size_t n = points.size() - 1;

    // Coarse pass fixes the global L1, which sets an absolute budget per panel.
    std::vector<double> l1(n, 0.0);
    double total_l1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double err = 0.0;
        GK::integrate(f, points[i], points[i + 1], 0, tol.rel, &err, &l1[i]);
        total_l1 += l1[i];
    }
    const double budget = std::max(tol.abs, tol.rel * total_l1 / double(n));

    Result total;
    for (std::size_t i = 0; i < n; ++i) {
        Tolerance local = tol;
        local.abs = budget;
        if (l1[i] > 0.0) local.rel = std::max(tol.rel, budget / l1[i]);
        const Result r = integrate(f, points[i], points[i + 1], local);
        total.value += r.value;
        total.error += r.error;
    }
    return total;
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       std::vector<double> points, const Tolerance& tol) {
    const Result re = integrate_panels([&](double x) { return f(x).real(); }, points, tol);
    const Result im = integrate_panels([&](double x) { return f(x).imag(); }, points, tol);
    return {re.value, im.value};
}

const Rule& gauss_legendre_20() {
    static const Rule rule = [] {
        using G = boost::math::quadrature::gauss<double, 20>;
        Rule r;
        const auto& xs = G::abscissa();
        const auto& ws = G::weights();
        for (std::size_t i = xs.size(); i-- > 0;) {
            if (xs[i] == 0.0) continue;
            r.nodes.push_back(-xs[i]);
            r.weights.push_back(ws[i]);
        }
        for (std::size_t i = 0; i < xs.size(); ++i) {
            r.nodes.push_back(xs[i]);
            r.weights.push_back(ws[i]);
        }
        return r;
    }();
    return rule;
}

void composite_nodes(double a, double b, int panels, std::vector<double>& x, std::vector<double>& w) {
    if (panels < 1) throw DomainError("composite_nodes: panels must be >= 1");
    const Rule& r = gauss_legendre_20();
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            x.push_back(mid + 0.5 * h * r.nodes[i]);
            w.push_back(0.5 * h * r.weights[i]);
        }
    }
}

} // namespace vibrolang::quad
