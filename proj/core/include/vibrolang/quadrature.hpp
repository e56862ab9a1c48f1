// quadrature.hpp — adaptive Gauss-Kronrod wrappers and fixed Gauss-Legendre panels
#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace vibrolang::quad {

struct Tolerance {
    double rel{1e-10};
    double abs{1e-14};
    unsigned max_depth{18};
};

struct Result {
    double value{0.0};
    double error{0.0};
};

/// Adaptive 61-point Gauss-Kronrod on [a, b]; b may be +infinity.
/// Throws ConvergenceError when the error estimate misses the tolerance.
Result integrate(const std::function<double(double)>& f, double a, double b, const Tolerance& tol = {});

/// Sum of adaptive integrals over consecutive panels [points[i], points[i+1]].
/// Points are sorted and deduplicated internally.
Result integrate_panels(const std::function<double(double)>& f, std::vector<double> points,
                        const Tolerance& tol = {});

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       std::vector<double> points, const Tolerance& tol = {});

/// 20-point Gauss-Legendre rule on [-1, 1].
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const Rule& gauss_legendre_20();

/// Fixed composite Gauss-Legendre over [a, b] split into `panels` equal panels.
/// Appends mapped nodes and weights to the output vectors.
void composite_nodes(double a, double b, int panels, std::vector<double>& x, std::vector<double>& w);

} // namespace vibrolang::quad
