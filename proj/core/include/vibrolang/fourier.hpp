// fourier.hpp — FFT evaluation of one-sided (causal) Fourier integrals
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace vibrolang::fourier {

using cplx = std::complex<double>;

/// F(ω) = ∫_0^∞ f(t) e^{iωt} dt sampled on the FFT grid ω_m = m·domega,
/// m = -M/2 .. M/2-1, stored in ascending order.
struct CausalTransform {
    double domega{0.0};
    std::vector<double> omega;
    std::vector<cplx> value;

    /// Cubic Lagrange interpolation between grid points.
    /// Throws ResolutionError outside the grid.
    cplx at(double w) const;
    std::size_t index_of(double w) const;
};

/// Trapezoid rule (first sample at half weight) evaluated for all ω by one FFT.
/// samples[n] = f(n·dt); f is assumed negligible beyond the last sample.
/// The array is zero-padded to at least pad_factor·N (power of two). With
/// endpoint_correction the dt² Euler-Maclaurin term at t = 0 is added, using a
/// five-point one-sided estimate of f'(0).
CausalTransform causal_transform(const std::vector<cplx>& samples, double dt, std::size_t pad_factor = 4,
                                 bool endpoint_correction = true);

CausalTransform causal_transform(const std::vector<double>& samples, double dt, std::size_t pad_factor = 4,
                                 bool endpoint_correction = true);

} // namespace vibrolang::fourier
