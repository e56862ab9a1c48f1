// kernels.hpp — memory kernels, susceptibility, thermal spectrum and momentum correlations
#pragma once

#include "vibrolang/fourier.hpp"
#include "vibrolang/model.hpp"
#include "vibrolang/quadrature.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace vibrolang {

using cplx = std::complex<double>;

/// omega_max = +infinity selects the Markovian (frequency-flat) kernel.
struct KernelParams {
    double gamma_m{0.0};
    double omega_max{kInf};
    double nu{1.0};
    std::optional<double> nu_tilde;  // used by susceptibility when set

    bool markovian() const { return !std::isfinite(omega_max); }
    bool good_oscillator_violated() const { return gamma_m > nu; }
    double response_frequency() const { return nu_tilde.value_or(nu); }
    void validate() const;

    static KernelParams from_bath(const ContinuumBath& bath, double nu);
};

struct ComplexKernel {
    double real{0.0};
    double imag{0.0};

    cplx value() const { return {real, imag}; }
};

struct EffectiveParams {
    double nu_prime{0.0};
    double gamma_prime{0.0};
};

// Γ(t) = Γ_m J1(ω_max t)/t for t > 0, zero for t < 0.
double gamma_time(double t, const KernelParams& kp);
ComplexKernel gamma_freq(double omega, const KernelParams& kp);

// Γ12(t) = Γ_m 4j J_{4j}(ω_max t)/t for molecules 2j sites apart.
double collective_gamma_time(double t, int j, const KernelParams& kp);
cplx collective_gamma_freq(double omega, int j, const KernelParams& kp);

cplx susceptibility(double omega, const KernelParams& kp);
double thermal_spectrum(double omega, const KernelParams& kp, const ThermalState& thermal);

EffectiveParams effective_params(const KernelParams& kp);

/// Closed-form pole approximation of <P(τ)P(0)>.
cplx momentum_correlation(double tau, const KernelParams& kp, const ThermalState& thermal);

/// Quadrature of (1/2π)∫|χ(ω)|² S_th(ω) e^{-iωτ} dω. In the Markovian limit the
/// noise is taken white (ω/ν → 1), which keeps the integral finite.
cplx momentum_correlation_numeric(double tau, const KernelParams& kp, const ThermalState& thermal,
                                  const quad::Tolerance& tol = {1e-9, 1e-13, 18});

/// Σ_k α_k² ν/ω_k cos(ω_k t) for t ≥ 0, zero for t < 0.
double discrete_gamma_time(double t, const std::vector<double>& frequencies,
                           const std::vector<double>& alpha, double nu);

/// Cross kernel Σ_k α_{k,1} α_{k,2} ν/ω_k cos(ω_k t).
double discrete_cross_gamma_time(double t, const std::vector<double>& frequencies,
                                 const std::vector<double>& alpha1, const std::vector<double>& alpha2,
                                 double nu);

/// FFT of the sampled time kernel (j = 0: Γ, j ≥ 1: Γ12) on [0, horizon].
fourier::CausalTransform kernel_fft(const KernelParams& kp, int j, double dt, double horizon);

} // namespace vibrolang
