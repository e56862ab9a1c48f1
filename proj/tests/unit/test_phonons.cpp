// test_phonons.cpp — spectral densities, phonon correlation, Debye-Waller and dephasing
#include "vibrolang/error.hpp"
#include "vibrolang/spectra.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace vibrolang;

namespace {

// ω_max = 3 THz, λ^3D = 0.02 ps²
SpectralDensity fig5b() { return SpectralDensity::three_d(0.02, 3.0); }

// Midpoint rule for ∫ J/ω² [coth(cos-1) - i sin] dω on a fine uniform grid.
cplx riemann_exponent(double tau, const SpectralDensity& sd, double temperature, int n = 400000) {
    const double h = sd.omega_max / n;
    cplx s{};
    for (int i = 0; i < n; ++i) {
        const double w = (i + 0.5) * h;
        const double j = spectral_density(w, sd) / (w * w);
        const double c = temperature > 0.0 ? 1.0 / std::tanh(w / (2.0 * temperature)) : 1.0;
        s += j * cplx(c * (std::cos(w * tau) - 1.0), -std::sin(w * tau));
    }
    return s * h;
}

}  // namespace

TEST(SpectralDensityValues, EdgesAndPeak) {
    const auto sd = fig5b();
    EXPECT_EQ(spectral_density(3.0, sd), 0.0);
    EXPECT_EQ(spectral_density(3.5, sd), 0.0);
    EXPECT_EQ(spectral_density(0.0, sd), 0.0);
    double best = 0.0, arg = 0.0;
    for (double w = 0.0; w < 3.0; w += 1e-5) {
        const double j = spectral_density(w, sd);
        if (j > best) best = j, arg = w;
    }
    // d/dω [ω³ sqrt(ω_max² - ω²)] = 0 at ω = ω_max sqrt(3/4)
    EXPECT_NEAR(arg, 3.0 * std::sqrt(0.75), 1e-4);
    auto one = SpectralDensity::one_d(0.1, 3.0);
    one.omega_min = 0.5;
    EXPECT_EQ(spectral_density(0.4, one), 0.0);
    EXPECT_NEAR(spectral_density(1.0, one), 0.1 * std::sqrt(8.0) / 3.0, 1e-15);
}

TEST(PolaronShift, ThreeDClosedForm) {
    // ∫ λ ω² sqrt(ω_max² - ω²)/ω_max dω = λ π ω_max³ / 16
    EXPECT_NEAR(polaron_shift(fig5b()), 0.02 * std::numbers::pi * 27.0 / 16.0, 1e-10);
    const auto lines = SpectralDensity::from_lines({{1.0, 0.3, 0.0}, {2.0, 0.2, 0.0}});
    EXPECT_NEAR(polaron_shift(lines), 0.09 + 0.08, 1e-15);
}

TEST(PhononCorrelation, ZeroDelayAndModulus) {
    const auto sd = fig5b();
    for (double t : {0.0, 100.0}) {
        const ThermalState th{t * kKelvinToRadPerPs};
        EXPECT_EQ(phonon_correlation(0.0, sd, th), cplx(1.0, 0.0));
        for (double tau : {0.1, 1.0, 7.0}) EXPECT_LT(std::abs(phonon_correlation(tau, sd, th)), 1.0);
    }
}

TEST(PhononCorrelation, LongDelayApproachesDebyeWaller) {
    const auto sd = fig5b();
    EXPECT_NEAR(std::abs(phonon_correlation(400.0, sd, ThermalState{})), debye_waller(sd, ThermalState{}), 1e-5);
}

TEST(PhononCorrelation, QuadratureMatchesRiemannOracle) {
    const auto sd = fig5b();
    for (double kelvin : {0.0, 50.0}) {
        const double t = kelvin * kKelvinToRadPerPs;
        for (double tau : {0.3, 2.0, 10.0}) {
            const cplx q = phonon_exponent(tau, sd, ThermalState{t});
            const cplx r = riemann_exponent(tau, sd, t);
            EXPECT_LT(std::abs(std::exp(q) - std::exp(r)), 1e-5) << "T=" << kelvin << " tau=" << tau;
        }
    }
}

TEST(PhononCorrelation, SeriesMatchesPointwise) {
    const auto sd = fig5b();
    const ThermalState th{1.3};
    const double dt = 0.02;
    const auto series = phonon_exponent_series(dt, 3000, sd, th);
    for (std::size_t n : {0u, 1u, 17u, 511u, 512u, 1300u, 2999u})
        EXPECT_LT(std::abs(series[n] - phonon_exponent(double(n) * dt, sd, th)), 1e-9) << n;
    auto one = SpectralDensity::one_d(0.05, 3.0);
    const auto s1 = phonon_exponent_series(dt, 1000, one, th);
    EXPECT_LT(std::abs(s1[999] - phonon_exponent(999 * dt, one, th)), 1e-8);
}

TEST(PhononCorrelation, OneDimensionalDivergence) {
    auto sd = SpectralDensity::one_d(0.05, 3.0);
    sd.omega_min = 0.0;
    EXPECT_THROW(phonon_exponent(1.0, sd, ThermalState{1.0}), DivergenceError);
    EXPECT_THROW(debye_waller(sd, ThermalState{0.0}), DivergenceError);
    EXPECT_NO_THROW(phonon_exponent(1.0, sd, ThermalState{0.0}));
}

TEST(DebyeWaller, Monotonicity) {
    EXPECT_EQ(debye_waller(SpectralDensity::three_d(0.0, 3.0), ThermalState{2.0}), 1.0);
    double prev = 1.0;
    for (double lam : {0.005, 0.01, 0.02, 0.04}) {
        const double f = debye_waller(SpectralDensity::three_d(lam, 3.0), ThermalState{});
        EXPECT_LT(f, prev);
        prev = f;
    }
    // T = 0: exp(-λ ω_max² ∫_0^1 x sqrt(1-x²) dx) = exp(-λ ω_max²/3)
    EXPECT_NEAR(debye_waller(fig5b(), ThermalState{}), std::exp(-0.02 * 9.0 / 3.0), 1e-12);
    prev = 1.0;
    for (double kelvin = 0.0; kelvin <= 300.0; kelvin += 10.0) {
        const double f = debye_waller(fig5b(), ThermalState{kelvin * kKelvinToRadPerPs});
        EXPECT_LE(f, prev);
        prev = f;
    }
}

TEST(Dephasing, ShortTimeSingleMode) {
    const double w = 2.0, lam = 0.1;
    const auto sd = SpectralDensity::from_lines({{w, lam, 0.0}});
    const ThermalState th{1.5};
    const double nbar = occupation(w, th);
    const double t = 1e-3;
    EXPECT_EQ(dephasing_rate(0.0, sd, th), 0.0);
    EXPECT_NEAR(mean_dephasing_rate(t, sd, th), lam * lam * (nbar + 0.5) * w * w * t, 1e-4 * lam * lam * w * w * t);
    EXPECT_NEAR(dephasing_rate(t, sd, th), 2.0 * lam * lam * (nbar + 0.5) * w * w * t, 1e-4 * lam * lam * w * w * t);
}

TEST(Dephasing, RateIsDerivativeOfExponent) {
    const auto sd = fig5b();
    const ThermalState th{2.0};
    for (double t : {0.5, 2.0, 6.0}) {
        const double h = 1e-4;
        const double d = -(phonon_exponent(t + h, sd, th).real() - phonon_exponent(t - h, sd, th).real()) / (2.0 * h);
        EXPECT_NEAR(dephasing_rate(t, sd, th), d, 1e-6);
    }
}

TEST(Dephasing, ThreeDLongTimeDecay) {
    const auto sd = fig5b();
    const ThermalState th{1.0};
    double peak = 0.0;
    for (double t = 0.01; t < 80.0; t += 0.01) peak = std::max(peak, std::abs(dephasing_rate(t, sd, th)));
    for (double t = 50.0 / 3.0; t < 80.0; t += 0.37) EXPECT_LE(std::abs(dephasing_rate(t, sd, th)), 0.05 * peak) << t;
    EXPECT_THROW(mean_dephasing_rate(0.0, sd, th), DomainError);
}

TEST(AbsorptionFull, TwoLineDensityMatchesMultimodeOracle) {
    const std::vector<SpectralLine> lines{{0.4, 0.5, 0.0}, {0.9, 0.3, 0.0}};
    MoleculeParams m;
    m.nu = 1.0;
    m.gamma = 0.02;
    const KernelParams kp{0.0, kInf, 1.0};
    const ThermalState th{0.5};
    std::vector<double> g;
    for (double x = -1.5; x <= 2.5; x += 0.005) g.push_back(x);
    const auto full = absorption_full(g, m, kp, SpectralDensity::from_lines(lines), th);
    const auto disc = absorption_multimode_discrete(g, m, kp, lines, th);
    const double peak = *std::max_element(disc.value.begin(), disc.value.end());
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(full.value[i], disc.value[i], 1e-3 * peak) << g[i];
}
