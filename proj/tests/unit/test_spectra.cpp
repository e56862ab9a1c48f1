// test_spectra.cpp — vibronic sideband spectra, Franck-Condon weights, mirror rule
#include "vibrolang/error.hpp"
#include "vibrolang/spectra.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace vibrolang;

namespace {

MoleculeParams molecule(double lambda, double gamma, double nu = 1.0) {
    MoleculeParams m;
    m.lambda = lambda;
    m.gamma = gamma;
    m.nu = nu;
    return m;
}

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> g;
    for (double x = lo; x <= hi + 1e-12; x += step) g.push_back(x);
    return g;
}

double weight_sum(const LineSpectrum& s) {
    double w = 0.0;
    for (const auto& l : s.lines) w += l.weight;
    return w;
}

}  // namespace

TEST(FranckCondon, Values) {
    EXPECT_EQ(franck_condon(0.0, 3.0), 1.0);
    EXPECT_NEAR(franck_condon(1.0, 0.0), 0.36788, 1e-5);
    EXPECT_GT(franck_condon(0.7, 0.1), franck_condon(0.7, 0.2));
    EXPECT_THROW(franck_condon(-1.0, 0.0), DomainError);
}

TEST(PoissonTail, MatchesDirectSum) {
    const double mu = 2.3;
    double head = 0.0, term = std::exp(-mu);
    for (int k = 0; k <= 6; ++k) {
        head += term;
        term *= mu / (k + 1);
    }
    EXPECT_NEAR(poisson_tail(mu, 6), 1.0 - head, 1e-14);
    EXPECT_LT(poisson_tail(mu, default_n_max(mu)), 1e-8);
}

TEST(DisplacementCorrelation, Limits) {
    const auto m = molecule(1.0, 0.01);
    const KernelParams kp{0.1, kInf, 1.0};
    const ThermalState cold{0.0};
    EXPECT_EQ(displacement_correlation_vibron(0.0, m, kp, cold), cplx(1.0, 0.0));
    for (double tau : {0.7, 3.0, 11.0}) {
        const cplx expect = std::exp(-1.0) * std::exp(std::exp(-cplx(0.05, 1.0) * tau));
        EXPECT_LT(std::abs(displacement_correlation_vibron(tau, m, kp, cold) - expect), 1e-13);
    }
    const ThermalState warm{0.8};
    const double nbar = occupation(1.0, warm);
    EXPECT_NEAR(std::abs(displacement_correlation_vibron(600.0, m, kp, warm)), franck_condon(1.0, nbar), 1e-10);
    EXPECT_THROW(displacement_correlation_vibron(1.0, molecule(1.0, 0.01, 2.0), kp, cold), DomainError);
}

TEST(AbsorptionDiscrete, TwoLevelLimit) {
    const auto g = grid(-1.0, 1.0, 0.01);
    const auto s = absorption_discrete(g, molecule(0.0, 0.05), KernelParams{0.1, kInf, 1.0}, ThermalState{});
    for (std::size_t i = 0; i < g.size(); ++i)
        EXPECT_NEAR(s.value[i], 1.0 / (0.05 * 0.05 + g[i] * g[i]), 1e-10 / (0.05 * 0.05));
    EXPECT_NEAR(s.value[100], s.reference, 1e-9 * s.reference);
}

TEST(AbsorptionDiscrete, WeightCompleteness) {
    for (double lam : {0.3, 1.0, 2.0})
        for (double nbar : {0.0, 0.7, 5.0}) {
            const auto th = ThermalState::from_occupation(nbar, 1.0);
            const auto s = absorption_discrete({0.0}, molecule(lam, 0.01), KernelParams{0.02, kInf, 1.0}, th);
            EXPECT_NEAR(weight_sum(s), 1.0, 1e-8) << "lambda=" << lam << " nbar=" << nbar;
        }
}

TEST(AbsorptionDiscrete, SidebandToZplRatio) {
    // γ = Γ_m/4: first sideband is three times broader than the ZPL at equal weight
    const double gm = 0.04, gamma = gm / 4.0;
    const auto s = absorption_discrete({0.0, 1.0}, molecule(1.0, gamma), KernelParams{gm, kInf, 1.0}, ThermalState{});
    EXPECT_NEAR(s.value[1] / s.value[0], 1.0 / 3.0, 2e-3);
}

TEST(AbsorptionDiscrete, ZplPeakIsFranckCondonFactor) {
    const double gamma = 0.005;
    const auto s = absorption_discrete({0.0}, molecule(0.8, gamma), KernelParams{0.5, kInf, 1.0}, ThermalState{});
    EXPECT_NEAR(s.value[0] * gamma * gamma, franck_condon(0.8, 0.0), 2e-3);
}

TEST(AbsorptionDiscrete, TruncationReported) {
    const auto m = molecule(2.0, 0.01);
    EXPECT_THROW(absorption_discrete({0.0}, m, KernelParams{0.02, kInf, 1.0}, ThermalState{}, 5), TruncationError);
    try {
        absorption_discrete({0.0}, m, KernelParams{0.02, kInf, 1.0}, ThermalState{}, 5);
    } catch (const TruncationError& e) {
        EXPECT_NEAR(e.tail_bound, poisson_tail(4.0, 5), 1e-15);
    }
}

TEST(AbsorptionDiscrete, SumRuleIndependentOfLambda) {
    const auto g = grid(-400.0, 400.0, 0.01);
    auto area = [&](double lam) {
        const auto s = absorption_discrete(g, molecule(lam, 0.05), KernelParams{0.05, kInf, 1.0}, ThermalState{});
        double a = 0.0;
        for (std::size_t i = 1; i < g.size(); ++i) a += 0.5 * (s.value[i] + s.value[i - 1]) * (g[i] - g[i - 1]);
        return a;
    };
    const double a0 = area(0.0);
    EXPECT_NEAR(a0, std::numbers::pi / 0.05, 0.01 * std::numbers::pi / 0.05);
    for (double lam : {0.5, 1.0, 1.5}) EXPECT_NEAR(area(lam) / a0, 1.0, 0.01);
}

TEST(AbsorptionDiscrete, SidebandSuppressionWithDamping) {
    const double gamma = 0.01;
    double prev = kInf;
    for (double ratio : {1.0, 3.0, 10.0, 30.0}) {
        const auto s = absorption_discrete({0.0, 1.0}, molecule(1.0, gamma), KernelParams{ratio * gamma, kInf, 1.0},
                                           ThermalState{});
        const double r = s.value[1] / s.value[0];
        EXPECT_LT(r, prev);
        prev = r;
    }
}

TEST(AbsorptionBessel, PoissonWeightsAtZeroTemperature) {
    const auto s = absorption_bessel({0.0}, molecule(0.9, 0.01), KernelParams{0.02, kInf, 1.0}, ThermalState{});
    ASSERT_GE(s.lines.size(), 4u);
    double poisson = std::exp(-0.81);
    for (int n = 0; n < 4; ++n) {
        EXPECT_NEAR(s.lines[n].weight, poisson, 1e-14);
        poisson *= 0.81 / (n + 1);
    }
    EXPECT_FALSE(s.validity_violated);
}

TEST(AbsorptionBessel, DetailedBalanceOfWeights) {
    const ThermalState th{0.9};
    const auto s = absorption_bessel({0.0}, molecule(0.5, 0.01), KernelParams{0.02, kInf, 1.0}, th);
    auto weight_at = [&](int n) {
        for (const auto& l : s.lines)
            if (std::abs(l.position - n) < 1e-9) return l.weight;
        return 0.0;
    };
    for (int n : {1, 2, 3}) EXPECT_NEAR(weight_at(n) / weight_at(-n), std::exp(n / 0.9), 1e-10 * std::exp(n / 0.9));
    EXPECT_NEAR(weight_sum(s), 1.0, 1e-8);
}

TEST(AbsorptionBessel, AgreesWithDoubleSumInValidRegime) {
    const auto th = ThermalState::from_occupation(0.3, 1.0);
    const auto m = molecule(0.25, 0.02);
    const KernelParams kp{0.002, kInf, 1.0};
    const auto g = grid(-2.0, 2.0, 0.005);
    const auto a = absorption_discrete(g, m, kp, th);
    const auto b = absorption_bessel(g, m, kp, th);
    EXPECT_FALSE(b.validity_violated);
    const double peak = *std::max_element(a.value.begin(), a.value.end());
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(b.value[i], a.value[i], 1e-3 * peak);
    EXPECT_TRUE(absorption_bessel({0.0}, molecule(1.0, 0.02), kp, ThermalState{2.0}).validity_violated);
}

TEST(MirrorEmission, InvolutionAndReflection) {
    SampledSpectrum s;
    s.detuning = {-1.0, 0.0, 0.5, 2.0};
    s.value = {0.1, 0.2, 0.3, 0.4};
    s.response = {cplx(1, 1), cplx(2, 2), cplx(3, 3), cplx(4, 4)};
    const auto m = mirror_emission(s, 0.5);
    EXPECT_EQ(m.detuning, (std::vector<double>{-1.0, 0.5, 1.0, 2.0}));
    EXPECT_EQ(m.value, (std::vector<double>{0.4, 0.3, 0.2, 0.1}));
    const auto back = mirror_emission(m, 0.5);
    EXPECT_EQ(back.detuning, s.detuning);
    EXPECT_EQ(back.value, s.value);
    EXPECT_EQ(back.response, s.response);
}

TEST(MirrorEmission, SidebandsMoveToRedSide) {
    const auto g = grid(-3.0, 3.0, 0.01);
    const auto a = absorption_discrete(g, molecule(1.0, 0.02), KernelParams{0.04, kInf, 1.0}, ThermalState{});
    SampledSpectrum s;
    s.detuning = a.detuning;
    s.value = a.value;
    const auto e = mirror_emission(s, 0.0);
    // blue sideband at +1 in absorption is the red one at -1 in emission
    const std::size_t plus = 400, minus = 200;
    EXPECT_NEAR(e.value[minus], a.value[plus], 1e-12 * a.value[plus]);
    EXPECT_GT(a.value[plus], 100.0 * a.value[minus]);
}

TEST(AbsorptionFull, TwoLevelLimitAndVibronOnlyOracle) {
    const double gamma = 0.05;
    const auto g = grid(-3.0, 3.0, 0.01);
    const KernelParams kp{0.1, kInf, 1.0};
    const SpectralDensity none = SpectralDensity::three_d(0.0, 3.0);
    const auto lor = absorption_full(g, molecule(0.0, gamma), kp, none, ThermalState{});
    for (std::size_t i = 0; i < g.size(); i += 10)
        EXPECT_NEAR(lor.value[i] * gamma * gamma, gamma * gamma / (gamma * gamma + g[i] * g[i]), 1e-4);
    const ThermalState th{0.6};
    const auto full = absorption_full(g, molecule(0.7, gamma), kp, none, th);
    const auto disc = absorption_discrete(g, molecule(0.7, gamma), kp, th);
    const double peak = *std::max_element(disc.value.begin(), disc.value.end());
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(full.value[i], disc.value[i], 2e-3 * peak) << g[i];
}

TEST(AbsorptionFull, RejectsCoarseGrid) {
    const auto g = grid(-1.0, 1.0, 0.1);
    EXPECT_THROW(absorption_full(g, molecule(0.5, 0.05), KernelParams{0.1, kInf, 1.0},
                                 SpectralDensity::three_d(0.0, 3.0), ThermalState{}),
                 ResolutionError);
}

TEST(Multimode, SingleLineReducesToVibronDoubleSum) {
    const auto g = grid(-2.0, 3.0, 0.01);
    const ThermalState th{0.7};
    const KernelParams kp{0.0, kInf, 1.0};
    const auto multi = absorption_multimode_discrete(g, molecule(0.0, 0.02), kp, {SpectralLine{1.0, 0.8, 0.0}}, th);
    const auto ref = absorption_discrete(g, molecule(0.8, 0.02), kp, th);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(multi.value[i], ref.value[i], 1e-9 * ref.value[i]);
}

TEST(Multimode, ZeroCouplingAndLimit) {
    const auto g = grid(-1.0, 1.0, 0.01);
    const KernelParams kp{0.0, kInf, 1.0};
    const auto s = absorption_multimode_discrete(g, molecule(0.0, 0.05), kp,
                                                 {SpectralLine{0.3, 0.0, 0.0}, SpectralLine{0.6, 0.0, 0.0}}, ThermalState{});
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(s.value[i], 1.0 / (0.0025 + g[i] * g[i]), 1e-9 * s.value[i]);
    std::vector<SpectralLine> five(5, SpectralLine{0.5, 0.1, 0.0});
    EXPECT_THROW(absorption_multimode_discrete(g, molecule(0.0, 0.05), kp, five, ThermalState{}),
                 CombinatorialLimitError);
}
