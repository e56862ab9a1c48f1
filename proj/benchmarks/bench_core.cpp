// bench_core.cpp — throughput of the hot paths: kernels, chain dynamics, spectra, transmission
#include "vibrolang/cavity.hpp"
#include "vibrolang/kernels.hpp"
#include "vibrolang/microsim.hpp"
#include "vibrolang/spectra.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace vibrolang;

namespace {

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> g;
    for (double x = lo; x <= hi + 1e-12; x += step) g.push_back(x);
    return g;
}

MoleculeParams molecule(double lambda, double gamma, double nu) {
    MoleculeParams m;
    m.lambda = lambda;
    m.gamma = gamma;
    m.nu = nu;
    return m;
}

void BM_CollectiveKernelFreq(benchmark::State& state) {
    const KernelParams kp{0.05, 7.0, 1.0};
    const int j = int(state.range(0));
    double w = -6.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(collective_gamma_freq(w, j, kp));
        w = w > 6.9 ? -6.9 : w + 0.01;
    }
}
BENCHMARK(BM_CollectiveKernelFreq)->Arg(1)->Arg(3)->Arg(25);

void BM_KernelFft(benchmark::State& state) {
    const KernelParams kp{0.05, 7.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(kernel_fft(kp, 0, 0.01, double(state.range(0))));
}
BENCHMARK(BM_KernelFft)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ChainSimulation(benchmark::State& state) {
    const auto bath = DiscreteBath::from_targets(int(state.range(0)), 7.0, 0.05, 50.0);
    TrajectoryConfig cfg;
    cfg.t_max = 60.0;
    cfg.sample_stride = 10;
    for (auto _ : state) benchmark::DoNotOptimize(simulate_single(molecule(0.0, 1.0, 1.0), bath, cfg));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ChainSimulation)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_AbsorptionDiscrete(benchmark::State& state) {
    const auto g = grid(-3.0, 6.0, 0.005);
    const auto th = ThermalState::from_occupation(double(state.range(0)), 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(absorption_discrete(g, molecule(1.0, 0.025, 1.0), KernelParams{0.1, 1.3, 1.0}, th));
}
BENCHMARK(BM_AbsorptionDiscrete)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_PhononExponentSeries(benchmark::State& state) {
    const auto sd = SpectralDensity::three_d(0.02, 3.0);
    const ThermalState th{30.0 * kKelvinToRadPerPs};
    for (auto _ : state)
        benchmark::DoNotOptimize(phonon_exponent_series(1.0 / 24.0, std::size_t(state.range(0)), sd, th));
}
BENCHMARK(BM_PhononExponentSeries)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_AbsorptionFullWithPhonons(benchmark::State& state) {
    const auto sd = SpectralDensity::three_d(0.02, 3.0);
    const auto g = grid(-4.5, 4.5, 0.005);
    const ThermalState th{30.0 * kKelvinToRadPerPs};
    for (auto _ : state)
        benchmark::DoNotOptimize(absorption_full(g, molecule(0.0, 0.02, 6.0), KernelParams{0.0, kInf, 6.0}, sd, th));
}
BENCHMARK(BM_AbsorptionFullWithPhonons)->Unit(benchmark::kMillisecond);

void BM_CavityTransmission(benchmark::State& state) {
    const auto env = grid(-5.0, 5.0, 0.005);
    CavityParams c;
    c.kappa = 1.0;
    c.g = 3.0;
    const auto th = ThermalState::from_occupation(1.0, 6.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(transmission(env, c, molecule(0.8, 0.05, 6.0), KernelParams{0.48, kInf, 6.0}, th));
}
BENCHMARK(BM_CavityTransmission)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
