#include <benchmark/benchmark.h>

#include <cmath>

#include "specshrink/specshrink.hpp"

using namespace specshrink;

static void BM_PowerLawIntegral(benchmark::State& state) {
    const auto spec = Spectrum::power_law(0.5, state.range(0), state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(integrate(spec, [](double s) { return s / (0.1 + s); }));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PowerLawIntegral)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_GDClassExcess(benchmark::State& state) {
    const auto r = state.range(0);
    const auto spec = Spectrum::power_law(0.5, r, r);
    ProblemParams p{r, r, std::sqrt(0.05), 1.0};
    const auto cls = gd_class(default_gd_step(100, 0.0356), 100);
    for (auto _ : state) benchmark::DoNotOptimize(class_excess(cls, spec, p).best_excess);
}
BENCHMARK(BM_GDClassExcess)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_RidgeClassExcess(benchmark::State& state) {
    const auto r = state.range(0);
    const auto spec = Spectrum::power_law(0.5, r, r);
    ProblemParams p{r, r, std::sqrt(0.05), 1.0};
    const auto cls = ridge_uniform(0.0356, 100);
    ScanOptions opts;
    opts.ridge_bracketing = state.range(1) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(class_excess(cls, spec, p, opts).best_excess);
}
BENCHMARK(BM_RidgeClassExcess)->Args({100'000, 0})->Args({100'000, 1})->Unit(benchmark::kMillisecond);

static void BM_MaxMinOracle(benchmark::State& state) {
    const OrthogonalSetting set{1.0, 4.0, 4.5, state.range(0)};
    const auto cls = gd_class(8.0 / static_cast<double>(set.k), set.k);
    for (auto _ : state) benchmark::DoNotOptimize(maxmin_oracle(cls, set, 100'000).value);
}
BENCHMARK(BM_MaxMinOracle)->Arg(16)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_Kp1Descent(benchmark::State& state) {
    const OrthogonalSetting set{1.0, 1.0, 10.0, state.range(0)};
    for (auto _ : state) benchmark::DoNotOptimize(kp1_descent_oracle(set).value);
}
BENCHMARK(BM_Kp1Descent)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_Philox(benchmark::State& state) {
    Philox4x32 gen(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(gen());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Philox);

static void BM_RunSim(benchmark::State& state) {
    const auto cfg = fig3_preset(2000, 200, 0.1, 0.1, 4, 1);
    for (auto _ : state) benchmark::DoNotOptimize(run_sim(cfg).ratio);
}
BENCHMARK(BM_RunSim)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
