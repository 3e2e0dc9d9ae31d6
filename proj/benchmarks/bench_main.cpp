#include <benchmark/benchmark.h>

#include <gjsoq/gjsoq.hpp>

namespace {

const gjsoq::SystemParams kPrintedDifferences{0.15, 0.05, 0.01, 0.44, 0.25, 0.1};

}  // namespace

static void DeriveRates(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gjsoq::derive_rates(kPrintedDifferences));
}
BENCHMARK(DeriveRates);

static void SolveF(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gjsoq::solve_f(kPrintedDifferences));
}
BENCHMARK(SolveF);

static void DecayProfile(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gjsoq::decay_profile(kPrintedDifferences));
}
BENCHMARK(DecayProfile);

static void ApproxGrid(benchmark::State& state) {
    gjsoq::GridOptions opt;
    opt.i_max = opt.j_max = static_cast<int>(state.range());
    for (auto _ : state) benchmark::DoNotOptimize(gjsoq::approx_grid(kPrintedDifferences, opt));
    state.SetComplexityN(state.range());
}
BENCHMARK(ApproxGrid)->RangeMultiplier(2)->Range(16, 256)->Complexity();

static void RatioCurve(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gjsoq::ratio_curve(kPrintedDifferences, 500));
}
BENCHMARK(RatioCurve);

static void ReferenceDecay(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gjsoq::reference_decay_rate(kPrintedDifferences));
}
BENCHMARK(ReferenceDecay);

static void TruncatedSolve(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(gjsoq::solve_stationary(kPrintedDifferences, static_cast<int>(state.range())));
    state.SetComplexityN(state.range());
}
BENCHMARK(TruncatedSolve)->Arg(20)->Arg(40)->Arg(60)->Arg(100)->Unit(benchmark::kMillisecond);

static void Simulate(benchmark::State& state) {
    gjsoq::SimConfig cfg;
    cfg.horizon = static_cast<double>(state.range());
    cfg.seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(gjsoq::simulate(kPrintedDifferences, cfg));
}
BENCHMARK(Simulate)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
