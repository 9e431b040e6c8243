#include <benchmark/benchmark.h>

#include "faddeev/reduced_ode.hpp"

using namespace faddeev;

static void BM_OdeRhs(benchmark::State& state) {
    const AnsatzParams params{1, 1, 1.0};
    OdeState s{1.3, 0.8, 1.1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(ode_rhs(s, params));
    }
}
BENCHMARK(BM_OdeRhs);

static void BM_IntegrateSingular(benchmark::State& state) {
    for (auto _ : state) {
        const ProfileSolution sol = integrate_profile({1, 1, 1.0});
        benchmark::DoNotOptimize(sol.samples.size());
    }
}
BENCHMARK(BM_IntegrateSingular)->Unit(benchmark::kMillisecond);

static void BM_IntegrateBounded(benchmark::State& state) {
    for (auto _ : state) {
        const ProfileSolution sol = integrate_profile({1, 2, 1.0});
        benchmark::DoNotOptimize(sol.samples.size());
    }
}
BENCHMARK(BM_IntegrateBounded)->Unit(benchmark::kMillisecond);

static void BM_ScanCoefficient(benchmark::State& state) {
    const int steps = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan_coefficient(1, 1, 1.0, 2.0, steps));
    }
    state.SetComplexityN(steps);
}
BENCHMARK(BM_ScanCoefficient)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
