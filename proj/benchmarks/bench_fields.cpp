#include <benchmark/benchmark.h>

#include "faddeev/field_core.hpp"
#include "faddeev/pde_verify.hpp"
#include "faddeev/reduced_ode.hpp"
#include "faddeev/topology.hpp"

using namespace faddeev;

namespace {

const ProfileSolution& profile11() {
    static const ProfileSolution sol = integrate_profile({1, 1, 1.0});
    return sol;
}

}  // namespace

static void BM_SampleFields(benchmark::State& state) {
    const ProfileSolution& sol = profile11();
    double rho = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_fields({rho, 1.1, 2.2}, sol));
        rho = rho < 2.0 ? rho + 1e-4 : 0.3;
    }
}
BENCHMARK(BM_SampleFields);

static void BM_HopfReduced(benchmark::State& state) {
    const ProfileSolution& sol = profile11();
    for (auto _ : state) {
        benchmark::DoNotOptimize(hopf_reduced(sol).value);
    }
}
BENCHMARK(BM_HopfReduced)->Unit(benchmark::kMillisecond);

static void BM_HopfGrid3d(benchmark::State& state) {
    const ProfileSolution& sol = profile11();
    const int n_rho = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hopf_grid3d(sol, {n_rho, 16, 16, 1e-3}).value);
    }
}
BENCHMARK(BM_HopfGrid3d)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_FieldEquationResidual(benchmark::State& state) {
    const ProfileSolution& sol = profile11();
    VerifyGridSpec spec = default_verify_window(sol);
    spec.n_rho = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(field_equation_residual(sol, spec).linf_norm);
    }
}
BENCHMARK(BM_FieldEquationResidual)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
