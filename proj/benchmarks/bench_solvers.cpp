#include <benchmark/benchmark.h>

#include "sorf/sorf.hpp"

namespace {

using namespace sorf;

struct Setup {
    GegenbauerSobolevConfig config;
    DiscreteSobolevSpec spec;
    JordanSystem system;
    PoleList poles;
};

Setup gegenbauer_setup(int N)
{
    Setup s;
    s.config.N = N;
    s.spec = discretize_gegenbauer(s.config);
    s.system = build_jordan(s.spec);
    s.poles = default_pole_list(to_poles(s.config.prescribed_poles()), s.spec);
    return s;
}

void BM_Updating(benchmark::State& state)
{
    const Setup s = gegenbauer_setup(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_updating(s.spec, s.poles));
    }
    state.counters["m"] = static_cast<double>(s.spec.dim());
}

void BM_Sop(benchmark::State& state)
{
    const Setup s = gegenbauer_setup(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_via_sop(s.spec, s.poles));
    }
    state.counters["m"] = static_cast<double>(s.spec.dim());
}

void BM_Krylov(benchmark::State& state)
{
    const Setup s = gegenbauer_setup(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rational_arnoldi(s.system, s.poles));
    }
    state.counters["m"] = static_cast<double>(s.spec.dim());
}

void BM_RationalGauss(benchmark::State& state)
{
    GegenbauerSobolevConfig c;
    c.N = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gegenbauer_rule(c));
    }
}

void BM_ContinuousMoments(benchmark::State& state)
{
    const Setup s = gegenbauer_setup(static_cast<int>(state.range(0)));
    const IEPSolution sol = solve_updating(s.spec, s.poles);
    for (auto _ : state) {
        benchmark::DoNotOptimize(continuous_moment_matrix(s.config, sol, s.config.N));
    }
}

}  // namespace

BENCHMARK(BM_Updating)->DenseRange(2, 8, 2)->Arg(16);
BENCHMARK(BM_Sop)->DenseRange(2, 8, 2)->Arg(16);
BENCHMARK(BM_Krylov)->DenseRange(2, 8, 2)->Arg(16);
BENCHMARK(BM_RationalGauss)->DenseRange(2, 8, 2);
BENCHMARK(BM_ContinuousMoments)->DenseRange(2, 8, 2);

BENCHMARK_MAIN();
