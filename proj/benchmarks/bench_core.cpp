#include <benchmark/benchmark.h>

#include "sairs/equilibria.hpp"
#include "sairs/numerics.hpp"
#include "sairs/reproduction.hpp"
#include "sairs/simulate.hpp"

namespace {

using namespace sairs;

ModelParams ring_params(int n) {
    const NetworkTopology topo = make_topology(TopologyKind::Ring, n);
    return ModelParams::create(build_beta(topo, 0.8, 0.4), build_beta(topo, 0.95, 0.475),
                               Vector::Constant(n, 1.0 / 25550.0), Vector::Constant(n, 0.01), 0.8,
                               0.02, 0.1, 0.51);
}

void BM_RhsReduced(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ModelParams params = ring_params(n);
    Vector x = Vector::Zero(3 * n);
    for (int g = 0; g < n; ++g) x[3 * g] = 0.6, x[3 * g + 1] = 0.1, x[3 * g + 2] = 0.1;
    const StateVector sv{StateLayout::Reduced3N, x};
    for (auto _ : state) {
        benchmark::DoNotOptimize(rhs_reduced(params, sv));
    }
}
BENCHMARK(BM_RhsReduced)->Arg(9)->Arg(50);

void BM_JacobianReduced(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ModelParams params = ring_params(n);
    Vector x = Vector::Zero(3 * n);
    for (int g = 0; g < n; ++g) x[3 * g] = 0.6, x[3 * g + 1] = 0.1, x[3 * g + 2] = 0.1;
    const StateVector sv{StateLayout::Reduced3N, x};
    for (auto _ : state) {
        benchmark::DoNotOptimize(jacobian_reduced(params, sv));
    }
}
BENCHMARK(BM_JacobianReduced)->Arg(9)->Arg(50);

void BM_NextGenDecomposition(benchmark::State& state) {
    const ModelParams params = ring_params(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(next_gen_decomposition(params));
    }
}
BENCHMARK(BM_NextGenDecomposition)->Arg(9)->Arg(50);

void BM_SolveEndemic(benchmark::State& state) {
    const ModelParams params = ring_params(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_endemic(params));
    }
}
BENCHMARK(BM_SolveEndemic)->Arg(9)->Arg(50);

void BM_RunScenario(benchmark::State& state) {
    ScenarioConfig config;
    config.kind = TopologyKind::Ring;
    config.n = 9;
    config.t_end = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scenario(config));
    }
}
BENCHMARK(BM_RunScenario)->Arg(20)->Arg(80);

}  // namespace

BENCHMARK_MAIN();
