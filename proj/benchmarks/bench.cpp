// google-benchmark microbenchmarks for the hot paths: matching generation,
// exploration walks, percolation constructions, the coalescent event loop and
// the hub-kernel quadrature.
#include <benchmark/benchmark.h>

#include "critlab/coalescent.hpp"
#include "critlab/degrees.hpp"
#include "critlab/exploration.hpp"
#include "critlab/graph.hpp"
#include "critlab/limitgraph.hpp"
#include "critlab/limits.hpp"
#include "critlab/percolation.hpp"
#include "critlab/rng.hpp"

using namespace critlab;

static void BM_ConfigModel(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const DegreeSequence d = build_power_law_degrees(3.5, n, 0.3, 0.0);
    Rng rng = make_rng(1);
    for (auto _ : state) {
        MultiGraph g = config_model(d, rng);
        benchmark::DoNotOptimize(g.matching.data());
    }
    state.SetItemsProcessed(state.iterations() * d.total);
}
BENCHMARK(BM_ConfigModel)->Arg(10000)->Arg(100000)->Arg(1000000);

static void BM_ExploreDfs(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const DegreeSequence d = build_power_law_degrees(3.5, n, 0.3, 0.0);
    Rng rng = make_rng(2);
    for (auto _ : state) {
        ExploreResult res = explore_dfs(d, rng);
        benchmark::DoNotOptimize(res.walk.values.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ExploreDfs)->Arg(10000)->Arg(100000);

static void BM_ExploreUnit(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const DegreeSequence d = build_power_law_degrees(3.5, n, 0.3, 0.0);
    Rng rng = make_rng(3);
    for (auto _ : state) {
        ExploreResult res = explore_unit(d, rng);
        benchmark::DoNotOptimize(res.walk.values.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ExploreUnit)->Arg(10000)->Arg(100000);

static void BM_FountoulakisPercolate(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const DegreeSequence d = build_power_law_degrees(2.5, n, 1.0, 0.0);
    Rng rng = make_rng(4);
    const double p = 2.0 / criticality(d, scaling_constants(2.5, n), 1).nu_n;
    for (auto _ : state) {
        PercolatedGraph pg = fountoulakis_percolate(d, p, rng);
        benchmark::DoNotOptimize(pg.retained_half_edges.data());
    }
}
BENCHMARK(BM_FountoulakisPercolate)->Arg(100000)->Arg(1000000);

static void BM_GillespieMC(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    std::vector<double> x0(m, 1.0);
    Rng rng = make_rng(5);
    for (auto _ : state) {
        CoalTrajectory traj = simulate_mc(x0, 2.0 / m, 1.0, rng);
        benchmark::DoNotOptimize(traj.final_masses.data());
    }
}
BENCHMARK(BM_GillespieMC)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_BmParabolicPath(benchmark::State& state) {
    Rng rng = make_rng(6);
    for (auto _ : state) {
        LimitPath p = simulate_bm_parabolic(1.5, 2.25, 0.0, 20.0, 1e-3, rng);
        benchmark::DoNotOptimize(p.values.data());
    }
}
BENCHMARK(BM_BmParabolicPath);

static void BM_LambdaIJ(benchmark::State& state) {
    HubKernel k;
    k.alpha = 2.0 / 3.0;
    k.mu = 3.0;
    k.cF = 1.0;
    int i = 1;
    for (auto _ : state) {
        double v = lambda_ij(i, i + 1, 0.3, k);
        benchmark::DoNotOptimize(v);
        i = i % 50 + 1;
    }
}
BENCHMARK(BM_LambdaIJ);

BENCHMARK_MAIN();
