// Parallel kernels against their serial references, and the two gadget modes.

#include <benchmark/benchmark.h>

#include <random>

#include "aapsm/generator.hpp"
#include "aapsm/pipeline.hpp"
#include "aapsm/reference.hpp"
#include "aapsm/tjoin.hpp"

using namespace aapsm;

namespace {

Layout scatter(int features) {
    GeneratorParams p;
    p.style = GeneratorStyle::Scatter;
    p.features = features;
    return generate_layout(7, p);
}

void BM_OverlapsParallel(benchmark::State& state) {
    const Layout l = scatter(static_cast<int>(state.range(0)));
    const auto sh = generate_shifters(l);
    for (auto _ : state) benchmark::DoNotOptimize(find_overlapping_pairs(sh, l.rules));
}

void BM_OverlapsReference(benchmark::State& state) {
    const Layout l = scatter(static_cast<int>(state.range(0)));
    const auto sh = generate_shifters(l);
    for (auto _ : state) benchmark::DoNotOptimize(reference::find_overlapping_pairs(sh, l.rules));
}

PhaseConflictGraph scatter_graph(int features) {
    const Layout l = scatter(features);
    const auto sh = generate_shifters(l);
    return build_pcg(sh, find_overlapping_pairs(sh, l.rules), l.rules);
}

void BM_CrossingsParallel(benchmark::State& state) {
    const auto g = scatter_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(find_crossings(g));
}

void BM_CrossingsReference(benchmark::State& state) {
    const auto g = scatter_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reference::find_crossings(g));
}

TJoinInstance random_instance(int n) {
    std::mt19937_64 rng(11);
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < 3 * n; ++i) {
        const int u = static_cast<int>(uniform_int(rng, 0, n - 1));
        const int v = static_cast<int>(uniform_int(rng, 0, n - 1));
        edges.push_back({u, v, uniform_int(rng, 1, 100)});
    }
    return make_odd_tjoin(n, edges);
}

void BM_TJoin(benchmark::State& state, GadgetMode mode) {
    const auto inst = random_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_tjoin(inst, mode));
}

void BM_Detect(benchmark::State& state, GadgetMode mode) {
    const Layout l = scatter(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(detect(l, {mode, {}, false}));
}

}  // namespace

BENCHMARK(BM_OverlapsParallel)->Arg(200)->Arg(800);
BENCHMARK(BM_OverlapsReference)->Arg(200)->Arg(800);
BENCHMARK(BM_CrossingsParallel)->Arg(200)->Arg(800);
BENCHMARK(BM_CrossingsReference)->Arg(200)->Arg(800);
BENCHMARK_CAPTURE(BM_TJoin, generalized, GadgetMode::Generalized)->Arg(100)->Arg(400);
BENCHMARK_CAPTURE(BM_TJoin, optimized, GadgetMode::Optimized)->Arg(100)->Arg(400);
BENCHMARK_CAPTURE(BM_Detect, generalized, GadgetMode::Generalized)->Arg(200);
BENCHMARK_CAPTURE(BM_Detect, optimized, GadgetMode::Optimized)->Arg(200);

BENCHMARK_MAIN();
