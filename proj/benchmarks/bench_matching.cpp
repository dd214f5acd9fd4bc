#include <benchmark/benchmark.h>

#include "sceneval/matching.hpp"
#include "sceneval/synthgen.hpp"

using namespace sceneval;

static void BM_HopcroftKarp(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    BipartiteGraph g;
    g.n_left = n;
    g.n_right = n;
    g.adj.assign(n, {});
    std::uint64_t rng = 5;
    for (int u = 0; u < n; ++u) {
        for (int k = 0; k < 8; ++k) {
            rng = rng * 6364136223846793005ull + 1442695040888963407ull;
            g.adj[u].push_back(static_cast<int>((rng >> 33) % n));
        }
    }
    for (auto _ : state) {
        auto pairs = max_cardinality_matching(g);
        benchmark::DoNotOptimize(pairs.size());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_HopcroftKarp)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_LocalizationReport(benchmark::State& state) {
    SynthConfig config;
    config.scene_width_m = static_cast<double>(state.range(0));
    config.scene_height_m = config.scene_width_m;
    config.resolution_m = 0.3;
    config.n_animals = static_cast<int>(config.scene_width_m / 8);
    config.label_jitter_max_m = 2.0;
    config.fp_rate = 0.2;
    config.fn_rate = 0.1;
    config.seed = 17;
    SynthScene scene = generate(config);
    ComponentSet set = connected_components(scene.prediction);
    for (auto _ : state) {
        LocalizationReport report =
            localization_report(set, scene.labels.points, 4.0);
        benchmark::DoNotOptimize(report.conservative.tp);
    }
}
BENCHMARK(BM_LocalizationReport)->Arg(300)->Arg(600);
