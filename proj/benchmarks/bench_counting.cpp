#include <benchmark/benchmark.h>

#include "sceneval/counting.hpp"

using namespace sceneval;

static void BM_CountsFromDensity(benchmark::State& state) {
    int side = static_cast<int>(state.range(0));
    Raster pred(side, side, RasterKind::Density, {0, 0, 0.3, 0.3});
    std::uint64_t rng = 31;
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            rng = rng * 6364136223846793005ull + 1442695040888963407ull;
            pred.set(x, y, static_cast<double>(rng >> 40) * 0x1.0p-24);
        }
    }
    GridSpec grid = make_grid(pred, 32.0);
    for (auto _ : state) {
        auto counts = counts_from_density(pred, grid);
        benchmark::DoNotOptimize(counts.data());
    }
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_CountsFromDensity)->Arg(1024)->Arg(2048);

static void BM_Gmae(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Raster scene(n * 4, 4, RasterKind::Panchromatic, {0, 0, 1.0, 1.0});
    CellCounts counts;
    counts.grid = make_grid(scene, 4.0);
    counts.gt.assign(n, 2.0);
    counts.pred.assign(n, 1.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gmae(counts));
    }
}
BENCHMARK(BM_Gmae)->Arg(1024)->Arg(65536);
