#include <benchmark/benchmark.h>

#include "sceneval/distance.hpp"

using namespace sceneval;

static void BM_DistanceTransform(benchmark::State& state) {
    int side = static_cast<int>(state.range(0));
    Raster r(side, side, RasterKind::Binary, {0, 0, 0.3, 0.3});
    std::uint64_t rng = 99;
    for (int i = 0; i < side; ++i) {
        rng = rng * 6364136223846793005ull + 1442695040888963407ull;
        r.set(static_cast<int>((rng >> 33) % side),
              static_cast<int>((rng >> 13) % side), 1.0);
    }
    for (auto _ : state) {
        auto d = distance_to_foreground(r);
        benchmark::DoNotOptimize(d.data());
    }
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_DistanceTransform)->Arg(256)->Arg(1024)->Arg(2048);
