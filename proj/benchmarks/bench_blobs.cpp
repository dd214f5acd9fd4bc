#include <benchmark/benchmark.h>

#include "sceneval/blobs.hpp"
#include "sceneval/synthgen.hpp"

using namespace sceneval;

namespace {

Raster noise_raster(int side, double fill, std::uint64_t seed) {
    Raster r(side, side, RasterKind::Binary, {0, 0, 0.3, 0.3});
    std::uint64_t state = seed;
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            if ((state >> 40) % 1000 < fill * 1000) r.set(x, y, 1.0);
        }
    }
    return r;
}

} // namespace

static void BM_ConnectedComponentsNoise(benchmark::State& state) {
    int side = static_cast<int>(state.range(0));
    Raster r = noise_raster(side, 0.2, 7);
    for (auto _ : state) {
        ComponentSet set = connected_components(r);
        benchmark::DoNotOptimize(set.components().size());
    }
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_ConnectedComponentsNoise)->Arg(256)->Arg(1024)->Arg(2048);

static void BM_ConnectedComponentsBlobs(benchmark::State& state) {
    SynthConfig config;
    config.scene_width_m = static_cast<double>(state.range(0));
    config.scene_height_m = config.scene_width_m;
    config.resolution_m = 0.3;
    config.n_animals = static_cast<int>(config.scene_width_m / 10);
    config.seed = 3;
    SynthScene scene = generate(config);
    for (auto _ : state) {
        ComponentSet set = connected_components(scene.prediction);
        benchmark::DoNotOptimize(set.components().size());
    }
}
BENCHMARK(BM_ConnectedComponentsBlobs)->Arg(300)->Arg(600);

static void BM_ThresholdDensity(benchmark::State& state) {
    int side = static_cast<int>(state.range(0));
    Raster r(side, side, RasterKind::Density, {0, 0, 0.3, 0.3}, 0.25);
    for (auto _ : state) {
        Raster t = threshold_density(r, 0.5);
        benchmark::DoNotOptimize(t.values().data());
    }
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_ThresholdDensity)->Arg(1024)->Arg(2048);
