#pragma once

#include <cstdint>
#include <vector>

#include "sceneval/counting.hpp"
#include "sceneval/labels.hpp"
#include "sceneval/matching.hpp"

namespace sceneval {

// Configuration for one synthetic scene. The same seed and config always
// reproduce byte-identical outputs (the generator uses its own portable RNG).
struct SynthConfig {
    double scene_width_m = 1000.0;
    double scene_height_m = 1000.0;
    double resolution_m = 0.3;
    int n_animals = 100;
    double label_jitter_max_m = 0.0; // labels displaced uniformly in this disk
    int blob_radius_px = 2;          // predicted blobs are pixel disks
    double fp_rate = 0.0;            // spurious blobs per true animal
    double fn_rate = 0.0;            // fraction of animals with no blob
    std::uint64_t seed = 0;
};

// A generated scene plus the bookkeeping that makes it a known-answer
// oracle. Blob centers are separated far enough that, for any cutoff
// d in [valid_d_min, valid_d_max), each label can only reach its own blob
// and the expected match results below are exact.
struct SynthScene {
    Raster scene;      // panchromatic backdrop with bright blobs
    Raster prediction; // binary blob raster

    std::vector<WorldPoint> true_points;     // snapped blob centers, all animals
    PointLabelSet labels;                    // jittered annotations, all animals
    std::vector<WorldPoint> spurious_points; // centers of spurious blobs

    std::vector<std::size_t> dropped; // animal indices with no blob (fn)
    int n_spurious = 0;

    MatchResult expected_optimistic;
    MatchResult expected_conservative; // pairs left empty: ids depend on labeling
    double valid_d_min = 0.0;
    double valid_d_max = 0.0;
};

SynthScene generate(const SynthConfig& config);

// Brute-force point-in-cell assignment of the jittered labels (gt) and the
// kept blob centers (pred); independent of the grid's index arithmetic.
CellCounts expected_cell_counts(const SynthScene& scene, const GridSpec& grid);

// Expected counting metrics at cell size r_m, from expected_cell_counts.
CountingReport expected_counting(const SynthScene& scene, double r_m);

} // namespace sceneval
