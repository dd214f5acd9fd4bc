#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sceneval/blobs.hpp"
#include "sceneval/geo.hpp"

namespace sceneval {

enum class CountSource { Density, Segmentation };

// Per-cell ground truth and predicted counts over one grid.
struct CellCounts {
    GridSpec grid;
    std::vector<double> gt;
    std::vector<double> pred;
    CountSource source = CountSource::Density;
};

struct RSquared {
    double value = 0.0;
    bool defined = false; // false when the ground truth has zero variance
};

// Scene-level counting metrics for one cell size.
struct CountingReport {
    double cell_size_m = 0.0;
    std::int64_t n_cells = 0;
    std::int64_t n_partial_cells = 0;
    double gmae = 0.0;
    double gmae_per_km2 = 0.0;
    RSquared r_squared{};
    double total_gt = 0.0;
    double total_pred = 0.0;
};

// Sum of density pixels whose sample points fall inside each retained cell.
// The raster must be aligned to the grid's scene layout.
std::vector<double> counts_from_density(const Raster& pred,
                                        const GridSpec& grid);

// Number of component centroids inside each retained cell (half-open cell
// membership, so a centroid on a shared edge is counted once).
std::vector<double> counts_from_segmentation(
    std::span<const Component> components, const GridSpec& grid);

struct PointCounts {
    std::vector<double> counts;
    std::int64_t dropped = 0; // points outside the scene extent or in dropped cells
};

// Point-in-cell counts for ground-truth label points.
PointCounts counts_from_points(std::span<const WorldPoint> points,
                               const GridSpec& grid);

// Mean absolute per-cell error: (1/|cells|) * sum |pred_i - gt_i|.
double gmae(const CellCounts& counts);

// Normalizes a gridded MAE at cell size r meters to an error per km².
double gmae_per_km2(double gmae_value, double r_m);

// Coefficient of determination between gt and pred cell counts. Undefined
// (flagged) when gt is constant across cells.
RSquared r_squared(const CellCounts& counts);

CountingReport counting_report(const CellCounts& counts);

// One fixed-size square patch with ground truth and predicted object
// positions in patch-local coordinates, 0 <= x,y < side.
struct PatchSample {
    double side = 0.0;
    std::vector<WorldPoint> gt;
    std::vector<WorldPoint> pred;
};

// Grid average mean absolute error over a patch dataset: each patch is split
// into 4^level equal windows and the per-window absolute count errors are
// summed, then averaged over patches. level 0 is plain MAE.
double game(std::span<const PatchSample> dataset, int level);

// GAME over pre-aggregated square count grids (n x n, n divisible by 2^level).
struct PatchCountGrid {
    int n = 0;
    std::vector<double> gt;   // n*n, row major
    std::vector<double> pred; // n*n, row major
};
double game(std::span<const PatchCountGrid> dataset, int level);

} // namespace sceneval
