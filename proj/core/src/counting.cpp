#include "sceneval/counting.hpp"

#include <cmath>

#include "sceneval/parallel.hpp"

namespace sceneval {

namespace {

void check_grid_alignment(const Raster& raster, const GridSpec& grid) {
    if (!raster.georef().approx_equal(grid.scene_georef) ||
        std::fabs(raster.extent_width_m() - grid.extent_width_m) > 1e-6 ||
        std::fabs(raster.extent_height_m() - grid.extent_height_m) > 1e-6) {
        throw GeorefMismatchError(
            "raster is not aligned to the grid's scene layout");
    }
}

void check_counts(const CellCounts& counts) {
    if (counts.gt.size() != counts.grid.cells.size() ||
        counts.pred.size() != counts.grid.cells.size()) {
        throw InputError("cell count vectors do not match the grid");
    }
    if (counts.grid.cells.empty()) {
        throw InputError("grid has no cells");
    }
    for (std::size_t i = 0; i < counts.gt.size(); ++i) {
        if (!std::isfinite(counts.gt[i]) || !std::isfinite(counts.pred[i]) ||
            counts.gt[i] < 0.0 || counts.pred[i] < 0.0) {
            throw InputError("cell counts must be finite and non-negative");
        }
    }
}

} // namespace

std::vector<double> counts_from_density(const Raster& pred,
                                        const GridSpec& grid) {
    if (pred.kind() != RasterKind::Density) {
        throw InputError("counts_from_density requires a density raster, got " +
                         std::string(raster_kind_name(pred.kind())));
    }
    check_grid_alignment(pred, grid);

    const int w = pred.width();
    const int h = pred.height();
    const double r = grid.cell_size_m;
    const AffineGeoref& g = pred.georef();
    const std::size_t n_cells = grid.cells.size();

    // Per-chunk partial sums reduced in chunk order keep the result
    // independent of SCENE_EVAL_THREADS.
    std::vector<std::vector<double>> partials(64);
    parallel_chunks(h, [&](int chunk, std::int64_t y0, std::int64_t y1) {
        std::vector<double>& local = partials[chunk];
        local.assign(n_cells, 0.0);
        for (std::int64_t y = y0; y < y1; ++y) {
            int row = static_cast<int>(std::floor(y * g.res_y / r));
            if (row >= grid.n_rows) row = grid.n_rows - 1;
            const std::int32_t* row_index =
                grid.retained_index.data() +
                static_cast<std::size_t>(row) * grid.n_cols;
            for (int x = 0; x < w; ++x) {
                double v = pred.at(x, static_cast<int>(y));
                if (v == 0.0) continue;
                int col = static_cast<int>(std::floor(x * g.res_x / r));
                if (col >= grid.n_cols) col = grid.n_cols - 1;
                std::int32_t idx = row_index[col];
                if (idx >= 0) local[idx] += v;
            }
        }
    });
    std::vector<double> counts(n_cells, 0.0);
    for (const auto& local : partials) {
        if (local.empty()) continue;
        for (std::size_t i = 0; i < n_cells; ++i) counts[i] += local[i];
    }
    return counts;
}

std::vector<double> counts_from_segmentation(
    std::span<const Component> components, const GridSpec& grid) {
    std::vector<double> counts(grid.cells.size(), 0.0);
    for (const Component& c : components) {
        int idx = grid.cell_index_at(c.centroid_world.x, c.centroid_world.y);
        if (idx >= 0) counts[idx] += 1.0;
    }
    return counts;
}

PointCounts counts_from_points(std::span<const WorldPoint> points,
                               const GridSpec& grid) {
    PointCounts result;
    result.counts.assign(grid.cells.size(), 0.0);
    for (const WorldPoint& p : points) {
        int idx = grid.cell_index_at(p.x, p.y);
        if (idx >= 0) {
            result.counts[idx] += 1.0;
        } else {
            ++result.dropped;
        }
    }
    return result;
}

double gmae(const CellCounts& counts) {
    check_counts(counts);
    double sum = 0.0;
    for (std::size_t i = 0; i < counts.gt.size(); ++i) {
        sum += std::fabs(counts.pred[i] - counts.gt[i]);
    }
    return sum / static_cast<double>(counts.gt.size());
}

double gmae_per_km2(double gmae_value, double r_m) {
    if (!(r_m > 0.0)) {
        throw InputError("cell size r must be positive");
    }
    return gmae_value * 1e6 / (r_m * r_m);
}

RSquared r_squared(const CellCounts& counts) {
    check_counts(counts);
    const std::size_t n = counts.gt.size();
    double mean = 0.0;
    for (double v : counts.gt) mean += v;
    mean /= static_cast<double>(n);
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = counts.gt[i] - counts.pred[i];
        double t = counts.gt[i] - mean;
        ss_res += r * r;
        ss_tot += t * t;
    }
    if (ss_tot == 0.0) {
        return {std::numeric_limits<double>::quiet_NaN(), false};
    }
    return {1.0 - ss_res / ss_tot, true};
}

CountingReport counting_report(const CellCounts& counts) {
    CountingReport report;
    report.cell_size_m = counts.grid.cell_size_m;
    report.n_cells = static_cast<std::int64_t>(counts.grid.cells.size());
    report.n_partial_cells = counts.grid.n_partial_cells();
    report.gmae = gmae(counts);
    report.gmae_per_km2 = gmae_per_km2(report.gmae, counts.grid.cell_size_m);
    report.r_squared = r_squared(counts);
    for (double v : counts.gt) report.total_gt += v;
    for (double v : counts.pred) report.total_pred += v;
    return report;
}

namespace {

std::vector<double> window_counts(std::span<const WorldPoint> points,
                                  double side, int windows_per_axis) {
    std::vector<double> counts(
        static_cast<std::size_t>(windows_per_axis) * windows_per_axis, 0.0);
    double win = side / windows_per_axis;
    for (const WorldPoint& p : points) {
        if (p.x < 0.0 || p.x >= side || p.y < 0.0 || p.y >= side) {
            throw InputError("patch point outside the patch square");
        }
        int cx = std::min(static_cast<int>(p.x / win), windows_per_axis - 1);
        int cy = std::min(static_cast<int>(p.y / win), windows_per_axis - 1);
        counts[static_cast<std::size_t>(cy) * windows_per_axis + cx] += 1.0;
    }
    return counts;
}

} // namespace

double game(std::span<const PatchSample> dataset, int level) {
    if (level < 0) {
        throw InputError("GAME level must be >= 0");
    }
    if (dataset.empty()) {
        throw InputError("GAME needs at least one patch");
    }
    int per_axis = 1 << level;
    double total = 0.0;
    for (const PatchSample& patch : dataset) {
        if (!(patch.side > 0.0)) {
            throw InputError("patch side must be positive");
        }
        std::vector<double> gt = window_counts(patch.gt, patch.side, per_axis);
        std::vector<double> pred =
            window_counts(patch.pred, patch.side, per_axis);
        for (std::size_t i = 0; i < gt.size(); ++i) {
            total += std::fabs(pred[i] - gt[i]);
        }
    }
    return total / static_cast<double>(dataset.size());
}

double game(std::span<const PatchCountGrid> dataset, int level) {
    if (level < 0) {
        throw InputError("GAME level must be >= 0");
    }
    if (dataset.empty()) {
        throw InputError("GAME needs at least one patch");
    }
    int per_axis = 1 << level;
    double total = 0.0;
    for (const PatchCountGrid& patch : dataset) {
        if (patch.n <= 0 || patch.n % per_axis != 0) {
            throw InputError("patch grid side must be divisible by 2^level");
        }
        if (patch.gt.size() != static_cast<std::size_t>(patch.n) * patch.n ||
            patch.pred.size() != patch.gt.size()) {
            throw InputError("patch grid size mismatch");
        }
        int block = patch.n / per_axis;
        for (int wy = 0; wy < per_axis; ++wy) {
            for (int wx = 0; wx < per_axis; ++wx) {
                double gt_sum = 0.0;
                double pred_sum = 0.0;
                for (int y = wy * block; y < (wy + 1) * block; ++y) {
                    for (int x = wx * block; x < (wx + 1) * block; ++x) {
                        std::size_t i =
                            static_cast<std::size_t>(y) * patch.n + x;
                        gt_sum += patch.gt[i];
                        pred_sum += patch.pred[i];
                    }
                }
                total += std::fabs(pred_sum - gt_sum);
            }
        }
    }
    return total / static_cast<double>(dataset.size());
}

} // namespace sceneval
