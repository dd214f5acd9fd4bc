#include "sceneval/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sceneval {

namespace {

// splitmix64: portable and stable across platforms, unlike the standard
// library distributions.
struct SplitMix {
    std::uint64_t state;

    explicit SplitMix(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
};

double hash01(std::uint64_t seed, std::uint64_t x, std::uint64_t y) {
    SplitMix h(seed ^ (y * 0x9e3779b97f4a7c15ull + x * 0xbf58476d1ce4e5b9ull));
    return h.uniform();
}

void validate_config(const SynthConfig& c) {
    if (!(c.scene_width_m > 0.0) || !(c.scene_height_m > 0.0) ||
        !(c.resolution_m > 0.0)) {
        throw InputError("synth scene dimensions and resolution must be positive");
    }
    if (c.n_animals < 0) {
        throw InputError("synth n_animals must be >= 0");
    }
    if (c.label_jitter_max_m < 0.0) {
        throw InputError("synth label jitter must be >= 0");
    }
    if (c.blob_radius_px < 1) {
        throw InputError("synth blob radius must be >= 1 pixel");
    }
    if (c.fp_rate < 0.0 || c.fp_rate > 1.0 || c.fn_rate < 0.0 ||
        c.fn_rate > 1.0) {
        throw InputError("synth fp_rate and fn_rate must lie in [0, 1]");
    }
}

} // namespace

SynthScene generate(const SynthConfig& config) {
    validate_config(config);
    const double res = config.resolution_m;
    const int width =
        std::max(1, static_cast<int>(std::llround(config.scene_width_m / res)));
    const int height = std::max(
        1, static_cast<int>(std::llround(config.scene_height_m / res)));
    const AffineGeoref georef{0.0, 0.0, res, res};

    // Pixel-disk blob template and its true world radius.
    std::vector<PixelCoord> blob;
    const int rad = config.blob_radius_px;
    double blob_radius_m = 0.0;
    for (int dy = -rad; dy <= rad; ++dy) {
        for (int dx = -rad; dx <= rad; ++dx) {
            if (dx * dx + dy * dy <= rad * rad) {
                blob.push_back({dx, dy});
                blob_radius_m =
                    std::max(blob_radius_m, std::hypot(dx * res, dy * res));
            }
        }
    }

    const double jitter = config.label_jitter_max_m;
    // Separation keeps every label reachable only from its own blob for any
    // cutoff below valid_d_max, and keeps blobs from merging.
    const double separation =
        2.0 * (blob_radius_m + jitter) + 2.0 + 2.0 * res;
    const double margin_m = blob_radius_m + jitter + 2.0 * res;
    const int margin_px = static_cast<int>(std::ceil(margin_m / res)) + 1;

    const int n = config.n_animals;
    const int n_spurious =
        static_cast<int>(std::llround(config.fp_rate * n));
    const int n_total = n + n_spurious;

    if (n_total > 0 &&
        (width - 2 * margin_px <= 0 || height - 2 * margin_px <= 0)) {
        throw InputError("synth scene too small for the blob radius and jitter");
    }

    SplitMix rng(config.seed * 0x2545f4914f6cdd1dull + 1);

    std::vector<PixelCoord> centers_px;
    std::vector<WorldPoint> centers;
    centers.reserve(n_total);
    double min_separation = std::numeric_limits<double>::infinity();
    std::uint64_t attempts = 0;
    const std::uint64_t max_attempts =
        10000ull * static_cast<std::uint64_t>(std::max(1, n_total));
    while (static_cast<int>(centers.size()) < n_total) {
        if (++attempts > max_attempts) {
            throw InputError(
                "synth placement infeasible: animal density too high for the "
                "separation constraint; shrink n_animals or the blob radius");
        }
        int px = margin_px +
                 static_cast<int>(rng.below(width - 2 * margin_px));
        int py = margin_px +
                 static_cast<int>(rng.below(height - 2 * margin_px));
        WorldPoint w = georef.pixel_to_world(px, py);
        bool ok = true;
        double nearest = std::numeric_limits<double>::infinity();
        for (const WorldPoint& c : centers) {
            double dist = std::hypot(w.x - c.x, w.y - c.y);
            nearest = std::min(nearest, dist);
            if (dist < separation) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        min_separation = std::min(min_separation, nearest);
        centers_px.push_back({px, py});
        centers.push_back(w);
    }

    // Choose which animals lose their blob (false negatives).
    const int n_drop = static_cast<int>(std::llround(config.fn_rate * n));
    std::vector<std::size_t> order(n);
    for (int i = 0; i < n; ++i) order[i] = static_cast<std::size_t>(i);
    for (int i = 0; i < n_drop; ++i) {
        std::size_t j = i + rng.below(n - i);
        std::swap(order[i], order[j]);
    }
    std::vector<std::size_t> dropped(order.begin(), order.begin() + n_drop);
    std::sort(dropped.begin(), dropped.end());
    std::vector<char> is_dropped(n, 0);
    for (std::size_t i : dropped) is_dropped[i] = 1;

    // Prediction raster: kept true blobs plus all spurious blobs.
    Raster prediction(width, height, RasterKind::Binary, georef);
    auto splat = [&](PixelCoord c) {
        for (const PixelCoord& off : blob) {
            prediction.set(c.x + off.x, c.y + off.y, 1.0);
        }
    };
    for (int i = 0; i < n; ++i) {
        if (!is_dropped[i]) splat(centers_px[i]);
    }
    for (int i = n; i < n_total; ++i) splat(centers_px[i]);

    // Panchromatic backdrop: dim noise with bright pixels where blobs sit,
    // drawn for all animals (the imagery shows them even when the
    // "model" misses them).
    Raster scene(width, height, RasterKind::Panchromatic, georef);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            scene.set(x, y, 0.15 + 0.10 * hash01(config.seed, x, y));
        }
    }
    for (int i = 0; i < n; ++i) {
        for (const PixelCoord& off : blob) {
            int x = centers_px[i].x + off.x;
            int y = centers_px[i].y + off.y;
            scene.set(x, y, 0.85 + 0.10 * hash01(config.seed ^ 0xb10bull, x, y));
        }
    }

    // Jittered labels, one per animal, uniform in a disk around the snapped
    // blob center.
    PointLabelSet labels;
    labels.noise_radius_d = jitter;
    labels.class_tag = "cattle_elk";
    labels.points.reserve(n);
    for (int i = 0; i < n; ++i) {
        WorldPoint p = centers[i];
        if (jitter > 0.0) {
            double radius = jitter * std::sqrt(rng.uniform());
            double angle = 2.0 * std::numbers::pi * rng.uniform();
            p.x += radius * std::cos(angle);
            p.y += radius * std::sin(angle);
        }
        labels.points.push_back(p);
    }

    SynthScene out{std::move(scene),
                   std::move(prediction),
                   std::vector<WorldPoint>(centers.begin(), centers.begin() + n),
                   std::move(labels),
                   std::vector<WorldPoint>(centers.begin() + n, centers.end()),
                   std::move(dropped),
                   n_spurious,
                   {},
                   {},
                   0.0,
                   0.0};
    const std::int64_t kept = n - n_drop;
    out.expected_optimistic = {MatchMode::Optimistic, jitter, kept, n_spurious,
                               n_drop, {}};
    out.expected_conservative = {MatchMode::Conservative, jitter, kept,
                                 n_spurious, n_drop, {}};
    out.valid_d_min = jitter;
    out.valid_d_max =
        n_total > 1
            ? min_separation - blob_radius_m - jitter - 1e-9
            : std::numeric_limits<double>::infinity();
    return out;
}

CellCounts expected_cell_counts(const SynthScene& scene, const GridSpec& grid) {
    auto assign = [&grid](const std::vector<WorldPoint>& points,
                          std::vector<double>& counts) {
        for (const WorldPoint& p : points) {
            for (std::size_t i = 0; i < grid.cells.size(); ++i) {
                if (grid.cells[i].bounds.contains(p.x, p.y)) {
                    counts[i] += 1.0;
                    break;
                }
            }
        }
    };
    CellCounts counts;
    counts.grid = grid;
    counts.source = CountSource::Segmentation;
    counts.gt.assign(grid.cells.size(), 0.0);
    counts.pred.assign(grid.cells.size(), 0.0);
    assign(scene.labels.points, counts.gt);

    std::vector<char> is_dropped(scene.true_points.size(), 0);
    for (std::size_t i : scene.dropped) is_dropped[i] = 1;
    std::vector<WorldPoint> blob_centers;
    for (std::size_t i = 0; i < scene.true_points.size(); ++i) {
        if (!is_dropped[i]) blob_centers.push_back(scene.true_points[i]);
    }
    blob_centers.insert(blob_centers.end(), scene.spurious_points.begin(),
                        scene.spurious_points.end());
    assign(blob_centers, counts.pred);
    return counts;
}

CountingReport expected_counting(const SynthScene& scene, double r_m) {
    GridSpec grid = make_grid(scene.prediction, r_m);
    CellCounts counts = expected_cell_counts(scene, grid);

    CountingReport report;
    report.cell_size_m = r_m;
    report.n_cells = static_cast<std::int64_t>(grid.cells.size());
    report.n_partial_cells = grid.n_partial_cells();
    double abs_err = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < counts.gt.size(); ++i) {
        abs_err += std::fabs(counts.pred[i] - counts.gt[i]);
        mean += counts.gt[i];
        report.total_gt += counts.gt[i];
        report.total_pred += counts.pred[i];
    }
    report.gmae = abs_err / static_cast<double>(counts.gt.size());
    report.gmae_per_km2 = report.gmae * 1e6 / (r_m * r_m);
    mean /= static_cast<double>(counts.gt.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < counts.gt.size(); ++i) {
        ss_res += (counts.gt[i] - counts.pred[i]) * (counts.gt[i] - counts.pred[i]);
        ss_tot += (counts.gt[i] - mean) * (counts.gt[i] - mean);
    }
    if (ss_tot > 0.0) {
        report.r_squared = {1.0 - ss_res / ss_tot, true};
    } else {
        report.r_squared = {std::numeric_limits<double>::quiet_NaN(), false};
    }
    return report;
}

} // namespace sceneval
