#include "sceneval/geo.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace sceneval {

PixelCoord AffineGeoref::snap(double wx, double wy) const {
    double px, py;
    world_to_pixel(wx, wy, px, py);
    // ceil(u - 0.5) rounds to nearest with ties toward the lower index.
    double cx = std::ceil(px - 0.5);
    double cy = std::ceil(py - 0.5);
    auto clamp_int = [](double v) {
        double lo = static_cast<double>(std::numeric_limits<int>::min());
        double hi = static_cast<double>(std::numeric_limits<int>::max());
        return static_cast<int>(std::min(hi, std::max(lo, v)));
    };
    return {clamp_int(cx), clamp_int(cy)};
}

bool AffineGeoref::approx_equal(const AffineGeoref& other, double tol) const {
    auto close = [tol](double a, double b) {
        double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
        return std::fabs(a - b) <= tol * scale;
    };
    return close(origin_x, other.origin_x) && close(origin_y, other.origin_y) &&
           close(res_x, other.res_x) && close(res_y, other.res_y);
}

void AffineGeoref::validate() const {
    if (!(res_x > 0.0) || !(res_y > 0.0) || !std::isfinite(res_x) ||
        !std::isfinite(res_y) || !std::isfinite(origin_x) ||
        !std::isfinite(origin_y)) {
        throw InputError("georef requires finite origin and positive resolution");
    }
}

const char* raster_kind_name(RasterKind kind) {
    switch (kind) {
    case RasterKind::Panchromatic: return "panchromatic";
    case RasterKind::Density: return "density";
    case RasterKind::Binary: return "binary";
    case RasterKind::Validity: return "validity";
    }
    return "unknown";
}

Raster::Raster(int width, int height, RasterKind kind, AffineGeoref georef,
               double fill)
    : width_(width), height_(height), kind_(kind), georef_(georef) {
    georef_.validate();
    if (width_ <= 0 || height_ <= 0) {
        throw InputError("raster dimensions must be positive");
    }
    band_.assign(static_cast<std::size_t>(width_) * height_, fill);
    if (fill != 0.0) {
        validate_kind();
    }
}

Raster::Raster(int width, int height, RasterKind kind, AffineGeoref georef,
               std::vector<double> band)
    : width_(width), height_(height), kind_(kind), georef_(georef),
      band_(std::move(band)) {
    georef_.validate();
    if (width_ <= 0 || height_ <= 0) {
        throw InputError("raster dimensions must be positive");
    }
    if (band_.size() != static_cast<std::size_t>(width_) * height_) {
        throw InputError("raster band size does not match width*height");
    }
    validate_kind();
}

WorldRect Raster::world_extent() const {
    return {georef_.origin_x, georef_.origin_y - extent_height_m(),
            georef_.origin_x + extent_width_m(), georef_.origin_y};
}

void Raster::validate_kind() const {
    bool want_binary =
        kind_ == RasterKind::Binary || kind_ == RasterKind::Validity;
    for (double v : band_) {
        if (!std::isfinite(v)) {
            throw InputError("raster contains non-finite values");
        }
        if (want_binary && v != 0.0 && v != 1.0) {
            std::ostringstream msg;
            msg << raster_kind_name(kind_) << " raster contains value " << v
                << " outside {0,1}";
            throw InputError(msg.str());
        }
        if (kind_ == RasterKind::Density && v < 0.0) {
            throw InputError("density raster contains negative values");
        }
    }
}

bool aligned(const Raster& a, const Raster& b, double tol) {
    return a.width() == b.width() && a.height() == b.height() &&
           a.georef().approx_equal(b.georef(), tol);
}

int GridSpec::cell_index_at(double wx, double wy) const {
    double dx = wx - scene_georef.origin_x;
    double dy = scene_georef.origin_y - wy;
    if (dx < 0.0 || dy < 0.0 || dx >= extent_width_m || dy >= extent_height_m) {
        return -1;
    }
    int col = static_cast<int>(std::floor(dx / cell_size_m));
    int row = static_cast<int>(std::floor(dy / cell_size_m));
    if (col >= n_cols) col = n_cols - 1;
    if (row >= n_rows) row = n_rows - 1;
    return retained_index[static_cast<std::size_t>(row) * n_cols + col];
}

std::int64_t GridSpec::n_partial_cells() const {
    std::int64_t n = 0;
    for (const Cell& c : cells) {
        if (c.partial) ++n;
    }
    return n;
}

GridSpec make_grid(const Raster& scene, double r_m, const Raster* valid_mask) {
    if (!(r_m > 0.0) || !std::isfinite(r_m)) {
        throw InputError("grid cell size r must be positive");
    }
    if (valid_mask != nullptr) {
        if (valid_mask->kind() != RasterKind::Validity &&
            valid_mask->kind() != RasterKind::Binary) {
            throw InputError("valid mask must be a binary or validity raster");
        }
        if (!aligned(scene, *valid_mask)) {
            throw GeorefMismatchError(
                "valid mask is not aligned to the scene raster");
        }
    }

    GridSpec grid;
    grid.cell_size_m = r_m;
    grid.scene_georef = scene.georef();
    grid.extent_width_m = scene.extent_width_m();
    grid.extent_height_m = scene.extent_height_m();
    grid.n_cols =
        std::max(1, static_cast<int>(std::ceil(grid.extent_width_m / r_m)));
    grid.n_rows =
        std::max(1, static_cast<int>(std::ceil(grid.extent_height_m / r_m)));

    // Count valid pixel centers per cell when a mask restricts the grid.
    std::vector<std::int64_t> valid_counts;
    if (valid_mask != nullptr) {
        valid_counts.assign(
            static_cast<std::size_t>(grid.n_rows) * grid.n_cols, 0);
        const AffineGeoref& g = scene.georef();
        for (int y = 0; y < valid_mask->height(); ++y) {
            int row = static_cast<int>(std::floor(y * g.res_y / r_m));
            if (row >= grid.n_rows) row = grid.n_rows - 1;
            for (int x = 0; x < valid_mask->width(); ++x) {
                if (valid_mask->at(x, y) == 0.0) continue;
                int col = static_cast<int>(std::floor(x * g.res_x / r_m));
                if (col >= grid.n_cols) col = grid.n_cols - 1;
                ++valid_counts[static_cast<std::size_t>(row) * grid.n_cols +
                               col];
            }
        }
        grid.valid_mask = std::make_shared<Raster>(*valid_mask);
    }

    grid.retained_index.assign(
        static_cast<std::size_t>(grid.n_rows) * grid.n_cols, -1);
    const double ox = grid.scene_georef.origin_x;
    const double oy = grid.scene_georef.origin_y;
    const double full_tol = r_m * (1.0 - 1e-12);
    for (int row = 0; row < grid.n_rows; ++row) {
        for (int col = 0; col < grid.n_cols; ++col) {
            std::size_t flat =
                static_cast<std::size_t>(row) * grid.n_cols + col;
            if (valid_mask != nullptr && valid_counts[flat] == 0) {
                continue;
            }
            Cell cell;
            cell.row = row;
            cell.col = col;
            cell.bounds.min_x = ox + col * r_m;
            cell.bounds.max_x = std::min(ox + (col + 1) * r_m,
                                         ox + grid.extent_width_m);
            cell.bounds.max_y = oy - row * r_m;
            cell.bounds.min_y = std::max(oy - (row + 1) * r_m,
                                         oy - grid.extent_height_m);
            cell.partial = cell.bounds.width() < full_tol ||
                           cell.bounds.height() < full_tol;
            grid.retained_index[flat] =
                static_cast<std::int32_t>(grid.cells.size());
            grid.cells.push_back(cell);
        }
    }
    return grid;
}

Raster resample(const Raster& src, const AffineGeoref& target_georef,
                int target_width, int target_height) {
    target_georef.validate();
    if (target_width <= 0 || target_height <= 0) {
        throw InputError("resample target dimensions must be positive");
    }
    bool nearest = src.kind() == RasterKind::Binary ||
                   src.kind() == RasterKind::Validity;
    Raster out(target_width, target_height, src.kind(), target_georef);
    const int sw = src.width();
    const int sh = src.height();
    for (int y = 0; y < target_height; ++y) {
        for (int x = 0; x < target_width; ++x) {
            WorldPoint w = target_georef.pixel_to_world(x, y);
            double u, v;
            src.georef().world_to_pixel(w.x, w.y, u, v);
            if (nearest) {
                int sx = std::clamp(static_cast<int>(std::ceil(u - 0.5)), 0,
                                    sw - 1);
                int sy = std::clamp(static_cast<int>(std::ceil(v - 0.5)), 0,
                                    sh - 1);
                out.set(x, y, src.at(sx, sy));
            } else {
                u = std::clamp(u, 0.0, static_cast<double>(sw - 1));
                v = std::clamp(v, 0.0, static_cast<double>(sh - 1));
                int x0 = std::min(static_cast<int>(u), sw - 1);
                int y0 = std::min(static_cast<int>(v), sh - 1);
                int x1 = std::min(x0 + 1, sw - 1);
                int y1 = std::min(y0 + 1, sh - 1);
                double fx = u - x0;
                double fy = v - y0;
                double top = src.at(x0, y0) * (1.0 - fx) + src.at(x1, y0) * fx;
                double bot = src.at(x0, y1) * (1.0 - fx) + src.at(x1, y1) * fx;
                out.set(x, y, top * (1.0 - fy) + bot * fy);
            }
        }
    }
    return out;
}

} // namespace sceneval
