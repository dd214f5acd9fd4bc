#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "sceneval/errors.hpp"

namespace sceneval {

struct WorldPoint {
    double x = 0.0;
    double y = 0.0;
};

struct PixelCoord {
    int x = 0;
    int y = 0;
};

// Axis-aligned rectangle in world coordinates (meters).
struct WorldRect {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    bool contains(double wx, double wy) const {
        return wx >= min_x && wx < max_x && wy > min_y && wy <= max_y;
    }
};

// Axis-aligned, north-up affine georeferencing in planar meters.
//
// Integer pixel (px, py) samples the world point
//   (origin_x + px * res_x,  origin_y - py * res_y)
// so columns run eastward and rows run southward. Skewed or rotated
// transforms are not supported; a projected CRS is assumed upstream.
struct AffineGeoref {
    double origin_x = 0.0;
    double origin_y = 0.0;
    double res_x = 1.0; // meters per pixel, eastward
    double res_y = 1.0; // meters per pixel, southward (positive)

    WorldPoint pixel_to_world(double px, double py) const {
        return {origin_x + px * res_x, origin_y - py * res_y};
    }

    // Continuous inverse of pixel_to_world.
    void world_to_pixel(double wx, double wy, double& px, double& py) const {
        px = (wx - origin_x) / res_x;
        py = (origin_y - wy) / res_y;
    }

    // Nearest sample point to a world position; exact half-way ties snap
    // toward the lower index. May return indices outside the raster.
    PixelCoord snap(double wx, double wy) const;

    bool approx_equal(const AffineGeoref& other, double tol = 1e-9) const;

    // Throws InputError unless res_x > 0 and res_y > 0 and all fields finite.
    void validate() const;
};

enum class RasterKind {
    Panchromatic, // free-form real values (imagery, debug layers)
    Density,      // non-negative reals whose local sums are counts
    Binary,       // {0, 1}
    Validity      // {0, 1}; 1 marks pixels that take part in evaluation
};

const char* raster_kind_name(RasterKind kind);

// Single-band raster with double precision samples, stored row major with
// the top row first. Treat instances as immutable once shared; operations
// return new rasters.
class Raster {
public:
    Raster(int width, int height, RasterKind kind, AffineGeoref georef,
           double fill = 0.0);
    Raster(int width, int height, RasterKind kind, AffineGeoref georef,
           std::vector<double> band);

    int width() const { return width_; }
    int height() const { return height_; }
    std::int64_t size() const {
        return static_cast<std::int64_t>(width_) * height_;
    }
    RasterKind kind() const { return kind_; }
    const AffineGeoref& georef() const { return georef_; }

    double at(int x, int y) const {
        return band_[static_cast<std::size_t>(y) * width_ + x];
    }
    void set(int x, int y, double v) {
        band_[static_cast<std::size_t>(y) * width_ + x] = v;
    }

    std::span<const double> values() const { return band_; }
    std::span<double> values() { return band_; }

    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

    double extent_width_m() const { return width_ * georef_.res_x; }
    double extent_height_m() const { return height_ * georef_.res_y; }
    WorldRect world_extent() const;

    // Re-checks the per-kind value invariants; throws InputError on violation.
    void validate_kind() const;

private:
    int width_ = 0;
    int height_ = 0;
    RasterKind kind_ = RasterKind::Panchromatic;
    AffineGeoref georef_{};
    std::vector<double> band_;
};

// True when both rasters have identical pixel layout and compatible georefs.
bool aligned(const Raster& a, const Raster& b, double tol = 1e-9);

// One tile of a physical-distance grid over a scene.
struct Cell {
    int row = 0;
    int col = 0;
    WorldRect bounds{};
    bool partial = false; // clipped at the scene border
};

// An r x r meter tiling of a scene extent, anchored at the scene origin.
// Cells is the retained subset in row-major order; when a validity mask was
// supplied, cells containing no valid pixel are dropped. Cell membership is
// half-open: a point on a shared edge belongs to the cell with the larger
// row/col index arithmetic floor((x - origin) / r) selects.
struct GridSpec {
    double cell_size_m = 0.0;
    AffineGeoref scene_georef{};
    double extent_width_m = 0.0;
    double extent_height_m = 0.0;
    int n_rows = 0; // full tiling, including dropped cells
    int n_cols = 0;
    std::vector<Cell> cells;
    std::vector<std::int32_t> retained_index; // n_rows*n_cols, -1 = dropped
    std::shared_ptr<const Raster> valid_mask; // null when absent

    // Index into cells for the cell containing (wx, wy), or -1 when the
    // point is outside the scene extent or in a dropped cell.
    int cell_index_at(double wx, double wy) const;

    std::int64_t n_partial_cells() const;
};

// Tiles the scene extent with r x r meter cells. Partial border cells are
// retained and flagged. When valid_mask is given it must be aligned to the
// scene; cells with no valid pixel are dropped.
GridSpec make_grid(const Raster& scene, double r_m,
                   const Raster* valid_mask = nullptr);

// Resamples src onto the given target layout. Continuous kinds
// (panchromatic, density) use bilinear interpolation; binary and validity
// kinds use nearest neighbor so values stay in {0, 1}. Samples outside the
// source are clamped to the edge.
Raster resample(const Raster& src, const AffineGeoref& target_georef,
                int target_width, int target_height);

} // namespace sceneval
