#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sceneval/geo.hpp"

namespace sceneval {

// Inclusive pixel-coordinate rectangle.
struct PixelBox {
    int min_x = 0;
    int min_y = 0;
    int max_x = -1;
    int max_y = -1;
};

// One connected blob of positive prediction pixels.
struct Component {
    int id = 0;                      // 1-based, assigned in scan order
    std::vector<PixelCoord> pixels;  // row-major scan order
    std::int64_t area_px = 0;
    PixelBox bbox{};
    WorldPoint centroid_world{};     // mean of member sample points
};

// Components of one raster plus the per-pixel label image (0 = background,
// otherwise the component id).
class ComponentSet {
public:
    ComponentSet(int width, int height, AffineGeoref georef,
                 std::vector<std::int32_t> labels,
                 std::vector<Component> components);

    int width() const { return width_; }
    int height() const { return height_; }
    const AffineGeoref& georef() const { return georef_; }
    const std::vector<Component>& components() const { return components_; }
    const std::vector<std::int32_t>& labels() const { return labels_; }

    std::int32_t label_at(int x, int y) const {
        return labels_[static_cast<std::size_t>(y) * width_ + x];
    }

    // Component ids as raster values, for debugging overlays.
    Raster labeled_raster() const;

private:
    int width_ = 0;
    int height_ = 0;
    AffineGeoref georef_{};
    std::vector<std::int32_t> labels_;
    std::vector<Component> components_;
};

// Two-pass union-find labeling of a binary raster. connectivity is 4 or 8
// (default 8 so diagonally rendered animals stay one blob).
ComponentSet connected_components(const Raster& pred, int connectivity = 8);

// pixel = 1 iff density > tau. tau must be >= 0.
Raster threshold_density(const Raster& pred, double tau);

// Component centroids as a GeoJSON FeatureCollection of Point features.
std::string components_to_geojson(const ComponentSet& set);

} // namespace sceneval
