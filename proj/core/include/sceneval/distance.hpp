#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "sceneval/geo.hpp"

namespace sceneval {

// Exact Euclidean distance (meters) from every pixel sample point to the
// nearest foreground sample point, honoring anisotropic resolution.
// Pixels of an image with no foreground at all get +infinity.
std::vector<double> distance_to_foreground(const Raster& binary);

// Same transform over a component label image; foreground = nonzero label.
std::vector<double> distance_to_foreground(std::span<const std::int32_t> labels,
                                           int width, int height, double res_x,
                                           double res_y);

} // namespace sceneval
