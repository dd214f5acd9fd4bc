#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sceneval/geo.hpp"

namespace sceneval {

// Labeled animal locations in world coordinates. Each point may sit up to
// noise_radius_d meters away from the animal it annotates.
struct PointLabelSet {
    std::vector<WorldPoint> points;
    double noise_radius_d = 0.0;
    std::string class_tag;
};

struct RasterizeResult {
    Raster raster;                    // binary point mask
    std::int64_t collisions = 0;      // extra points that landed on an occupied pixel
    std::vector<std::size_t> dropped; // indices of points outside the raster
};

// Burns each point into its nearest pixel (ties toward the lower index).
// Multiple points on one pixel still yield a single 1; points outside the
// raster are reported, not fatal.
RasterizeResult rasterize_points(const PointLabelSet& labels,
                                 const AffineGeoref& georef, int width,
                                 int height);

struct DensityMask {
    Raster raster; // kind density
    int kernel_size = 7;
    double sigma = 1.5;
    // Kernel mass lost to truncation at the raster border; the sum of the
    // mask equals (number of burned points) - truncated_mass.
    double truncated_mass = 0.0;
};

struct SegmentationMask {
    Raster raster; // kind binary
    int filter_size = 7;
};

// Square Gaussian kernel normalized to unit sum. size must be odd.
std::vector<double> gaussian_kernel(int size, double sigma);

// Convolves a binary point mask with a normalized Gaussian kernel. Kernels
// are truncated at the border without renormalization; the lost mass is
// reported in the result.
DensityMask density_mask(const Raster& point_raster, int kernel_size = 7,
                         double sigma = 1.5);

// Dilates a binary point mask by a filter_size x filter_size square.
SegmentationMask segmentation_mask(const Raster& point_raster,
                                   int filter_size = 7);

// CSV columns: x,y[,class]; a non-numeric first row is treated as a header.
PointLabelSet read_labels_csv(const std::filesystem::path& path);

// GeoJSON FeatureCollection of Point features; coordinates must be meters
// in the scene's CRS.
PointLabelSet read_labels_geojson(const std::filesystem::path& path);

// Dispatches on extension: .csv, or .json/.geojson.
PointLabelSet read_labels(const std::filesystem::path& path);

void write_labels_csv(const std::filesystem::path& path,
                      const PointLabelSet& labels);

} // namespace sceneval
