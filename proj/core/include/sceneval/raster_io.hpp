#pragma once

#include <filesystem>

#include "sceneval/geo.hpp"

namespace sceneval {

// Reads a single-band raster, dispatching on extension:
//   .tif/.tiff      GeoTIFF (georeferencing from the file's affine tags)
//   .f32            raw float32 grid with a <file>.hdr text sidecar
// The caller states what the values mean; per-kind invariants are validated.
Raster read_raster(const std::filesystem::path& path, RasterKind kind);

// Writes a raster, dispatching on extension as above. Samples are stored as
// little-endian float32 in both formats.
void write_raster(const std::filesystem::path& path, const Raster& raster);

// GeoTIFF subset: classic (non-Big) TIFF, one gray band, strip or tile
// layout, compression none/LZW/Deflate/PackBits, integer or IEEE float
// samples, horizontal-differencing predictor for integers. Georeferencing
// comes from ModelPixelScale+ModelTiepoint or an axis-aligned
// ModelTransformation; skewed transforms are rejected.
Raster read_geotiff(const std::filesystem::path& path, RasterKind kind);

// Writes uncompressed striped float32 with ModelPixelScale/ModelTiepoint.
void write_geotiff(const std::filesystem::path& path, const Raster& raster);

// Raw grid format: row-major float32, little endian, top row first, with a
// text sidecar at <path>.hdr holding the six layout fields. See README.
Raster read_gridfile(const std::filesystem::path& path, RasterKind kind);
void write_gridfile(const std::filesystem::path& path, const Raster& raster);

} // namespace sceneval
