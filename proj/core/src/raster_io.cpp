#include "sceneval/raster_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "sceneval/detail/strfmt.hpp"

namespace sceneval {

namespace {

std::string lower_ext(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext;
}

std::filesystem::path sidecar_path(const std::filesystem::path& data_path) {
    std::filesystem::path p = data_path;
    p += ".hdr";
    return p;
}

float to_le_float(float v) {
    if constexpr (std::endian::native == std::endian::big) {
        std::uint32_t u;
        std::memcpy(&u, &v, 4);
        u = __builtin_bswap32(u);
        std::memcpy(&v, &u, 4);
    }
    return v;
}

} // namespace

Raster read_raster(const std::filesystem::path& path, RasterKind kind) {
    std::string ext = lower_ext(path);
    if (ext == ".tif" || ext == ".tiff") return read_geotiff(path, kind);
    if (ext == ".f32") return read_gridfile(path, kind);
    throw InputError("unrecognized raster extension (want .tif/.tiff/.f32): " +
                     path.string());
}

void write_raster(const std::filesystem::path& path, const Raster& raster) {
    std::string ext = lower_ext(path);
    if (ext == ".tif" || ext == ".tiff") {
        write_geotiff(path, raster);
    } else if (ext == ".f32") {
        write_gridfile(path, raster);
    } else {
        throw InputError(
            "unrecognized raster extension (want .tif/.tiff/.f32): " +
            path.string());
    }
}

Raster read_gridfile(const std::filesystem::path& path, RasterKind kind) {
    std::filesystem::path hdr = sidecar_path(path);
    std::ifstream header(hdr);
    if (!header) {
        throw InputError("cannot open grid header: " + hdr.string());
    }
    std::map<std::string, double> fields;
    std::string key;
    double value;
    while (header >> key >> value) {
        fields[key] = value;
    }
    for (const char* required :
         {"width", "height", "origin_x", "origin_y", "res_x", "res_y"}) {
        if (!fields.count(required)) {
            throw InputError(hdr.string() + ": missing header field '" +
                             required + "'");
        }
    }
    int width = static_cast<int>(fields["width"]);
    int height = static_cast<int>(fields["height"]);
    if (width <= 0 || height <= 0) {
        throw InputError(hdr.string() + ": width and height must be positive");
    }
    AffineGeoref georef{fields["origin_x"], fields["origin_y"],
                        fields["res_x"], fields["res_y"]};

    std::ifstream data(path, std::ios::binary);
    if (!data) {
        throw InputError("cannot open grid file: " + path.string());
    }
    std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<float> raw(n);
    data.read(reinterpret_cast<char*>(raw.data()),
              static_cast<std::streamsize>(n * sizeof(float)));
    if (static_cast<std::size_t>(data.gcount()) != n * sizeof(float)) {
        throw InputError(path.string() + ": truncated grid file");
    }
    char extra;
    if (data.read(&extra, 1)) {
        throw InputError(path.string() + ": grid file larger than width*height");
    }
    std::vector<double> band(n);
    for (std::size_t i = 0; i < n; ++i) {
        band[i] = static_cast<double>(to_le_float(raw[i]));
    }
    try {
        return Raster(width, height, kind, georef, std::move(band));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_gridfile(const std::filesystem::path& path, const Raster& raster) {
    std::ofstream data(path, std::ios::binary);
    if (!data) {
        throw InputError("cannot write grid file: " + path.string());
    }
    for (double v : raster.values()) {
        float f = to_le_float(static_cast<float>(v));
        data.write(reinterpret_cast<const char*>(&f), sizeof(float));
    }
    data.close();
    if (!data) {
        throw InputError("failed writing grid file: " + path.string());
    }

    const AffineGeoref& g = raster.georef();
    std::ofstream header(sidecar_path(path), std::ios::binary);
    if (!header) {
        throw InputError("cannot write grid header for: " + path.string());
    }
    header << "width " << raster.width() << '\n'
           << "height " << raster.height() << '\n'
           << "origin_x " << detail::fmt_double(g.origin_x) << '\n'
           << "origin_y " << detail::fmt_double(g.origin_y) << '\n'
           << "res_x " << detail::fmt_double(g.res_x) << '\n'
           << "res_y " << detail::fmt_double(g.res_y) << '\n';
}

} // namespace sceneval
