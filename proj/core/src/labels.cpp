#include "sceneval/labels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sceneval/detail/strfmt.hpp"

namespace sceneval {

RasterizeResult rasterize_points(const PointLabelSet& labels,
                                 const AffineGeoref& georef, int width,
                                 int height) {
    Raster out(width, height, RasterKind::Binary, georef);
    RasterizeResult result{std::move(out), 0, {}};
    for (std::size_t i = 0; i < labels.points.size(); ++i) {
        const WorldPoint& p = labels.points[i];
        PixelCoord px = georef.snap(p.x, p.y);
        if (!result.raster.in_bounds(px.x, px.y)) {
            result.dropped.push_back(i);
            continue;
        }
        if (result.raster.at(px.x, px.y) != 0.0) {
            ++result.collisions;
        } else {
            result.raster.set(px.x, px.y, 1.0);
        }
    }
    return result;
}

std::vector<double> gaussian_kernel(int size, double sigma) {
    if (size <= 0 || size % 2 == 0) {
        throw InputError("gaussian kernel size must be a positive odd number");
    }
    if (!(sigma > 0.0)) {
        throw InputError("gaussian kernel sigma must be positive");
    }
    std::vector<double> k(static_cast<std::size_t>(size) * size);
    int half = size / 2;
    double sum = 0.0;
    for (int dy = -half; dy <= half; ++dy) {
        for (int dx = -half; dx <= half; ++dx) {
            double w = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            k[static_cast<std::size_t>(dy + half) * size + (dx + half)] = w;
            sum += w;
        }
    }
    for (double& w : k) w /= sum;
    return k;
}

namespace {

void require_binary(const Raster& r, const char* op) {
    if (r.kind() != RasterKind::Binary) {
        throw InputError(std::string(op) + " requires a binary raster, got " +
                         raster_kind_name(r.kind()));
    }
}

} // namespace

DensityMask density_mask(const Raster& point_raster, int kernel_size,
                         double sigma) {
    require_binary(point_raster, "density_mask");
    std::vector<double> kernel = gaussian_kernel(kernel_size, sigma);
    int half = kernel_size / 2;
    const int w = point_raster.width();
    const int h = point_raster.height();

    DensityMask mask{Raster(w, h, RasterKind::Density, point_raster.georef()),
                     kernel_size, sigma, 0.0};
    // The input is a sparse point mask, so splatting one kernel per positive
    // pixel equals the full convolution.
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (point_raster.at(x, y) == 0.0) continue;
            for (int dy = -half; dy <= half; ++dy) {
                int yy = y + dy;
                for (int dx = -half; dx <= half; ++dx) {
                    int xx = x + dx;
                    double kw = kernel[static_cast<std::size_t>(dy + half) *
                                           kernel_size +
                                       (dx + half)];
                    if (xx < 0 || xx >= w || yy < 0 || yy >= h) {
                        mask.truncated_mass += kw;
                    } else {
                        mask.raster.set(xx, yy, mask.raster.at(xx, yy) + kw);
                    }
                }
            }
        }
    }
    return mask;
}

SegmentationMask segmentation_mask(const Raster& point_raster,
                                   int filter_size) {
    require_binary(point_raster, "segmentation_mask");
    if (filter_size <= 0 || filter_size % 2 == 0) {
        throw InputError("maximum filter size must be a positive odd number");
    }
    int half = filter_size / 2;
    const int w = point_raster.width();
    const int h = point_raster.height();
    SegmentationMask mask{
        Raster(w, h, RasterKind::Binary, point_raster.georef()), filter_size};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (point_raster.at(x, y) == 0.0) continue;
            int y0 = std::max(0, y - half), y1 = std::min(h - 1, y + half);
            int x0 = std::max(0, x - half), x1 = std::min(w - 1, x + half);
            for (int yy = y0; yy <= y1; ++yy) {
                for (int xx = x0; xx <= x1; ++xx) {
                    mask.raster.set(xx, yy, 1.0);
                }
            }
        }
    }
    return mask;
}

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

} // namespace

PointLabelSet read_labels_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open label file: " + path.string());
    }
    PointLabelSet labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(t);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(strip(field));
        if (fields.size() < 2) {
            throw InputError(path.string() + ":" + std::to_string(line_no) +
                             ": expected at least two columns (x,y)");
        }
        double x, y;
        if (!parse_double(fields[0], x) || !parse_double(fields[1], y)) {
            if (labels.points.empty()) continue; // header row
            throw InputError(path.string() + ":" + std::to_string(line_no) +
                             ": non-numeric coordinate");
        }
        labels.points.push_back({x, y});
        if (fields.size() >= 3 && labels.class_tag.empty()) {
            labels.class_tag = fields[2];
        }
    }
    return labels;
}

PointLabelSet read_labels_geojson(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open label file: " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path.string() + ": invalid JSON: " + e.what());
    }
    if (doc.value("type", "") != "FeatureCollection") {
        throw InputError(path.string() + ": expected a GeoJSON FeatureCollection");
    }
    PointLabelSet labels;
    for (const auto& feature : doc.value("features", nlohmann::json::array())) {
        const auto& geom = feature.at("geometry");
        if (geom.value("type", "") != "Point") {
            throw InputError(path.string() + ": only Point features are supported");
        }
        const auto& coords = geom.at("coordinates");
        if (!coords.is_array() || coords.size() < 2) {
            throw InputError(path.string() + ": malformed Point coordinates");
        }
        labels.points.push_back(
            {coords[0].get<double>(), coords[1].get<double>()});
        if (labels.class_tag.empty() && feature.contains("properties") &&
            feature["properties"].is_object() &&
            feature["properties"].contains("class")) {
            labels.class_tag = feature["properties"]["class"].get<std::string>();
        }
    }
    return labels;
}

PointLabelSet read_labels(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".csv") return read_labels_csv(path);
    if (ext == ".json" || ext == ".geojson") return read_labels_geojson(path);
    throw InputError("unrecognized label file extension: " + path.string());
}

void write_labels_csv(const std::filesystem::path& path,
                      const PointLabelSet& labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write label file: " + path.string());
    }
    out << (labels.class_tag.empty() ? "x,y\n" : "x,y,class\n");
    for (const WorldPoint& p : labels.points) {
        out << detail::fmt_double(p.x) << ',' << detail::fmt_double(p.y);
        if (!labels.class_tag.empty()) out << ',' << labels.class_tag;
        out << '\n';
    }
}

} // namespace sceneval
