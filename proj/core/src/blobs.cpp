#include "sceneval/blobs.hpp"

#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

namespace sceneval {

ComponentSet::ComponentSet(int width, int height, AffineGeoref georef,
                           std::vector<std::int32_t> labels,
                           std::vector<Component> components)
    : width_(width), height_(height), georef_(georef),
      labels_(std::move(labels)), components_(std::move(components)) {
    if (labels_.size() != static_cast<std::size_t>(width_) * height_) {
        throw InputError("component label image size mismatch");
    }
}

Raster ComponentSet::labeled_raster() const {
    std::vector<double> band(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        band[i] = static_cast<double>(labels_[i]);
    }
    return Raster(width_, height_, RasterKind::Panchromatic, georef_,
                  std::move(band));
}

namespace {

struct UnionFind {
    std::vector<std::int32_t> parent;

    std::int32_t make() {
        parent.push_back(static_cast<std::int32_t>(parent.size()));
        return parent.back();
    }
    std::int32_t find(std::int32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]]; // path halving
            x = parent[x];
        }
        return x;
    }
    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) parent[b] = a; // keep the smaller provisional label as root
        else parent[a] = b;
    }
};

} // namespace

ComponentSet connected_components(const Raster& pred, int connectivity) {
    if (pred.kind() != RasterKind::Binary) {
        throw InputError("connected_components requires a binary raster, got " +
                         std::string(raster_kind_name(pred.kind())));
    }
    if (connectivity != 4 && connectivity != 8) {
        throw InputError("connectivity must be 4 or 8");
    }

    const int w = pred.width();
    const int h = pred.height();
    std::vector<std::int32_t> labels(
        static_cast<std::size_t>(w) * h, 0); // provisional, 0 = background
    UnionFind uf;
    uf.make(); // slot 0 reserved for background

    // First pass: provisional labels, merging with already-visited neighbors
    // (W, and for row > 0: NW, N, NE under 8-connectivity).
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (pred.at(x, y) == 0.0) continue;
            std::size_t idx = static_cast<std::size_t>(y) * w + x;
            std::int32_t best = 0;
            auto consider = [&](int nx, int ny) {
                if (nx < 0 || nx >= w || ny < 0) return;
                std::int32_t l = labels[static_cast<std::size_t>(ny) * w + nx];
                if (l == 0) return;
                if (best == 0) {
                    best = l;
                } else {
                    uf.unite(best, l);
                }
            };
            consider(x - 1, y);
            if (y > 0) {
                if (connectivity == 8) consider(x - 1, y - 1);
                consider(x, y - 1);
                if (connectivity == 8) consider(x + 1, y - 1);
            }
            labels[idx] = best != 0 ? best : uf.make();
        }
    }

    // Second pass: flatten to roots and remap to consecutive ids in order of
    // first appearance, so ids are deterministic in row-major scan order.
    std::vector<std::int32_t> remap(uf.parent.size(), 0);
    std::vector<Component> components;
    const AffineGeoref& g = pred.georef();
    std::vector<std::int64_t> sum_x, sum_y;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::size_t idx = static_cast<std::size_t>(y) * w + x;
            if (labels[idx] == 0) continue;
            std::int32_t root = uf.find(labels[idx]);
            std::int32_t id = remap[root];
            if (id == 0) {
                id = static_cast<std::int32_t>(components.size()) + 1;
                remap[root] = id;
                Component c;
                c.id = id;
                c.bbox = {x, y, x, y};
                components.push_back(std::move(c));
                sum_x.push_back(0);
                sum_y.push_back(0);
            }
            labels[idx] = id;
            Component& c = components[id - 1];
            c.pixels.push_back({x, y});
            ++c.area_px;
            c.bbox.min_x = std::min(c.bbox.min_x, x);
            c.bbox.min_y = std::min(c.bbox.min_y, y);
            c.bbox.max_x = std::max(c.bbox.max_x, x);
            c.bbox.max_y = std::max(c.bbox.max_y, y);
            sum_x[id - 1] += x;
            sum_y[id - 1] += y;
        }
    }
    for (std::size_t i = 0; i < components.size(); ++i) {
        Component& c = components[i];
        double mean_px = static_cast<double>(sum_x[i]) / c.area_px;
        double mean_py = static_cast<double>(sum_y[i]) / c.area_px;
        c.centroid_world = g.pixel_to_world(mean_px, mean_py);
    }
    return ComponentSet(w, h, g, std::move(labels), std::move(components));
}

Raster threshold_density(const Raster& pred, double tau) {
    if (pred.kind() != RasterKind::Density &&
        pred.kind() != RasterKind::Panchromatic) {
        throw InputError("threshold_density requires a density raster");
    }
    if (!(tau >= 0.0)) {
        throw InputError("density threshold tau must be >= 0");
    }
    Raster out(pred.width(), pred.height(), RasterKind::Binary, pred.georef());
    auto src = pred.values();
    auto dst = out.values();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = src[i] > tau ? 1.0 : 0.0;
    }
    return out;
}

std::string components_to_geojson(const ComponentSet& set) {
    nlohmann::json features = nlohmann::json::array();
    for (const Component& c : set.components()) {
        features.push_back({
            {"type", "Feature"},
            {"geometry",
             {{"type", "Point"},
              {"coordinates", {c.centroid_world.x, c.centroid_world.y}}}},
            {"properties", {{"id", c.id}, {"area_px", c.area_px}}},
        });
    }
    nlohmann::json doc{{"type", "FeatureCollection"}, {"features", features}};
    return doc.dump();
}

} // namespace sceneval
