#include <doctest.h>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "sceneval/blobs.hpp"

using namespace sceneval;

namespace {

Raster random_binary(test::TestRng& rng, int w, int h, double fill) {
    Raster r(w, h, RasterKind::Binary, {0, 0, 1.0, 1.0});
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (rng.uniform() < fill) r.set(x, y, 1.0);
        }
    }
    return r;
}

} // namespace

TEST_CASE("connected_components on an empty raster") {
    Raster r(16, 16, RasterKind::Binary, {0, 0, 1.0, 1.0});
    ComponentSet set = connected_components(r);
    CHECK(set.components().empty());
}

TEST_CASE("diagonal adjacency depends on connectivity") {
    Raster r(8, 8, RasterKind::Binary, {0, 0, 1.0, 1.0});
    r.set(3, 3, 1.0);
    r.set(4, 4, 1.0);
    CHECK(connected_components(r, 8).components().size() == 1);
    CHECK(connected_components(r, 4).components().size() == 2);
}

TEST_CASE("all-positive raster is one full component") {
    Raster r(10, 10, RasterKind::Binary, {0, 0, 1.0, 1.0}, 1.0);
    ComponentSet set = connected_components(r);
    REQUIRE(set.components().size() == 1);
    const Component& c = set.components()[0];
    CHECK(c.area_px == 100);
    CHECK(c.bbox.min_x == 0);
    CHECK(c.bbox.max_x == 9);
    // Centroid of the full square sits at pixel (4.5, 4.5).
    CHECK(c.centroid_world.x == doctest::Approx(4.5));
    CHECK(c.centroid_world.y == doctest::Approx(-4.5));
}

TEST_CASE("connected_components rejects wrong kinds and connectivities") {
    Raster d(4, 4, RasterKind::Density, {0, 0, 1, 1});
    CHECK_THROWS_AS(connected_components(d), InputError);
    Raster b(4, 4, RasterKind::Binary, {0, 0, 1, 1});
    CHECK_THROWS_AS(connected_components(b, 6), InputError);
}

TEST_CASE("component counts match the flood-fill oracle on random rasters") {
    test::TestRng rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        int w = 4 + rng.below(29);
        int h = 4 + rng.below(29);
        double fill = 0.15 + 0.7 * rng.uniform();
        Raster r = random_binary(rng, w, h, fill);
        std::vector<int> grid(r.values().begin(), r.values().end());
        for (int conn : {4, 8}) {
            ComponentSet set = connected_components(r, conn);
            CHECK(static_cast<int>(set.components().size()) ==
                  test::brute_force_component_count(grid, w, h, conn));

            // Partition: areas sum to the number of positive pixels and
            // every positive pixel carries exactly one component id.
            std::int64_t area = 0;
            for (const Component& c : set.components()) {
                area += c.area_px;
                CHECK(c.area_px == static_cast<std::int64_t>(c.pixels.size()));
                CHECK(c.centroid_world.x >=
                      set.georef().pixel_to_world(c.bbox.min_x, 0).x - 1e-12);
                CHECK(c.centroid_world.x <=
                      set.georef().pixel_to_world(c.bbox.max_x, 0).x + 1e-12);
            }
            std::int64_t positive = 0;
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    if (r.at(x, y) != 0.0) {
                        ++positive;
                        CHECK(set.label_at(x, y) > 0);
                    } else {
                        CHECK(set.label_at(x, y) == 0);
                    }
                }
            }
            CHECK(area == positive);
        }
    }
}

TEST_CASE("component ids are deterministic in scan order") {
    Raster r(8, 8, RasterKind::Binary, {0, 0, 1.0, 1.0});
    r.set(6, 0, 1.0); // first in row-major order
    r.set(1, 3, 1.0);
    r.set(2, 3, 1.0);
    ComponentSet set = connected_components(r);
    REQUIRE(set.components().size() == 2);
    CHECK(set.components()[0].pixels[0].x == 6);
    CHECK(set.components()[0].id == 1);
    CHECK(set.components()[1].area_px == 2);
}

TEST_CASE("threshold_density") {
    Raster zero(8, 8, RasterKind::Density, {0, 0, 1, 1});
    Raster t0 = threshold_density(zero, 0.0);
    for (double v : t0.values()) CHECK(v == 0.0);

    Raster one(8, 8, RasterKind::Density, {0, 0, 1, 1});
    one.set(3, 4, 0.6);
    Raster t = threshold_density(one, 0.5);
    CHECK(t.at(3, 4) == 1.0);
    double sum = 0.0;
    for (double v : t.values()) sum += v;
    CHECK(sum == 1.0);

    // tau below the global minimum turns everything positive.
    Raster uniform(8, 8, RasterKind::Density, {0, 0, 1, 1}, 0.25);
    Raster all = threshold_density(uniform, 0.1);
    for (double v : all.values()) CHECK(v == 1.0);
    CHECK(connected_components(all).components().size() == 1);

    CHECK_THROWS_AS(threshold_density(uniform, -0.5), InputError);
}

TEST_CASE("labeled raster and GeoJSON export") {
    Raster r(8, 8, RasterKind::Binary, {100, 200, 0.5, 0.5});
    r.set(2, 2, 1.0);
    r.set(5, 5, 1.0);
    ComponentSet set = connected_components(r);
    Raster labels = set.labeled_raster();
    CHECK(labels.at(2, 2) == 1.0);
    CHECK(labels.at(5, 5) == 2.0);
    CHECK(labels.at(0, 0) == 0.0);

    auto doc = nlohmann::json::parse(components_to_geojson(set));
    CHECK(doc["type"] == "FeatureCollection");
    REQUIRE(doc["features"].size() == 2);
    CHECK(doc["features"][0]["geometry"]["coordinates"][0] == 101.0);
    CHECK(doc["features"][0]["geometry"]["coordinates"][1] == 199.0);
}
