#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "sceneval/geo.hpp"

using namespace sceneval;

TEST_CASE("pixel_to_world basics") {
    AffineGeoref g{0.0, 0.0, 0.3, 0.3};
    WorldPoint origin = g.pixel_to_world(0, 0);
    CHECK(origin.x == 0.0);
    CHECK(origin.y == 0.0);

    WorldPoint p = g.pixel_to_world(10, 10);
    CHECK(p.x == doctest::Approx(3.0));
    CHECK(p.y == doctest::Approx(-3.0));

    AffineGeoref utm{500000.0, 4200000.0, 0.3, 0.3};
    WorldPoint q = utm.pixel_to_world(0, 0);
    CHECK(q.x == 500000.0);
    CHECK(q.y == 4200000.0);
}

TEST_CASE("pixel/world round trip on integer coordinates") {
    test::TestRng rng(7);
    AffineGeoref g{12345.5, 98765.25, 0.3, 0.5};
    for (int i = 0; i < 200; ++i) {
        int px = rng.below(5000);
        int py = rng.below(5000);
        WorldPoint w = g.pixel_to_world(px, py);
        PixelCoord back = g.snap(w.x, w.y);
        CHECK(back.x == px);
        CHECK(back.y == py);
    }
}

TEST_CASE("snap ties go to the lower index") {
    AffineGeoref g{0.0, 0.0, 1.0, 1.0};
    // World x = 0.5 sits exactly between sample points 0 and 1.
    PixelCoord p = g.snap(0.5, -0.5);
    CHECK(p.x == 0);
    CHECK(p.y == 0);
    PixelCoord q = g.snap(0.51, -0.51);
    CHECK(q.x == 1);
    CHECK(q.y == 1);
}

TEST_CASE("georef validation") {
    CHECK_THROWS_AS(Raster(4, 4, RasterKind::Binary,
                           AffineGeoref{0, 0, -1.0, 1.0}),
                    InputError);
    CHECK_THROWS_AS(Raster(0, 4, RasterKind::Binary, AffineGeoref{}),
                    InputError);
}

TEST_CASE("raster kind invariants") {
    AffineGeoref g{0, 0, 1, 1};
    CHECK_THROWS_AS(Raster(2, 2, RasterKind::Binary, g, {0.0, 1.0, 0.5, 1.0}),
                    InputError);
    CHECK_THROWS_AS(Raster(2, 2, RasterKind::Density, g, {0.0, -0.1, 0.0, 0.0}),
                    InputError);
    CHECK_NOTHROW(Raster(2, 2, RasterKind::Density, g, {0.0, 0.25, 4.0, 0.0}));
}

TEST_CASE("make_grid tiles a 1000 m scene into 100 cells") {
    // 2000 px at 0.5 m/px = exactly 1000 m per side.
    Raster scene(2000, 2000, RasterKind::Panchromatic, {0, 0, 0.5, 0.5});
    GridSpec grid = make_grid(scene, 100.0);
    CHECK(grid.cells.size() == 100);
    CHECK(grid.n_rows == 10);
    CHECK(grid.n_cols == 10);
    CHECK(grid.n_partial_cells() == 0);
}

TEST_CASE("make_grid with r equal to the scene extent gives one cell") {
    Raster scene(640, 480, RasterKind::Panchromatic, {0, 0, 0.5, 0.5});
    GridSpec grid = make_grid(scene, 320.0);
    CHECK(grid.cells.size() == 1);
    CHECK(grid.cells[0].partial); // 240 m tall, shorter than r
}

TEST_CASE("make_grid with r larger than the scene still gives one cell") {
    Raster scene(100, 100, RasterKind::Panchromatic, {0, 0, 0.5, 0.5});
    GridSpec grid = make_grid(scene, 5000.0);
    CHECK(grid.cells.size() == 1);
}

TEST_CASE("make_grid drops cells outside the valid mask") {
    Raster scene(2000, 2000, RasterKind::Panchromatic, {0, 0, 0.5, 0.5});
    Raster mask(2000, 2000, RasterKind::Validity, {0, 0, 0.5, 0.5});
    for (int y = 0; y < 2000; ++y) {
        for (int x = 0; x < 1000; ++x) {
            mask.set(x, y, 1.0); // left half valid
        }
    }
    GridSpec grid = make_grid(scene, 100.0, &mask);
    CHECK(grid.cells.size() == 50);
    for (const Cell& c : grid.cells) {
        CHECK(c.col < 5);
    }
}

TEST_CASE("make_grid rejects a misaligned valid mask") {
    Raster scene(100, 100, RasterKind::Panchromatic, {0, 0, 0.5, 0.5});
    Raster shifted(100, 100, RasterKind::Validity, {10, 0, 0.5, 0.5});
    CHECK_THROWS_AS(make_grid(scene, 10.0, &shifted), GeorefMismatchError);
    Raster coarse(50, 50, RasterKind::Validity, {0, 0, 1.0, 1.0});
    CHECK_THROWS_AS(make_grid(scene, 10.0, &coarse), GeorefMismatchError);
    CHECK_THROWS_AS(make_grid(scene, 0.0), InputError);
}

TEST_CASE("grid cells partition the extent") {
    test::TestRng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        int w = 50 + rng.below(300);
        int h = 50 + rng.below(300);
        double res = 0.25 + 0.25 * rng.below(4);
        double r = 5.0 + rng.below(40);
        Raster scene(w, h, RasterKind::Panchromatic, {0, 0, res, res});
        GridSpec grid = make_grid(scene, r);

        double wm = scene.extent_width_m();
        double hm = scene.extent_height_m();
        CHECK(grid.cells.size() ==
              static_cast<std::size_t>(std::ceil(wm / r)) *
                  static_cast<std::size_t>(std::ceil(hm / r)));

        // Cell areas sum to the scene area; cells do not overlap by
        // construction (disjoint index ranges).
        double area = 0.0;
        for (const Cell& c : grid.cells) {
            area += c.bounds.width() * c.bounds.height();
        }
        CHECK(area == doctest::Approx(wm * hm).epsilon(1e-9));

        // Random interior points land in exactly one retained cell whose
        // bounds contain them.
        for (int k = 0; k < 50; ++k) {
            double wx = rng.uniform() * wm;
            double wy = -rng.uniform() * hm;
            int idx = grid.cell_index_at(wx, wy);
            REQUIRE(idx >= 0);
            int hits = 0;
            for (const Cell& c : grid.cells) {
                if (c.bounds.contains(wx, wy)) ++hits;
            }
            CHECK(hits == 1);
            CHECK(grid.cells[idx].bounds.contains(wx, wy));
        }
    }
}

TEST_CASE("resample bilinear reproduces a linear ramp") {
    Raster src(8, 8, RasterKind::Density, {0, 0, 1.0, 1.0});
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
            src.set(x, y, 2.0 * x + 3.0 * y);
        }
    }
    // Same extent at twice the sampling rate.
    Raster up = resample(src, {0, 0, 0.5, 0.5}, 15, 15);
    for (int y = 0; y < 15; ++y) {
        for (int x = 0; x < 15; ++x) {
            CHECK(up.at(x, y) == doctest::Approx(x + 1.5 * y).epsilon(1e-12));
        }
    }
}

TEST_CASE("resample nearest keeps binary rasters binary") {
    test::TestRng rng(3);
    Raster src(16, 16, RasterKind::Binary, {0, 0, 1.0, 1.0});
    for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) {
            src.set(x, y, rng.below(2));
        }
    }
    Raster out = resample(src, {0, 0, 0.4, 0.4}, 40, 40);
    for (double v : out.values()) {
        CHECK((v == 0.0 || v == 1.0));
    }
    CHECK_NOTHROW(out.validate_kind());
}
