#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sceneval/distance.hpp"

using namespace sceneval;

TEST_CASE("distance transform matches brute force on random rasters") {
    test::TestRng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        int w = 3 + rng.below(22);
        int h = 3 + rng.below(22);
        double res_x = 0.25 + 0.25 * rng.below(4);
        double res_y = 0.25 + 0.25 * rng.below(4);
        Raster r(w, h, RasterKind::Binary, {0, 0, res_x, res_y});
        std::vector<int> grid(static_cast<std::size_t>(w) * h, 0);
        int n = rng.below(6);
        for (int i = 0; i < n; ++i) {
            int x = rng.below(w), y = rng.below(h);
            r.set(x, y, 1.0);
            grid[static_cast<std::size_t>(y) * w + x] = 1;
        }
        std::vector<double> fast = distance_to_foreground(r);
        std::vector<double> slow =
            test::brute_force_distance(grid, w, h, res_x, res_y);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i) {
            if (std::isinf(slow[i])) {
                CHECK(std::isinf(fast[i]));
            } else {
                CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("distance transform is zero on foreground and infinite when empty") {
    Raster r(16, 16, RasterKind::Binary, {0, 0, 0.3, 0.3});
    std::vector<double> empty = distance_to_foreground(r);
    for (double v : empty) CHECK(std::isinf(v));

    r.set(7, 9, 1.0);
    std::vector<double> one = distance_to_foreground(r);
    CHECK(one[9 * 16 + 7] == 0.0);
    // Neighbor one pixel east: exactly res_x away.
    CHECK(one[9 * 16 + 8] == doctest::Approx(0.3));
    // Diagonal neighbor.
    CHECK(one[10 * 16 + 8] == doctest::Approx(0.3 * std::sqrt(2.0)));
}

TEST_CASE("distance transform respects anisotropic resolution") {
    Raster r(9, 9, RasterKind::Binary, {0, 0, 0.5, 2.0});
    r.set(4, 4, 1.0);
    std::vector<double> d = distance_to_foreground(r);
    CHECK(d[4 * 9 + 5] == doctest::Approx(0.5)); // one column east
    CHECK(d[5 * 9 + 4] == doctest::Approx(2.0)); // one row south
}

TEST_CASE("distance transform rejects non-binary rasters") {
    Raster d(4, 4, RasterKind::Density, {0, 0, 1, 1});
    CHECK_THROWS_AS(distance_to_foreground(d), InputError);
}
