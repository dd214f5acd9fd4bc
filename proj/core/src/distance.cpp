#include "sceneval/distance.hpp"

#include <cmath>
#include <limits>

#include "sceneval/parallel.hpp"

namespace sceneval {

namespace {

constexpr double kInf = 1e30;

// One dimensional squared distance transform (lower envelope of parabolas)
// over n samples spaced s apart. f holds input costs, d the output,
// v/z/scratch are caller-provided work arrays of size n and n+1.
void dt1d(const double* f, double* d, int n, double s, int* v, double* z) {
    // Sentinels must be true infinities: with finite costs up to kInf the
    // parabola intersections stay finite, so the pop loop cannot underrun.
    const double inf = std::numeric_limits<double>::infinity();
    int k = 0;
    v[0] = 0;
    z[0] = -inf;
    z[1] = inf;
    for (int q = 1; q < n; ++q) {
        double xq = q * s;
        double inter;
        for (;;) {
            double xv = v[k] * s;
            inter = ((f[q] + xq * xq) - (f[v[k]] + xv * xv)) /
                    (2.0 * xq - 2.0 * xv);
            if (inter > z[k]) break;
            --k;
        }
        ++k;
        v[k] = q;
        z[k] = inter;
        z[k + 1] = inf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        double x = q * s;
        while (z[k + 1] < x) ++k;
        double dx = x - v[k] * s;
        d[q] = dx * dx + f[v[k]];
    }
}

std::vector<double> transform(const std::vector<double>& cost, int w, int h,
                              double res_x, double res_y) {
    std::vector<double> mid(cost.size());
    // Columns first (spacing res_y), then rows (spacing res_x). Each line is
    // independent, so chunked parallelism cannot change the result.
    parallel_chunks(w, [&](int, std::int64_t begin, std::int64_t end) {
        std::vector<double> f(h), d(h), z(h + 1);
        std::vector<int> v(h);
        for (std::int64_t x = begin; x < end; ++x) {
            for (int y = 0; y < h; ++y) {
                f[y] = cost[static_cast<std::size_t>(y) * w + x];
            }
            dt1d(f.data(), d.data(), h, res_y, v.data(), z.data());
            for (int y = 0; y < h; ++y) {
                mid[static_cast<std::size_t>(y) * w + x] = d[y];
            }
        }
    });
    std::vector<double> out(cost.size());
    parallel_chunks(h, [&](int, std::int64_t begin, std::int64_t end) {
        std::vector<double> d(w), z(w + 1);
        std::vector<int> v(w);
        for (std::int64_t y = begin; y < end; ++y) {
            const double* f = mid.data() + static_cast<std::size_t>(y) * w;
            dt1d(f, d.data(), w, res_x, v.data(), z.data());
            for (int x = 0; x < w; ++x) {
                double sq = d[x];
                out[static_cast<std::size_t>(y) * w + x] =
                    sq >= 1e29 ? std::numeric_limits<double>::infinity()
                               : std::sqrt(sq);
            }
        }
    });
    return out;
}

} // namespace

std::vector<double> distance_to_foreground(const Raster& binary) {
    if (binary.kind() != RasterKind::Binary &&
        binary.kind() != RasterKind::Validity) {
        throw InputError("distance_to_foreground requires a binary raster");
    }
    std::vector<double> cost(binary.values().size());
    auto vals = binary.values();
    for (std::size_t i = 0; i < cost.size(); ++i) {
        cost[i] = vals[i] != 0.0 ? 0.0 : kInf;
    }
    return transform(cost, binary.width(), binary.height(),
                     binary.georef().res_x, binary.georef().res_y);
}

std::vector<double> distance_to_foreground(std::span<const std::int32_t> labels,
                                           int width, int height, double res_x,
                                           double res_y) {
    if (labels.size() != static_cast<std::size_t>(width) * height) {
        throw InputError("label image size does not match dimensions");
    }
    std::vector<double> cost(labels.size());
    for (std::size_t i = 0; i < cost.size(); ++i) {
        cost[i] = labels[i] != 0 ? 0.0 : kInf;
    }
    return transform(cost, width, height, res_x, res_y);
}

} // namespace sceneval
