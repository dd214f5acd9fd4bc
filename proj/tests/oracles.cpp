#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace sceneval::test {

namespace {

int matching_backtrack(const BipartiteGraph& graph, std::size_t u,
                       std::vector<char>& right_used) {
    if (u == graph.adj.size()) return 0;
    // Either leave u unmatched...
    int best = matching_backtrack(graph, u + 1, right_used);
    // ...or try every free partner.
    for (int v : graph.adj[u]) {
        if (right_used[v]) continue;
        right_used[v] = 1;
        best = std::max(best, 1 + matching_backtrack(graph, u + 1, right_used));
        right_used[v] = 0;
    }
    return best;
}

} // namespace

int brute_force_max_matching(const BipartiteGraph& graph) {
    std::vector<char> right_used(graph.n_right, 0);
    return matching_backtrack(graph, 0, right_used);
}

int brute_force_component_count(const std::vector<int>& grid, int width,
                                int height, int connectivity) {
    std::vector<char> seen(grid.size(), 0);
    int count = 0;
    std::function<void(int, int)> flood = [&](int x, int y) {
        if (x < 0 || x >= width || y < 0 || y >= height) return;
        std::size_t i = static_cast<std::size_t>(y) * width + x;
        if (seen[i] || grid[i] == 0) return;
        seen[i] = 1;
        flood(x - 1, y);
        flood(x + 1, y);
        flood(x, y - 1);
        flood(x, y + 1);
        if (connectivity == 8) {
            flood(x - 1, y - 1);
            flood(x + 1, y - 1);
            flood(x - 1, y + 1);
            flood(x + 1, y + 1);
        }
    };
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * width + x;
            if (grid[i] != 0 && !seen[i]) {
                ++count;
                flood(x, y);
            }
        }
    }
    return count;
}

std::vector<double> brute_force_distance(const std::vector<int>& grid,
                                         int width, int height, double res_x,
                                         double res_y) {
    std::vector<double> out(grid.size(),
                            std::numeric_limits<double>::infinity());
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double best = std::numeric_limits<double>::infinity();
            for (int fy = 0; fy < height; ++fy) {
                for (int fx = 0; fx < width; ++fx) {
                    if (grid[static_cast<std::size_t>(fy) * width + fx] == 0) {
                        continue;
                    }
                    double dx = (x - fx) * res_x;
                    double dy = (y - fy) * res_y;
                    best = std::min(best, std::sqrt(dx * dx + dy * dy));
                }
            }
            out[static_cast<std::size_t>(y) * width + x] = best;
        }
    }
    return out;
}

double brute_force_min_distance(std::span<const PixelCoord> pixels,
                                WorldPoint label, const AffineGeoref& georef) {
    double best = std::numeric_limits<double>::infinity();
    for (const PixelCoord& p : pixels) {
        WorldPoint w = georef.pixel_to_world(p.x, p.y);
        best = std::min(best, std::hypot(w.x - label.x, w.y - label.y));
    }
    return best;
}

} // namespace sceneval::test
