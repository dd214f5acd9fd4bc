#include "sceneval/matching.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "sceneval/distance.hpp"
#include "sceneval/parallel.hpp"

namespace sceneval {

const char* match_mode_name(MatchMode mode) {
    return mode == MatchMode::Optimistic ? "optimistic" : "conservative";
}

Scores scores_from(const MatchResult& result) {
    Scores s;
    double tp = static_cast<double>(result.tp);
    if (result.tp + result.fp > 0) {
        s.precision = tp / static_cast<double>(result.tp + result.fp);
    } else {
        s.zero_division = true;
    }
    if (result.tp + result.fn > 0) {
        s.recall = tp / static_cast<double>(result.tp + result.fn);
    } else {
        s.zero_division = true;
    }
    if (s.precision + s.recall > 0.0) {
        s.f_score = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    } else {
        s.zero_division = true;
    }
    return s;
}

std::vector<std::pair<int, int>> max_cardinality_matching(
    const BipartiteGraph& graph) {
    if (graph.adj.size() != static_cast<std::size_t>(graph.n_left)) {
        throw InputError("bipartite adjacency size does not match n_left");
    }
    for (const auto& row : graph.adj) {
        for (int v : row) {
            if (v < 0 || v >= graph.n_right) {
                throw InputError("bipartite edge endpoint out of range");
            }
        }
    }

    constexpr int kNil = -1;
    const int nl = graph.n_left;
    const int nr = graph.n_right;
    std::vector<int> match_l(nl, kNil), match_r(nr, kNil);
    std::vector<int> dist(nl);

    auto bfs = [&]() {
        std::queue<int> q;
        bool found_free = false;
        for (int u = 0; u < nl; ++u) {
            if (match_l[u] == kNil) {
                dist[u] = 0;
                q.push(u);
            } else {
                dist[u] = -1;
            }
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : graph.adj[u]) {
                int w = match_r[v];
                if (w == kNil) {
                    found_free = true;
                } else if (dist[w] == -1) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return found_free;
    };

    std::function<bool(int)> dfs = [&](int u) {
        for (int v : graph.adj[u]) {
            int w = match_r[v];
            if (w == kNil || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = -1;
        return false;
    };

    while (bfs()) {
        for (int u = 0; u < nl; ++u) {
            if (match_l[u] == kNil) dfs(u);
        }
    }

    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < nl; ++u) {
        if (match_l[u] != kNil) pairs.emplace_back(u, match_l[u]);
    }
    return pairs;
}

bool intersects_within(const Component& component, WorldPoint label, double d,
                       const AffineGeoref& georef) {
    if (!(d >= 0.0)) {
        throw InputError("cutoff distance d must be >= 0");
    }
    if (component.pixels.empty()) return false;
    // Bounding box prefilter: distance from the label to the closest point
    // of the bbox (in world coordinates) lower-bounds the pixel distance.
    WorldPoint tl = georef.pixel_to_world(component.bbox.min_x,
                                          component.bbox.min_y);
    WorldPoint br = georef.pixel_to_world(component.bbox.max_x,
                                          component.bbox.max_y);
    double dx = std::max({tl.x - label.x, label.x - br.x, 0.0});
    double dy = std::max({br.y - label.y, label.y - tl.y, 0.0});
    if (dx * dx + dy * dy > d * d) return false;

    for (const PixelCoord& p : component.pixels) {
        WorldPoint w = georef.pixel_to_world(p.x, p.y);
        double ex = w.x - label.x;
        double ey = w.y - label.y;
        if (ex * ex + ey * ey <= d * d) return true;
    }
    return false;
}

std::vector<std::vector<int>> component_label_edges(
    const ComponentSet& set, std::span<const WorldPoint> labels, double d) {
    if (!(d >= 0.0)) {
        throw InputError("cutoff distance d must be >= 0");
    }
    const int w = set.width();
    const int h = set.height();
    const AffineGeoref& g = set.georef();
    std::vector<std::vector<int>> edges(labels.size());
    if (set.components().empty() || labels.empty()) return edges;

    // Distance to the nearest predicted pixel lets far-away labels skip the
    // window scan entirely.
    std::vector<double> nearest =
        distance_to_foreground(set.labels(), w, h, g.res_x, g.res_y);

    parallel_chunks(
        static_cast<std::int64_t>(labels.size()),
        [&](int, std::int64_t begin, std::int64_t end) {
            for (std::int64_t k = begin; k < end; ++k) {
                const WorldPoint& label = labels[k];
                PixelCoord snap = g.snap(label.x, label.y);
                int sx = std::clamp(snap.x, 0, w - 1);
                int sy = std::clamp(snap.y, 0, h - 1);
                WorldPoint sw = g.pixel_to_world(sx, sy);
                double off = std::hypot(label.x - sw.x, label.y - sw.y);
                if (nearest[static_cast<std::size_t>(sy) * w + sx] - off > d) {
                    continue;
                }
                // Scan the pixel window that can hold sample points within d
                // of the label, padded one pixel against rounding; the exact
                // per-pixel distance test below does the real filtering.
                double ux = (label.x - g.origin_x) / g.res_x;
                double uy = (g.origin_y - label.y) / g.res_y;
                int x0 = std::max(
                    0, static_cast<int>(std::ceil(ux - d / g.res_x)) - 1);
                int x1 = std::min(
                    w - 1, static_cast<int>(std::floor(ux + d / g.res_x)) + 1);
                int y0 = std::max(
                    0, static_cast<int>(std::ceil(uy - d / g.res_y)) - 1);
                int y1 = std::min(
                    h - 1, static_cast<int>(std::floor(uy + d / g.res_y)) + 1);
                std::vector<int>& found = edges[k];
                for (int y = y0; y <= y1; ++y) {
                    double ey = (g.origin_y - y * g.res_y) - label.y;
                    for (int x = x0; x <= x1; ++x) {
                        std::int32_t comp = set.label_at(x, y);
                        if (comp == 0) continue;
                        double ex = (g.origin_x + x * g.res_x) - label.x;
                        if (ex * ex + ey * ey <= d * d) {
                            found.push_back(comp - 1);
                        }
                    }
                }
                std::sort(found.begin(), found.end());
                found.erase(std::unique(found.begin(), found.end()),
                            found.end());
            }
        });
    return edges;
}

namespace {

MatchResult optimistic_from_edges(const std::vector<std::vector<int>>& edges,
                                  std::size_t n_components, double d) {
    MatchResult r;
    r.mode = MatchMode::Optimistic;
    r.cutoff_d = d;
    std::vector<char> component_hit(n_components, 0);
    for (const auto& comps : edges) {
        if (!comps.empty()) {
            ++r.tp;
        } else {
            ++r.fn;
        }
        for (int c : comps) component_hit[c] = 1;
    }
    for (char hit : component_hit) {
        if (!hit) ++r.fp;
    }
    return r;
}

MatchResult conservative_from_edges(const std::vector<std::vector<int>>& edges,
                                    std::size_t n_components, double d) {
    BipartiteGraph graph;
    graph.n_left = static_cast<int>(n_components);
    graph.n_right = static_cast<int>(edges.size());
    graph.adj.assign(n_components, {});
    for (std::size_t k = 0; k < edges.size(); ++k) {
        for (int c : edges[k]) {
            graph.adj[c].push_back(static_cast<int>(k));
        }
    }
    MatchResult r;
    r.mode = MatchMode::Conservative;
    r.cutoff_d = d;
    r.pairs = max_cardinality_matching(graph);
    r.tp = static_cast<std::int64_t>(r.pairs.size());
    r.fp = static_cast<std::int64_t>(n_components) - r.tp;
    r.fn = static_cast<std::int64_t>(edges.size()) - r.tp;
    return r;
}

} // namespace

MatchResult optimistic_match(const ComponentSet& set,
                             std::span<const WorldPoint> labels, double d) {
    return optimistic_from_edges(component_label_edges(set, labels, d),
                                 set.components().size(), d);
}

MatchResult conservative_match(const ComponentSet& set,
                               std::span<const WorldPoint> labels, double d) {
    return conservative_from_edges(component_label_edges(set, labels, d),
                                   set.components().size(), d);
}

LocalizationReport localization_report(const ComponentSet& set,
                                       std::span<const WorldPoint> labels,
                                       double d) {
    std::vector<std::vector<int>> edges = component_label_edges(set, labels, d);
    LocalizationReport report;
    report.cutoff_d = d;
    report.optimistic =
        optimistic_from_edges(edges, set.components().size(), d);
    report.conservative =
        conservative_from_edges(edges, set.components().size(), d);
    report.optimistic_scores = scores_from(report.optimistic);
    report.conservative_scores = scores_from(report.conservative);
    return report;
}

std::vector<SweepRow> sensitivity_sweep(const ComponentSet& set,
                                        std::span<const WorldPoint> labels,
                                        std::span<const double> d_values) {
    if (d_values.empty()) {
        throw InputError("sensitivity sweep needs at least one cutoff distance");
    }
    std::vector<SweepRow> rows;
    rows.reserve(d_values.size() * 2);
    for (double d : d_values) {
        LocalizationReport report = localization_report(set, labels, d);
        for (MatchMode mode :
             {MatchMode::Conservative, MatchMode::Optimistic}) {
            const MatchResult& m = mode == MatchMode::Conservative
                                       ? report.conservative
                                       : report.optimistic;
            const Scores& s = mode == MatchMode::Conservative
                                  ? report.conservative_scores
                                  : report.optimistic_scores;
            rows.push_back({d, mode, m.tp, m.fp, m.fn, s.precision, s.recall,
                            s.f_score});
        }
    }
    return rows;
}

std::vector<double> default_sweep_distances() {
    return {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0};
}

} // namespace sceneval
