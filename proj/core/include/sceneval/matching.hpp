#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sceneval/blobs.hpp"
#include "sceneval/geo.hpp"

namespace sceneval {

enum class MatchMode { Optimistic, Conservative };

const char* match_mode_name(MatchMode mode);

// TP/FP/FN accounting for one matching mode at one cutoff distance.
struct MatchResult {
    MatchMode mode = MatchMode::Optimistic;
    double cutoff_d = 0.0;
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    // Conservative mode only: the (component index, label index) pairing that
    // realized tp. Deterministic given input order.
    std::vector<std::pair<int, int>> pairs;
};

// Precision/recall/F-score with zero denominators reported as 0 and flagged.
struct Scores {
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
    bool zero_division = false;
};

Scores scores_from(const MatchResult& result);

struct LocalizationReport {
    double cutoff_d = 0.0;
    MatchResult optimistic;
    MatchResult conservative;
    Scores optimistic_scores;
    Scores conservative_scores;
};

// Left-adjacency bipartite graph: adj[u] lists the right nodes of u.
struct BipartiteGraph {
    int n_left = 0;
    int n_right = 0;
    std::vector<std::vector<int>> adj;
};

// Maximum cardinality matching (Hopcroft-Karp). Returns (left, right) pairs
// in ascending left order; deterministic given adjacency order.
std::vector<std::pair<int, int>> max_cardinality_matching(
    const BipartiteGraph& graph);

// True iff the minimum Euclidean distance from the label to any pixel sample
// point of the component is <= d. Equivalent to a disk of radius d around
// the label intersecting the component.
bool intersects_within(const Component& component, WorldPoint label, double d,
                       const AffineGeoref& georef);

// Component-label incidence at cutoff d: edges[k] lists the component
// indices (0-based into set.components()) within d of label k.
std::vector<std::vector<int>> component_label_edges(
    const ComponentSet& set, std::span<const WorldPoint> labels, double d);

// A label counts as detected if any component touches its d-buffer; one
// component may satisfy many labels.
MatchResult optimistic_match(const ComponentSet& set,
                             std::span<const WorldPoint> labels, double d);

// One-to-one pairing via maximum cardinality matching on the component/label
// incidence graph.
MatchResult conservative_match(const ComponentSet& set,
                               std::span<const WorldPoint> labels, double d);

// Both modes over a single shared edge construction.
LocalizationReport localization_report(const ComponentSet& set,
                                       std::span<const WorldPoint> labels,
                                       double d);

struct SweepRow {
    double d_m = 0.0;
    MatchMode mode = MatchMode::Optimistic;
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
};

// One localization evaluation per cutoff distance, two rows per distance
// (conservative first). Default sweep distances are 1..8 meters.
std::vector<SweepRow> sensitivity_sweep(const ComponentSet& set,
                                        std::span<const WorldPoint> labels,
                                        std::span<const double> d_values);

std::vector<double> default_sweep_distances();

} // namespace sceneval
