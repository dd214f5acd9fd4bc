#include "sceneval/report.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sceneval/detail/strfmt.hpp"
#include "sceneval/version.hpp"

namespace sceneval {

namespace {

using nlohmann::json;

json number_or_null(double v) {
    if (std::isnan(v) || std::isinf(v)) return nullptr;
    return v;
}

json counting_json(const CountingReport& r) {
    return json{
        {"cell_size_m", r.cell_size_m},
        {"n_cells", r.n_cells},
        {"n_partial_cells", r.n_partial_cells},
        {"gmae", r.gmae},
        {"gmae_per_km2", r.gmae_per_km2},
        {"r_squared", number_or_null(r.r_squared.value)},
        {"r_squared_defined", r.r_squared.defined},
        {"total_gt", r.total_gt},
        {"total_pred", r.total_pred},
    };
}

json match_json(const MatchResult& m, const Scores& s) {
    json pairs = json::array();
    for (const auto& [u, v] : m.pairs) {
        pairs.push_back(json::array({u, v}));
    }
    json out{
        {"tp", m.tp},
        {"fp", m.fp},
        {"fn", m.fn},
        {"precision", s.precision},
        {"recall", s.recall},
        {"f_score", s.f_score},
        {"zero_division", s.zero_division},
    };
    if (m.mode == MatchMode::Conservative) {
        out["pairs"] = std::move(pairs);
    }
    return out;
}

json localization_json(const LocalizationReport& r) {
    return json{
        {"cutoff_d_m", r.cutoff_d},
        {"conservative", match_json(r.conservative, r.conservative_scores)},
        {"optimistic", match_json(r.optimistic, r.optimistic_scores)},
    };
}

} // namespace

std::string render_report_json(const ReportBundle& bundle) {
    json doc;
    doc["tool"] = {{"name", kToolName}, {"version", kVersion}};
    json config = json::object();
    for (const auto& [key, value] : bundle.config) config[key] = value;
    doc["config"] = std::move(config);
    json counting = json::array();
    for (const CountingReport& r : bundle.counting) {
        counting.push_back(counting_json(r));
    }
    doc["counting"] = std::move(counting);
    json localization = json::array();
    for (const LocalizationReport& r : bundle.localization) {
        localization.push_back(localization_json(r));
    }
    doc["localization"] = std::move(localization);
    if (!bundle.notes.empty()) {
        json notes = json::object();
        for (const auto& [key, value] : bundle.notes) notes[key] = value;
        doc["notes"] = std::move(notes);
    }
    return doc.dump(2) + "\n";
}

namespace {

std::string csv_num(double v) { return detail::fmt_double(v); }

} // namespace

std::string counting_csv(std::span<const CountingReport> reports) {
    std::ostringstream out;
    out << "r_m,gmae,gmae_per_km2,r_squared,n_cells,n_partial_cells,total_gt,"
           "total_pred\n";
    for (const CountingReport& r : reports) {
        out << csv_num(r.cell_size_m) << ',' << csv_num(r.gmae) << ','
            << csv_num(r.gmae_per_km2) << ',' << csv_num(r.r_squared.value)
            << ',' << r.n_cells << ',' << r.n_partial_cells << ','
            << csv_num(r.total_gt) << ',' << csv_num(r.total_pred) << '\n';
    }
    return out.str();
}

std::string gridmetrics_csv(std::span<const CountingReport> reports) {
    std::ostringstream out;
    out << "r_m,gmae,gmae_per_km2,r_squared\n";
    for (const CountingReport& r : reports) {
        out << csv_num(r.cell_size_m) << ',' << csv_num(r.gmae) << ','
            << csv_num(r.gmae_per_km2) << ',' << csv_num(r.r_squared.value)
            << '\n';
    }
    return out.str();
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::ostringstream out;
    out << "d_m,mode,tp,fp,fn,precision,recall,f_score\n";
    for (const SweepRow& r : rows) {
        out << csv_num(r.d_m) << ',' << match_mode_name(r.mode) << ',' << r.tp
            << ',' << r.fp << ',' << r.fn << ',' << csv_num(r.precision) << ','
            << csv_num(r.recall) << ',' << csv_num(r.f_score) << '\n';
    }
    return out.str();
}

} // namespace sceneval
