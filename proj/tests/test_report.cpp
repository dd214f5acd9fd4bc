#include <doctest.h>

#include <nlohmann/json.hpp>

#include "sceneval/report.hpp"

using namespace sceneval;

namespace {

ReportBundle sample_bundle() {
    ReportBundle bundle;
    bundle.config = {{"command", "evaluate"}, {"d", "4"}};
    CountingReport c;
    c.cell_size_m = 100.0;
    c.n_cells = 25;
    c.gmae = 0.134;
    c.gmae_per_km2 = 13.4;
    c.r_squared = {0.766, true};
    c.total_gt = 120.0;
    c.total_pred = 118.5;
    bundle.counting.push_back(c);

    LocalizationReport l;
    l.cutoff_d = 4.0;
    l.conservative = {MatchMode::Conservative, 4.0, 8, 2, 4, {{0, 1}, {2, 3}}};
    l.optimistic = {MatchMode::Optimistic, 4.0, 10, 1, 2, {}};
    l.conservative_scores = scores_from(l.conservative);
    l.optimistic_scores = scores_from(l.optimistic);
    bundle.localization.push_back(l);
    return bundle;
}

} // namespace

TEST_CASE("report JSON is deterministic and well formed") {
    ReportBundle bundle = sample_bundle();
    std::string a = render_report_json(bundle);
    std::string b = render_report_json(bundle);
    CHECK(a == b);

    auto doc = nlohmann::json::parse(a);
    CHECK(doc["tool"]["name"] == "sceneval");
    CHECK(doc["config"]["command"] == "evaluate");
    CHECK(doc["counting"][0]["gmae"] == 0.134);
    CHECK(doc["localization"][0]["conservative"]["tp"] == 8);
    CHECK(doc["localization"][0]["conservative"]["pairs"].size() == 2);
    CHECK(doc["localization"][0]["optimistic"].contains("pairs") == false);
}

TEST_CASE("undefined r_squared serializes as null with its flag") {
    ReportBundle bundle = sample_bundle();
    bundle.counting[0].r_squared = {std::nan(""), false};
    auto doc = nlohmann::json::parse(render_report_json(bundle));
    CHECK(doc["counting"][0]["r_squared"].is_null());
    CHECK(doc["counting"][0]["r_squared_defined"] == false);
}

TEST_CASE("CSV renderings") {
    ReportBundle bundle = sample_bundle();
    std::string counting = counting_csv(bundle.counting);
    CHECK(counting.find("r_m,gmae,gmae_per_km2,r_squared,n_cells") == 0);
    CHECK(counting.find("100,0.134,13.4,0.766,25,0,120,118.5\n") !=
          std::string::npos);

    std::string grid = gridmetrics_csv(bundle.counting);
    CHECK(grid == "r_m,gmae,gmae_per_km2,r_squared\n100,0.134,13.4,0.766\n");

    std::vector<SweepRow> rows{
        {1.0, MatchMode::Conservative, 3, 1, 2, 0.75, 0.6, 2.0 / 3.0},
        {1.0, MatchMode::Optimistic, 4, 1, 1, 0.8, 0.8, 0.8},
    };
    std::string sweep = sweep_csv(rows);
    CHECK(sweep.find("d_m,mode,tp,fp,fn,precision,recall,f_score\n") == 0);
    CHECK(sweep.find("1,conservative,3,1,2,0.75,0.6,") != std::string::npos);
    CHECK(sweep.find("1,optimistic,4,1,1,0.8,0.8,0.8\n") != std::string::npos);
}
