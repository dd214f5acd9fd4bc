// Acceptance suite: one check per release criterion, printed as a pass/fail
// line. Usage:  acceptance_tests <path-to-sceneval-binary>

#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "harness.hpp"
#include "oracles.hpp"
#include "sceneval/counting.hpp"
#include "sceneval/labels.hpp"
#include "sceneval/matching.hpp"
#include "sceneval/raster_io.hpp"
#include "sceneval/synthgen.hpp"

namespace fs = std::filesystem;
using namespace sceneval;

namespace {

std::string cli_path;
fs::path work;

struct Criterion {
    const char* name;
    std::function<bool(std::string&)> run;
};

// 1. All-positive prediction over a synthetic scene with N=100 labels:
//    optimistic (100,0,0), conservative (1,0,99). Zero tolerance.
bool degenerate_accounting(std::string& detail) {
    SynthConfig config;
    config.scene_width_m = 250.0;
    config.scene_height_m = 250.0;
    config.resolution_m = 0.5;
    config.n_animals = 100;
    config.label_jitter_max_m = 2.0;
    config.seed = 404;
    SynthScene scene = generate(config);
    Raster all_positive(scene.prediction.width(), scene.prediction.height(),
                        RasterKind::Binary, scene.prediction.georef(), 1.0);
    ComponentSet set = connected_components(all_positive);
    LocalizationReport report =
        localization_report(set, scene.labels.points, 4.0);
    bool ok = report.optimistic.tp == 100 && report.optimistic.fp == 0 &&
              report.optimistic.fn == 0 && report.conservative.tp == 1 &&
              report.conservative.fp == 0 && report.conservative.fn == 99;
    detail = "optimistic (" + std::to_string(report.optimistic.tp) + "," +
             std::to_string(report.optimistic.fp) + "," +
             std::to_string(report.optimistic.fn) + "), conservative (" +
             std::to_string(report.conservative.tp) + "," +
             std::to_string(report.conservative.fp) + "," +
             std::to_string(report.conservative.fn) + ")";
    return ok;
}

// 2. 1,000 random bipartite instances, <=10 nodes per side: matching size
//    equals brute-force enumeration. Zero tolerance.
bool matching_oracle(std::string& detail) {
    test::TestRng rng(2024);
    int agreed = 0;
    for (int i = 0; i < 1000; ++i) {
        BipartiteGraph g;
        g.n_left = 1 + rng.below(10);
        g.n_right = 1 + rng.below(10);
        g.adj.assign(g.n_left, {});
        double p = 0.05 + 0.5 * rng.uniform();
        for (int u = 0; u < g.n_left; ++u) {
            for (int v = 0; v < g.n_right; ++v) {
                if (rng.uniform() < p) g.adj[u].push_back(v);
            }
        }
        int fast = static_cast<int>(max_cardinality_matching(g).size());
        int slow = test::brute_force_max_matching(g);
        if (fast == slow) ++agreed;
    }
    detail = std::to_string(agreed) + "/1000 instances agree";
    return agreed == 1000;
}

// 3. 100 random synthetic scenes, d in 1..8: conservative and optimistic tp
//    non-decreasing in d. Zero violations.
bool tp_monotonicity(std::string& detail) {
    int violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SynthConfig config;
        config.scene_width_m = 120.0;
        config.scene_height_m = 120.0;
        config.resolution_m = 0.5;
        config.n_animals = 10;
        config.label_jitter_max_m = 2.5;
        config.fn_rate = 0.2;
        config.fp_rate = 0.2;
        config.seed = 9000 + trial;
        SynthScene scene = generate(config);
        ComponentSet set = connected_components(scene.prediction);
        std::int64_t prev_cons = -1;
        std::int64_t prev_opt = -1;
        for (double d : default_sweep_distances()) {
            LocalizationReport report =
                localization_report(set, scene.labels.points, d);
            if (report.conservative.tp < prev_cons) ++violations;
            if (report.optimistic.tp < prev_opt) ++violations;
            prev_cons = report.conservative.tp;
            prev_opt = report.optimistic.tp;
        }
    }
    detail = std::to_string(violations) + " violations over 100 scenes x 8 d";
    return violations == 0;
}

// 4. Mass conservation: density_mask of K interior points sums to K within
//    1e-9; counts_from_density over a full grid sums to the raster mass
//    within 1e-6.
bool mass_conservation(std::string& detail) {
    test::TestRng rng(512);
    Raster points(300, 300, RasterKind::Binary, {0, 0, 0.3, 0.3});
    int k = 0;
    while (k < 40) {
        int x = 5 + rng.below(290);
        int y = 5 + rng.below(290);
        if (points.at(x, y) == 0.0) {
            points.set(x, y, 1.0);
            ++k;
        }
    }
    DensityMask mask = density_mask(points);
    double mass = std::accumulate(mask.raster.values().begin(),
                                  mask.raster.values().end(), 0.0);
    bool kernel_ok = std::fabs(mass - 40.0) <= 1e-9;

    bool counts_ok = true;
    double worst = 0.0;
    for (double r : {13.0, 45.0, 90.0}) {
        GridSpec grid = make_grid(mask.raster, r);
        std::vector<double> counts = counts_from_density(mask.raster, grid);
        double total = std::accumulate(counts.begin(), counts.end(), 0.0);
        worst = std::max(worst, std::fabs(total - mass));
        if (std::fabs(total - mass) > 1e-6) counts_ok = false;
    }
    detail = "kernel mass error " + std::to_string(std::fabs(mass - 40.0)) +
             ", worst grid total error " + std::to_string(worst);
    return kernel_ok && counts_ok;
}

// 5. GAME(0) equals MAE exactly on random patch datasets, and the L=1
//    worked example (clustered gt, uniform pred) evaluates to exactly 6.
bool game_criteria(std::string& detail) {
    test::TestRng rng(640);
    bool mae_ok = true;
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<PatchSample> dataset;
        double mae = 0.0;
        int n_patches = 1 + rng.below(8);
        for (int p = 0; p < n_patches; ++p) {
            PatchSample patch;
            patch.side = 32.0;
            int n_gt = rng.below(15);
            int n_pred = rng.below(15);
            for (int i = 0; i < n_gt; ++i) {
                patch.gt.push_back(
                    {rng.uniform() * 32.0, rng.uniform() * 32.0});
            }
            for (int i = 0; i < n_pred; ++i) {
                patch.pred.push_back(
                    {rng.uniform() * 32.0, rng.uniform() * 32.0});
            }
            mae += std::fabs(static_cast<double>(n_pred - n_gt));
            dataset.push_back(std::move(patch));
        }
        mae /= n_patches;
        if (game(dataset, 0) != mae) mae_ok = false;
    }

    PatchSample worked;
    worked.side = 2.0;
    worked.gt = {{0.3, 0.3}, {0.5, 0.5}, {0.7, 0.7}, {0.9, 0.9}};
    worked.pred = {{0.5, 0.5}, {1.5, 0.5}, {0.5, 1.5}, {1.5, 1.5}};
    std::vector<PatchSample> example{worked};
    double value = game(example, 1);
    detail = "GAME(1) worked example = " + std::to_string(value);
    return mae_ok && value == 6.0;
}

// 6. gmae_per_km2(0.134, 100) = 13.4 within 1e-12.
bool gmae_normalization(std::string& detail) {
    double value = gmae_per_km2(0.134, 100.0);
    detail = "gmae_per_km2(0.134, 100) = " + std::to_string(value);
    return std::fabs(value - 13.4) <= 1e-12;
}

// 7. R^2 sanity: perfect predictor 1.0 exactly, mean predictor 0.0 within
//    1e-12, adversarial predictor (pred = 2*mean - y) negative.
bool r_squared_sanity(std::string& detail) {
    Raster scene(40, 10, RasterKind::Panchromatic, {0, 0, 1.0, 1.0});
    GridSpec grid = make_grid(scene, 10.0);
    CellCounts counts;
    counts.grid = grid;
    counts.gt = {1.0, 2.0, 3.0, 4.0};
    counts.pred = counts.gt;
    bool perfect = r_squared(counts).value == 1.0;

    double mean = 2.5;
    counts.pred = {mean, mean, mean, mean};
    double mean_r2 = r_squared(counts).value;
    bool mean_ok = std::fabs(mean_r2) <= 1e-12;

    counts.pred = {2 * mean - 1.0, 2 * mean - 2.0, 2 * mean - 3.0,
                   2 * mean - 4.0};
    double bad_r2 = r_squared(counts).value;
    detail = "perfect=1, mean=" + std::to_string(mean_r2) +
             ", adversarial=" + std::to_string(bad_r2);
    return perfect && mean_ok && bad_r2 < 0.0;
}

// 8. On a 3 m jitter fixture, recall rises steeply from d=1 to d=3 and
//    changes by under 2 percentage points from d=5 to d=8.
bool sweep_shape(std::string& detail) {
    SynthConfig config;
    config.scene_width_m = 600.0;
    config.scene_height_m = 600.0;
    config.resolution_m = 0.3;
    config.n_animals = 200;
    config.label_jitter_max_m = 3.0;
    config.seed = 808;
    SynthScene scene = generate(config);
    ComponentSet set = connected_components(scene.prediction);
    auto rows = sensitivity_sweep(set, scene.labels.points,
                                  default_sweep_distances());
    auto recall = [&rows](double d, MatchMode mode) {
        for (const SweepRow& row : rows) {
            if (row.d_m == d && row.mode == mode) return row.recall;
        }
        return -1.0;
    };
    bool ok = true;
    std::string parts;
    for (MatchMode mode : {MatchMode::Conservative, MatchMode::Optimistic}) {
        double r1 = recall(1.0, mode);
        double r3 = recall(3.0, mode);
        double plateau = std::fabs(recall(8.0, mode) - recall(5.0, mode));
        ok = ok && (r3 - r1 >= 0.25) && (plateau < 0.02);
        parts += std::string(match_mode_name(mode)) + " recall(1)=" +
                 std::to_string(r1) + " recall(3)=" + std::to_string(r3) +
                 " |r8-r5|=" + std::to_string(plateau) + "  ";
    }
    detail = parts;
    return ok;
}

// 9. Correct totals but 200 m local misplacement: R^2 at r=1024 m exceeds
//    R^2 at r=64 m.
bool grid_resolution_shape(std::string& detail) {
    test::TestRng rng(909);
    const double extent = 2048.0;
    AffineGeoref georef{0.0, 0.0, 1.0, 1.0};
    const int size = 2048;

    // Clustered ground truth toward the top-left, kept 200 m clear of the
    // east border so the shifted copy stays inside.
    std::vector<WorldPoint> gt;
    for (int i = 0; i < 400; ++i) {
        double x = rng.uniform() * rng.uniform() * (extent - 220.0) + 10.0;
        double y = -(rng.uniform() * rng.uniform() * (extent - 20.0) + 10.0);
        gt.push_back({x, y});
    }
    PointLabelSet shifted;
    for (const WorldPoint& p : gt) {
        shifted.points.push_back({p.x + 200.0, p.y});
    }
    RasterizeResult pred_points =
        rasterize_points(shifted, georef, size, size);
    DensityMask pred = density_mask(pred_points.raster);

    auto r2_at = [&](double r) {
        GridSpec grid = make_grid(pred.raster, r);
        CellCounts counts;
        counts.gt = counts_from_points(gt, grid).counts;
        counts.pred = counts_from_density(pred.raster, grid);
        counts.grid = std::move(grid);
        return r_squared(counts);
    };
    RSquared coarse = r2_at(1024.0);
    RSquared fine = r2_at(64.0);
    detail = "R2(1024)=" + std::to_string(coarse.value) +
             ", R2(64)=" + std::to_string(fine.value);
    return coarse.defined && fine.defined && coarse.value > fine.value;
}

// 10. Two CLI evaluate runs over the same fixture produce byte-identical
//     JSON reports.
bool determinism(std::string& detail) {
    if (cli_path.empty()) {
        detail = "no CLI binary path given";
        return false;
    }
    fs::path dir = work / "determinism";
    fs::create_directories(dir);
    SynthConfig config;
    config.scene_width_m = 300.0;
    config.scene_height_m = 200.0;
    config.resolution_m = 0.5;
    config.n_animals = 60;
    config.label_jitter_max_m = 1.5;
    config.fn_rate = 0.1;
    config.fp_rate = 0.1;
    config.seed = 1234;
    SynthScene scene = generate(config);
    write_raster(dir / "pred.tif", scene.prediction);
    write_labels_csv(dir / "labels.csv", scene.labels);

    std::string base = cli_path + " evaluate --pred " +
                       (dir / "pred.tif").string() + " --labels " +
                       (dir / "labels.csv").string() +
                       " --d 4 --r-list 50,100 --seed 7 --out ";
    harness::RunResult a =
        harness::run_command(base + (dir / "out1").string(), dir);
    harness::RunResult b =
        harness::run_command(base + (dir / "out2").string(), dir);
    if (a.exit_code != 0 || b.exit_code != 0) {
        detail = "CLI runs failed: " + a.err + b.err;
        return false;
    }
    std::string ra = harness::slurp(dir / "out1" / "report.json");
    std::string rb = harness::slurp(dir / "out2" / "report.json");
    bool csv_same =
        harness::slurp(dir / "out1" / "counting.csv") ==
            harness::slurp(dir / "out2" / "counting.csv") &&
        harness::slurp(dir / "out1" / "localization.csv") ==
            harness::slurp(dir / "out2" / "localization.csv");
    detail = "report.json " + std::to_string(ra.size()) + " bytes";
    return !ra.empty() && ra == rb && csv_same;
}

} // namespace

int main(int argc, char** argv) {
    if (argc >= 2) cli_path = argv[1];
    work = fs::temp_directory_path() / "sceneval_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    std::vector<Criterion> criteria{
        {"degenerate accounting: all-positive prediction", degenerate_accounting},
        {"matching oracle: 1000 random instances vs brute force", matching_oracle},
        {"tp monotonicity in d over random scenes", tp_monotonicity},
        {"mass conservation: kernels and grid sums", mass_conservation},
        {"GAME(0)=MAE and the GAME(1) worked example", game_criteria},
        {"GMAE per-km2 normalization", gmae_normalization},
        {"R-squared sanity: perfect, mean, adversarial", r_squared_sanity},
        {"cutoff sweep shape on a 3 m jitter fixture", sweep_shape},
        {"R-squared improves with cell size under misplacement",
         grid_resolution_shape},
        {"end-to-end determinism of CLI evaluate", determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". "
                  << criteria[i].name;
        if (!detail.empty()) std::cout << "  [" << detail << "]";
        std::cout << "\n";
        if (!ok) ++failed;
    }
    if (failed == 0) {
        fs::remove_all(work);
        std::cout << "all " << criteria.size() << " acceptance criteria pass\n";
        return 0;
    }
    std::cout << failed << " acceptance criteria FAILED\n";
    return 1;
}
