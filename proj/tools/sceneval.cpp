// Command line front end: evaluates counting and localization predictions
// against point labels over georeferenced scenes, runs cutoff and grid
// sweeps, builds training masks, and generates synthetic oracle fixtures.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sceneval/blobs.hpp"
#include "sceneval/counting.hpp"
#include "sceneval/detail/strfmt.hpp"
#include "sceneval/labels.hpp"
#include "sceneval/matching.hpp"
#include "sceneval/raster_io.hpp"
#include "sceneval/report.hpp"
#include "sceneval/synthgen.hpp"
#include "sceneval/version.hpp"

namespace fs = std::filesystem;
using namespace sceneval;

namespace {

struct CommonOptions {
    std::string pred;
    std::string labels;
    std::string valid_mask;
    double d = 4.0;
    std::vector<double> d_list;
    std::vector<double> r_list{32.0, 64.0, 128.0, 256.0, 512.0, 1024.0};
    double tau = 0.0;
    int connectivity = 8;
    std::string prediction_kind = "segmentation";
    std::string out;
    long long seed = 0;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool with_r,
                      bool with_d) {
    cmd->add_option("--pred", opt.pred, "Prediction raster (.tif/.f32)")
        ->required();
    cmd->add_option("--labels", opt.labels,
                    "Point labels (.csv or .geojson), meters in the scene CRS")
        ->required();
    cmd->add_option("--valid-mask", opt.valid_mask,
                    "Validity raster restricting the metric grid (optional)");
    if (with_d) {
        cmd->add_option("--d", opt.d, "Cutoff distance in meters")
            ->capture_default_str();
    }
    if (with_r) {
        cmd->add_option("--r-list", opt.r_list,
                        "Grid cell sizes in meters, comma separated")
            ->delimiter(',')
            ->capture_default_str();
    }
    cmd->add_option("--tau", opt.tau,
                    "Density threshold feeding the localization path")
        ->capture_default_str();
    cmd->add_option("--connectivity", opt.connectivity,
                    "Blob connectivity (4 or 8)")
        ->check(CLI::IsMember({4, 8}))
        ->capture_default_str();
    cmd->add_option("--prediction-kind", opt.prediction_kind,
                    "How to interpret the prediction raster")
        ->check(CLI::IsMember({"density", "segmentation"}))
        ->capture_default_str();
    cmd->add_option("--out", opt.out, "Output directory")->required();
    cmd->add_option("--seed", opt.seed, "Seed recorded in the report")
        ->capture_default_str();
}

struct LoadedInputs {
    Raster pred;
    PointLabelSet labels;
    std::optional<Raster> valid_mask;
};

LoadedInputs load_inputs(const CommonOptions& opt) {
    RasterKind kind = opt.prediction_kind == "density" ? RasterKind::Density
                                                       : RasterKind::Binary;
    LoadedInputs in{read_raster(opt.pred, kind), read_labels(opt.labels), {}};
    if (!opt.valid_mask.empty()) {
        in.valid_mask = read_raster(opt.valid_mask, RasterKind::Validity);
    }
    return in;
}

ComponentSet components_for(const LoadedInputs& in, const CommonOptions& opt) {
    if (opt.prediction_kind == "density") {
        return connected_components(threshold_density(in.pred, opt.tau),
                                    opt.connectivity);
    }
    return connected_components(in.pred, opt.connectivity);
}

std::vector<CountingReport> counting_reports(const LoadedInputs& in,
                                             const ComponentSet& components,
                                             const CommonOptions& opt) {
    std::vector<CountingReport> reports;
    for (double r : opt.r_list) {
        GridSpec grid = make_grid(
            in.pred, r, in.valid_mask ? &*in.valid_mask : nullptr);
        CellCounts counts;
        counts.gt = counts_from_points(in.labels.points, grid).counts;
        if (opt.prediction_kind == "density") {
            counts.pred = counts_from_density(in.pred, grid);
            counts.source = CountSource::Density;
        } else {
            counts.pred =
                counts_from_segmentation(components.components(), grid);
            counts.source = CountSource::Segmentation;
        }
        counts.grid = std::move(grid);
        reports.push_back(counting_report(counts));
    }
    return reports;
}

std::string fmt(double v) { return detail::fmt_double(v); }

std::vector<std::pair<std::string, std::string>> config_pairs(
    const std::string& command, const CommonOptions& opt) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("command", command);
    kv.emplace_back("pred", opt.pred);
    kv.emplace_back("labels", opt.labels);
    kv.emplace_back("valid_mask", opt.valid_mask);
    kv.emplace_back("d", fmt(opt.d));
    std::string rs;
    for (double r : opt.r_list) {
        if (!rs.empty()) rs += ',';
        rs += fmt(r);
    }
    kv.emplace_back("r_list", rs);
    kv.emplace_back("tau", fmt(opt.tau));
    kv.emplace_back("connectivity", std::to_string(opt.connectivity));
    kv.emplace_back("prediction_kind", opt.prediction_kind);
    kv.emplace_back("out", opt.out);
    kv.emplace_back("seed", std::to_string(opt.seed));
    return kv;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write output file: " + path.string());
    }
    out << content;
}

fs::path prepare_out_dir(const std::string& out) {
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw InputError("cannot create output directory: " + out);
    }
    return dir;
}

int run_evaluate(const CommonOptions& opt) {
    fs::path dir = prepare_out_dir(opt.out);
    LoadedInputs in = load_inputs(opt);
    ComponentSet components = components_for(in, opt);

    ReportBundle bundle;
    bundle.config = config_pairs("evaluate", opt);
    bundle.counting = counting_reports(in, components, opt);
    bundle.localization.push_back(
        localization_report(components, in.labels.points, opt.d));
    bundle.notes.emplace_back("n_components",
                              std::to_string(components.components().size()));
    bundle.notes.emplace_back("n_labels",
                              std::to_string(in.labels.points.size()));

    write_text(dir / "report.json", render_report_json(bundle));
    write_text(dir / "counting.csv", counting_csv(bundle.counting));
    std::vector<double> single{opt.d};
    write_text(dir / "localization.csv",
               sweep_csv(sensitivity_sweep(components, in.labels.points,
                                           single)));
    std::cout << "wrote " << (dir / "report.json").string() << "\n";
    return 0;
}

int run_sweep(const CommonOptions& opt) {
    fs::path dir = prepare_out_dir(opt.out);
    LoadedInputs in = load_inputs(opt);
    ComponentSet components = components_for(in, opt);
    std::vector<double> ds =
        opt.d_list.empty() ? default_sweep_distances() : opt.d_list;
    auto rows = sensitivity_sweep(components, in.labels.points, ds);
    write_text(dir / "sweep.csv", sweep_csv(rows));
    std::cout << "wrote " << (dir / "sweep.csv").string() << "\n";
    return 0;
}

int run_gridmetrics(const CommonOptions& opt) {
    fs::path dir = prepare_out_dir(opt.out);
    LoadedInputs in = load_inputs(opt);
    ComponentSet components = components_for(in, opt);
    std::vector<CountingReport> reports =
        counting_reports(in, components, opt);
    write_text(dir / "gridmetrics.csv", gridmetrics_csv(reports));
    std::cout << "wrote " << (dir / "gridmetrics.csv").string() << "\n";
    return 0;
}

struct MaskOptions {
    std::string labels;
    std::string scene;
    std::string out;
    std::string format = "tif";
    int kernel_size = 7;
    double sigma = 1.5;
    int filter_size = 7;
};

int run_masks(const MaskOptions& opt) {
    fs::path dir = prepare_out_dir(opt.out);
    Raster scene = read_raster(opt.scene, RasterKind::Panchromatic);
    PointLabelSet labels = read_labels(opt.labels);

    RasterizeResult points = rasterize_points(labels, scene.georef(),
                                              scene.width(), scene.height());
    DensityMask density =
        density_mask(points.raster, opt.kernel_size, opt.sigma);
    SegmentationMask segmentation =
        segmentation_mask(points.raster, opt.filter_size);

    std::string ext = "." + opt.format;
    write_raster(dir / ("points" + ext), points.raster);
    write_raster(dir / ("density" + ext), density.raster);
    write_raster(dir / ("segmentation" + ext), segmentation.raster);

    nlohmann::json info{
        {"tool", {{"name", kToolName}, {"version", kVersion}}},
        {"n_labels", labels.points.size()},
        {"collisions", points.collisions},
        {"dropped_points", points.dropped.size()},
        {"kernel_size", opt.kernel_size},
        {"kernel_sigma", opt.sigma},
        {"filter_size", opt.filter_size},
        {"truncated_kernel_mass", density.truncated_mass},
    };
    write_text(dir / "masks.json", info.dump(2) + "\n");
    std::cout << "wrote masks to " << dir.string() << "\n";
    return 0;
}

struct SynthOptions {
    double scene_width = 1000.0;
    double scene_height = 1000.0;
    double res = 0.3;
    int n = 100;
    double jitter = 0.0;
    int blob_radius = 2;
    double fp_rate = 0.0;
    double fn_rate = 0.0;
    long long seed = 0;
    std::string out;
    std::string format = "tif";
};

int run_synth(const SynthOptions& opt) {
    fs::path dir = prepare_out_dir(opt.out);
    SynthConfig config;
    config.scene_width_m = opt.scene_width;
    config.scene_height_m = opt.scene_height;
    config.resolution_m = opt.res;
    config.n_animals = opt.n;
    config.label_jitter_max_m = opt.jitter;
    config.blob_radius_px = opt.blob_radius;
    config.fp_rate = opt.fp_rate;
    config.fn_rate = opt.fn_rate;
    config.seed = static_cast<std::uint64_t>(opt.seed);

    SynthScene scene = generate(config);
    std::string ext = "." + opt.format;
    write_raster(dir / ("scene" + ext), scene.scene);
    write_raster(dir / ("pred" + ext), scene.prediction);
    write_labels_csv(dir / "labels.csv", scene.labels);
    PointLabelSet truth{scene.true_points, 0.0, scene.labels.class_tag};
    write_labels_csv(dir / "truth.csv", truth);

    auto match_json = [](const MatchResult& m) {
        return nlohmann::json{{"tp", m.tp}, {"fp", m.fp}, {"fn", m.fn}};
    };
    nlohmann::json expected{
        {"tool", {{"name", kToolName}, {"version", kVersion}}},
        {"config",
         {{"scene_width_m", config.scene_width_m},
          {"scene_height_m", config.scene_height_m},
          {"resolution_m", config.resolution_m},
          {"n_animals", config.n_animals},
          {"label_jitter_max_m", config.label_jitter_max_m},
          {"blob_radius_px", config.blob_radius_px},
          {"fp_rate", config.fp_rate},
          {"fn_rate", config.fn_rate},
          {"seed", config.seed}}},
        {"expected",
         {{"optimistic", match_json(scene.expected_optimistic)},
          {"conservative", match_json(scene.expected_conservative)},
          {"valid_d_min", scene.valid_d_min},
          {"valid_d_max", scene.valid_d_max},
          {"n_dropped", scene.dropped.size()},
          {"n_spurious", scene.n_spurious}}},
    };
    write_text(dir / "expected.json", expected.dump(2) + "\n");
    std::cout << "wrote fixture to " << dir.string() << "\n";
    return 0;
}

void print_error(const std::string& type, const std::string& message) {
    nlohmann::json err{{"error", {{"type", type}, {"message", message}}}};
    std::cerr << err.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "sceneval: counting and localization evaluation for point-labeled "
        "georeferenced scenes"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.footer("Environment: SCENE_EVAL_THREADS caps worker threads.\n"
               "Exit codes: 0 success, 2 input error, 3 georef mismatch.");

    CommonOptions eval_opt, sweep_opt, grid_opt;
    MaskOptions mask_opt;
    SynthOptions synth_opt;

    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Counting metrics per cell size plus localization "
                    "metrics at one cutoff; writes report.json");
    add_common_flags(evaluate, eval_opt, true, true);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Precision/recall as a function of the cutoff distance");
    add_common_flags(sweep, sweep_opt, false, false);
    sweep->add_option("--d-list", sweep_opt.d_list,
                      "Cutoff distances in meters (default 1..8)")
        ->delimiter(',');

    CLI::App* gridmetrics = app.add_subcommand(
        "gridmetrics", "GMAE, GMAE/km2 and R2 for each grid cell size");
    add_common_flags(gridmetrics, grid_opt, true, false);

    CLI::App* masks = app.add_subcommand(
        "masks", "Rasterize labels into density and segmentation masks");
    masks->add_option("--labels", mask_opt.labels, "Point labels")->required();
    masks->add_option("--scene", mask_opt.scene,
                      "Reference raster fixing the layout")
        ->required();
    masks->add_option("--out", mask_opt.out, "Output directory")->required();
    masks->add_option("--format", mask_opt.format, "Raster format")
        ->check(CLI::IsMember({"tif", "f32"}))
        ->capture_default_str();
    masks->add_option("--kernel-size", mask_opt.kernel_size,
                      "Gaussian kernel size in pixels")
        ->capture_default_str();
    masks->add_option("--sigma", mask_opt.sigma,
                      "Gaussian kernel sigma in pixels")
        ->capture_default_str();
    masks->add_option("--filter-size", mask_opt.filter_size,
                      "Maximum filter size in pixels")
        ->capture_default_str();

    CLI::App* synth = app.add_subcommand(
        "synth", "Generate a synthetic scene with known-answer expectations");
    synth->add_option("--out", synth_opt.out, "Output directory")->required();
    synth->add_option("--scene-width", synth_opt.scene_width, "Meters")
        ->capture_default_str();
    synth->add_option("--scene-height", synth_opt.scene_height, "Meters")
        ->capture_default_str();
    synth->add_option("--res", synth_opt.res, "Meters per pixel")
        ->capture_default_str();
    synth->add_option("--n", synth_opt.n, "Number of animals")
        ->capture_default_str();
    synth->add_option("--jitter", synth_opt.jitter,
                      "Max label displacement in meters")
        ->capture_default_str();
    synth->add_option("--blob-radius", synth_opt.blob_radius,
                      "Blob radius in pixels")
        ->capture_default_str();
    synth->add_option("--fp-rate", synth_opt.fp_rate,
                      "Spurious blobs per animal")
        ->capture_default_str();
    synth->add_option("--fn-rate", synth_opt.fn_rate,
                      "Fraction of animals without a blob")
        ->capture_default_str();
    synth->add_option("--seed", synth_opt.seed, "RNG seed")
        ->capture_default_str();
    synth->add_option("--format", synth_opt.format, "Raster format")
        ->check(CLI::IsMember({"tif", "f32"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("usage_error", e.what());
        return 2;
    }

    try {
        if (evaluate->parsed()) return run_evaluate(eval_opt);
        if (sweep->parsed()) return run_sweep(sweep_opt);
        if (gridmetrics->parsed()) return run_gridmetrics(grid_opt);
        if (masks->parsed()) return run_masks(mask_opt);
        if (synth->parsed()) return run_synth(synth_opt);
    } catch (const GeorefMismatchError& e) {
        print_error("georef_mismatch", e.what());
        return 3;
    } catch (const InputError& e) {
        print_error("input_error", e.what());
        return 2;
    } catch (const Error& e) {
        print_error("error", e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error("internal_error", e.what());
        return 1;
    }
    return 0;
}
