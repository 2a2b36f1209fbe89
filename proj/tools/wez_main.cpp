// Pipeline driver: design -> simulate -> stats/filter -> train -> sweep.
// Exit codes: 0 success, 1 runtime or data error, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wez/dataset.hpp"
#include "wez/design.hpp"
#include "wez/errors.hpp"
#include "wez/filter.hpp"
#include "wez/missile.hpp"
#include "wez/model_io.hpp"
#include "wez/stats.hpp"
#include "wez/sweep.hpp"
#include "wez/train.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// --seed beats WEZ_SEED beats the built-in default.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed,
                           std::uint64_t fallback) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv("WEZ_SEED")) {
        try {
            std::size_t used = 0;
            const std::uint64_t v = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
            return v;
        } catch (const std::exception&) {
            throw CLI::ValidationError("WEZ_SEED", "WEZ_SEED is not an unsigned integer");
        }
    }
    return fallback;
}

// dataset.csv -> dataset.<suffix>.json, next to the original.
std::string sidecar_path(const std::string& main_path, const char* suffix) {
    fs::path p(main_path);
    fs::path name = p.stem();
    name += std::string(".") + suffix + ".json";
    return (p.parent_path() / name).string();
}

struct DesignArgs {
    std::size_t samples = 0;
    std::optional<std::uint64_t> seed;
    std::size_t iterations = 100000;
    std::string out = "design.csv";
    std::string config;
    bool print_config = false;
};

wez::DesignSpec build_design_spec(const DesignArgs& args) {
    wez::DesignSpec spec;
    spec.samples = args.samples;
    spec.seed = resolve_seed(args.seed, 0);
    spec.maximin_iterations = args.iterations;
    if (!args.config.empty()) {
        std::ifstream in(args.config);
        if (!in) throw wez::ConfigError("cannot open design config " + args.config);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw wez::ConfigError(args.config + ": " + e.what());
        }
        if (j.contains("maximin_iterations"))
            spec.maximin_iterations = j["maximin_iterations"].get<std::size_t>();
        if (j.contains("bounds")) {
            for (auto& [key, value] : j["bounds"].items()) {
                bool known = false;
                for (auto& b : spec.bounds) {
                    if (key == b.name) {
                        b.min = value.at("min").get<double>();
                        b.max = value.at("max").get<double>();
                        known = true;
                        break;
                    }
                }
                if (!known)
                    throw wez::ConfigError(args.config + ": unknown variable '" + key + "'");
            }
        }
    }
    return spec;
}

std::string design_spec_json(const wez::DesignSpec& spec) {
    ordered_json j;
    j["samples"] = spec.samples;
    j["seed"] = spec.seed;
    j["maximin_iterations"] = spec.maximin_iterations;
    ordered_json bounds;
    for (const auto& b : spec.bounds) {
        ordered_json entry;
        entry["min"] = b.min;
        entry["max"] = b.max;
        entry["unit"] = b.unit;
        bounds[b.name] = entry;
    }
    j["bounds"] = bounds;
    return j.dump(2) + "\n";
}

int cmd_design(const DesignArgs& args) {
    const wez::DesignSpec spec = build_design_spec(args);
    if (args.print_config) {
        std::fputs(design_spec_json(spec).c_str(), stdout);
        return 0;
    }
    const wez::Design design = wez::lhs_sample(spec);
    wez::write_design_csv(design, args.out);
    wez::write_design_meta(design, sidecar_path(args.out, "meta"));
    std::fprintf(stderr,
                 "design: %zu rows, min distance %.6f -> %.6f (%zu swaps accepted)\n",
                 design.rows.size(), design.min_distance_initial, design.min_distance,
                 design.accepted_swaps);
    return 0;
}

struct SimulateArgs {
    std::string design;
    std::string missile;
    std::string out = "dataset.csv";
    int jobs = 0;
    bool print_config = false;
};

int cmd_simulate(const SimulateArgs& args) {
    wez::MissileConfig missile;
    if (!args.missile.empty()) missile = wez::load_missile_config(args.missile);
    if (args.print_config) {
        std::fputs(wez::missile_config_json(missile).c_str(), stdout);
        return 0;
    }
    wez::Design design = wez::read_design_csv(args.design);
    const std::string design_meta = sidecar_path(args.design, "meta");
    if (fs::exists(design_meta)) wez::read_design_meta(design, design_meta);

    auto progress = [](std::size_t done, std::size_t total) {
        std::fprintf(stderr, "simulate: %3zu%% (%zu/%zu)\n", done * 100 / total, done,
                     total);
    };
    wez::BatchReport report;
    const wez::Dataset dataset =
        wez::generate_dataset(design, missile, args.jobs, &report, progress);
    wez::write_dataset_csv(dataset, args.out);
    wez::write_dataset_meta(dataset.meta, sidecar_path(args.out, "meta"));
    std::fprintf(stderr, "simulate: %zu rows (%zu without a launch range)\n",
                 dataset.rows.size(), report.no_range_rows);
    if (!report.failures.empty()) {
        const std::string failures_path = sidecar_path(args.out, "failures");
        ordered_json j = ordered_json::array();
        for (const wez::BatchFailure& f : report.failures) {
            ordered_json entry;
            entry["row"] = f.row;
            entry["message"] = f.message;
            j.push_back(entry);
        }
        std::ofstream out(failures_path, std::ios::binary);
        out << j.dump(2) << '\n';
        std::fprintf(stderr, "simulate: %zu rows failed; report at %s\n",
                     report.failures.size(), failures_path.c_str());
        return 1;
    }
    return 0;
}

void print_summary(const wez::StatsSummary& summary) {
    std::printf("rows: %zu\n", summary.rows);
    std::printf("%-10s %12s %12s %12s %12s %12s %12s %12s\n", "column", "mean", "std",
                "min", "25%", "50%", "75%", "max");
    for (const wez::ColumnStats& c : summary.columns)
        std::printf("%-10s %12.2f %12.2f %12.2f %12.2f %12.2f %12.2f %12.2f\n",
                    c.name.c_str(), c.mean, c.std_dev, c.min, c.q25, c.q50, c.q75, c.max);
}

void print_matrix(const wez::Matrix8& m) {
    std::printf("\nPearson correlation\n%-10s", "");
    for (const char* name : wez::kDatasetColumns) std::printf(" %9s", name);
    std::printf("\n");
    for (std::size_t a = 0; a < m.size(); ++a) {
        std::printf("%-10s", wez::kDatasetColumns[a]);
        for (std::size_t b = 0; b < m.size(); ++b) std::printf(" %9.4f", m[a][b]);
        std::printf("\n");
    }
}

struct StatsArgs {
    std::string data;
    std::string rules;
    bool filter = false;
};

int cmd_stats(const StatsArgs& args) {
    wez::Dataset dataset = wez::read_dataset_csv(args.data);
    if (args.filter) {
        const wez::FilterRules rules = args.rules.empty()
                                           ? wez::default_filter_rules()
                                           : wez::load_filter_rules(args.rules);
        auto [filtered, report] = wez::filter_dataset(dataset, rules);
        std::fprintf(stderr, "filter: %zu -> %zu rows (fence %.3f NM)\n",
                     report.input_rows, report.output_rows, report.fence_nm);
        dataset = std::move(filtered);
    }
    print_summary(wez::describe(dataset));
    print_matrix(wez::pearson_matrix(dataset));
    return 0;
}

struct FilterArgs {
    std::string data;
    std::string out = "filtered.csv";
    std::string report;  // default: <out stem>.report.json
    std::string rules;
};

int cmd_filter(const FilterArgs& args) {
    const wez::Dataset dataset = wez::read_dataset_csv(args.data);
    const wez::FilterRules rules =
        args.rules.empty() ? wez::default_filter_rules() : wez::load_filter_rules(args.rules);
    auto [filtered, report] = wez::filter_dataset(dataset, rules);
    wez::write_dataset_csv(filtered, args.out);
    const std::string report_path =
        args.report.empty() ? sidecar_path(args.out, "report") : args.report;
    wez::write_filter_report(report, report_path);
    std::fprintf(stderr, "filter: %zu -> %zu rows (floor %zu, fence %zu @ %.3f NM)\n",
                 report.input_rows, report.output_rows, report.removed_floor,
                 report.removed_fence, report.fence_nm);
    return 0;
}

struct TrainArgs {
    std::string data;
    std::string config;
    std::string out = "model.json";
    std::string metrics;
    std::optional<std::uint64_t> seed;
    bool cv = false;
    bool print_config = false;
};

ordered_json metrics_json(const wez::RegressionMetrics& m) {
    ordered_json j;
    j["mae"] = m.mae;
    j["mse"] = m.mse;
    j["rmse"] = m.rmse;
    if (m.r2)
        j["r2"] = *m.r2;
    else
        j["r2"] = nullptr;
    return j;
}

int cmd_train(const TrainArgs& args) {
    wez::TrainConfig cfg;
    if (!args.config.empty()) cfg = wez::load_train_config(args.config);
    cfg.seed = resolve_seed(args.seed, cfg.seed);
    if (args.print_config) {
        std::fputs(wez::train_config_json(cfg).c_str(), stdout);
        return 0;
    }
    const wez::Dataset dataset = wez::read_dataset_csv(args.data);
    wez::SplitSpec split_spec;
    split_spec.seed = cfg.seed;
    const wez::Splits splits = wez::split_dataset(dataset.rows.size(), split_spec);

    wez::TrainResult result;
    try {
        result = wez::train_with_splits(dataset, splits, 0, cfg);
    } catch (const wez::DivergedError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        for (const wez::EpochStats& h : e.history)
            std::fprintf(stderr, "epoch %d: train_mse %.9g val_mse %.9g\n", h.epoch,
                         h.train_mse, h.val_mse);
        return 1;
    }
    wez::save_model(result.model, args.out);

    const wez::RegressionMetrics test =
        wez::evaluate(result.model, wez::rows_at(dataset, splits.test));
    ordered_json report = metrics_json(test);
    report["best_epoch"] = result.model.metadata.best_epoch;
    report["epochs_run"] = result.model.metadata.epochs_run;
    report["val_mse_scaled"] = result.model.metadata.val_mse;
    if (args.cv) {
        const wez::CrossValidation cv = wez::cross_validate(dataset, split_spec, cfg);
        ordered_json cv_json;
        cv_json["folds"] = ordered_json::array();
        for (const wez::RegressionMetrics& fold : cv.folds)
            cv_json["folds"].push_back(metrics_json(fold));
        cv_json["mean"] = metrics_json(cv.mean);
        cv_json["std"] = metrics_json(cv.std_dev);
        report["cv"] = cv_json;
    }
    const std::string metrics_path =
        args.metrics.empty()
            ? (fs::path(args.out).parent_path() / "metrics.json").string()
            : args.metrics;
    std::ofstream out(metrics_path, std::ios::binary);
    if (!out) throw wez::ConfigError("cannot open " + metrics_path + " for writing");
    out << report.dump(2) << '\n';
    if (!out.flush()) throw wez::ConfigError("write failed for " + metrics_path);
    std::fprintf(stderr, "train: %d epochs (best %d), test MAE %.3f NM, R2 %s%.4f\n",
                 result.model.metadata.epochs_run, result.model.metadata.best_epoch,
                 test.mae, test.r2 ? "" : "undefined ", test.r2.value_or(0.0));
    return 0;
}

struct SweepArgs {
    std::string model;
    std::string scenario;
    std::string out = "sweep.csv";
    std::string svg;
};

int cmd_sweep(const SweepArgs& args) {
    const wez::MlpModel model = wez::load_model(args.model);
    const wez::Scenario base = wez::load_scenario(args.scenario);
    const wez::SweepResult sweep = wez::run_sweep(model, base);
    wez::write_sweep_csv(sweep, args.out);
    if (!args.svg.empty()) wez::write_wez_svg(sweep, args.svg);
    double peak = 0.0;
    for (const wez::SweepPoint& p : sweep.points) peak = std::max(peak, p.max_range_nm);
    std::fprintf(stderr, "sweep: %zu points, peak %.2f NM\n", sweep.points.size(), peak);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weapon-engagement-zone surrogate pipeline"};
    app.require_subcommand(1);

    DesignArgs design_args;
    CLI::App* design = app.add_subcommand("design", "Sample a maximin Latin hypercube");
    design->add_option("--samples", design_args.samples, "number of scenarios")->required();
    design->add_option("--seed", design_args.seed, "design seed (falls back to WEZ_SEED)");
    design->add_option("--iterations", design_args.iterations, "maximin swap proposals");
    design->add_option("--out", design_args.out, "output CSV path");
    design->add_option("--config", design_args.config, "bounds override JSON");
    design->add_flag("--print-config", design_args.print_config,
                     "print the effective config and exit");

    SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "Label a design with max ranges");
    simulate->add_option("--design", sim_args.design, "design CSV")->required();
    simulate->add_option("--missile", sim_args.missile, "missile config JSON");
    simulate->add_option("--jobs", sim_args.jobs, "worker threads (0 = all cores)");
    simulate->add_option("--out", sim_args.out, "output dataset CSV");
    simulate->add_flag("--print-config", sim_args.print_config,
                       "print the effective missile config and exit");

    StatsArgs stats_args;
    CLI::App* stats = app.add_subcommand("stats", "Descriptive statistics and correlations");
    stats->add_option("--data", stats_args.data, "dataset CSV")->required();
    stats->add_option("--rules", stats_args.rules, "filter rules JSON (with --filter)");
    stats->add_flag("--filter", stats_args.filter, "apply filtering before the statistics");

    FilterArgs filter_args;
    CLI::App* filter = app.add_subcommand("filter", "Floor/fence/plausibility filtering");
    filter->add_option("--data", filter_args.data, "dataset CSV")->required();
    filter->add_option("--out", filter_args.out, "filtered CSV path");
    filter->add_option("--report", filter_args.report,
                       "removal report JSON path (default: <out stem>.report.json)");
    filter->add_option("--rules", filter_args.rules, "filter rules JSON");

    TrainArgs train_args;
    CLI::App* train = app.add_subcommand("train", "Fit the surrogate regressor");
    train->add_option("--data", train_args.data, "filtered dataset CSV")->required();
    train->add_option("--config", train_args.config, "train config JSON");
    train->add_option("--out", train_args.out, "model JSON path");
    train->add_option("--metrics", train_args.metrics,
                      "metrics JSON path (default: metrics.json beside the model)");
    train->add_option("--seed", train_args.seed, "training seed (falls back to WEZ_SEED)");
    train->add_flag("--cv", train_args.cv, "also run 5-fold cross-validation");
    train->add_flag("--print-config", train_args.print_config,
                    "print the effective train config and exit");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "Off-boresight sweep of a trained model");
    sweep->add_option("--model", sweep_args.model, "model JSON")->required();
    sweep->add_option("--scenario", sweep_args.scenario, "base scenario JSON")->required();
    sweep->add_option("--out", sweep_args.out, "sweep CSV path");
    sweep->add_option("--svg", sweep_args.svg, "optional polar SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (design->parsed()) return cmd_design(design_args);
        if (simulate->parsed()) return cmd_simulate(sim_args);
        if (stats->parsed()) return cmd_stats(stats_args);
        if (filter->parsed()) return cmd_filter(filter_args);
        if (train->parsed()) return cmd_train(train_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
    } catch (const CLI::ParseError& e) {
        // Late usage problems (e.g. a malformed WEZ_SEED) are still usage.
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
