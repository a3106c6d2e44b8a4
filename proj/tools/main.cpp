// Command-line front end for the hidden-common-driver toolkit.
//
// Subcommands: simulate, embed, dimension, train, infer, evaluate, baseline,
// batch, export. Exit codes: 0 success, 2 configuration error, 3 numerical
// failure.

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcd/baselines.hpp"
#include "hcd/config.hpp"
#include "hcd/csv.hpp"
#include "hcd/errors.hpp"
#include "hcd/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::int64_t seed = -1;        // -1: keep the config's seed
    std::string methods;           // comma separated; empty: keep config
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_methods) {
    cmd->add_option("--config", opts.config_path, "experiment config file (key = value lines)");
    cmd->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", opts.seed, "master seed (overrides the config)");
    if (with_methods)
        cmd->add_option("--method", opts.methods,
                        "method list, e.g. asom,pca,cca,random (overrides the config)");
}

hcd::ExperimentConfig load_config(const CommonOptions& opts) {
    hcd::ExperimentConfig cfg =
        opts.config_path.empty() ? hcd::demo_config() : hcd::parse_config_file(opts.config_path);
    if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
    if (!opts.methods.empty()) {
        cfg.methods.clear();
        std::stringstream ss(opts.methods);
        std::string item;
        while (std::getline(ss, item, ','))
            cfg.methods.push_back(hcd::method_from_string(item));
    }
    cfg.validate();
    return cfg;
}

void print_evaluation(const char* label, const hcd::EvaluationReport& report) {
    std::printf("%s: |rho| = %.4f (rho = %.4f), best lag %d with rho = %.4f, n = %zu\n",
                label, report.abs_rho, report.rho, report.best_lag, report.best_lag_rho,
                report.n);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hidden common driver reconstruction via anisotropic self-organizing maps"};
    app.require_subcommand(1);

    CommonOptions opts;

    // simulate
    auto* simulate = app.add_subcommand("simulate", "simulate the configured system, write series.csv");
    add_common(simulate, opts, false);

    // embed
    auto* embed = app.add_subcommand("embed", "delay-embed a series column from a CSV");
    std::string embed_input, embed_column = "x";
    int embed_m = 3, embed_tau = 1;
    add_common(embed, opts, false);
    embed->add_option("--input", embed_input, "input series CSV")->required();
    embed->add_option("--column", embed_column, "column to embed")->capture_default_str();
    embed->add_option("--m", embed_m, "embedding dimension")->capture_default_str();
    embed->add_option("--tau", embed_tau, "embedding delay")->capture_default_str();

    // dimension
    auto* dimension = app.add_subcommand(
        "dimension", "dimension analysis of the configured system, write dimension.json");
    add_common(dimension, opts, false);

    // train
    auto* train = app.add_subcommand(
        "train", "run the configured pipeline end to end (simulation through evaluation)");
    add_common(train, opts, true);

    // infer
    auto* infer = app.add_subcommand("infer", "read out a saved grid on a saved series");
    std::string infer_series, infer_grid;
    add_common(infer, opts, false);
    infer->add_option("--series", infer_series, "series.csv from a previous run");
    infer->add_option("--grid", infer_grid, "grid.txt from a previous run");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "re-evaluate a readout.csv");
    std::string evaluate_readout;
    add_common(evaluate, opts, false);
    evaluate->add_option("--readout", evaluate_readout, "readout.csv from a previous run");

    // baseline
    auto* baseline = app.add_subcommand("baseline", "run one baseline method, write the estimate series");
    std::string baseline_method = "random";
    add_common(baseline, opts, false);
    baseline->add_option("--method", baseline_method, "random | pca | cca")
        ->capture_default_str();

    // batch
    auto* batch = app.add_subcommand("batch", "repeated randomized runs, write batch.csv + summary.json");
    std::string batch_family;
    int batch_runs = 0;
    add_common(batch, opts, true);
    batch->add_option("--family", batch_family, "logistic | tent (overrides the config)");
    batch->add_option("--runs", batch_runs, "number of runs (overrides the config)");

    // export
    auto* export_cmd = app.add_subcommand("export", "tidy CSV exports for plotting");
    std::string export_kind, export_input, export_output = "export.csv";
    int export_m = 3, export_tau = 1;
    std::size_t export_seed_row = 0, export_neighbors = 20;
    export_cmd->add_option("kind", export_kind, "grid | dimension-curves | readout | manifold")
        ->required();
    export_cmd->add_option("--input", export_input, "artifact to export")->required();
    export_cmd->add_option("--out", export_output, "output CSV path")->capture_default_str();
    export_cmd->add_option("--m", export_m, "embedding dimension (manifold)")->capture_default_str();
    export_cmd->add_option("--tau", export_tau, "embedding delay (manifold)")->capture_default_str();
    export_cmd->add_option("--seed-row", export_seed_row, "cross-mapping seed row (manifold)")
        ->capture_default_str();
    export_cmd->add_option("--neighbors", export_neighbors, "neighbourhood size (manifold)")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        const fs::path out_dir(opts.out_dir);

        if (*simulate) {
            const auto cfg = load_config(opts);
            const auto seeds = hcd::derive_stage_seeds(cfg.seed);
            const auto experiment = hcd::resolve_experiment(cfg, seeds.params);
            const auto sim = hcd::simulate_experiment(experiment, cfg.effective_total(),
                                                      cfg.burn_in, seeds.simulation);
            fs::create_directories(out_dir);
            hcd::write_series_csv(sim, (out_dir / "series.csv").string());
            std::printf("wrote %s (%zu samples, %d resamples)\n",
                        (out_dir / "series.csv").c_str(), sim.x.size(), sim.resample_count);
        } else if (*embed) {
            const auto table = hcd::read_csv(embed_input);
            const auto embedded = hcd::delay_embed(table.column(embed_column), embed_m, embed_tau);
            fs::create_directories(out_dir);
            const auto path = out_dir / "embedded.csv";
            hcd::write_embedded_csv(embedded, path.string());
            std::printf("wrote %s (%zu rows x %d)\n", path.c_str(), embedded.rows(), embedded.m);
        } else if (*dimension) {
            auto cfg = load_config(opts);
            cfg.run_dimension = true;
            const auto seeds = hcd::derive_stage_seeds(cfg.seed);
            const auto experiment = hcd::resolve_experiment(cfg, seeds.params);
            const auto sim = hcd::simulate_experiment(experiment, cfg.effective_total(),
                                                      cfg.burn_in, seeds.simulation);
            const auto x_chunk = hcd::delay_embed(hcd::slice(sim.x, 0, cfg.dim_chunk),
                                                  cfg.dim_embed_m, cfg.dim_embed_tau);
            const auto y_chunk = hcd::delay_embed(hcd::slice(sim.y, 0, cfg.dim_chunk),
                                                  cfg.dim_embed_m, cfg.dim_embed_tau);
            const auto report =
                hcd::analyze_dimensions(x_chunk, y_chunk, cfg.joint_mix, seeds.permutation,
                                        cfg.k_min, cfg.k_max, cfg.relation_tolerance);
            fs::create_directories(out_dir);
            hcd::write_dimension_json(report, cfg, std::nullopt, out_dir / "dimension.json");
            std::printf("D_X = %.3f  D_Y = %.3f  D_J = %.3f  D_I = %.3f  D_Z = %.3f  -> %s\n",
                        report.d_x.mean, report.d_y.mean, report.d_j.mean, report.d_i.mean,
                        report.d_z, hcd::to_string(report.relation).c_str());
        } else if (*train) {
            const auto cfg = load_config(opts);
            const auto result = hcd::run_demo(cfg, out_dir);
            for (const auto& outcome : result.methods)
                print_evaluation(hcd::to_string(outcome.method).c_str(), outcome.report);
            if (result.distinct_levels < 3)
                std::fprintf(stderr,
                             "warning: readout uses only %d distinct levels "
                             "(possible grid collapse)\n",
                             result.distinct_levels);
            std::printf("artifacts in %s\n", out_dir.c_str());
        } else if (*infer) {
            const auto cfg = load_config(opts);
            const fs::path series = infer_series.empty() ? out_dir / "series.csv" : fs::path(infer_series);
            const fs::path grid = infer_grid.empty() ? out_dir / "grid.txt" : fs::path(infer_grid);
            const auto report = hcd::run_inference(cfg, series, grid, out_dir);
            print_evaluation("asom", report);
        } else if (*evaluate) {
            const auto cfg = load_config(opts);
            const fs::path readout =
                evaluate_readout.empty() ? out_dir / "readout.csv" : fs::path(evaluate_readout);
            const auto report = hcd::run_evaluation(cfg, readout, out_dir);
            print_evaluation("readout", report);
        } else if (*baseline) {
            const auto cfg = load_config(opts);
            const hcd::Method method = hcd::method_from_string(baseline_method);
            if (method == hcd::Method::Asom)
                throw hcd::config_error("baseline: use the train subcommand for asom");
            const auto seeds = hcd::derive_stage_seeds(cfg.seed);
            const auto experiment = hcd::resolve_experiment(cfg, seeds.params);
            const auto sim = hcd::simulate_experiment(experiment, cfg.effective_total(),
                                                      cfg.burn_in, seeds.simulation);
            const auto report = hcd::run_baseline_method(method, cfg, sim, seeds.baseline);

            // Recompute the estimate series for the CSV.
            hcd::ScalarSeries estimate;
            const std::size_t rows = cfg.test_length -
                static_cast<std::size_t>(cfg.som_embed_m - 1) * cfg.som_embed_tau;
            if (method == hcd::Method::Random) {
                const auto shuffled = hcd::phase_shuffle(
                    hcd::slice(sim.z, cfg.train_length, cfg.test_length), seeds.baseline);
                estimate = hcd::slice(shuffled, 0, rows);
            } else {
                const auto x_train = hcd::delay_embed(hcd::slice(sim.x, 0, cfg.train_length),
                                                      cfg.som_embed_m, cfg.som_embed_tau);
                const auto y_train = hcd::delay_embed(hcd::slice(sim.y, 0, cfg.train_length),
                                                      cfg.som_embed_m, cfg.som_embed_tau);
                const auto x_test = hcd::delay_embed(
                    hcd::slice(sim.x, cfg.train_length, cfg.test_length), cfg.som_embed_m,
                    cfg.som_embed_tau);
                const auto y_test = hcd::delay_embed(
                    hcd::slice(sim.y, cfg.train_length, cfg.test_length), cfg.som_embed_m,
                    cfg.som_embed_tau);
                if (method == hcd::Method::Pca) {
                    const auto model =
                        hcd::pca_first_component(hcd::concat_features(x_train, y_train)).model;
                    estimate = hcd::pca_project(model, hcd::concat_features(x_test, y_test));
                } else {
                    const auto model = hcd::cca_first_pair(hcd::embedding_features(x_train),
                                                           hcd::embedding_features(y_train))
                                           .model;
                    estimate = hcd::cca_estimate(model, hcd::embedding_features(x_test),
                                                 hcd::embedding_features(y_test));
                }
            }
            fs::create_directories(out_dir);
            std::vector<std::vector<std::string>> rows_out;
            for (std::size_t r = 0; r < estimate.size(); ++r)
                rows_out.push_back({std::to_string(cfg.train_length + r),
                                    hcd::format_double(estimate[r])});
            const auto path = out_dir / (baseline_method + "_estimate.csv");
            hcd::write_table_csv({"t", "estimate"}, rows_out, path.string());
            print_evaluation(baseline_method.c_str(), report);
            std::printf("wrote %s\n", path.c_str());
        } else if (*batch) {
            auto cfg = opts.config_path.empty() && !batch_family.empty()
                           ? hcd::batch_config(hcd::family_from_string(batch_family))
                           : load_config(opts);
            if (opts.config_path.empty() && !batch_family.empty()) {
                if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
                if (!opts.methods.empty()) {
                    cfg.methods.clear();
                    std::stringstream ss(opts.methods);
                    std::string item;
                    while (std::getline(ss, item, ','))
                        cfg.methods.push_back(hcd::method_from_string(item));
                }
            } else if (!batch_family.empty()) {
                cfg.family = hcd::family_from_string(batch_family);
            }
            if (batch_runs > 0) cfg.runs = batch_runs;
            cfg.validate();
            const auto result = hcd::run_batch(cfg, out_dir);
            std::printf("%d/%d runs succeeded\n", static_cast<int>(result.runs.size()) - result.failed_runs,
                        static_cast<int>(result.runs.size()));
            for (const auto& [method, summary] : result.summaries)
                std::printf("%-6s median |rho| = %.4f  (q1 %.4f, q3 %.4f, mad %.4f, n %zu)\n",
                            hcd::to_string(method).c_str(), summary.median, summary.q1,
                            summary.q3, summary.mad, summary.n);
        } else if (*export_cmd) {
            if (export_kind == "grid")
                hcd::export_grid_csv(export_input, export_output);
            else if (export_kind == "dimension-curves")
                hcd::export_dimension_curves_csv(export_input, export_output);
            else if (export_kind == "readout")
                hcd::export_readout_csv(export_input, export_output);
            else if (export_kind == "manifold")
                hcd::export_manifold_csv(export_input, export_m, export_tau, export_seed_row,
                                         export_neighbors, export_output);
            else
                throw hcd::config_error("export: unknown kind '" + export_kind + "'");
            std::printf("wrote %s\n", export_output.c_str());
        }
        return 0;
    } catch (const hcd::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
