#include "hcd/pipeline.hpp"

#include <atomic>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "hcd/baselines.hpp"
#include "hcd/csv.hpp"
#include "hcd/errors.hpp"
#include "hcd/rng.hpp"

namespace hcd {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

// Rethrows with the workflow step prepended; keeps config errors distinct so
// exit codes survive.
template <typename Fn>
auto pipeline_step(const std::string& label, Fn&& fn) {
    try {
        return fn();
    } catch (const config_error& e) {
        throw config_error(label + ": " + e.what());
    } catch (const std::exception& e) {
        throw numeric_error(label + ": " + e.what());
    }
}

std::size_t embedded_rows(std::size_t window, int m, int tau) {
    const std::size_t span = static_cast<std::size_t>(m - 1) * static_cast<std::size_t>(tau);
    if (window < span + 1)
        throw std::invalid_argument("window too short for the requested embedding");
    return window - span;
}

// Truth slice aligned with the embedded test rows (row r starts at source
// time train_length + r).
ScalarSeries truth_for_test(const ExperimentConfig& cfg, const SimulationOutput& sim) {
    const std::size_t rows =
        embedded_rows(cfg.test_length, cfg.som_embed_m, cfg.som_embed_tau);
    return slice(sim.z, cfg.train_length, rows);
}

std::vector<std::vector<std::string>> evaluation_rows(
    int run_id, std::uint64_t seed, const std::vector<MethodOutcome>& methods) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(methods.size());
    for (const auto& outcome : methods)
        rows.push_back({std::to_string(run_id), to_string(outcome.method),
                        format_double(outcome.report.abs_rho),
                        std::to_string(outcome.report.best_lag),
                        format_double(outcome.report.best_lag_rho),
                        std::to_string(seed)});
    return rows;
}

const std::vector<std::string> kEvaluationHeader = {
    "run_id", "method", "abs_rho", "best_lag", "best_lag_rho", "seed"};

ordered_json estimate_to_json(const DimensionEstimate& e) {
    ordered_json per_k = ordered_json::object();
    for (const auto& [k, d] : e.per_k) per_k[std::to_string(k)] = d;
    return ordered_json{{"mean", e.mean}, {"spread", e.spread}, {"per_k", per_k}};
}

}  // namespace

StageSeeds derive_stage_seeds(std::uint64_t master) {
    SeedSequence seq(master);
    StageSeeds seeds;
    seeds.params = seq.next();
    seeds.simulation = seq.next();
    seeds.permutation = seq.next();
    seeds.grid = seq.next();
    seeds.training = seq.next();
    seeds.baseline = seq.next();
    seeds.role = seq.next();
    return seeds;
}

ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg, std::uint64_t params_seed) {
    ResolvedExperiment experiment;
    experiment.family = cfg.family;
    switch (cfg.param_mode) {
        case ParamMode::Sampled:
            if (cfg.family == Family::Logistic) {
                auto sampled = sample_logistic_experiment(params_seed);
                experiment.logistic = sampled.params;
                experiment.init = sampled.init;
            } else {
                auto sampled = sample_tent_experiment(params_seed);
                experiment.tent = sampled.params;
                experiment.init = sampled.init;
            }
            return experiment;
        case ParamMode::Demo:
            // With one shared growth rate the driven maps generalized-
            // synchronize to the driver and their self-dynamics collapse, so
            // the demonstration triad uses slightly detuned rates per map.
            experiment.logistic = LogisticTriadParams{3.8, 3.9, 3.99, 0.4, 0.3, cfg.noise_sd};
            experiment.tent = TentTriadParams{};
            break;
        case ParamMode::Explicit:
            experiment.logistic = cfg.logistic;
            experiment.logistic.noise_sd = cfg.noise_sd;
            experiment.tent = cfg.tent;
            break;
    }
    if (cfg.has_init && cfg.param_mode == ParamMode::Explicit) {
        experiment.init = cfg.init;
    } else {
        Xoshiro256pp rng(params_seed);
        for (auto& v : experiment.init) v = rng.uniform01();
    }
    return experiment;
}

SimulationOutput simulate_experiment(const ResolvedExperiment& experiment,
                                     std::size_t length, std::size_t burn_in,
                                     std::uint64_t simulation_seed) {
    SimulationSettings settings;
    settings.length = length;
    settings.burn_in = burn_in;
    settings.seed = simulation_seed;
    if (experiment.family == Family::Logistic)
        return logistic_triad_simulate(experiment.logistic, experiment.init, settings);
    return tent_triad_simulate(experiment.tent, experiment.init, settings);
}

namespace {

double subset_diameter(const std::vector<double>& rows, int m) {
    const std::size_t n = rows.size() / static_cast<std::size_t>(m);
    double best = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            double d2 = 0.0;
            for (int d = 0; d < m; ++d) {
                const double diff = rows[a * m + d] - rows[b * m + d];
                d2 += diff * diff;
            }
            best = std::max(best, d2);
        }
    return std::sqrt(best);
}

// Mean diameter of cross-mapped neighbourhood images in `dst`, normalized by
// the diameter of same-size random subsets of `dst`. Extended images mean the
// bundles trace out proper self-dynamics stripes worth draping a column over.
double stripe_extent(const EmbeddedSeries& src, const EmbeddedSeries& dst,
                     std::size_t bundle_size, std::uint64_t seed) {
    NeighborIndex index(src);
    Xoshiro256pp rng(seed);
    double image = 0.0, reference = 0.0;
    const int probes = 40;
    std::vector<double> random_rows;
    for (int p = 0; p < probes; ++p) {
        const std::size_t t_s = rng.uniform_below(src.rows());
        const auto hits = index.knn(t_s, bundle_size, /*exclude_self=*/true);
        std::vector<double> image_rows;
        image_rows.reserve(bundle_size * static_cast<std::size_t>(dst.m));
        for (const auto& h : hits) {
            const auto row = dst.row(h.index);
            image_rows.insert(image_rows.end(), row.begin(), row.end());
        }
        image += subset_diameter(image_rows, dst.m);

        random_rows.clear();
        for (std::size_t k = 0; k < bundle_size; ++k) {
            const auto row = dst.row(rng.uniform_below(dst.rows()));
            random_rows.insert(random_rows.end(), row.begin(), row.end());
        }
        reference += subset_diameter(random_rows, dst.m);
    }
    return reference > 0.0 ? image / reference : 0.0;
}

struct AsomCandidate {
    SomGrid grid;
    TrainingTrace trace;
    Readout readout;
};

AsomCandidate train_candidate(const ExperimentConfig& cfg, const EmbeddedSeries& src,
                              const EmbeddedSeries& dst, const EmbeddedSeries& dst_test,
                              std::uint64_t grid_seed, std::uint64_t training_seed,
                              ColumnWinnerPolicy policy) {
    AsomCandidate candidate;
    if (cfg.grid_init_from_data) {
        std::vector<double> lo(static_cast<std::size_t>(cfg.som_embed_m),
                               std::numeric_limits<double>::infinity());
        std::vector<double> hi(static_cast<std::size_t>(cfg.som_embed_m),
                               -std::numeric_limits<double>::infinity());
        for (std::size_t r = 0; r < dst.rows(); ++r) {
            const auto row = dst.row(r);
            for (std::size_t d = 0; d < lo.size(); ++d) {
                lo[d] = std::min(lo[d], row[d]);
                hi[d] = std::max(hi[d], row[d]);
            }
        }
        candidate.grid =
            init_grid(cfg.som_rows, cfg.som_cols, cfg.som_embed_m, grid_seed, lo, hi);
    } else {
        candidate.grid = init_grid(cfg.som_rows, cfg.som_cols, cfg.som_embed_m, grid_seed);
    }
    candidate.trace = train(candidate.grid, src, dst, cfg.schedule, training_seed,
                            cfg.snapshot_steps, policy);
    candidate.readout = readout(candidate.grid, dst_test);
    return candidate;
}

double agreement(const ScalarSeries& a, const ScalarSeries& b) {
    try {
        return std::abs(pearson(a, b));
    } catch (const std::exception&) {
        return 0.0;
    }
}

}  // namespace

AsomExecution run_asom(const ExperimentConfig& cfg, const SimulationOutput& sim,
                       std::uint64_t grid_seed, std::uint64_t training_seed,
                       std::uint64_t role_seed) {
    const auto x_train = delay_embed(slice(sim.x, 0, cfg.train_length),
                                     cfg.som_embed_m, cfg.som_embed_tau);
    const auto y_train = delay_embed(slice(sim.y, 0, cfg.train_length),
                                     cfg.som_embed_m, cfg.som_embed_tau);
    const auto x_test = delay_embed(slice(sim.x, cfg.train_length, cfg.test_length),
                                    cfg.som_embed_m, cfg.som_embed_tau);
    const auto y_test = delay_embed(slice(sim.y, cfg.train_length, cfg.test_length),
                                    cfg.som_embed_m, cfg.som_embed_tau);

    const std::size_t bundle_size = static_cast<std::size_t>(cfg.schedule.neighbors);

    AsomExecution exec;
    switch (cfg.asom_role) {
        case AsomRole::Forward: exec.bundles_from_x = true; break;
        case AsomRole::Swapped: exec.bundles_from_x = false; break;
        case AsomRole::Auto: {
            std::uint64_t role_state = role_seed;
            const std::uint64_t forward_seed = splitmix64_next(role_state);
            const std::uint64_t swapped_seed = splitmix64_next(role_state);
            exec.bundles_from_x =
                stripe_extent(x_train, y_train, bundle_size, forward_seed) >=
                stripe_extent(y_train, x_train, bundle_size, swapped_seed);
            break;
        }
    }
    const auto& src = exec.bundles_from_x ? x_train : y_train;
    const auto& dst = exec.bundles_from_x ? y_train : x_train;
    const auto& dst_test = exec.bundles_from_x ? y_test : x_test;

    AsomCandidate chosen;
    if (cfg.asom_winner == AsomWinner::Bundle) {
        chosen = train_candidate(cfg, src, dst, dst_test, grid_seed, training_seed,
                                 ColumnWinnerPolicy::BundleFit);
        exec.policy = ColumnWinnerPolicy::BundleFit;
    } else if (cfg.asom_winner == AsomWinner::Seed) {
        chosen = train_candidate(cfg, src, dst, dst_test, grid_seed, training_seed,
                                 ColumnWinnerPolicy::SeedPoint);
        exec.policy = ColumnWinnerPolicy::SeedPoint;
    } else {
        auto bundle_cand = train_candidate(cfg, src, dst, dst_test, grid_seed,
                                           training_seed, ColumnWinnerPolicy::BundleFit);
        auto seed_cand = train_candidate(cfg, src, dst, dst_test, grid_seed,
                                         training_seed, ColumnWinnerPolicy::SeedPoint);
        // The linear CCA estimate is a weak but unbiased reference for the
        // driver; the seed-point map must beat the bundle-fit map against it
        // by a clear margin to be preferred.
        ScalarSeries reference;
        try {
            const auto model =
                cca_first_pair(embedding_features(x_train), embedding_features(y_train)).model;
            reference = cca_estimate(model, embedding_features(x_test),
                                     embedding_features(y_test));
        } catch (const std::exception&) {
        }
        const double score_bundle =
            reference.empty() ? 0.0 : agreement(bundle_cand.readout.levels, reference);
        const double score_seed =
            reference.empty() ? 0.0 : agreement(seed_cand.readout.levels, reference);
        if (score_seed > score_bundle + 0.05) {
            chosen = std::move(seed_cand);
            exec.policy = ColumnWinnerPolicy::SeedPoint;
        } else {
            chosen = std::move(bundle_cand);
            exec.policy = ColumnWinnerPolicy::BundleFit;
        }
    }

    exec.grid = std::move(chosen.grid);
    exec.trace = std::move(chosen.trace);
    exec.readout = std::move(chosen.readout);

    const ScalarSeries truth = truth_for_test(cfg, sim);
    exec.report = evaluate_series(truth, exec.readout.levels, cfg.max_lag);
    if (exec.report.abs_rho > kMaxReadoutCorrelation)
        throw numeric_error(
            "asom readout: |rho| exceeds the discretization bound of " +
            format_double(kMaxReadoutCorrelation) + " (evaluation is broken)");
    return exec;
}

EvaluationReport run_baseline_method(Method method, const ExperimentConfig& cfg,
                                     const SimulationOutput& sim,
                                     std::uint64_t baseline_seed) {
    const ScalarSeries truth = truth_for_test(cfg, sim);
    const std::size_t rows = truth.size();

    if (method == Method::Random) {
        const ScalarSeries shuffled =
            phase_shuffle(slice(sim.z, cfg.train_length, cfg.test_length), baseline_seed);
        return evaluate_series(truth, slice(shuffled, 0, rows), cfg.max_lag);
    }

    const auto x_train = delay_embed(slice(sim.x, 0, cfg.train_length),
                                     cfg.som_embed_m, cfg.som_embed_tau);
    const auto y_train = delay_embed(slice(sim.y, 0, cfg.train_length),
                                     cfg.som_embed_m, cfg.som_embed_tau);
    const auto x_test = delay_embed(slice(sim.x, cfg.train_length, cfg.test_length),
                                    cfg.som_embed_m, cfg.som_embed_tau);
    const auto y_test = delay_embed(slice(sim.y, cfg.train_length, cfg.test_length),
                                    cfg.som_embed_m, cfg.som_embed_tau);

    if (method == Method::Pca) {
        const auto model = pca_first_component(concat_features(x_train, y_train)).model;
        const ScalarSeries estimate = pca_project(model, concat_features(x_test, y_test));
        return evaluate_series(truth, estimate, cfg.max_lag);
    }
    if (method == Method::Cca) {
        const auto model =
            cca_first_pair(embedding_features(x_train), embedding_features(y_train)).model;
        const ScalarSeries estimate =
            cca_estimate(model, embedding_features(x_test), embedding_features(y_test));
        return evaluate_series(truth, estimate, cfg.max_lag);
    }
    throw std::invalid_argument("run_baseline_method: asom is not a baseline");
}

namespace {

DimensionReport dimension_stage(const ExperimentConfig& cfg, const SimulationOutput& sim,
                                std::uint64_t permute_seed) {
    const auto x_chunk = delay_embed(slice(sim.x, 0, cfg.dim_chunk), cfg.dim_embed_m,
                                     cfg.dim_embed_tau);
    const auto y_chunk = delay_embed(slice(sim.y, 0, cfg.dim_chunk), cfg.dim_embed_m,
                                     cfg.dim_embed_tau);
    return analyze_dimensions(x_chunk, y_chunk, cfg.joint_mix, permute_seed, cfg.k_min,
                              cfg.k_max, cfg.relation_tolerance);
}

void write_readout_csv_file(const ExperimentConfig& cfg, const SimulationOutput& sim,
                            const Readout& ro, const fs::path& path) {
    const ScalarSeries truth = truth_for_test(cfg, sim);
    const ScalarSeries truth_norm = standardize(truth);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(ro.levels.size());
    for (std::size_t r = 0; r < ro.levels.size(); ++r)
        rows.push_back({std::to_string(cfg.train_length + r),
                        format_double(ro.levels[r]), format_double(truth_norm[r]),
                        format_double(ro.standardized[r])});
    write_table_csv({"t", "level", "z_norm", "zhat_norm"}, rows, path.string());
}

void write_snapshots_csv(const TrainingTrace& trace, const SomGrid& grid,
                         const fs::path& path) {
    std::vector<std::string> header = {"step", "i", "j"};
    for (int d = 0; d < grid.m; ++d) header.push_back("c" + std::to_string(d));
    std::vector<std::vector<std::string>> rows;
    for (const auto& snap : trace.snapshots)
        for (int i = 0; i < grid.n1; ++i)
            for (int j = 0; j < grid.n2; ++j) {
                std::vector<std::string> row = {std::to_string(snap.step),
                                                std::to_string(i), std::to_string(j)};
                const std::size_t base =
                    (static_cast<std::size_t>(i) * grid.n2 + j) * grid.m;
                for (int d = 0; d < grid.m; ++d)
                    row.push_back(format_double(snap.centers[base + d]));
                rows.push_back(std::move(row));
            }
    write_table_csv(header, rows, path.string());
}

}  // namespace

DemoResult run_demo(const ExperimentConfig& cfg, const fs::path& out_dir) {
    cfg.validate();
    fs::create_directories(out_dir);
    const StageSeeds seeds = derive_stage_seeds(cfg.seed);

    DemoResult result;
    result.experiment = pipeline_step("step 1 (simulation)", [&] {
        return resolve_experiment(cfg, seeds.params);
    });
    const SimulationOutput sim = pipeline_step("step 1 (simulation)", [&] {
        return simulate_experiment(result.experiment, cfg.effective_total(), cfg.burn_in,
                                   seeds.simulation);
    });
    result.resample_count = sim.resample_count;
    write_series_csv(sim, (out_dir / "series.csv").string());

    if (cfg.run_dimension) {
        result.dimensions = pipeline_step("steps 2-4 (dimension analysis)", [&] {
            return dimension_stage(cfg, sim, seeds.permutation);
        });
        if (cfg.shape_check)
            result.shape = pipeline_step("step 5 (grid setup)", [&] {
                return som_shape_from_dims(
                    result.dimensions->d_y.mean,
                    mutual_dimension(result.dimensions->d_x.mean,
                                     result.dimensions->d_y.mean,
                                     result.dimensions->d_j.mean),
                    cfg.som_rows, cfg.som_cols);
            });
        write_dimension_json(*result.dimensions, cfg, result.shape,
                             out_dir / "dimension.json");
    }

    const AsomExecution exec = pipeline_step("steps 5-7 (training and readout)", [&] {
        return run_asom(cfg, sim, seeds.grid, seeds.training, seeds.role);
    });
    result.asom = exec.report;
    result.distinct_levels = exec.readout.distinct_levels;
    save_grid(exec.grid, (out_dir / "grid.txt").string());
    write_snapshots_csv(exec.trace, exec.grid, out_dir / "snapshots.csv");
    write_readout_csv_file(cfg, sim, exec.readout, out_dir / "readout.csv");

    result.methods.push_back({Method::Asom, exec.report});
    for (Method method : cfg.methods) {
        if (method == Method::Asom) continue;
        auto report = pipeline_step("step 7 (baseline " + to_string(method) + ")", [&] {
            return run_baseline_method(method, cfg, sim, seeds.baseline);
        });
        result.methods.push_back({method, report});
    }
    write_table_csv(kEvaluationHeader, evaluation_rows(0, cfg.seed, result.methods),
                    (out_dir / "evaluation.csv").string());
    return result;
}

BatchResult run_batch(const ExperimentConfig& cfg, const fs::path& out_dir) {
    cfg.validate();
    fs::create_directories(out_dir);

    std::vector<std::uint64_t> run_seeds(static_cast<std::size_t>(cfg.runs));
    SeedSequence seq(cfg.seed);
    for (auto& s : run_seeds) s = seq.next();

    BatchResult result;
    result.runs.resize(run_seeds.size());

    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, hw), run_seeds.size());

    std::atomic<std::size_t> next_run{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t r = next_run.fetch_add(1);
            if (r >= run_seeds.size()) return;
            BatchRun& run = result.runs[r];
            run.run_id = static_cast<int>(r);
            run.seed = run_seeds[r];
            try {
                const StageSeeds seeds = derive_stage_seeds(run.seed);
                const ResolvedExperiment experiment = resolve_experiment(cfg, seeds.params);
                const SimulationOutput sim = simulate_experiment(
                    experiment, cfg.effective_total(), cfg.burn_in, seeds.simulation);
                run.resample_count = sim.resample_count;
                for (Method method : cfg.methods) {
                    EvaluationReport report =
                        method == Method::Asom
                            ? run_asom(cfg, sim, seeds.grid, seeds.training, seeds.role).report
                            : run_baseline_method(method, cfg, sim, seeds.baseline);
                    run.methods.push_back({method, report});
                }
                run.ok = true;
            } catch (const std::exception& e) {
                run.ok = false;
                run.error = e.what();
                run.methods.clear();
            }
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<std::vector<std::string>> rows;
    std::map<Method, std::vector<double>> abs_rhos;
    for (const BatchRun& run : result.runs) {
        if (!run.ok) {
            ++result.failed_runs;
            continue;
        }
        auto run_rows = evaluation_rows(run.run_id, run.seed, run.methods);
        rows.insert(rows.end(), run_rows.begin(), run_rows.end());
        for (const auto& outcome : run.methods)
            abs_rhos[outcome.method].push_back(outcome.report.abs_rho);
    }
    write_table_csv(kEvaluationHeader, rows, (out_dir / "batch.csv").string());

    ordered_json summary;
    summary["family"] = to_string(cfg.family);
    summary["runs"] = cfg.runs;
    summary["failed_runs"] = result.failed_runs;
    summary["seed"] = cfg.seed;
    ordered_json methods_json = ordered_json::object();
    for (const auto& [method, values] : abs_rhos) {
        const BatchSummary s = batch_summary(values);
        result.summaries[method] = s;
        methods_json[to_string(method)] = ordered_json{
            {"n", s.n},       {"median", s.median}, {"q1", s.q1},
            {"q3", s.q3},     {"mad", s.mad},       {"outliers", s.outliers}};
    }
    summary["methods"] = methods_json;
    ordered_json failures = ordered_json::array();
    for (const BatchRun& run : result.runs)
        if (!run.ok)
            failures.push_back(ordered_json{{"run_id", run.run_id},
                                            {"seed", run.seed},
                                            {"error", run.error}});
    summary["failures"] = failures;

    std::ofstream out(out_dir / "summary.json");
    out << summary.dump(2) << "\n";
    return result;
}

EvaluationReport run_inference(const ExperimentConfig& cfg, const fs::path& series_csv,
                               const fs::path& grid_path, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    const CsvTable table = read_csv(series_csv.string());
    SimulationOutput sim;
    sim.z = table.column("z");
    sim.x = table.column("x");
    sim.y = table.column("y");
    if (sim.z.size() < cfg.train_length + cfg.test_length)
        throw config_error("run_inference: series shorter than train + test split");

    const SomGrid grid = load_grid(grid_path.string());

    // Re-derive the bundle-source choice the training run made; the heuristic
    // is deterministic in (config, seed, series), so this matches the grid.
    bool bundles_from_x = true;
    if (cfg.asom_role == AsomRole::Swapped) {
        bundles_from_x = false;
    } else if (cfg.asom_role == AsomRole::Auto) {
        const StageSeeds seeds = derive_stage_seeds(cfg.seed);
        const auto x_train = delay_embed(slice(sim.x, 0, cfg.train_length),
                                         cfg.som_embed_m, cfg.som_embed_tau);
        const auto y_train = delay_embed(slice(sim.y, 0, cfg.train_length),
                                         cfg.som_embed_m, cfg.som_embed_tau);
        std::uint64_t role_state = seeds.role;
        const std::uint64_t forward_seed = splitmix64_next(role_state);
        const std::uint64_t swapped_seed = splitmix64_next(role_state);
        const std::size_t bundle_size = static_cast<std::size_t>(cfg.schedule.neighbors);
        bundles_from_x = stripe_extent(x_train, y_train, bundle_size, forward_seed) >=
                         stripe_extent(y_train, x_train, bundle_size, swapped_seed);
    }

    const auto& mapped = bundles_from_x ? sim.y : sim.x;
    const auto test_embedding = delay_embed(slice(mapped, cfg.train_length, cfg.test_length),
                                            cfg.som_embed_m, cfg.som_embed_tau);
    const Readout ro = readout(grid, test_embedding);
    write_readout_csv_file(cfg, sim, ro, out_dir / "readout.csv");

    const ScalarSeries truth = truth_for_test(cfg, sim);
    auto report = evaluate_series(truth, ro.levels, cfg.max_lag);
    if (report.abs_rho > kMaxReadoutCorrelation)
        throw numeric_error("run_inference: |rho| exceeds the discretization bound");
    return report;
}

EvaluationReport run_evaluation(const ExperimentConfig& cfg, const fs::path& readout_csv,
                                const fs::path& out_dir) {
    fs::create_directories(out_dir);
    const CsvTable table = read_csv(readout_csv.string());
    const ScalarSeries& truth = table.column("z_norm");
    const ScalarSeries& estimate = table.column("zhat_norm");
    const auto report = evaluate_series(truth, estimate, cfg.max_lag);
    std::vector<MethodOutcome> outcome{{Method::Asom, report}};
    write_table_csv(kEvaluationHeader, evaluation_rows(0, cfg.seed, outcome),
                    (out_dir / "evaluation.csv").string());
    if (report.abs_rho > kMaxReadoutCorrelation)
        throw numeric_error("run_evaluation: |rho| exceeds the discretization bound");
    return report;
}

void export_grid_csv(const fs::path& grid_path, const fs::path& out_csv) {
    const SomGrid grid = load_grid(grid_path.string());
    std::vector<std::string> header = {"i", "j"};
    for (int d = 0; d < grid.m; ++d) header.push_back("c" + std::to_string(d));
    std::vector<std::vector<std::string>> rows;
    rows.reserve(grid.node_count());
    for (int i = 0; i < grid.n1; ++i)
        for (int j = 0; j < grid.n2; ++j) {
            std::vector<std::string> row = {std::to_string(i), std::to_string(j)};
            for (double c : grid.center(i, j)) row.push_back(format_double(c));
            rows.push_back(std::move(row));
        }
    write_table_csv(header, rows, out_csv.string());
}

void export_dimension_curves_csv(const fs::path& dimension_json, const fs::path& out_csv) {
    std::ifstream in(dimension_json);
    if (!in) throw config_error("export: cannot open " + dimension_json.string());
    ordered_json doc = ordered_json::parse(in);
    std::vector<std::vector<std::string>> rows;
    for (const auto& [name, est] : doc.at("estimates").items())
        for (const auto& [k, d] : est.at("per_k").items())
            rows.push_back({name, k, format_double(d.get<double>())});
    write_table_csv({"manifold", "k", "dimension"}, rows, out_csv.string());
}

void export_readout_csv(const fs::path& readout_csv, const fs::path& out_csv) {
    const CsvTable table = read_csv(readout_csv.string());
    const ScalarSeries& t = table.column("t");
    const ScalarSeries& truth = table.column("z_norm");
    const ScalarSeries& estimate = table.column("zhat_norm");
    std::vector<std::vector<std::string>> rows;
    rows.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        rows.push_back({std::to_string(static_cast<long long>(t[i])),
                        format_double(truth[i]), format_double(estimate[i])});
    write_table_csv({"t", "z_norm", "zhat_norm"}, rows, out_csv.string());
}

void export_manifold_csv(const fs::path& series_csv, int m, int tau,
                         std::size_t seed_row, std::size_t neighbors,
                         const fs::path& out_csv) {
    const CsvTable table = read_csv(series_csv.string());
    const auto x = delay_embed(table.column("x"), m, tau);
    const auto y = delay_embed(table.column("y"), m, tau);
    const auto image = cross_map_neighborhood(x, y, seed_row, neighbors);

    std::vector<bool> in_neighborhood(x.rows(), false);
    for (std::size_t t : image.times) in_neighborhood[t] = true;

    std::vector<std::string> header = {"manifold", "t", "role"};
    for (int d = 0; d < m; ++d) header.push_back("dim" + std::to_string(d));
    std::vector<std::vector<std::string>> rows;
    rows.reserve(2 * x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const char* role = r == seed_row ? "seed"
                           : in_neighborhood[r] ? "neighbor"
                                                : "point";
        std::vector<std::string> row = {"X", std::to_string(r), role};
        for (double v : x.row(r)) row.push_back(format_double(v));
        rows.push_back(std::move(row));
    }
    for (std::size_t r = 0; r < y.rows(); ++r) {
        const char* role = in_neighborhood[r] ? "image" : "point";
        std::vector<std::string> row = {"Y", std::to_string(r), role};
        for (double v : y.row(r)) row.push_back(format_double(v));
        rows.push_back(std::move(row));
    }
    write_table_csv(header, rows, out_csv.string());
}

void write_dimension_json(const DimensionReport& report, const ExperimentConfig& cfg,
                          const std::optional<SomShape>& shape, const fs::path& path) {
    ordered_json doc;
    doc["embedding"] = ordered_json{
        {"m", cfg.dim_embed_m}, {"tau", cfg.dim_embed_tau}, {"chunk", cfg.dim_chunk}};
    doc["k_range"] = ordered_json{{"min", cfg.k_min}, {"max", cfg.k_max}};
    doc["estimates"] = ordered_json{{"d_x", estimate_to_json(report.d_x)},
                                    {"d_y", estimate_to_json(report.d_y)},
                                    {"d_j", estimate_to_json(report.d_j)},
                                    {"d_i", estimate_to_json(report.d_i)}};
    doc["d_z"] = report.d_z;
    doc["relation"] = to_string(report.relation);
    doc["relation_tolerance"] = cfg.relation_tolerance;
    if (shape)
        doc["som_shape"] = ordered_json{{"self_dims", shape->self_dims},
                                        {"driver_dims", shape->driver_dims},
                                        {"n1", shape->n1},
                                        {"n2", shape->n2}};
    std::ofstream out(path);
    if (!out) throw config_error("cannot open for writing: " + path.string());
    out << doc.dump(2) << "\n";
}

}  // namespace hcd
