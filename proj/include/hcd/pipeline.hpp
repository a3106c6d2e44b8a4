#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcd/asom.hpp"
#include "hcd/config.hpp"
#include "hcd/dimension.hpp"
#include "hcd/dynamics.hpp"
#include "hcd/evaluation.hpp"

namespace hcd {

// Per-stage seeds fanned out from one master seed through splitmix64, in
// this fixed order: params, simulation, permutation, grid, training,
// baseline, role. Stage-level reruns stay reproducible and never share
// streams.
struct StageSeeds {
    std::uint64_t params = 0;
    std::uint64_t simulation = 0;
    std::uint64_t permutation = 0;
    std::uint64_t grid = 0;
    std::uint64_t training = 0;
    std::uint64_t baseline = 0;
    std::uint64_t role = 0;
};
StageSeeds derive_stage_seeds(std::uint64_t master);

// The concrete system behind one run, after demo/sampled/explicit resolution.
struct ResolvedExperiment {
    Family family = Family::Logistic;
    LogisticTriadParams logistic;
    TentTriadParams tent;
    std::array<double, 3> init{};
};
ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg, std::uint64_t params_seed);

SimulationOutput simulate_experiment(const ResolvedExperiment& experiment,
                                     std::size_t length, std::size_t burn_in,
                                     std::uint64_t simulation_seed);

struct MethodOutcome {
    Method method = Method::Asom;
    EvaluationReport report;
};

struct AsomExecution {
    SomGrid grid;
    TrainingTrace trace;
    Readout readout;
    EvaluationReport report;
    bool bundles_from_x = true;  // chosen bundle source (map lives on the other view)
    ColumnWinnerPolicy policy = ColumnWinnerPolicy::BundleFit;
};

// Embed the train window, train the map, read out the test window and
// evaluate against the hidden driver. The bundle-source view is chosen by
// the cross-mapped stripe extent (bundles must image onto extended
// submanifolds for the anisotropic fit to have anything to drape along);
// between the two column-winner policies the one agreeing better with the
// linear CCA estimate wins, with a margin favouring BundleFit. Enforces the
// discretization bound: |rho| above kMaxReadoutCorrelation throws
// hcd::numeric_error.
AsomExecution run_asom(const ExperimentConfig& cfg, const SimulationOutput& sim,
                       std::uint64_t grid_seed, std::uint64_t training_seed,
                       std::uint64_t role_seed);

// random | pca | cca evaluated on the test window (pca/cca are fitted on the
// train window only).
EvaluationReport run_baseline_method(Method method, const ExperimentConfig& cfg,
                                     const SimulationOutput& sim,
                                     std::uint64_t baseline_seed);

struct DemoResult {
    ResolvedExperiment experiment;
    int resample_count = 0;
    std::optional<DimensionReport> dimensions;
    std::optional<SomShape> shape;
    EvaluationReport asom;
    int distinct_levels = 0;
    std::vector<MethodOutcome> methods;  // every configured method, ASOM included
};

// The full workflow: simulate, dimension analysis, grid setup, anisotropic
// training, readout and evaluation, writing series.csv, dimension.json,
// grid.txt, snapshots.csv, readout.csv and evaluation.csv under out_dir.
// Errors carry the failing step in their message.
DemoResult run_demo(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

struct BatchRun {
    int run_id = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    int resample_count = 0;
    std::vector<MethodOutcome> methods;
};

struct BatchResult {
    std::vector<BatchRun> runs;
    std::map<Method, BatchSummary> summaries;  // over successful runs
    int failed_runs = 0;
};

// Repeated randomized experiments; writes batch.csv (one row per run and
// method) and summary.json. Failed runs are recorded in the summary and
// excluded from the statistics. Runs execute on a small worker pool; results
// are deterministic for a given (config, seed) regardless of scheduling.
BatchResult run_batch(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

// Readout of a saved grid against the test window of a saved series; writes
// readout.csv into out_dir and returns the evaluation.
EvaluationReport run_inference(const ExperimentConfig& cfg,
                               const std::filesystem::path& series_csv,
                               const std::filesystem::path& grid_path,
                               const std::filesystem::path& out_dir);

// Re-evaluates a readout.csv (columns z_norm, zhat_norm); writes
// evaluation.csv into out_dir.
EvaluationReport run_evaluation(const ExperimentConfig& cfg,
                                const std::filesystem::path& readout_csv,
                                const std::filesystem::path& out_dir);

// Tidy-CSV exports for external plotting.
void export_grid_csv(const std::filesystem::path& grid_path,
                     const std::filesystem::path& out_csv);
void export_dimension_curves_csv(const std::filesystem::path& dimension_json,
                                 const std::filesystem::path& out_csv);
void export_readout_csv(const std::filesystem::path& readout_csv,
                        const std::filesystem::path& out_csv);
void export_manifold_csv(const std::filesystem::path& series_csv, int m, int tau,
                         std::size_t seed_row, std::size_t neighbors,
                         const std::filesystem::path& out_csv);

void write_dimension_json(const DimensionReport& report, const ExperimentConfig& cfg,
                          const std::optional<SomShape>& shape,
                          const std::filesystem::path& path);

}  // namespace hcd
