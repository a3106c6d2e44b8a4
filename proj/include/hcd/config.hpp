#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hcd/asom.hpp"
#include "hcd/dynamics.hpp"
#include "hcd/embedding.hpp"

namespace hcd {

enum class Family { Logistic, Tent };
enum class ParamMode { Demo, Sampled, Explicit };
enum class Method { Asom, Random, Pca, Cca };
enum class AsomRole { Auto, Forward, Swapped };      // bundle-source selection
enum class AsomWinner { Auto, Bundle, Seed };        // column-winner selection

std::string to_string(Family f);
std::string to_string(Method m);
Family family_from_string(const std::string& s);
Method method_from_string(const std::string& s);

// One flat description of an experiment: system, lengths, embeddings,
// dimension analysis, SOM shape and schedule, and batch settings. Parsed
// from "key = value" lines; unknown keys are rejected.
struct ExperimentConfig {
    Family family = Family::Logistic;
    ParamMode param_mode = ParamMode::Demo;
    std::uint64_t seed = 1;

    // simulation
    std::size_t train_length = 10000;
    std::size_t test_length = 10000;
    std::size_t total_length = 0;  // 0 means train_length + test_length
    std::size_t burn_in = 1000;
    double noise_sd = 0.001;  // logistic triad only; batch protocol uses 0

    // explicit parameters (param_mode == Explicit)
    LogisticTriadParams logistic;
    TentTriadParams tent;
    bool has_init = false;
    std::array<double, 3> init{0.5, 0.5, 0.5};

    // embeddings
    int som_embed_m = 3;
    int som_embed_tau = 1;
    int dim_embed_m = 4;
    int dim_embed_tau = 1;

    // dimension analysis
    bool run_dimension = true;
    bool shape_check = true;  // derive and validate the SOM shape from the dims
    std::size_t dim_chunk = 5000;
    int k_min = 10;
    int k_max = 20;
    double relation_tolerance = 0.15;
    double joint_mix = kDefaultJointMix;

    // SOM
    int som_rows = 40;  // n1, self-dynamics axis
    int som_cols = 20;  // n2, driver axis
    TrainingSchedule schedule;
    std::vector<int> snapshot_steps;
    bool grid_init_from_data = false;
    AsomRole asom_role = AsomRole::Auto;
    AsomWinner asom_winner = AsomWinner::Auto;

    // evaluation / batch
    int max_lag = 20;
    std::vector<Method> methods{Method::Asom};
    int runs = 50;

    std::size_t effective_total() const {
        return total_length != 0 ? total_length : train_length + test_length;
    }

    void validate() const;  // throws hcd::config_error
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// The demonstration setup: logistic triad with lightly detuned growth rates
// (3.8 / 3.9 / 3.99), couplings 0.4 / 0.3, noise SD 0.001, 10k/10k split.
// Detuning matters: a shared rate generalized-synchronizes the driven maps
// to the driver and their self-dynamics collapse.
ExperimentConfig demo_config();

// Batch protocols: random parameters, no noise; logistic 10k/10k split,
// tent 16k train / 2k test out of 20k generated.
ExperimentConfig batch_config(Family family);

}  // namespace hcd
