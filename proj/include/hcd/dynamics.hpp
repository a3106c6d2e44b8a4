#pragma once

#include <array>
#include <cstdint>

#include "hcd/series.hpp"

namespace hcd {

// Triad of logistic maps: an autonomous driver z forcing two otherwise
// unconnected maps x and y, with optional additive Gaussian noise.
//   z(t+1) = r_z z(t) (1 - z(t))              + noise
//   x(t+1) = r_x x(t) (1 - x(t) - beta_x z(t)) + noise
//   y(t+1) = r_y y(t) (1 - y(t) - beta_y z(t)) + noise
struct LogisticTriadParams {
    double r_z = 3.8;
    double r_x = 3.8;
    double r_y = 3.8;
    double beta_x = 0.4;  // driver coupling into x
    double beta_y = 0.3;  // driver coupling into y
    double noise_sd = 0.0;
};

// Triad of tilted tent maps (noiseless):
//   z(t+1) = T_alpha_z(z(t))
//   x(t+1) = T_alpha_x(x(t) + beta_x z(t))
//   y(t+1) = T_alpha_y(y(t) + beta_y z(t))
struct TentTriadParams {
    double alpha_z = 0.3;
    double alpha_x = 0.3;
    double alpha_y = 0.3;
    double beta_x = 0.5;
    double beta_y = 0.5;
};

// Coupled logistic pair. Unidirectional mode:
//   x(t+1) = r x(t) (1 - x(t))
//   y(t+1) = r y(t) (1 - y(t) - beta_forward x(t))
// Circular mode:
//   x(t+1) = r x(t) (1 - x(t) - beta_backward y(t))
//   y(t+1) = r y(t) (1 - y(t) - beta_forward x(t))
struct PairParams {
    double r = 3.86;
    double beta_forward = 0.5;   // x into y's update
    double beta_backward = 0.0;  // y into x's update; 0 means unidirectional
};

enum class PairMode { Unidirectional, Circular };

struct SimulationOutput {
    ScalarSeries z;  // empty for pair systems
    ScalarSeries x;
    ScalarSeries y;
    int resample_count = 0;  // trajectories rejected for divergence
};

struct SimulationSettings {
    std::size_t length = 20000;
    std::size_t burn_in = 1000;  // discarded steps before recording starts
    std::uint64_t seed = 0;
    int max_restarts = 100;
};

// Tilted tent map with peak 1 at x = alpha, linear outside [0, 1].
double tent_tilted(double x, double alpha);

// Each simulator iterates its map from `init`, discards `burn_in` steps and
// records `length` states (the first recorded sample is the state after the
// burn-in; with burn_in = 0 it is `init` itself).
//
// Strong couplings push the driven variables past the maps' natural domains,
// where the bare iterations run away through growing negatives within a few
// steps; no finite trajectory of the written forms survives that. The
// logistic simulators therefore fold negative overshoots back (absolute
// value) after the map and noise are applied, and the tent simulator clamps
// the coupled argument into [0, 1] before applying the map; in-domain
// dynamics are untouched either way. A state that still leaves the
// divergence guard restarts the trajectory from fresh uniform [0,1] initial
// conditions drawn from the same PRNG stream; hcd::numeric_error is thrown
// once `max_restarts` trajectories have been rejected.
//
// Noise draws (logistic triad only) are consumed in z, x, y order each step
// and are skipped entirely when noise_sd == 0.
SimulationOutput logistic_triad_simulate(const LogisticTriadParams& params,
                                         std::array<double, 3> init,
                                         const SimulationSettings& settings);

SimulationOutput logistic_pair_simulate(const PairParams& params, PairMode mode,
                                        std::array<double, 2> init,
                                        const SimulationSettings& settings);

SimulationOutput tent_triad_simulate(const TentTriadParams& params,
                                     std::array<double, 3> init,
                                     const SimulationSettings& settings);

struct LogisticExperiment {
    LogisticTriadParams params;
    std::array<double, 3> init;
};

struct TentExperiment {
    TentTriadParams params;
    std::array<double, 3> init;
};

// Random experiment draws for batch runs. Draw order from the seeded PRNG:
// logistic r_z, r_x, r_y ~ U[3.8, 4.0], beta_x, beta_y ~ U[0.1, 0.5],
// init z, x, y ~ U[0, 1];
// tent  alpha_z, alpha_x, alpha_y ~ U[0.1, 0.5], beta_x, beta_y ~ U[0.1, 1.0],
// init z, x, y ~ U[0, 1].
LogisticExperiment sample_logistic_experiment(std::uint64_t seed);
TentExperiment sample_tent_experiment(std::uint64_t seed);

}  // namespace hcd
