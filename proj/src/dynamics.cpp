#include "hcd/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "hcd/errors.hpp"
#include "hcd/rng.hpp"

namespace hcd {

namespace {

// Shared simulation driver. StepFn advances the state vector in place and
// GuardFn decides whether the new state is still acceptable.
template <std::size_t Dim, typename StepFn, typename GuardFn>
SimulationOutput run_simulation(std::array<double, Dim> init,
                                const SimulationSettings& settings,
                                StepFn step, GuardFn in_bounds) {
    if (settings.length < 1) throw std::invalid_argument("simulate: length must be >= 1");

    Xoshiro256pp rng(settings.seed);
    SimulationOutput out;
    std::array<double, Dim> state = init;

    std::vector<ScalarSeries> columns(Dim);
    for (auto& c : columns) c.reserve(settings.length);

    int restarts = 0;
    for (;;) {
        bool diverged = false;
        for (std::size_t b = 0; b < settings.burn_in && !diverged; ++b) {
            step(state, rng);
            diverged = !in_bounds(state);
        }
        if (!diverged) {
            for (auto& c : columns) c.clear();
            for (std::size_t d = 0; d < Dim; ++d) columns[d].push_back(state[d]);
            for (std::size_t i = 1; i < settings.length && !diverged; ++i) {
                step(state, rng);
                diverged = !in_bounds(state);
                if (!diverged)
                    for (std::size_t d = 0; d < Dim; ++d) columns[d].push_back(state[d]);
            }
        }
        if (!diverged) break;
        if (++restarts > settings.max_restarts)
            throw numeric_error("simulate: trajectory diverged after " +
                                std::to_string(settings.max_restarts) + " restarts");
        for (auto& v : state) v = rng.uniform01();
    }

    out.resample_count = restarts;
    if (Dim == 3) {
        out.z = std::move(columns[0]);
        out.x = std::move(columns[1]);
        out.y = std::move(columns[2]);
    } else {
        out.x = std::move(columns[0]);
        out.y = std::move(columns[1]);
    }
    return out;
}

bool finite_all(const double* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(v[i])) return false;
    return true;
}

}  // namespace

double tent_tilted(double x, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("tent_tilted: alpha must be in (0, 1)");
    const double c = 1.0 / (2.0 * alpha * (alpha - 1.0));
    return c * std::abs(x - alpha) + (1.0 / alpha + c) * (x - alpha) + 1.0;
}

SimulationOutput logistic_triad_simulate(const LogisticTriadParams& params,
                                         std::array<double, 3> init,
                                         const SimulationSettings& settings) {
    for (double v : init)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("logistic_triad_simulate: init must be in [0, 1]");
    if (params.noise_sd < 0.0)
        throw std::invalid_argument("logistic_triad_simulate: noise_sd must be >= 0");

    const bool noisy = params.noise_sd > 0.0;
    auto step = [&](std::array<double, 3>& s, Xoshiro256pp& rng) {
        const double z = s[0], x = s[1], y = s[2];
        s[0] = params.r_z * z * (1.0 - z);
        s[1] = params.r_x * x * (1.0 - x - params.beta_x * z);
        s[2] = params.r_y * y * (1.0 - y - params.beta_y * z);
        if (noisy) {
            s[0] += rng.gaussian(0.0, params.noise_sd);
            s[1] += rng.gaussian(0.0, params.noise_sd);
            s[2] += rng.gaussian(0.0, params.noise_sd);
        }
        // The coupling term can push a driven variable just below zero, where
        // the bare map diverges through ever larger negatives. Folding the
        // overshoot back keeps the trajectory on the attractor's domain; the
        // guard still catches cascades the fold cannot absorb.
        for (double& v : s) v = std::abs(v);
    };
    auto guard = [](const std::array<double, 3>& s) {
        return finite_all(s.data(), 3) && s[0] >= -1.0 && s[0] <= 2.0 &&
               s[1] >= -1.0 && s[1] <= 2.0 && s[2] >= -1.0 && s[2] <= 2.0;
    };
    return run_simulation<3>(init, settings, step, guard);
}

SimulationOutput logistic_pair_simulate(const PairParams& params, PairMode mode,
                                        std::array<double, 2> init,
                                        const SimulationSettings& settings) {
    const double back = mode == PairMode::Circular ? params.beta_backward : 0.0;
    auto step = [&](std::array<double, 2>& s, Xoshiro256pp&) {
        const double x = s[0], y = s[1];
        s[0] = params.r * x * (1.0 - x - back * y);
        s[1] = params.r * y * (1.0 - y - params.beta_forward * x);
        for (double& v : s) v = std::abs(v);  // same overshoot fold as the triad
    };
    auto guard = [](const std::array<double, 2>& s) {
        return finite_all(s.data(), 2) && s[0] >= -1.0 && s[0] <= 2.0 &&
               s[1] >= -1.0 && s[1] <= 2.0;
    };
    return run_simulation<2>(init, settings, step, guard);
}

SimulationOutput tent_triad_simulate(const TentTriadParams& params,
                                     std::array<double, 3> init,
                                     const SimulationSettings& settings) {
    auto clamp_unit = [](double v) { return std::min(std::max(v, 0.0), 1.0); };
    auto step = [&](std::array<double, 3>& s, Xoshiro256pp&) {
        const double z = s[0], x = s[1], y = s[2];
        // The coupled argument can exceed the map's (0, 1) domain, where the
        // bare map turns negative and runs away. Clamping the argument keeps
        // the iteration on the tent's own branches; the driver never needs it.
        s[0] = tent_tilted(z, params.alpha_z);
        s[1] = tent_tilted(clamp_unit(x + params.beta_x * z), params.alpha_x);
        s[2] = tent_tilted(clamp_unit(y + params.beta_y * z), params.alpha_y);
    };
    auto guard = [](const std::array<double, 3>& s) {
        return finite_all(s.data(), 3) && std::abs(s[0]) <= 10.0 &&
               std::abs(s[1]) <= 10.0 && std::abs(s[2]) <= 10.0;
    };
    return run_simulation<3>(init, settings, step, guard);
}

LogisticExperiment sample_logistic_experiment(std::uint64_t seed) {
    Xoshiro256pp rng(seed);
    LogisticExperiment e;
    e.params.r_z = rng.uniform(3.8, 4.0);
    e.params.r_x = rng.uniform(3.8, 4.0);
    e.params.r_y = rng.uniform(3.8, 4.0);
    e.params.beta_x = rng.uniform(0.1, 0.5);
    e.params.beta_y = rng.uniform(0.1, 0.5);
    e.params.noise_sd = 0.0;
    for (auto& v : e.init) v = rng.uniform01();
    return e;
}

TentExperiment sample_tent_experiment(std::uint64_t seed) {
    Xoshiro256pp rng(seed);
    TentExperiment e;
    e.params.alpha_z = rng.uniform(0.1, 0.5);
    e.params.alpha_x = rng.uniform(0.1, 0.5);
    e.params.alpha_y = rng.uniform(0.1, 0.5);
    e.params.beta_x = rng.uniform(0.1, 1.0);
    e.params.beta_y = rng.uniform(0.1, 1.0);
    for (auto& v : e.init) v = rng.uniform01();
    return e;
}

}  // namespace hcd
