#include <doctest.h>

#include <cmath>

#include "hcd/dynamics.hpp"
#include "hcd/errors.hpp"
#include "hcd/rng.hpp"

using namespace hcd;

namespace {

SimulationSettings quick(std::size_t length, std::uint64_t seed = 1,
                         std::size_t burn_in = 0) {
    SimulationSettings settings;
    settings.length = length;
    settings.burn_in = burn_in;
    settings.seed = seed;
    return settings;
}

}  // namespace

TEST_CASE("logistic triad single step") {
    LogisticTriadParams params{3.8, 3.8, 3.8, 0.4, 0.3, 0.0};
    const auto out = logistic_triad_simulate(params, {0.5, 0.5, 0.5}, quick(2));
    CHECK(out.z[0] == 0.5);
    CHECK(out.z[1] == doctest::Approx(0.95).epsilon(1e-12));
    CHECK(out.x[1] == doctest::Approx(0.57).epsilon(1e-12));
    CHECK(out.y[1] == doctest::Approx(0.665).epsilon(1e-12));
}

TEST_CASE("logistic driver stays at the origin fixed point") {
    LogisticTriadParams params{3.8, 3.8, 3.8, 0.4, 0.3, 0.0};
    const auto out = logistic_triad_simulate(params, {0.0, 0.3, 0.7}, quick(200));
    for (double z : out.z) CHECK(z == 0.0);
}

TEST_CASE("paper demo run is bounded") {
    LogisticTriadParams params{3.8, 3.8, 3.8, 0.4, 0.3, 0.001};
    SimulationSettings settings = quick(20000, 99, 1000);
    const auto out = logistic_triad_simulate(params, {0.5, 0.5, 0.5}, settings);
    CHECK(out.z.size() == 20000);
    for (std::size_t t = 0; t < out.z.size(); ++t) {
        CHECK(std::isfinite(out.z[t]));
        CHECK(out.x[t] >= -1.0);
        CHECK(out.x[t] <= 2.0);
    }
}

TEST_CASE("simulation is deterministic") {
    LogisticTriadParams params{3.9, 3.85, 3.95, 0.2, 0.45, 0.01};
    const auto a = logistic_triad_simulate(params, {0.3, 0.4, 0.5}, quick(500, 7, 100));
    const auto b = logistic_triad_simulate(params, {0.3, 0.4, 0.5}, quick(500, 7, 100));
    CHECK(a.z == b.z);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
}

TEST_CASE("zero coupling and zero noise reduces to autonomous maps") {
    LogisticTriadParams coupled{3.8, 3.9, 3.95, 0.0, 0.0, 0.0};
    const auto triad = logistic_triad_simulate(coupled, {0.2, 0.4, 0.6}, quick(300));
    // x should match a solo logistic map with the same r and init
    double x = 0.4;
    for (std::size_t t = 0; t < triad.x.size(); ++t) {
        CHECK(triad.x[t] == doctest::Approx(x).epsilon(1e-12));
        x = 3.9 * x * (1.0 - x);
    }
}

TEST_CASE("logistic pair step values (unidirectional)") {
    PairParams params{3.86, 0.5, 0.0};
    const auto out =
        logistic_pair_simulate(params, PairMode::Unidirectional, {0.5, 0.5}, quick(2));
    CHECK(out.z.empty());
    CHECK(out.x[1] == doctest::Approx(0.965).epsilon(1e-12));
    CHECK(out.y[1] == doctest::Approx(0.4825).epsilon(1e-12));
}

TEST_CASE("unidirectional pair with x at the origin leaves y autonomous") {
    PairParams params{3.86, 0.5, 0.0};
    const auto out =
        logistic_pair_simulate(params, PairMode::Unidirectional, {0.0, 0.37}, quick(200));
    double y = 0.37;
    for (std::size_t t = 0; t < out.y.size(); ++t) {
        CHECK(out.y[t] == doctest::Approx(y).epsilon(1e-12));
        y = 3.86 * y * (1.0 - y);
    }
}

TEST_CASE("circular pair defaults stay bounded over 10^4 steps") {
    PairParams params{3.86, 0.6, 0.5};  // beta_forward = beta_3, beta_backward = beta_2
    const auto out = logistic_pair_simulate(params, PairMode::Circular, {0.4, 0.6},
                                            quick(10000, 3, 1000));
    for (std::size_t t = 0; t < out.x.size(); ++t) {
        CHECK(out.x[t] >= -1.0);
        CHECK(out.x[t] <= 2.0);
        CHECK(out.y[t] >= -1.0);
        CHECK(out.y[t] <= 2.0);
    }
}

TEST_CASE("tilted tent map closed-form values") {
    CHECK(tent_tilted(0.3, 0.3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tent_tilted(0.7, 0.7) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tent_tilted(0.0, 0.25) == doctest::Approx(0.0));
    CHECK(tent_tilted(1.0, 0.25) == doctest::Approx(0.0));
    // alpha = 1/2 reduces to the basic tent map
    CHECK(tent_tilted(0.25, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(tent_tilted(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("tilted tent map is continuous at the peak and piecewise linear") {
    const double alpha = 0.37;
    const double eps = 1e-9;
    CHECK(std::abs(tent_tilted(alpha - eps, alpha) - tent_tilted(alpha + eps, alpha)) < 1e-7);
    // slope 1/alpha left of the peak, -1/(1-alpha) right of it
    const double left = (tent_tilted(0.2, alpha) - tent_tilted(0.1, alpha)) / 0.1;
    const double right = (tent_tilted(0.9, alpha) - tent_tilted(0.8, alpha)) / 0.1;
    CHECK(left == doctest::Approx(1.0 / alpha).epsilon(1e-9));
    CHECK(right == doctest::Approx(-1.0 / (1.0 - alpha)).epsilon(1e-9));
}

TEST_CASE("tent triad with zero couplings runs independent maps") {
    TentTriadParams params{0.4, 0.3, 0.2, 0.0, 0.0};
    const auto out = tent_triad_simulate(params, {0.11, 0.42, 0.73}, quick(200));
    double x = 0.42;
    for (std::size_t t = 0; t < out.x.size(); ++t) {
        CHECK(out.x[t] == doctest::Approx(x).epsilon(1e-12));
        x = tent_tilted(x, 0.3);
    }
}

TEST_CASE("tent alpha=0.5 midpoint doubles") {
    TentTriadParams params{0.5, 0.5, 0.5, 0.0, 0.0};
    const auto out = tent_triad_simulate(params, {0.25, 0.1, 0.1}, quick(2));
    CHECK(out.z[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sampled parameters are reproducible and in range") {
    const auto a = sample_logistic_experiment(77);
    const auto b = sample_logistic_experiment(77);
    CHECK(a.params.r_z == b.params.r_z);
    CHECK(a.init == b.init);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto e = sample_logistic_experiment(seed);
        for (double r : {e.params.r_z, e.params.r_x, e.params.r_y}) {
            CHECK(r >= 3.8);
            CHECK(r <= 4.0);
        }
        for (double beta : {e.params.beta_x, e.params.beta_y}) {
            CHECK(beta >= 0.1);
            CHECK(beta <= 0.5);
        }
        const auto t = sample_tent_experiment(seed);
        for (double alpha : {t.params.alpha_z, t.params.alpha_x, t.params.alpha_y}) {
            CHECK(alpha >= 0.1);
            CHECK(alpha <= 0.5);
        }
        for (double beta : {t.params.beta_x, t.params.beta_y}) {
            CHECK(beta >= 0.1);
            CHECK(beta <= 1.0);
        }
    }
}

TEST_CASE("sampled coupling mean obeys the law of large numbers") {
    const int n = 10000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += sample_logistic_experiment(static_cast<std::uint64_t>(i)).params.beta_x;
    const double mean = sum / n;
    // U[0.1, 0.5]: mean 0.3, SD 0.4/sqrt(12); 3 standard errors
    const double se = 0.4 / std::sqrt(12.0) / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mean - 0.3) < 3.0 * se);
}

TEST_CASE("divergent parameters exhaust restarts") {
    // beta far above the stable range forces the guard to trip repeatedly
    LogisticTriadParams params{4.0, 4.0, 4.0, 4.0, 4.0, 0.0};
    SimulationSettings settings = quick(1000, 5, 500);
    settings.max_restarts = 3;
    CHECK_THROWS_AS(logistic_triad_simulate(params, {0.5, 0.5, 0.5}, settings),
                    numeric_error);
}
