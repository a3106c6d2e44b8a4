#include <doctest.h>

#include <random>

#include "hcd/dynamics.hpp"
#include "hcd/neighbors.hpp"
#include "oracles.hpp"

using namespace hcd;

TEST_CASE("single point index answers itself") {
    EmbeddedSeries p;
    p.m = 2;
    p.data = {0.5, 0.5};
    NeighborIndex index(p);
    const auto hits = index.knn(0, 1, /*exclude_self=*/false);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].index == 0);
    CHECK(hits[0].distance == 0.0);
}

TEST_CASE("empty point set is rejected") {
    EmbeddedSeries p;
    p.m = 2;
    CHECK_THROWS_AS(NeighborIndex{p}, std::invalid_argument);
}

TEST_CASE("colinear points, self-exclusion") {
    EmbeddedSeries p;
    p.m = 1;
    p.data = {0, 1, 2, 3};
    NeighborIndex index(p);
    const auto hits = index.knn(0, 2, /*exclude_self=*/true);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].index == 1);
    CHECK(hits[0].distance == doctest::Approx(1.0));
    CHECK(hits[1].index == 2);
    CHECK(hits[1].distance == doctest::Approx(2.0));

    const auto self = index.knn(0, 1, /*exclude_self=*/false);
    CHECK(self[0].index == 0);
    CHECK(self[0].distance == 0.0);
}

TEST_CASE("k larger than available points is rejected") {
    EmbeddedSeries p;
    p.m = 1;
    p.data = {0, 1, 2};
    NeighborIndex index(p);
    CHECK_THROWS_AS(index.knn(0, 3, true), std::invalid_argument);
    CHECK_NOTHROW(index.knn(0, 3, false));
}

TEST_CASE("index matches brute force on random clouds") {
    std::mt19937_64 gen(2024);
    for (int instance = 0; instance < 20; ++instance) {
        const std::size_t n = 100 + gen() % 900;
        const int dim = 1 + static_cast<int>(gen() % 6);
        const auto cloud = oracles::random_cloud(n, dim, static_cast<unsigned>(gen()));
        NeighborIndex index(cloud);
        for (int q = 0; q < 25; ++q) {
            const std::size_t qi = gen() % n;
            const std::size_t k = 1 + gen() % std::min<std::size_t>(n - 1, 30);
            const auto got = index.knn(qi, k, true);
            const auto want = oracles::brute_force_knn(cloud, cloud.row(qi), k, qi);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].index == want[i].index);
                CHECK(got[i].distance == want[i].distance);
            }
        }
    }
}

TEST_CASE("tie cases resolve to the lower time index") {
    // integer lattice duplicated: plenty of exactly equal distances
    EmbeddedSeries p;
    p.m = 2;
    for (int copy = 0; copy < 2; ++copy)
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                p.data.push_back(static_cast<double>(i));
                p.data.push_back(static_cast<double>(j));
            }
    NeighborIndex index(p);
    for (std::size_t q = 0; q < p.rows(); ++q) {
        const auto got = index.knn(q, 10, true);
        const auto want = oracles::brute_force_knn(p, p.row(q), 10, q);
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].index == want[i].index);
            CHECK(got[i].distance == want[i].distance);
        }
    }
}

TEST_CASE("distances are non-decreasing") {
    const auto cloud = oracles::random_cloud(400, 3, 555);
    NeighborIndex index(cloud);
    const auto hits = index.knn(7, 50, true);
    for (std::size_t i = 1; i < hits.size(); ++i)
        CHECK(hits[i].distance >= hits[i - 1].distance);
}

TEST_CASE("cross-mapping with identical manifolds returns identical rows") {
    ScalarSeries s(200);
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = std::sin(0.1 * static_cast<double>(i)) + 0.3 * std::cos(0.37 * static_cast<double>(i));
    const auto x = delay_embed(s, 3, 1);
    const auto image = cross_map_neighborhood(x, x, 42, 10);
    CHECK(image.times.size() == 10);
    CHECK(image.x_rows == image.y_rows);
    // time indices are shared between both outputs by construction
    for (std::size_t i = 0; i < image.times.size(); ++i) CHECK(image.times[i] != 42);
}

TEST_CASE("cross-mapping asymmetry on a unidirectional pair") {
    // X drives Y: X-neighbourhood images in Y spread along a submanifold,
    // while Y-neighbourhood images in X stay tight.
    SimulationSettings settings;
    settings.length = 3000;
    settings.burn_in = 500;
    settings.seed = 31;
    const auto sim = logistic_pair_simulate(PairParams{3.86, 0.5, 0.0},
                                            PairMode::Unidirectional, {0.31, 0.47}, settings);
    const auto x = delay_embed(sim.x, 3, 1);
    const auto y = delay_embed(sim.y, 3, 1);

    std::mt19937_64 gen(7);
    double spread_y_of_x = 0.0, spread_x_of_y = 0.0;
    const int probes = 40;
    for (int i = 0; i < probes; ++i) {
        const std::size_t t = gen() % x.rows();
        spread_y_of_x += oracles::diameter(cross_map_neighborhood(x, y, t, 15).y_rows, 3);
        spread_x_of_y += oracles::diameter(cross_map_neighborhood(y, x, t, 15).y_rows, 3);
    }
    CHECK(spread_y_of_x / probes > spread_x_of_y / probes);
}
