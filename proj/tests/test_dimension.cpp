#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hcd/dimension.hpp"
#include "hcd/errors.hpp"

using namespace hcd;

namespace {

EmbeddedSeries line_points(std::size_t n) {
    EmbeddedSeries p;
    p.m = 1;
    p.data.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.data[i] = static_cast<double>(i);
    return p;
}

EmbeddedSeries square_lattice(int side) {
    EmbeddedSeries p;
    p.m = 2;
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) {
            p.data.push_back(static_cast<double>(i));
            p.data.push_back(static_cast<double>(j));
        }
    return p;
}

EmbeddedSeries uniform_cloud(std::size_t n, int dim, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    EmbeddedSeries p;
    p.m = dim;
    p.data.resize(n * static_cast<std::size_t>(dim));
    for (auto& v : p.data) v = dist(gen);
    return p;
}

}  // namespace

TEST_CASE("local dimension on an equispaced line is exactly 1") {
    const auto p = line_points(101);
    NeighborIndex index(p);
    const auto d = local_dimension(index, 50, 10);
    REQUIRE(d.has_value());
    CHECK(*d == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("local dimension on a square lattice is close to 2") {
    const auto p = square_lattice(61);
    NeighborIndex index(p);
    const std::size_t center = 30 * 61 + 30;
    const auto d = local_dimension(index, center, 100);
    REQUIRE(d.has_value());
    CHECK(*d == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("coincident points mark the local estimate invalid") {
    EmbeddedSeries p;
    p.m = 1;
    p.data = {0, 0, 0, 0, 0, 1, 2, 3, 4, 5, 6};
    NeighborIndex index(p);
    CHECK_FALSE(local_dimension(index, 0, 2).has_value());
}

TEST_CASE("median local dimension of the unit square") {
    const auto p = uniform_cloud(10000, 2, 91);
    CHECK(global_dimension(p, 15) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("k-range averaging on uniform clouds") {
    const auto cube = uniform_cloud(10000, 3, 17);
    const auto est3 = dimension_over_k_range(cube, 10, 20);
    CHECK(est3.mean == doctest::Approx(3.0).epsilon(0.2 / 3.0));
    CHECK(est3.per_k.size() == 11);

    // a 1-D circle embedded in the plane
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    EmbeddedSeries circle;
    circle.m = 2;
    for (int i = 0; i < 10000; ++i) {
        const double a = angle(gen);
        circle.data.push_back(std::cos(a));
        circle.data.push_back(std::sin(a));
    }
    const auto est1 = dimension_over_k_range(circle, 10, 20);
    CHECK(est1.mean == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("constant per-k curve has zero spread") {
    // Even k on the integer line gives exactly R_2k/R_k = 2; a single-k range
    // is a constant curve, so the mean is that constant and the spread is 0.
    const auto p = line_points(2000);
    const auto est = dimension_over_k_range(p, 14, 14);
    CHECK(est.mean == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(est.spread == 0.0);

    const auto wide = dimension_over_k_range(p, 10, 20);
    CHECK(wide.per_k.at(10) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(wide.per_k.at(20) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("global dimension is isometry invariant") {
    const auto p = uniform_cloud(2000, 2, 13);
    auto rotated = p;
    const double c = std::cos(0.83), s = std::sin(0.83);
    for (std::size_t r = 0; r < rotated.rows(); ++r) {
        const double x = p.row(r)[0], y = p.row(r)[1];
        rotated.row(r)[0] = c * x - s * y + 5.0;
        rotated.row(r)[1] = s * x + c * y - 2.0;
    }
    CHECK(global_dimension(p, 12) == doctest::Approx(global_dimension(rotated, 12)).epsilon(1e-9));
}

TEST_CASE("mutual dimension arithmetic") {
    CHECK(mutual_dimension(2.17, 2.19, 3.0) == doctest::Approx(1.36).epsilon(1e-12));
    CHECK(mutual_dimension(1.7, 1.7, 3.4) == doctest::Approx(0.0));
    CHECK(mutual_dimension(2.0, 2.0, 2.0) == doctest::Approx(2.0));
    CHECK(mutual_dimension(1.0, 2.0, 2.5) == mutual_dimension(2.0, 1.0, 2.5));
}

TEST_CASE("relation classification") {
    CHECK(classify_relation(2.17, 2.19, 3.0, 3.45, 0.15) == Relation::HiddenCommonDriver);
    CHECK(classify_relation(2.0, 2.0, 2.0, 2.0, 0.15) == Relation::Circular);
    CHECK(classify_relation(1.0, 2.0, 2.0, 3.0, 0.15) == Relation::XDrivesY);
    CHECK(classify_relation(2.0, 1.0, 2.0, 3.0, 0.15) == Relation::YDrivesX);
    CHECK(classify_relation(1.0, 1.0, 2.0, 2.0, 0.15) == Relation::Independent);
    CHECK(classify_relation(1.0, 1.0, 0.2, 0.2, 0.15) == Relation::Undecided);
    CHECK_THROWS_AS(classify_relation(1, 1, 1, 1, 0.0), std::invalid_argument);
}

TEST_CASE("classification is shift invariant") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> dist(0.5, 4.0);
    for (int i = 0; i < 200; ++i) {
        const double dx = dist(gen), dy = dist(gen), dj = dist(gen), di = dist(gen);
        const double shift = dist(gen);
        CHECK(classify_relation(dx, dy, dj, di) ==
              classify_relation(dx + shift, dy + shift, dj + shift, di + shift));
    }
}

TEST_CASE("SOM shape derivation") {
    const auto shape = som_shape_from_dims(2.19, 1.36);
    CHECK(shape.self_dims == 1);
    CHECK(shape.driver_dims == 1);
    CHECK(shape.n1 == 40);
    CHECK(shape.n2 == 20);

    CHECK_NOTHROW(som_shape_from_dims(2.0, 1.0));
    CHECK_THROWS_AS(som_shape_from_dims(4.0, 2.0), numeric_error);
    CHECK_THROWS_AS(som_shape_from_dims(1.0, 2.0), std::invalid_argument);
    // a shared dimension that rounds to zero cannot carry a driver axis
    CHECK_THROWS_AS(som_shape_from_dims(2.0, 0.2), numeric_error);
}
