#include <doctest.h>

#include <cmath>

#include "hcd/errors.hpp"
#include "hcd/series.hpp"

using namespace hcd;

TEST_CASE("standardize two-point series") {
    const auto z = standardize({0.0, 1.0});
    CHECK(z[0] == doctest::Approx(-1.0));
    CHECK(z[1] == doctest::Approx(1.0));
}

TEST_CASE("standardize is idempotent") {
    const ScalarSeries s = {3.0, -1.0, 2.5, 8.0, 0.25, -4.0};
    const auto once = standardize(s);
    const auto twice = standardize(once);
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(std::abs(once[i] - twice[i]) < 1e-12);
}

TEST_CASE("standardize rejects constant input") {
    CHECK_THROWS_AS(standardize({2.0, 2.0, 2.0}), numeric_error);
}

TEST_CASE("standardized output has mean 0 and population SD 1") {
    const auto z = standardize({1.0, 2.0, 4.0, 8.0, 16.0});
    CHECK(std::abs(mean(z)) < 1e-14);
    CHECK(population_sd(z) == doctest::Approx(1.0));
}

TEST_CASE("slice bounds") {
    const ScalarSeries s = {0, 1, 2, 3, 4};
    const auto part = slice(s, 1, 3);
    CHECK(part == ScalarSeries{1, 2, 3});
    CHECK_THROWS_AS(slice(s, 3, 3), std::invalid_argument);
}
