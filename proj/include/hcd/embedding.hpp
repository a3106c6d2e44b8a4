#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "hcd/series.hpp"

namespace hcd {

// Delay-coordinate matrix. Row r holds the forward delay vector
// [s(t0+r), s(t0+r+tau), ..., s(t0+r+(m-1)tau)] of its source series.
struct EmbeddedSeries {
    std::vector<double> data;  // row-major, rows() x m
    int m = 0;
    int tau = 1;
    std::size_t t0 = 0;  // source index of the first row

    std::size_t rows() const {
        return m > 0 ? data.size() / static_cast<std::size_t>(m) : 0;
    }
    std::span<const double> row(std::size_t r) const {
        return {data.data() + r * static_cast<std::size_t>(m),
                static_cast<std::size_t>(m)};
    }
    std::span<double> row(std::size_t r) {
        return {data.data() + r * static_cast<std::size_t>(m),
                static_cast<std::size_t>(m)};
    }
};

// Mixing constant for the joint observation J = X + a Y; an irrational value
// keeps the sum a faithful observation of the joint system.
inline const double kDefaultJointMix = std::sqrt(29.0 / 31.0);

// Throws std::invalid_argument when the series is shorter than (m-1)*tau + 1.
EmbeddedSeries delay_embed(const ScalarSeries& series, int m, int tau);

// Rowwise J = X + mix * Y. Requires equal shape, delays and alignment.
EmbeddedSeries joint_embed(const EmbeddedSeries& x, const EmbeddedSeries& y, double mix);

// J(t) = X(t) + mix * Y(perm(t)) for an explicit row permutation.
EmbeddedSeries joint_with_permutation(const EmbeddedSeries& x, const EmbeddedSeries& y,
                                      double mix, std::span<const std::size_t> perm);

// Joint embedding against a uniformly random row permutation of Y. Permuting
// whole delay vectors keeps each marginal manifold intact while destroying
// the cross-dependence between the two systems.
EmbeddedSeries time_permute_joint(const EmbeddedSeries& x, const EmbeddedSeries& y,
                                  double mix, std::uint64_t seed);

// Fisher-Yates permutation of 0..n-1 from the seeded PRNG.
std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed);

}  // namespace hcd
