#include "hcd/embedding.hpp"

#include <stdexcept>

#include "hcd/rng.hpp"

namespace hcd {

namespace {

void require_aligned(const EmbeddedSeries& x, const EmbeddedSeries& y) {
    if (x.m != y.m || x.tau != y.tau || x.rows() != y.rows() || x.t0 != y.t0)
        throw std::invalid_argument("joint_embed: embeddings are not aligned");
    if (x.m < 1) throw std::invalid_argument("joint_embed: empty embedding");
}

}  // namespace

EmbeddedSeries delay_embed(const ScalarSeries& series, int m, int tau) {
    if (m < 1) throw std::invalid_argument("delay_embed: m must be >= 1");
    if (tau < 1) throw std::invalid_argument("delay_embed: tau must be >= 1");
    const std::size_t span = static_cast<std::size_t>(m - 1) * static_cast<std::size_t>(tau);
    if (series.size() < span + 1)
        throw std::invalid_argument("delay_embed: series too short for m and tau");

    EmbeddedSeries out;
    out.m = m;
    out.tau = tau;
    out.t0 = 0;
    const std::size_t rows = series.size() - span;
    out.data.resize(rows * static_cast<std::size_t>(m));
    for (std::size_t r = 0; r < rows; ++r)
        for (int d = 0; d < m; ++d)
            out.data[r * m + d] = series[r + static_cast<std::size_t>(d) * tau];
    return out;
}

EmbeddedSeries joint_embed(const EmbeddedSeries& x, const EmbeddedSeries& y, double mix) {
    require_aligned(x, y);
    EmbeddedSeries out = x;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += mix * y.data[i];
    return out;
}

EmbeddedSeries joint_with_permutation(const EmbeddedSeries& x, const EmbeddedSeries& y,
                                      double mix, std::span<const std::size_t> perm) {
    require_aligned(x, y);
    if (perm.size() != x.rows())
        throw std::invalid_argument("joint_with_permutation: permutation size mismatch");
    EmbeddedSeries out = x;
    const std::size_t m = static_cast<std::size_t>(x.m);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const double* src = y.data.data() + perm[r] * m;
        double* dst = out.data.data() + r * m;
        for (std::size_t d = 0; d < m; ++d) dst[d] += mix * src[d];
    }
    return out;
}

EmbeddedSeries time_permute_joint(const EmbeddedSeries& x, const EmbeddedSeries& y,
                                  double mix, std::uint64_t seed) {
    const auto perm = random_permutation(x.rows(), seed);
    return joint_with_permutation(x, y, mix, perm);
}

std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Xoshiro256pp rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = rng.uniform_below(i);
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

}  // namespace hcd
