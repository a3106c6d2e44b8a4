#include "hcd/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hcd/embedding.hpp"
#include "hcd/errors.hpp"

namespace hcd {

namespace {

constexpr std::size_t kMinValidEstimates = 10;

double median_inplace(std::vector<double>& values) {
    const std::size_t n = values.size();
    const std::size_t half = n / 2;
    std::nth_element(values.begin(), values.begin() + half, values.end());
    double upper = values[half];
    if (n % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + half);
    return 0.5 * (lower + upper);
}

std::optional<double> dimension_from_radii(double r_k, double r_2k) {
    if (!(r_k > 0.0) || !(r_2k > r_k)) return std::nullopt;
    return std::numbers::ln2 / std::log(r_2k / r_k);
}

}  // namespace

std::optional<double> local_dimension(const NeighborIndex& index, std::size_t t,
                                      std::size_t k) {
    if (k < 1) throw std::invalid_argument("local_dimension: k must be >= 1");
    if (2 * k + 1 > index.size())
        throw std::invalid_argument("local_dimension: need at least 2k+1 points");
    const auto hits = index.knn(t, 2 * k, /*exclude_self=*/true);
    return dimension_from_radii(hits[k - 1].distance, hits[2 * k - 1].distance);
}

double global_dimension(const NeighborIndex& index, std::size_t k) {
    if (index.size() < 2 * k + 1)
        throw std::invalid_argument("global_dimension: need at least 2k+1 points");
    std::vector<double> locals;
    locals.reserve(index.size());
    for (std::size_t t = 0; t < index.size(); ++t)
        if (auto d = local_dimension(index, t, k)) locals.push_back(*d);
    if (locals.size() < kMinValidEstimates)
        throw numeric_error("global_dimension: fewer than 10 valid local estimates");
    return median_inplace(locals);
}

double global_dimension(const EmbeddedSeries& points, std::size_t k) {
    return global_dimension(NeighborIndex(points), k);
}

DimensionEstimate dimension_over_k_range(const EmbeddedSeries& points, int k_min,
                                         int k_max) {
    if (k_min < 2 || k_max < k_min)
        throw std::invalid_argument("dimension_over_k_range: need k_max >= k_min >= 2");
    const std::size_t n = points.rows();
    const std::size_t k_top = static_cast<std::size_t>(k_max);
    if (n < 2 * k_top + 1)
        throw std::invalid_argument("dimension_over_k_range: not enough points");

    // One neighbour query per point covers every k in the range.
    NeighborIndex index(points);
    std::vector<double> radii(n * 2 * k_top);
    for (std::size_t t = 0; t < n; ++t) {
        const auto hits = index.knn(t, 2 * k_top, /*exclude_self=*/true);
        for (std::size_t i = 0; i < 2 * k_top; ++i)
            radii[t * 2 * k_top + i] = hits[i].distance;
    }

    DimensionEstimate estimate;
    std::vector<double> locals;
    locals.reserve(n);
    for (int k = k_min; k <= k_max; ++k) {
        locals.clear();
        for (std::size_t t = 0; t < n; ++t) {
            const double* r = radii.data() + t * 2 * k_top;
            if (auto d = dimension_from_radii(r[k - 1], r[2 * k - 1]))
                locals.push_back(*d);
        }
        if (locals.size() < kMinValidEstimates)
            throw numeric_error("dimension_over_k_range: fewer than 10 valid local estimates");
        estimate.per_k[k] = median_inplace(locals);
    }

    double sum = 0.0;
    for (const auto& [k, d] : estimate.per_k) sum += d;
    const double count = static_cast<double>(estimate.per_k.size());
    estimate.mean = sum / count;
    if (estimate.per_k.size() > 1) {
        double acc = 0.0;
        for (const auto& [k, d] : estimate.per_k)
            acc += (d - estimate.mean) * (d - estimate.mean);
        estimate.spread = std::sqrt(acc / (count - 1.0));
    }
    return estimate;
}

double mutual_dimension(double d_x, double d_y, double d_j) {
    return d_x + d_y - d_j;
}

std::string to_string(Relation relation) {
    switch (relation) {
        case Relation::XDrivesY: return "X->Y";
        case Relation::Circular: return "X<->Y";
        case Relation::YDrivesX: return "X<-Y";
        case Relation::HiddenCommonDriver: return "hidden-common-driver";
        case Relation::Independent: return "independent";
        case Relation::Undecided: return "undecided";
    }
    return "undecided";
}

Relation classify_relation(double d_x, double d_y, double d_j, double d_i, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("classify_relation: tol must be > 0");
    const double d_max = std::max(d_x, d_y);
    if (std::abs(d_j - d_max) <= tol) {
        // Joint adds nothing beyond the larger system: direct coupling.
        if (d_y >= d_x + tol) return Relation::XDrivesY;
        if (d_x >= d_y + tol) return Relation::YDrivesX;
        return Relation::Circular;
    }
    if (d_j > d_max + tol) {
        if (d_i > d_j + tol) return Relation::HiddenCommonDriver;
        if (std::abs(d_j - d_i) <= tol) return Relation::Independent;
    }
    return Relation::Undecided;
}

SomShape som_shape_from_dims(double d_y, double d_z, int nodes_self, int nodes_driver) {
    if (!(d_z > 0.0) || !(d_y >= d_z))
        throw std::invalid_argument("som_shape_from_dims: need d_y >= d_z > 0");
    if (nodes_self < 1 || nodes_driver < 1)
        throw std::invalid_argument("som_shape_from_dims: node counts must be >= 1");
    const int driver_dims = static_cast<int>(std::lround(d_z));
    const int self_dims = static_cast<int>(std::lround(d_y - d_z));
    if (driver_dims != 1 || self_dims != 1)
        throw numeric_error("som_shape_from_dims: unsupported SOM shape " +
                            std::to_string(self_dims) + "+" + std::to_string(driver_dims) +
                            " (only 1+1 grids are supported)");
    return SomShape{self_dims, driver_dims, nodes_self, nodes_driver};
}

DimensionReport analyze_dimensions(const EmbeddedSeries& x, const EmbeddedSeries& y,
                                   double mix, std::uint64_t permute_seed, int k_min,
                                   int k_max, double tol) {
    DimensionReport report;
    report.d_x = dimension_over_k_range(x, k_min, k_max);
    report.d_y = dimension_over_k_range(y, k_min, k_max);
    report.d_j = dimension_over_k_range(joint_embed(x, y, mix), k_min, k_max);
    report.d_i =
        dimension_over_k_range(time_permute_joint(x, y, mix, permute_seed), k_min, k_max);
    report.d_z = mutual_dimension(report.d_x.mean, report.d_y.mean, report.d_j.mean);
    report.relation = classify_relation(report.d_x.mean, report.d_y.mean,
                                        report.d_j.mean, report.d_i.mean, tol);
    return report;
}

}  // namespace hcd
