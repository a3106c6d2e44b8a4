#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "hcd/embedding.hpp"

namespace hcd {

struct Neighbor {
    std::size_t index;  // time index of the matched point
    double distance;    // Euclidean distance
};

inline constexpr std::size_t kNoExclusion = std::numeric_limits<std::size_t>::max();

// Exact Euclidean k-nearest-neighbour index over an embedded point set,
// backed by a static k-d tree. Distance ties resolve to the lower time
// index, so query results match a linear scan bit for bit regardless of
// tree shape. The index is immutable after construction; concurrent
// read-only queries are safe.
class NeighborIndex {
public:
    explicit NeighborIndex(const EmbeddedSeries& points);

    std::size_t size() const { return count_; }
    int dim() const { return dim_; }
    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }

    // k nearest neighbours of the stored point `query_index`, ascending by
    // (distance, index). Throws when k exceeds the available points.
    std::vector<Neighbor> knn(std::size_t query_index, std::size_t k,
                              bool exclude_self) const;

    // k nearest neighbours of an arbitrary query point, optionally excluding
    // one stored index.
    std::vector<Neighbor> knn_point(std::span<const double> query, std::size_t k,
                                    std::size_t exclude_index = kNoExclusion) const;

private:
    struct Node {
        // leaf: [begin, end) into order_; internal: split axis and children
        std::size_t begin = 0, end = 0;
        int axis = -1;
        int left = -1, right = -1;
        std::vector<double> box_lo, box_hi;
    };

    int build_node(std::size_t begin, std::size_t end);
    void compute_box(Node& node) const;

    int dim_ = 0;
    std::size_t count_ = 0;
    std::vector<double> coords_;       // count_ x dim_, in original order
    std::vector<std::size_t> order_;   // permutation grouped by tree node
    std::vector<Node> nodes_;
    int root_ = -1;

    static constexpr std::size_t kLeafSize = 16;
};

struct CrossMapImage {
    std::vector<std::size_t> times;  // neighbour indices, ascending X distance
    std::vector<double> x_rows;      // times.size() x m, row-major
    std::vector<double> y_rows;      // rows of Y at the same times
    int m = 0;
};

// The cross-mapping neighbourhood: the K nearest neighbours of X(t_s) in X
// (seed excluded) together with the same-time rows of Y.
CrossMapImage cross_map_neighborhood(const EmbeddedSeries& x, const EmbeddedSeries& y,
                                     std::size_t t_s, std::size_t k);

}  // namespace hcd
