#include "hcd/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hcd {

namespace {

// Candidate ordering: distance first, lower time index on ties.
struct Candidate {
    double d2;
    std::size_t index;
    bool operator<(const Candidate& o) const {
        return d2 < o.d2 || (d2 == o.d2 && index < o.index);
    }
};

// Fixed-capacity result set kept sorted ascending; k is small here (<= ~50).
class ResultSet {
public:
    explicit ResultSet(std::size_t k) : k_(k) { items_.reserve(k + 1); }

    bool full() const { return items_.size() == k_; }
    double worst_d2() const {
        return full() ? items_.back().d2 : std::numeric_limits<double>::infinity();
    }

    void offer(Candidate c) {
        if (full() && !(c < items_.back())) return;
        auto pos = std::upper_bound(items_.begin(), items_.end(), c);
        items_.insert(pos, c);
        if (items_.size() > k_) items_.pop_back();
    }

    const std::vector<Candidate>& items() const { return items_; }

private:
    std::size_t k_;
    std::vector<Candidate> items_;
};

}  // namespace

NeighborIndex::NeighborIndex(const EmbeddedSeries& points) {
    if (points.rows() == 0) throw std::invalid_argument("NeighborIndex: empty point set");
    dim_ = points.m;
    count_ = points.rows();
    coords_ = points.data;
    order_.resize(count_);
    for (std::size_t i = 0; i < count_; ++i) order_[i] = i;
    nodes_.reserve(2 * (count_ / kLeafSize + 2));
    root_ = build_node(0, count_);
}

int NeighborIndex::build_node(std::size_t begin, std::size_t end) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    {
        Node& node = nodes_.back();
        node.begin = begin;
        node.end = end;
        compute_box(node);
    }

    if (end - begin > kLeafSize) {
        // Split on the widest box extent at the median point.
        const Node& self = nodes_[id];
        int axis = 0;
        double best_extent = -1.0;
        for (int d = 0; d < dim_; ++d) {
            const double extent = self.box_hi[d] - self.box_lo[d];
            if (extent > best_extent) {
                best_extent = extent;
                axis = d;
            }
        }
        if (best_extent > 0.0) {
            const std::size_t mid = begin + (end - begin) / 2;
            std::nth_element(order_.begin() + begin, order_.begin() + mid,
                             order_.begin() + end, [&](std::size_t a, std::size_t b) {
                                 const double ca = coords_[a * dim_ + axis];
                                 const double cb = coords_[b * dim_ + axis];
                                 return ca < cb || (ca == cb && a < b);
                             });
            const int left = build_node(begin, mid);
            const int right = build_node(mid, end);
            nodes_[id].axis = axis;
            nodes_[id].left = left;
            nodes_[id].right = right;
        }
        // All points coincide when best_extent == 0; keep as one leaf.
    }
    return id;
}

void NeighborIndex::compute_box(Node& node) const {
    node.box_lo.assign(dim_, std::numeric_limits<double>::infinity());
    node.box_hi.assign(dim_, -std::numeric_limits<double>::infinity());
    for (std::size_t i = node.begin; i < node.end; ++i) {
        const double* p = coords_.data() + order_[i] * dim_;
        for (int d = 0; d < dim_; ++d) {
            node.box_lo[d] = std::min(node.box_lo[d], p[d]);
            node.box_hi[d] = std::max(node.box_hi[d], p[d]);
        }
    }
}

std::vector<Neighbor> NeighborIndex::knn(std::size_t query_index, std::size_t k,
                                         bool exclude_self) const {
    if (query_index >= count_) throw std::invalid_argument("knn: query index out of range");
    return knn_point(point(query_index), k, exclude_self ? query_index : kNoExclusion);
}

std::vector<Neighbor> NeighborIndex::knn_point(std::span<const double> query, std::size_t k,
                                               std::size_t exclude_index) const {
    if (query.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("knn: query dimension mismatch");
    const std::size_t available = count_ - (exclude_index < count_ ? 1 : 0);
    if (k > available) throw std::invalid_argument("knn: k exceeds available points");
    if (k == 0) return {};

    ResultSet results(k);

    // Squared distance from query to a node's bounding box; 0 when inside.
    auto box_d2 = [&](const Node& node) {
        double acc = 0.0;
        for (int d = 0; d < dim_; ++d) {
            double diff = 0.0;
            if (query[d] < node.box_lo[d]) diff = node.box_lo[d] - query[d];
            else if (query[d] > node.box_hi[d]) diff = query[d] - node.box_hi[d];
            acc += diff * diff;
        }
        return acc;
    };

    auto point_d2 = [&](std::size_t idx) {
        const double* p = coords_.data() + idx * dim_;
        double acc = 0.0;
        for (int d = 0; d < dim_; ++d) {
            const double diff = query[d] - p[d];
            acc += diff * diff;
        }
        return acc;
    };

    // Recursive search. A subtree is skipped only when its box distance
    // strictly exceeds the current worst: an equal distance could still win
    // on the lower-index tie rule.
    auto search = [&](auto&& self, int node_id) -> void {
        const Node& node = nodes_[node_id];
        if (node.axis < 0) {
            for (std::size_t i = node.begin; i < node.end; ++i) {
                const std::size_t idx = order_[i];
                if (idx == exclude_index) continue;
                results.offer({point_d2(idx), idx});
            }
            return;
        }
        const int near_child =
            query[node.axis] <= nodes_[node.left].box_hi[node.axis] ? node.left : node.right;
        const int far_child = near_child == node.left ? node.right : node.left;
        if (!(box_d2(nodes_[near_child]) > results.worst_d2()) || !results.full())
            self(self, near_child);
        if (!(box_d2(nodes_[far_child]) > results.worst_d2()) || !results.full())
            self(self, far_child);
    };
    search(search, root_);

    std::vector<Neighbor> out;
    out.reserve(k);
    for (const Candidate& c : results.items())
        out.push_back({c.index, std::sqrt(c.d2)});
    return out;
}

CrossMapImage cross_map_neighborhood(const EmbeddedSeries& x, const EmbeddedSeries& y,
                                     std::size_t t_s, std::size_t k) {
    if (x.m != y.m || x.rows() != y.rows() || x.t0 != y.t0)
        throw std::invalid_argument("cross_map_neighborhood: embeddings are not aligned");
    if (t_s >= x.rows())
        throw std::invalid_argument("cross_map_neighborhood: seed index out of range");

    NeighborIndex index(x);
    const auto hits = index.knn(t_s, k, /*exclude_self=*/true);

    CrossMapImage image;
    image.m = x.m;
    image.times.reserve(hits.size());
    image.x_rows.reserve(hits.size() * static_cast<std::size_t>(x.m));
    image.y_rows.reserve(hits.size() * static_cast<std::size_t>(x.m));
    for (const Neighbor& h : hits) {
        image.times.push_back(h.index);
        const auto xr = x.row(h.index);
        const auto yr = y.row(h.index);
        image.x_rows.insert(image.x_rows.end(), xr.begin(), xr.end());
        image.y_rows.insert(image.y_rows.end(), yr.begin(), yr.end());
    }
    return image;
}

}  // namespace hcd
