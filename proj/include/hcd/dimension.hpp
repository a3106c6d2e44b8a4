#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "hcd/neighbors.hpp"

namespace hcd {

// Local intrinsic dimension around stored point t, from the ratio of the
// 2k-th to the k-th neighbour distance (self excluded):
//   d = ln 2 / ln(R_2k / R_k).
// Returns nullopt when the ratio is degenerate (coincident points), so the
// sample can be dropped from the median.
std::optional<double> local_dimension(const NeighborIndex& index, std::size_t t,
                                      std::size_t k);

// Median of the valid local estimates over all points. Throws
// hcd::numeric_error when fewer than 10 local estimates are valid.
double global_dimension(const NeighborIndex& index, std::size_t k);
double global_dimension(const EmbeddedSeries& points, std::size_t k);

struct DimensionEstimate {
    double mean = 0.0;
    double spread = 0.0;          // sample SD of the global estimate across k
    std::map<int, double> per_k;  // k -> global estimate
};

// Global dimension averaged over integer k in [k_min, k_max].
DimensionEstimate dimension_over_k_range(const EmbeddedSeries& points, int k_min = 10,
                                         int k_max = 20);

// Dimension of the shared dynamics: d_x + d_y - d_j.
double mutual_dimension(double d_x, double d_y, double d_j);

enum class Relation {
    XDrivesY,
    Circular,
    YDrivesX,
    HiddenCommonDriver,
    Independent,
    Undecided,
};

std::string to_string(Relation relation);

// Deterministic classification from the dimension inequalities:
//   d_j within tol of max(d_x, d_y)   -> direct or circular coupling,
//   d_j above max and d_i above d_j   -> hidden common driver,
//   d_j above max and d_i equal to d_j -> independent systems,
// anything else undecided. Invariant under a common shift of all inputs.
Relation classify_relation(double d_x, double d_y, double d_j, double d_i,
                           double tol = 0.15);

struct SomShape {
    int self_dims = 1;    // grid dimensions devoted to the self-dynamics
    int driver_dims = 1;  // grid dimensions devoted to the driver
    int n1 = 40;          // nodes along the self-dynamics axis
    int n2 = 20;          // nodes along the driver axis
};

// Rounds the driver dimension d_z and the self-dynamics dimension d_y - d_z
// to the nearest positive integers. Only the 1+1-dimensional grid is
// supported; anything else throws hcd::numeric_error.
SomShape som_shape_from_dims(double d_y, double d_z, int nodes_self = 40,
                             int nodes_driver = 20);

struct DimensionReport {
    DimensionEstimate d_x, d_y, d_j, d_i;
    double d_z = 0.0;
    Relation relation = Relation::Undecided;
};

// Full dimension pipeline over two aligned embeddings: estimates the marginal
// and joint dimensions, the time-permuted joint, the mutual dimension and the
// causal relation label.
DimensionReport analyze_dimensions(const EmbeddedSeries& x, const EmbeddedSeries& y,
                                   double mix, std::uint64_t permute_seed,
                                   int k_min = 10, int k_max = 20, double tol = 0.15);

}  // namespace hcd
