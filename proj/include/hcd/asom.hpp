#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hcd/embedding.hpp"
#include "hcd/series.hpp"

namespace hcd {

struct NodeId {
    int i = 0;  // index along the self-dynamics axis
    int j = 0;  // index along the driver axis
};

// Rectangular SOM lattice in embedding space. Axis 1 (n1 nodes) is trained to
// follow the self-dynamics submanifolds; axis 2 (n2 nodes) to span the states
// of the hidden driver. Node (i, j) owns the receptive-field center
// centers[(i * n2 + j) * m ... + m).
struct SomGrid {
    int n1 = 40;
    int n2 = 20;
    int m = 3;
    std::vector<double> centers;

    std::size_t node_count() const {
        return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
    }
    std::span<double> center(int i, int j) {
        return {centers.data() + (static_cast<std::size_t>(i) * n2 + j) * m,
                static_cast<std::size_t>(m)};
    }
    std::span<const double> center(int i, int j) const {
        return {centers.data() + (static_cast<std::size_t>(i) * n2 + j) * m,
                static_cast<std::size_t>(m)};
    }
};

// Learning-rate and neighbourhood-radius schedules. With outer step s of N:
//   sigma1(s) = sigma1_initial * exp(-s / N)
//   sigma2(s) = sigma2_initial * exp(-s * sigma2_decay / N)
//   epsilon(s) = epsilon_initial * exp(-s * epsilon_decay / N)
// The driver axis shrinks faster (ln 5 vs 1) so late training refines
// individual driver stripes while the self axis keeps a wide reach.
struct TrainingSchedule {
    int iterations = 10000;  // N, outer-loop length
    int neighbors = 20;      // K, cross-mapped bundle size per outer step
    double sigma1_initial = 10.0;
    double sigma2_initial = 20.0;
    double sigma2_decay = std::log(5.0);
    double epsilon_initial = 0.2;
    double epsilon_decay = std::log(20.0);
};

struct ScheduleValues {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double epsilon = 0.0;
};

ScheduleValues schedules(int step, const TrainingSchedule& schedule);

// Centers i.i.d. uniform in the unit cube [0,1]^m.
SomGrid init_grid(int n1, int n2, int m, std::uint64_t seed);
// Centers uniform in the axis-aligned box [lo, hi]^m.
SomGrid init_grid(int n1, int n2, int m, std::uint64_t seed,
                  std::span<const double> lo, std::span<const double> hi);

// Overall winner: argmin over all nodes of ||C_ij - sample||; ties resolve to
// the lexicographically lowest (i, j).
NodeId global_winner(const SomGrid& grid, std::span<const double> sample);

// Anisotropic winner: argmin over i with the driver index frozen at j_star;
// ties resolve to the lowest i.
int row_winner(const SomGrid& grid, std::span<const double> sample, int j_star);

// w_ij = exp(-((i - i_a)^2 / sigma_i^2 + (j - j_star)^2 / sigma_j^2)),
// returned row-major (i * n2 + j). sigma_i shapes the self axis, sigma_j the
// driver axis.
std::vector<double> neighborhood_weights(int i_a, int j_star, double sigma_i,
                                         double sigma_j, int n1, int n2);

// C_ij += epsilon * w_ij * (sample - C_ij) for every node.
void update_centers(SomGrid& grid, std::span<const double> sample,
                    std::span<const double> weights, double epsilon);

struct TrainingTrace {
    struct Snapshot {
        int step = 0;
        std::vector<double> centers;
    };
    std::vector<Snapshot> snapshots;
    long long updates = 0;  // total inner-loop center updates
};

// How the driver column j* is chosen for each outer step's bundle.
//   SeedPoint: the driver index of the overall winner for Y(t_s) alone.
//   BundleFit: the column whose nodes best fit the whole cross-mapped bundle
//              (mean best-node squared distance over the K samples). A single
//              point barely discriminates driver states on thin manifolds;
//              the bundle is the object actually being imprinted, and fitting
//              it directly keeps the column assignment stable.
enum class ColumnWinnerPolicy { SeedPoint, BundleFit };

// Anisotropic training. Each outer step s = 1..N:
//   - recompute the schedule values for s,
//   - draw a random seed row t_s,
//   - fetch the K nearest neighbours of X(t_s) in X (seed excluded),
//   - pick the driver column j* per the policy,
//   - present the neighbours' Y rows in ascending-distance order; each
//     presentation picks the row winner within column j* and updates all
//     centers.
// The self axis (i, n1 nodes) uses the sigma2 schedule and the driver axis
// (j, n2 nodes) the sigma1 schedule, so each radius starts at half its axis
// length for the default 40x20 grid.
// Snapshot steps must be strictly increasing; a snapshot records the centers
// after the given outer step completes (step 0 = initial grid).
// Throws hcd::numeric_error if a center becomes non-finite.
TrainingTrace train(SomGrid& grid, const EmbeddedSeries& x, const EmbeddedSeries& y,
                    const TrainingSchedule& schedule, std::uint64_t seed,
                    std::span<const int> snapshot_steps = {},
                    ColumnWinnerPolicy policy = ColumnWinnerPolicy::BundleFit);

struct Readout {
    ScalarSeries levels;        // winner driver index j* per row, as reals
    ScalarSeries standardized;  // levels shifted to mean 0, population SD 1
    int distinct_levels = 0;
};

// Driver estimate from a trained grid: the second winner index per test row.
// Throws hcd::numeric_error when the output is constant (grid collapse).
Readout readout(const SomGrid& grid, const EmbeddedSeries& y_test);

// A readout discretized over n2 = 20 levels cannot legitimately exceed this
// correlation against a continuous driver; values above it indicate a broken
// evaluation rather than a good one.
inline constexpr double kMaxReadoutCorrelation = 0.975;

// Text format: header "ASOM v1 n1 n2 m", then one line "i j c_0 ... c_{m-1}"
// per node in row-major order, 17 significant digits (round-trip exact).
void save_grid(const SomGrid& grid, const std::string& path);
SomGrid load_grid(const std::string& path);

}  // namespace hcd
