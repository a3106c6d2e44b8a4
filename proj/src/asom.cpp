#include "hcd/asom.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <stdexcept>

#include "hcd/errors.hpp"
#include "hcd/neighbors.hpp"
#include "hcd/rng.hpp"

namespace hcd {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        acc += diff * diff;
    }
    return acc;
}

void validate_grid_shape(int n1, int n2, int m) {
    if (n1 < 1 || n2 < 1 || m < 1)
        throw std::invalid_argument("SomGrid: n1, n2 and m must be >= 1");
}

}  // namespace

ScheduleValues schedules(int step, const TrainingSchedule& schedule) {
    if (schedule.iterations < 1)
        throw std::invalid_argument("schedules: iterations must be >= 1");
    if (step < 0 || step > schedule.iterations)
        throw std::invalid_argument("schedules: step out of range");
    const double progress = static_cast<double>(step) / schedule.iterations;
    ScheduleValues values;
    values.sigma1 = schedule.sigma1_initial * std::exp(-progress);
    values.sigma2 = schedule.sigma2_initial * std::exp(-progress * schedule.sigma2_decay);
    values.epsilon = schedule.epsilon_initial * std::exp(-progress * schedule.epsilon_decay);
    return values;
}

SomGrid init_grid(int n1, int n2, int m, std::uint64_t seed) {
    validate_grid_shape(n1, n2, m);
    SomGrid grid{n1, n2, m, {}};
    grid.centers.resize(grid.node_count() * static_cast<std::size_t>(m));
    Xoshiro256pp rng(seed);
    for (auto& c : grid.centers) c = rng.uniform01();
    return grid;
}

SomGrid init_grid(int n1, int n2, int m, std::uint64_t seed,
                  std::span<const double> lo, std::span<const double> hi) {
    validate_grid_shape(n1, n2, m);
    if (lo.size() != static_cast<std::size_t>(m) || hi.size() != lo.size())
        throw std::invalid_argument("init_grid: bounding box dimension mismatch");
    SomGrid grid = init_grid(n1, n2, m, seed);
    for (std::size_t n = 0; n < grid.node_count(); ++n)
        for (int d = 0; d < m; ++d) {
            double& c = grid.centers[n * m + d];
            c = lo[d] + (hi[d] - lo[d]) * c;
        }
    return grid;
}

NodeId global_winner(const SomGrid& grid, std::span<const double> sample) {
    NodeId best;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.n1; ++i)
        for (int j = 0; j < grid.n2; ++j) {
            const double d2 = squared_distance(grid.center(i, j), sample);
            if (d2 < best_d2) {
                best_d2 = d2;
                best = {i, j};
            }
        }
    return best;
}

int row_winner(const SomGrid& grid, std::span<const double> sample, int j_star) {
    if (j_star < 0 || j_star >= grid.n2)
        throw std::invalid_argument("row_winner: j_star out of range");
    int best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.n1; ++i) {
        const double d2 = squared_distance(grid.center(i, j_star), sample);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

std::vector<double> neighborhood_weights(int i_a, int j_star, double sigma_i,
                                         double sigma_j, int n1, int n2) {
    if (!(sigma_i > 0.0) || !(sigma_j > 0.0))
        throw std::invalid_argument("neighborhood_weights: radii must be > 0");
    std::vector<double> weights(static_cast<std::size_t>(n1) * n2);
    const double inv_s1 = 1.0 / (sigma_i * sigma_i);
    const double inv_s2 = 1.0 / (sigma_j * sigma_j);
    for (int i = 0; i < n1; ++i) {
        const double di = static_cast<double>(i - i_a);
        const double row_term = di * di * inv_s1;
        for (int j = 0; j < n2; ++j) {
            const double dj = static_cast<double>(j - j_star);
            weights[static_cast<std::size_t>(i) * n2 + j] =
                std::exp(-(row_term + dj * dj * inv_s2));
        }
    }
    return weights;
}

void update_centers(SomGrid& grid, std::span<const double> sample,
                    std::span<const double> weights, double epsilon) {
    if (weights.size() != grid.node_count())
        throw std::invalid_argument("update_centers: weight shape mismatch");
    if (sample.size() != static_cast<std::size_t>(grid.m))
        throw std::invalid_argument("update_centers: sample dimension mismatch");
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument("update_centers: epsilon must be in (0, 1]");
    const int m = grid.m;
    for (std::size_t n = 0; n < grid.node_count(); ++n) {
        const double step = epsilon * weights[n];
        double* c = grid.centers.data() + n * m;
        for (int d = 0; d < m; ++d) c[d] += step * (sample[d] - c[d]);
    }
}

namespace {

// Mean best-node squared distance of the bundle to each column; the best
// column is the one already shaped most like the presented stripe.
int bundle_fit_column(const SomGrid& grid, const EmbeddedSeries& y,
                      std::span<const Neighbor> bundle) {
    int best_j = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid.n2; ++j) {
        double cost = 0.0;
        for (const Neighbor& neighbor : bundle) {
            const auto sample = y.row(neighbor.index);
            double best_d2 = std::numeric_limits<double>::infinity();
            for (int i = 0; i < grid.n1; ++i)
                best_d2 = std::min(best_d2, squared_distance(grid.center(i, j), sample));
            cost += best_d2;
        }
        if (cost < best_cost) {
            best_cost = cost;
            best_j = j;
        }
    }
    return best_j;
}

}  // namespace

TrainingTrace train(SomGrid& grid, const EmbeddedSeries& x, const EmbeddedSeries& y,
                    const TrainingSchedule& schedule, std::uint64_t seed,
                    std::span<const int> snapshot_steps, ColumnWinnerPolicy policy) {
    if (x.m != y.m || x.rows() != y.rows() || x.t0 != y.t0)
        throw std::invalid_argument("train: embeddings are not aligned");
    if (x.m != grid.m) throw std::invalid_argument("train: grid dimension mismatch");
    if (schedule.neighbors < 1) throw std::invalid_argument("train: neighbors must be >= 1");
    const std::size_t rows = x.rows();
    if (rows < static_cast<std::size_t>(schedule.neighbors) + 1)
        throw std::invalid_argument("train: not enough rows for the neighbourhood size");
    for (std::size_t s = 1; s < snapshot_steps.size(); ++s)
        if (snapshot_steps[s] <= snapshot_steps[s - 1])
            throw std::invalid_argument("train: snapshot steps must be strictly increasing");

    TrainingTrace trace;
    auto snapshot_it = snapshot_steps.begin();
    auto take_snapshots_up_to = [&](int step) {
        while (snapshot_it != snapshot_steps.end() && *snapshot_it <= step) {
            if (*snapshot_it == step) trace.snapshots.push_back({step, grid.centers});
            ++snapshot_it;
        }
    };
    take_snapshots_up_to(0);

    NeighborIndex x_index(x);
    Xoshiro256pp rng(seed);
    const std::size_t k = static_cast<std::size_t>(schedule.neighbors);

    for (int s = 1; s <= schedule.iterations; ++s) {
        const ScheduleValues rates = schedules(s, schedule);
        const std::size_t t_s = rng.uniform_below(rows);
        const auto bundle = x_index.knn(t_s, k, /*exclude_self=*/true);
        const int j_star = policy == ColumnWinnerPolicy::SeedPoint
                               ? global_winner(grid, y.row(t_s)).j
                               : bundle_fit_column(grid, y, bundle);

        for (const Neighbor& neighbor : bundle) {
            const auto sample = y.row(neighbor.index);
            const int i_a = row_winner(grid, sample, j_star);
            // Self axis takes the sigma2 schedule, driver axis sigma1: each
            // radius then starts at half its axis length on the 40x20 grid.
            const auto weights = neighborhood_weights(i_a, j_star, rates.sigma2,
                                                      rates.sigma1, grid.n1, grid.n2);
            update_centers(grid, sample, weights, rates.epsilon);
            ++trace.updates;
        }

        for (double c : grid.centers)
            if (!std::isfinite(c))
                throw numeric_error("train: non-finite center at outer step " +
                                    std::to_string(s));
        take_snapshots_up_to(s);
    }
    return trace;
}

Readout readout(const SomGrid& grid, const EmbeddedSeries& y_test) {
    if (y_test.m != grid.m) throw std::invalid_argument("readout: dimension mismatch");
    if (y_test.rows() < 2) throw std::invalid_argument("readout: need at least 2 rows");
    Readout result;
    result.levels.reserve(y_test.rows());
    std::vector<bool> seen(static_cast<std::size_t>(grid.n2), false);
    for (std::size_t r = 0; r < y_test.rows(); ++r) {
        const NodeId winner = global_winner(grid, y_test.row(r));
        result.levels.push_back(static_cast<double>(winner.j));
        seen[static_cast<std::size_t>(winner.j)] = true;
    }
    result.distinct_levels = static_cast<int>(std::count(seen.begin(), seen.end(), true));
    if (result.distinct_levels < 2)
        throw numeric_error("readout: constant winner index (grid collapse)");
    result.standardized = standardize(result.levels);
    return result;
}

void save_grid(const SomGrid& grid, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw config_error("save_grid: cannot open " + path);
    std::fprintf(f, "ASOM v1 %d %d %d\n", grid.n1, grid.n2, grid.m);
    for (int i = 0; i < grid.n1; ++i)
        for (int j = 0; j < grid.n2; ++j) {
            std::fprintf(f, "%d %d", i, j);
            for (double c : grid.center(i, j)) std::fprintf(f, " %.17g", c);
            std::fprintf(f, "\n");
        }
    std::fclose(f);
}

SomGrid load_grid(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw config_error("load_grid: cannot open " + path);
    struct Closer {
        std::FILE* f;
        ~Closer() { std::fclose(f); }
    } closer{f};

    char tag[16] = {};
    int version = 0, n1 = 0, n2 = 0, m = 0;
    if (std::fscanf(f, "%15s v%d %d %d %d", tag, &version, &n1, &n2, &m) != 5 ||
        std::string(tag) != "ASOM")
        throw config_error("load_grid: malformed header in " + path);
    if (version != 1) throw config_error("load_grid: unsupported version in " + path);
    if (n1 < 1 || n2 < 1 || m < 1) throw config_error("load_grid: bad shape in " + path);

    SomGrid grid{n1, n2, m, {}};
    grid.centers.resize(grid.node_count() * static_cast<std::size_t>(m));
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            int fi = 0, fj = 0;
            if (std::fscanf(f, "%d %d", &fi, &fj) != 2 || fi != i || fj != j)
                throw config_error("load_grid: malformed node line in " + path);
            for (int d = 0; d < m; ++d)
                if (std::fscanf(f, "%lf", &grid.centers[(static_cast<std::size_t>(i) * n2 + j) * m + d]) != 1)
                    throw config_error("load_grid: truncated file " + path);
        }
    return grid;
}

}  // namespace hcd
