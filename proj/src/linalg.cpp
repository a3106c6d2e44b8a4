#include "hcd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hcd/errors.hpp"

namespace hcd {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: shape mismatch");
    Matrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a.at(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

std::vector<double> matvec(const Matrix& a, std::span<const double> v) {
    if (a.cols != v.size()) throw std::invalid_argument("matvec: shape mismatch");
    std::vector<double> out(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) out[i] = dot(a.row(i), v);
    return out;
}

std::vector<double> center_columns(Matrix& m) {
    if (m.rows == 0) throw std::invalid_argument("center_columns: empty matrix");
    std::vector<double> means(m.cols, 0.0);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) means[c] += m.at(r, c);
    for (auto& mu : means) mu /= static_cast<double>(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) -= means[c];
    return means;
}

Matrix covariance(const Matrix& centered) {
    Matrix cov(centered.cols, centered.cols);
    for (std::size_t r = 0; r < centered.rows; ++r)
        for (std::size_t i = 0; i < centered.cols; ++i) {
            const double vi = centered.at(r, i);
            if (vi == 0.0) continue;
            for (std::size_t j = i; j < centered.cols; ++j)
                cov.at(i, j) += vi * centered.at(r, j);
        }
    const double scale = 1.0 / static_cast<double>(centered.rows);
    for (std::size_t i = 0; i < centered.cols; ++i)
        for (std::size_t j = i; j < centered.cols; ++j) {
            cov.at(i, j) *= scale;
            cov.at(j, i) = cov.at(i, j);
        }
    return cov;
}

SymmetricEigen jacobi_eigensystem(const Matrix& symmetric) {
    if (symmetric.rows != symmetric.cols)
        throw std::invalid_argument("jacobi_eigensystem: matrix must be square");
    const std::size_t n = symmetric.rows;
    Matrix a = symmetric;
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) v.at(i, i) = 1.0;

    auto off_diagonal = [&]() {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) acc += a.at(i, j) * a.at(i, j);
        return acc;
    };

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && off_diagonal() > 1e-30; ++sweep) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (apq == 0.0) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a.at(i, p);
                    const double aiq = a.at(i, q);
                    a.at(i, p) = c * aip - s * aiq;
                    a.at(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a.at(p, i);
                    const double aqi = a.at(q, i);
                    a.at(p, i) = c * api - s * aqi;
                    a.at(q, i) = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v.at(i, p);
                    const double viq = v.at(i, q);
                    v.at(i, p) = c * vip - s * viq;
                    v.at(i, q) = s * vip + c * viq;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a.at(i, i) > a.at(j, j); });

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a.at(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors.at(i, k) = v.at(i, order[k]);
    }
    return out;
}

std::vector<double> power_iteration_symmetric(const Matrix& s, double rel_tol,
                                              int max_iterations) {
    if (s.rows != s.cols) throw std::invalid_argument("power_iteration: matrix must be square");
    const std::size_t n = s.rows;
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n);
    for (int it = 0; it < max_iterations; ++it) {
        next = matvec(s, v);
        const double len = norm2(next);
        if (len == 0.0) {
            // Start vector is in the null space; restart against a basis axis.
            std::fill(v.begin(), v.end(), 0.0);
            v[static_cast<std::size_t>(it) % n] = 1.0;
            continue;
        }
        for (auto& value : next) value /= len;
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) delta = std::max(delta, std::abs(next[i] - v[i]));
        // Sign flips between iterations mean a negative dominant eigenvalue;
        // compare against the flipped vector as well.
        double delta_flipped = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            delta_flipped = std::max(delta_flipped, std::abs(next[i] + v[i]));
        v = next;
        if (std::min(delta, delta_flipped) < rel_tol) break;
    }
    return v;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

void normalize(std::span<double> v) {
    const double len = norm2(v);
    if (len == 0.0) throw numeric_error("normalize: zero vector");
    for (auto& value : v) value /= len;
}

}  // namespace hcd
