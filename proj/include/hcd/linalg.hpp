#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hcd {

// Dense row-major matrix; just enough linear algebra for the baselines.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<const double> row(std::size_t r) const {
        return {data.data() + r * cols, cols};
    }
};

Matrix matmul(const Matrix& a, const Matrix& b);
std::vector<double> matvec(const Matrix& a, std::span<const double> v);

// Subtracts each column's mean in place; returns the means.
std::vector<double> center_columns(Matrix& m);

// Population covariance (A^T A / rows) of already-centered data.
Matrix covariance(const Matrix& centered);

struct SymmetricEigen {
    std::vector<double> values;  // descending
    Matrix vectors;              // eigenvectors in columns, matching values
};

// Cyclic Jacobi rotations for a symmetric matrix. Intended for the small
// view covariances here (a handful of columns), not large systems.
SymmetricEigen jacobi_eigensystem(const Matrix& symmetric);

// Leading eigenvector of a symmetric PSD matrix by power iteration with a
// deterministic start; converges when the direction moves less than rel_tol.
std::vector<double> power_iteration_symmetric(const Matrix& s, double rel_tol = 1e-10,
                                              int max_iterations = 100000);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
void normalize(std::span<double> v);

}  // namespace hcd
