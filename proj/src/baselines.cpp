#include "hcd/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hcd/errors.hpp"
#include "hcd/fft.hpp"
#include "hcd/rng.hpp"

namespace hcd {

namespace {

// Cross-covariance X^T Y / T of centered views.
Matrix cross_covariance(const Matrix& x, const Matrix& y) {
    Matrix out(x.cols, y.cols);
    for (std::size_t r = 0; r < x.rows; ++r)
        for (std::size_t i = 0; i < x.cols; ++i) {
            const double vi = x.at(r, i);
            if (vi == 0.0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) out.at(i, j) += vi * y.at(r, j);
        }
    const double scale = 1.0 / static_cast<double>(x.rows);
    for (auto& v : out.data) v *= scale;
    return out;
}

// (C + ridge I)^(-1/2) through the eigensystem of the ridged covariance.
Matrix inverse_sqrt(const Matrix& cov, double ridge) {
    Matrix ridged = cov;
    for (std::size_t i = 0; i < ridged.rows; ++i) ridged.at(i, i) += ridge;
    const SymmetricEigen eig = jacobi_eigensystem(ridged);
    for (double value : eig.values)
        if (!(value > 0.0))
            throw numeric_error("cca_first_pair: rank-deficient view after ridge");
    const std::size_t n = cov.rows;
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += eig.vectors.at(i, k) * eig.vectors.at(j, k) / std::sqrt(eig.values[k]);
            out.at(i, j) = acc;
        }
    return out;
}

ScalarSeries project(const Matrix& centered, std::span<const double> weights) {
    ScalarSeries out(centered.rows);
    for (std::size_t r = 0; r < centered.rows; ++r) out[r] = dot(centered.row(r), weights);
    return out;
}

void fix_sign_by_largest_entry(std::vector<double>& primary, std::vector<double>* paired) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < primary.size(); ++i)
        if (std::abs(primary[i]) > std::abs(primary[arg])) arg = i;
    if (primary[arg] < 0.0) {
        for (auto& v : primary) v = -v;
        if (paired)
            for (auto& v : *paired) v = -v;
    }
}

}  // namespace

ScalarSeries phase_shuffle(const ScalarSeries& series, std::uint64_t seed) {
    if (series.size() < 2) throw std::invalid_argument("phase_shuffle: need at least 2 samples");
    auto spectrum = fft_real(series);
    const std::size_t n = spectrum.size();
    Xoshiro256pp rng(seed);
    for (std::size_t f = 1; 2 * f < n; ++f) {
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const std::complex<double> rotation(std::cos(theta), std::sin(theta));
        spectrum[f] *= rotation;
        spectrum[n - f] *= std::conj(rotation);
    }
    return ifft_real(std::move(spectrum));
}

PcaResult pca_first_component(const Matrix& features) {
    if (features.cols < 1 || features.rows <= features.cols)
        throw std::invalid_argument("pca_first_component: need more rows than columns");
    Matrix centered = features;
    PcaResult result;
    result.model.means = center_columns(centered);

    const Matrix cov = covariance(centered);
    double trace = 0.0;
    for (std::size_t i = 0; i < cov.rows; ++i) trace += cov.at(i, i);
    if (trace == 0.0) throw numeric_error("pca_first_component: zero-variance input");

    result.model.weights = power_iteration_symmetric(cov, 1e-10);
    fix_sign_by_largest_entry(result.model.weights, nullptr);
    result.projection = project(centered, result.model.weights);
    return result;
}

ScalarSeries pca_project(const PcaModel& model, const Matrix& features) {
    if (features.cols != model.weights.size())
        throw std::invalid_argument("pca_project: feature dimension mismatch");
    ScalarSeries out(features.rows);
    for (std::size_t r = 0; r < features.rows; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < features.cols; ++c)
            acc += (features.at(r, c) - model.means[c]) * model.weights[c];
        out[r] = acc;
    }
    return out;
}

CcaResult cca_first_pair(const Matrix& x_features, const Matrix& y_features, double ridge) {
    if (x_features.rows != y_features.rows)
        throw std::invalid_argument("cca_first_pair: row count mismatch");
    if (x_features.rows <= std::max(x_features.cols, y_features.cols))
        throw std::invalid_argument("cca_first_pair: need more rows than columns");

    Matrix xc = x_features;
    Matrix yc = y_features;
    CcaResult result;
    result.model.x_means = center_columns(xc);
    result.model.y_means = center_columns(yc);

    const Matrix wx = inverse_sqrt(covariance(xc), ridge);
    const Matrix wy = inverse_sqrt(covariance(yc), ridge);
    const Matrix whitened_cross = matmul(matmul(wx, cross_covariance(xc, yc)), wy);

    // Top right-singular vector of the whitened cross-covariance via power
    // iteration on M^T M; the left vector follows as M v / |M v|, which keeps
    // the pair's correlation non-negative.
    Matrix mtm(whitened_cross.cols, whitened_cross.cols);
    for (std::size_t i = 0; i < whitened_cross.cols; ++i)
        for (std::size_t j = 0; j < whitened_cross.cols; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < whitened_cross.rows; ++k)
                acc += whitened_cross.at(k, i) * whitened_cross.at(k, j);
            mtm.at(i, j) = acc;
        }
    std::vector<double> v_white = power_iteration_symmetric(mtm, 1e-12);
    std::vector<double> u_white = matvec(whitened_cross, v_white);
    if (norm2(u_white) == 0.0)
        throw numeric_error("cca_first_pair: views are uncorrelated");
    normalize(u_white);

    result.model.u = matvec(wx, u_white);
    result.model.v = matvec(wy, v_white);
    normalize(result.model.u);
    normalize(result.model.v);
    fix_sign_by_largest_entry(result.model.u, &result.model.v);

    const ScalarSeries px = project(xc, result.model.u);
    const ScalarSeries py = project(yc, result.model.v);
    {
        // Plain Pearson on the fitted projections.
        const double n = static_cast<double>(px.size());
        double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
        for (std::size_t i = 0; i < px.size(); ++i) {
            sx += px[i]; sy += py[i];
            sxx += px[i] * px[i]; syy += py[i] * py[i]; sxy += px[i] * py[i];
        }
        const double cov_xy = sxy / n - (sx / n) * (sy / n);
        const double var_x = sxx / n - (sx / n) * (sx / n);
        const double var_y = syy / n - (sy / n) * (sy / n);
        if (var_x <= 0.0 || var_y <= 0.0)
            throw numeric_error("cca_first_pair: degenerate projection");
        result.model.canonical_correlation = cov_xy / std::sqrt(var_x * var_y);
    }

    const ScalarSeries zx = standardize(px);
    const ScalarSeries zy = standardize(py);
    result.estimate.resize(zx.size());
    for (std::size_t i = 0; i < zx.size(); ++i) result.estimate[i] = 0.5 * (zx[i] + zy[i]);
    return result;
}

ScalarSeries cca_estimate(const CcaModel& model, const Matrix& x_features,
                          const Matrix& y_features) {
    if (x_features.rows != y_features.rows)
        throw std::invalid_argument("cca_estimate: row count mismatch");
    ScalarSeries px(x_features.rows), py(y_features.rows);
    for (std::size_t r = 0; r < x_features.rows; ++r) {
        double ax = 0.0, ay = 0.0;
        for (std::size_t c = 0; c < x_features.cols; ++c)
            ax += (x_features.at(r, c) - model.x_means[c]) * model.u[c];
        for (std::size_t c = 0; c < y_features.cols; ++c)
            ay += (y_features.at(r, c) - model.y_means[c]) * model.v[c];
        px[r] = ax;
        py[r] = ay;
    }
    const ScalarSeries zx = standardize(px);
    const ScalarSeries zy = standardize(py);
    ScalarSeries out(zx.size());
    for (std::size_t i = 0; i < zx.size(); ++i) out[i] = 0.5 * (zx[i] + zy[i]);
    return out;
}

Matrix embedding_features(const EmbeddedSeries& e) {
    Matrix out(e.rows(), static_cast<std::size_t>(e.m));
    out.data = e.data;
    return out;
}

Matrix concat_features(const EmbeddedSeries& x, const EmbeddedSeries& y) {
    if (x.rows() != y.rows())
        throw std::invalid_argument("concat_features: row count mismatch");
    const std::size_t mx = static_cast<std::size_t>(x.m);
    const std::size_t my = static_cast<std::size_t>(y.m);
    Matrix out(x.rows(), mx + my);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto xr = x.row(r);
        const auto yr = y.row(r);
        std::copy(xr.begin(), xr.end(), out.data.begin() + static_cast<std::ptrdiff_t>(r * (mx + my)));
        std::copy(yr.begin(), yr.end(),
                  out.data.begin() + static_cast<std::ptrdiff_t>(r * (mx + my) + mx));
    }
    return out;
}

}  // namespace hcd
