#pragma once

#include <cstdint>

#include "hcd/embedding.hpp"
#include "hcd/linalg.hpp"
#include "hcd/series.hpp"

namespace hcd {

// Fourier phase randomization: every component pair (f, -f) is rotated by a
// random phase while DC and (for even lengths) the Nyquist bin stay fixed, so
// the output is real with the input's magnitude spectrum and autocorrelation.
// Phase draws are uniform in [0, 2pi), consumed in ascending frequency order.
ScalarSeries phase_shuffle(const ScalarSeries& series, std::uint64_t seed);

struct PcaModel {
    std::vector<double> weights;  // unit norm; largest-magnitude entry positive
    std::vector<double> means;    // column means of the fitted data
};

struct PcaResult {
    PcaModel model;
    ScalarSeries projection;  // centered fitted data along the first component
};

// First principal component by power iteration on the column covariance
// (relative tolerance 1e-10, deterministic start). Throws hcd::numeric_error
// on zero-variance input.
PcaResult pca_first_component(const Matrix& features);
ScalarSeries pca_project(const PcaModel& model, const Matrix& features);

struct CcaModel {
    std::vector<double> u, v;  // unit-norm canonical weight vectors
    std::vector<double> x_means, y_means;
    double canonical_correlation = 0.0;  // on the fitted data
};

struct CcaResult {
    CcaModel model;
    ScalarSeries estimate;  // mean of the two standardized projections
};

// First canonical pair: whiten each view through its covariance (ridge added
// for stability), then take the top singular pair of the whitened
// cross-covariance by power iteration. The driver estimate is the mean of
// the two standardized canonical projections.
CcaResult cca_first_pair(const Matrix& x_features, const Matrix& y_features,
                         double ridge = 1e-8);
ScalarSeries cca_estimate(const CcaModel& model, const Matrix& x_features,
                          const Matrix& y_features);

// T' x m feature matrix from an embedding.
Matrix embedding_features(const EmbeddedSeries& e);
// Concatenated [X | Y] features, T' x 2m.
Matrix concat_features(const EmbeddedSeries& x, const EmbeddedSeries& y);

}  // namespace hcd
