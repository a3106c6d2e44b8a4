#include "hcd/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "hcd/errors.hpp"

namespace hcd {

namespace {

std::optional<double> pearson_span(const double* a, const double* b, std::size_t n) {
    double sa = 0, sb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sa += a[i];
        sb += b[i];
    }
    const double ma = sa / static_cast<double>(n);
    const double mb = sb / static_cast<double>(n);
    double saa = 0, sbb = 0, sab = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0.0 || sbb == 0.0) return std::nullopt;
    return sab / std::sqrt(saa * sbb);
}

// Type-7 quantile: linear interpolation on the sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const double h = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

double pearson(const ScalarSeries& a, const ScalarSeries& b) {
    if (a.size() != b.size()) throw std::invalid_argument("pearson: length mismatch");
    if (a.size() < 2) throw std::invalid_argument("pearson: need at least 2 samples");
    const auto rho = pearson_span(a.data(), b.data(), a.size());
    if (!rho) throw numeric_error("pearson: constant input");
    return *rho;
}

CrossCorrelation cross_correlation(const ScalarSeries& a, const ScalarSeries& b,
                                   int max_lag) {
    if (a.size() != b.size()) throw std::invalid_argument("cross_correlation: length mismatch");
    const std::size_t n = a.size();
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= n / 2)
        throw std::invalid_argument("cross_correlation: max_lag must be < length/2");

    CrossCorrelation result;
    bool have_best = false;
    for (int lag = -max_lag; lag <= max_lag; ++lag) {
        const std::size_t shift = static_cast<std::size_t>(lag < 0 ? -lag : lag);
        const std::size_t overlap = n - shift;
        // lag >= 0 pairs a[t] with b[t + lag]; lag < 0 pairs a[t + |lag|] with b[t].
        const double* pa = lag >= 0 ? a.data() : a.data() + shift;
        const double* pb = lag >= 0 ? b.data() + shift : b.data();
        const auto rho = pearson_span(pa, pb, overlap);
        if (!rho) continue;  // constant overlap segment
        result.rho_by_lag.emplace_back(lag, *rho);
        if (!have_best || std::abs(*rho) > std::abs(result.best_rho)) {
            have_best = true;
            result.best_lag = lag;
            result.best_rho = *rho;
        }
    }
    if (!have_best) throw numeric_error("cross_correlation: all overlaps constant");
    return result;
}

BatchSummary batch_summary(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("batch_summary: empty input");
    BatchSummary summary;
    summary.n = values.size();

    std::sort(values.begin(), values.end());
    summary.median = quantile_sorted(values, 0.5);
    summary.q1 = quantile_sorted(values, 0.25);
    summary.q3 = quantile_sorted(values, 0.75);

    std::vector<double> deviations(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        deviations[i] = std::abs(values[i] - summary.median);
    std::sort(deviations.begin(), deviations.end());
    summary.mad = quantile_sorted(deviations, 0.5);

    const double iqr = summary.q3 - summary.q1;
    const double lo = summary.q1 - 1.5 * iqr;
    const double hi = summary.q3 + 1.5 * iqr;
    for (double v : values)
        if (v < lo || v > hi) summary.outliers.push_back(v);
    return summary;
}

EvaluationReport evaluate_series(const ScalarSeries& truth, const ScalarSeries& estimate,
                                 int max_lag) {
    EvaluationReport report;
    report.n = truth.size();
    report.rho = pearson(truth, estimate);
    report.abs_rho = std::abs(report.rho);
    const auto xc = cross_correlation(truth, estimate, max_lag);
    report.best_lag = xc.best_lag;
    report.best_lag_rho = xc.best_rho;
    return report;
}

}  // namespace hcd
