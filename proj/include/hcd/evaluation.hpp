#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hcd/series.hpp"

namespace hcd {

// Pearson correlation coefficient. Throws on constant input.
double pearson(const ScalarSeries& a, const ScalarSeries& b);

struct CrossCorrelation {
    std::vector<std::pair<int, double>> rho_by_lag;  // ascending lag
    int best_lag = 0;
    double best_rho = 0.0;  // value at the lag maximizing |rho|
};

// Pearson correlation of the overlapping segments of a and b at every lag in
// [-max_lag, max_lag]. Positive lag means b trails a by that many steps.
// Lags whose overlap is constant are skipped; the earliest lag wins ties in
// |rho|.
CrossCorrelation cross_correlation(const ScalarSeries& a, const ScalarSeries& b,
                                   int max_lag);

struct BatchSummary {
    std::size_t n = 0;
    double median = 0.0;
    double q1 = 0.0;  // linearly-interpolated quartiles
    double q3 = 0.0;
    double mad = 0.0;  // median absolute deviation
    std::vector<double> outliers;  // outside 1.5 IQR of [q1, q3]
};

BatchSummary batch_summary(std::vector<double> values);

struct EvaluationReport {
    double rho = 0.0;
    double abs_rho = 0.0;
    int best_lag = 0;
    double best_lag_rho = 0.0;
    std::size_t n = 0;
};

// Correlation of an estimate against the ground truth plus the lag scan.
EvaluationReport evaluate_series(const ScalarSeries& truth, const ScalarSeries& estimate,
                                 int max_lag);

}  // namespace hcd
