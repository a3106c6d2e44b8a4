#include "hcd/series.hpp"

#include <cmath>
#include <stdexcept>

#include "hcd/errors.hpp"

namespace hcd {

double mean(const ScalarSeries& s) {
    if (s.empty()) throw std::invalid_argument("mean: empty series");
    double sum = 0.0;
    for (double v : s) sum += v;
    return sum / static_cast<double>(s.size());
}

double population_sd(const ScalarSeries& s) {
    const double mu = mean(s);
    double acc = 0.0;
    for (double v : s) acc += (v - mu) * (v - mu);
    return std::sqrt(acc / static_cast<double>(s.size()));
}

ScalarSeries standardize(const ScalarSeries& s) {
    if (s.size() < 2) throw std::invalid_argument("standardize: need at least 2 samples");
    const double mu = mean(s);
    const double sd = population_sd(s);
    if (sd == 0.0) throw numeric_error("standardize: zero variance");
    ScalarSeries out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = (s[i] - mu) / sd;
    return out;
}

ScalarSeries slice(const ScalarSeries& s, std::size_t offset, std::size_t count) {
    if (offset + count > s.size()) throw std::invalid_argument("slice: out of range");
    return ScalarSeries(s.begin() + static_cast<std::ptrdiff_t>(offset),
                        s.begin() + static_cast<std::ptrdiff_t>(offset + count));
}

}  // namespace hcd
