#pragma once

#include <cstddef>
#include <vector>

namespace hcd {

// A finite sequence of real samples on a uniform unit time step.
using ScalarSeries = std::vector<double>;

double mean(const ScalarSeries& s);

// Population (1/N) standard deviation.
double population_sd(const ScalarSeries& s);

// Shifts to mean zero and scales to population SD one.
// Throws hcd::numeric_error on constant input.
ScalarSeries standardize(const ScalarSeries& s);

ScalarSeries slice(const ScalarSeries& s, std::size_t offset, std::size_t count);

}  // namespace hcd
