#pragma once

#include <complex>
#include <vector>

#include "hcd/series.hpp"

namespace hcd {

// In-place discrete Fourier transform for arbitrary lengths: iterative
// radix-2 for powers of two, Bluestein's chirp-z algorithm otherwise.
// inverse = true applies the conjugate transform and scales by 1/N.
void fft(std::vector<std::complex<double>>& values, bool inverse);

std::vector<std::complex<double>> fft_real(const ScalarSeries& series);
ScalarSeries ifft_real(std::vector<std::complex<double>> spectrum);

}  // namespace hcd
