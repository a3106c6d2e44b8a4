#include "hcd/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hcd {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative Cooley-Tukey, n a power of two.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> w_len(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= w_len;
            }
        }
    }
    if (inverse)
        for (auto& value : a) value /= static_cast<double>(n);
}

// Bluestein's algorithm: express the length-n DFT as a convolution and
// evaluate it with a power-of-two FFT of size >= 2n - 1.
void fft_bluestein(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    std::size_t conv_size = 1;
    while (conv_size < 2 * n - 1) conv_size <<= 1;

    // Chirp factors exp(+-i pi k^2 / n); k^2 mod 2n keeps the angle argument
    // small and exact for large k.
    std::vector<std::complex<double>> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t k2 = (k * k) % (2 * n);
        const double angle =
            (inverse ? 1.0 : -1.0) * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
        chirp[k] = {std::cos(angle), std::sin(angle)};
    }

    std::vector<std::complex<double>> u(conv_size, {0.0, 0.0});
    std::vector<std::complex<double>> v(conv_size, {0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) u[k] = a[k] * chirp[k];
    for (std::size_t k = 0; k < n; ++k) {
        v[k] = std::conj(chirp[k]);
        if (k != 0) v[conv_size - k] = std::conj(chirp[k]);
    }

    fft_radix2(u, false);
    fft_radix2(v, false);
    for (std::size_t k = 0; k < conv_size; ++k) u[k] *= v[k];
    fft_radix2(u, true);

    for (std::size_t k = 0; k < n; ++k) a[k] = u[k] * chirp[k];
    if (inverse)
        for (auto& value : a) value /= static_cast<double>(n);
}

}  // namespace

void fft(std::vector<std::complex<double>>& values, bool inverse) {
    const std::size_t n = values.size();
    if (n == 0) throw std::invalid_argument("fft: empty input");
    if (n == 1) return;
    if (is_power_of_two(n))
        fft_radix2(values, inverse);
    else
        fft_bluestein(values, inverse);
}

std::vector<std::complex<double>> fft_real(const ScalarSeries& series) {
    std::vector<std::complex<double>> spectrum(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) spectrum[i] = {series[i], 0.0};
    fft(spectrum, false);
    return spectrum;
}

ScalarSeries ifft_real(std::vector<std::complex<double>> spectrum) {
    fft(spectrum, true);
    ScalarSeries out(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i) out[i] = spectrum[i].real();
    return out;
}

}  // namespace hcd
