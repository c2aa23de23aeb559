#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>

namespace jamwatch {

using cdouble = std::complex<double>;
using cfloat = std::complex<float>;

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 FFT. The forward transform uses exp(-j2πkm/n);
/// `inverse` flips the sign and does NOT scale by 1/n.
/// Throws ConfigError unless data.size() is a power of two.
void fft_inplace(std::span<cdouble> data, bool inverse = false);

/// Moves the zero-frequency bin to index n/2 (numpy.fft.fftshift semantics).
template <typename T>
void fftshift(std::span<T> v) {
  const std::size_t n = v.size();
  std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n - n / 2), v.end());
}

}  // namespace jamwatch
