#include "jamwatch/fft.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "jamwatch/error.hpp"

namespace jamwatch {

void fft_inplace(std::span<cdouble> data, bool inverse) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n))
    throw ConfigError("fft length " + std::to_string(n) + " is not a power of two");
  if (n == 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  // Twiddles are evaluated directly rather than by recurrence so every
  // factor carries full double precision.
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<cdouble> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k)
    twiddle[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                     static_cast<double>(n));

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cdouble t = twiddle[k * step] * data[start + k + half];
        const cdouble u = data[start + k];
        data[start + k] = u + t;
        data[start + k + half] = u - t;
      }
    }
  }
}

}  // namespace jamwatch
