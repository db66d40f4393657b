#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace hankel::fft {

using cd = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// In-place iterative radix-2 transform.  Twiddles are read from a table
/// filled with one std::polar call per entry, so stage recurrences do not
/// accumulate rounding error.
inline void radix2(std::vector<cd>& a, int sign) {
  const std::size_t n = a.size();
  assert(is_pow2(n));
  if (n < 2) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  std::vector<cd> tw(n / 2);
  const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t j = 0; j < n / 2; ++j) tw[j] = std::polar(1.0, base * static_cast<double>(j));

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cd w = tw[j * stride];
        const cd u = a[i + j];
        const cd v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

/// Arbitrary-length transform via the chirp-z (Bluestein) reduction to a
/// power-of-two circular convolution.  The quadratic phase index is taken
/// mod 2N in 64-bit arithmetic before scaling, which keeps the angle small
/// and exact for any realistic N.
inline void bluestein(std::vector<cd>& a, int sign) {
  const std::size_t n = a.size();
  const std::size_t m = next_pow2(2 * n - 1);

  std::vector<cd> chirp(n);
  for (std::size_t j = 0; j < n; ++j) {
    const long long idx = (static_cast<long long>(j) * static_cast<long long>(j)) %
                          (2 * static_cast<long long>(n));
    chirp[j] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(idx) /
                                   static_cast<double>(n));
  }

  std::vector<cd> u(m, cd{0.0, 0.0});
  std::vector<cd> v(m, cd{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) u[j] = a[j] * chirp[j];
  v[0] = std::conj(chirp[0]);
  for (std::size_t j = 1; j < n; ++j) v[j] = v[m - j] = std::conj(chirp[j]);

  radix2(u, -1);
  radix2(v, -1);
  for (std::size_t j = 0; j < m; ++j) u[j] *= v[j];
  radix2(u, +1);

  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = chirp[k] * (u[k] * inv_m);
}

}  // namespace detail

/// Unnormalized discrete Fourier transform of arbitrary length.
///
///   sign = -1:  X_k = sum_j v_j exp(-2 pi i jk / N)
///   sign = +1:  X_k = sum_j v_j exp(+2 pi i jk / N)
///
/// dft(dft(v, -1), +1) = N * v.  Power-of-two lengths run on the radix-2
/// path, everything else through Bluestein's algorithm.
inline std::vector<cd> dft(std::vector<cd> v, int sign) {
  assert(sign == 1 || sign == -1);
  if (v.size() < 2) return v;
  if (detail::is_pow2(v.size())) {
    detail::radix2(v, sign);
  } else {
    detail::bluestein(v, sign);
  }
  return v;
}

}  // namespace hankel::fft
