#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstddef>

#include "hankel/errors.hpp"
#include "hankel/fft.hpp"

namespace hankel {

namespace detail {

using fft::detail::next_pow2;

/// Direct and FFT paths switch at this combined output length.  Below it
/// the quadratic loop is both faster and exact.
inline constexpr std::size_t kConvolveCrossover = 64;

inline Eigen::VectorXd convolve_direct(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(u.size() + v.size() - 1);
  for (Eigen::Index i = 0; i < u.size(); ++i)
    for (Eigen::Index j = 0; j < v.size(); ++j) w[i + j] += u[i] * v[j];
  return w;
}

inline Eigen::VectorXd convolve_fft(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const std::size_t out = static_cast<std::size_t>(u.size() + v.size() - 1);
  const std::size_t n = next_pow2(out);
  std::vector<fft::cd> a(n, fft::cd{0.0, 0.0});
  std::vector<fft::cd> b(n, fft::cd{0.0, 0.0});
  for (Eigen::Index i = 0; i < u.size(); ++i) a[static_cast<std::size_t>(i)] = u[i];
  for (Eigen::Index i = 0; i < v.size(); ++i) b[static_cast<std::size_t>(i)] = v[i];
  fft::detail::radix2(a, -1);
  fft::detail::radix2(b, -1);
  for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
  fft::detail::radix2(a, +1);

  Eigen::VectorXd w(static_cast<Eigen::Index>(out));
  const double inv_n = 1.0 / static_cast<double>(n);
  double max_re = 0.0, max_im = 0.0;
  for (std::size_t k = 0; k < out; ++k) {
    const fft::cd value = a[k] * inv_n;
    w[static_cast<Eigen::Index>(k)] = value.real();
    max_re = std::max(max_re, std::abs(value.real()));
    max_im = std::max(max_im, std::abs(value.imag()));
  }
  if (max_im > 1e-10 * (1.0 + max_re))
    throw numeric_error("convolution: complex workspace leaked a non-real residue", max_im);
  return w;
}

}  // namespace detail

/// Full linear convolution w_k = sum_j u_j v_{k-j}, length |u|+|v|-1.
/// Small products run the direct quadratic loop; larger ones a zero-padded
/// FFT.  The two paths agree to 1e-12 relative.
inline Eigen::VectorXd convolve(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() == 0 || v.size() == 0) throw dimension_error("convolve: inputs must be nonempty");
  const std::size_t out = static_cast<std::size_t>(u.size() + v.size() - 1);
  if (out < detail::kConvolveCrossover) return detail::convolve_direct(u, v);
  return detail::convolve_fft(u, v);
}

/// q-fold self-convolution x^{*q} = x * x * ... * x (q factors), length
/// q(n-1)+1.  conv_power(x, 1) returns x unchanged.
inline Eigen::VectorXd conv_power(const Eigen::VectorXd& x, int q) {
  if (x.size() == 0) throw dimension_error("conv_power: input must be nonempty");
  if (q < 1) throw dimension_error("conv_power: exponent must be at least 1");
  Eigen::VectorXd w = x;
  for (int i = 1; i < q; ++i) w = convolve(w, x);
  return w;
}

}  // namespace hankel
