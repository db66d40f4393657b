#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <vector>

#include "hankel/convolution.hpp"
#include "hankel/errors.hpp"
#include "hankel/fft.hpp"
#include "hankel/hankel_tensor.hpp"

namespace hankel {

namespace detail {

/// Correlation c_i = sum_j h_{i+j} w_j for i = 0..out_len-1, routed through
/// convolve so large inputs take the FFT path.
inline Eigen::VectorXd correlate(const Eigen::VectorXd& h, const Eigen::VectorXd& w,
                                 Eigen::Index out_len) {
  const Eigen::VectorXd full = convolve(h, w.reverse());
  return full.segment(w.size() - 1, out_len);
}

/// Spectral product core.  The mode vectors may have unequal lengths (the
/// rectangular case) provided sum(len_t - 1) + 1 equals the generator
/// length; the square public entry point enforces equal lengths before
/// delegating here.
inline double tvp_fft_rect(const Eigen::VectorXd& h, const std::vector<Eigen::VectorXd>& xs) {
  const std::size_t n = static_cast<std::size_t>(h.size());
  Eigen::Index padded = 1;
  for (const auto& x : xs) {
    if (x.size() < 1) throw dimension_error("tvp_fft: mode vectors must be nonempty");
    padded += x.size() - 1;
  }
  if (padded != h.size())
    throw dimension_error("tvp_fft: mode lengths are incompatible with the generator");

  std::vector<fft::cd> buf(n);
  for (std::size_t j = 0; j < n; ++j) buf[j] = h[static_cast<Eigen::Index>(j)];
  buf = fft::dft(std::move(buf), +1);
  std::vector<fft::cd> acc(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) acc[j] = buf[j] * inv_n;

  for (const auto& x : xs) {
    std::vector<fft::cd> mode(n, fft::cd{0.0, 0.0});
    for (Eigen::Index i = 0; i < x.size(); ++i) mode[static_cast<std::size_t>(i)] = x[i];
    mode = fft::dft(std::move(mode), -1);
    for (std::size_t j = 0; j < n; ++j) acc[j] *= mode[j];
  }

  fft::cd total{0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) total += acc[j];
  if (std::abs(total.imag()) > 1e-10 * (1.0 + std::abs(total.real())))
    throw numeric_error("tvp_fft: complex workspace leaked a non-real residue",
                        std::abs(total.imag()));
  return total.real();
}

}  // namespace detail

/// Full O(n^m) summation over all entries.  Reference implementation; the
/// fast paths are tested against it.
inline double tvp_naive(const HankelTensor& t, const std::vector<Eigen::VectorXd>& xs) {
  const int m = t.order();
  const int n = t.dim();
  if (static_cast<int>(xs.size()) != m)
    throw dimension_error("tvp_naive: expected one vector per mode");
  for (const auto& x : xs)
    if (x.size() != n) throw dimension_error("tvp_naive: mode vector length must equal dim");

  const Eigen::VectorXd& h = t.generator();
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  double total = 0.0;
  while (true) {
    int sum = 0;
    double prod = 1.0;
    for (int k = 0; k < m; ++k) {
      sum += idx[static_cast<std::size_t>(k)];
      prod *= xs[static_cast<std::size_t>(k)][idx[static_cast<std::size_t>(k)]];
    }
    total += h[sum] * prod;

    int pos = m - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - 1) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
  }
  return total;
}

/// Spectral-diagonal contraction of the anti-circulant embedding:
/// the inverse DFT of the generator dotted against the componentwise
/// product of the zero-padded mode transforms.  Agrees with tvp_naive to
/// 1e-10 relative.
inline double tvp_fft(const HankelTensor& t, const std::vector<Eigen::VectorXd>& xs) {
  if (static_cast<int>(xs.size()) != t.order())
    throw dimension_error("tvp_fft: expected one vector per mode");
  for (const auto& x : xs)
    if (x.size() != t.dim()) throw dimension_error("tvp_fft: mode vector length must equal dim");
  return detail::tvp_fft_rect(t.generator(), xs);
}

/// Symmetric evaluation T x^m = h . x^{*m} through convolution powers.
inline double poly_eval(const HankelTensor& t, const Eigen::VectorXd& x) {
  if (x.size() != t.dim()) throw dimension_error("poly_eval: vector length must equal dim");
  return t.generator().dot(conv_power(x, t.order()));
}

/// Gradient-direction vector (T x^{m-1})_i = sum_j h_{i+j} (x^{*(m-1)})_j.
/// Satisfies the Euler identity x . grad_eval(t, x) = poly_eval(t, x); the
/// analytic gradient of poly_eval is m times this vector.
inline Eigen::VectorXd grad_eval(const HankelTensor& t, const Eigen::VectorXd& x) {
  if (t.order() < 2) throw dimension_error("grad_eval: order must be at least 2");
  if (x.size() != t.dim()) throw dimension_error("grad_eval: vector length must equal dim");
  const Eigen::VectorXd w = conv_power(x, t.order() - 1);
  return detail::correlate(t.generator(), w, t.dim());
}

/// Matrix slice T x^{m-2}, again Hankel: its generator is the correlation
/// of h against x^{*(m-2)}.  Used by Newton-type eigen iterations.
inline HankelMatrix hess_eval(const HankelTensor& t, const Eigen::VectorXd& x) {
  if (t.order() < 2) throw dimension_error("hess_eval: order must be at least 2");
  if (x.size() != t.dim()) throw dimension_error("hess_eval: vector length must equal dim");
  Eigen::VectorXd w;
  if (t.order() == 2) {
    w = Eigen::VectorXd::Ones(1);
  } else {
    w = conv_power(x, t.order() - 2);
  }
  return HankelMatrix(detail::correlate(t.generator(), w, 2 * t.dim() - 1));
}

}  // namespace hankel
