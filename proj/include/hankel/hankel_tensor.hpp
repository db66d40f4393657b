#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "hankel/errors.hpp"
#include "hankel/fft.hpp"

namespace hankel {

/// Symmetric Hankel tensor of order m and dimension n, stored entirely by
/// its generating vector h of length m(n-1)+1:
///
///   T_{i1,...,im} = h_{i1+...+im},   0 <= i_k <= n-1.
///
/// Entries are never materialized as a dense array outside of tests.
class HankelTensor {
 public:
  HankelTensor(Eigen::VectorXd generator, int order, int dim)
      : h_(std::move(generator)), m_(order), n_(dim) {
    if (m_ < 1 || n_ < 1) throw dimension_error("HankelTensor: order and dim must be positive");
    const Eigen::Index expected = static_cast<Eigen::Index>(m_) * (n_ - 1) + 1;
    if (h_.size() != expected)
      throw dimension_error("HankelTensor: generator has length " + std::to_string(h_.size()) +
                            ", expected m(n-1)+1 = " + std::to_string(expected));
  }

  int order() const noexcept { return m_; }
  int dim() const noexcept { return n_; }
  const Eigen::VectorXd& generator() const noexcept { return h_; }

  /// Entry accessor by full index tuple; intended for oracles and tests.
  double entry(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != m_)
      throw dimension_error("HankelTensor::entry: expected " + std::to_string(m_) + " indices");
    Eigen::Index sum = 0;
    for (int i : idx) {
      if (i < 0 || i >= n_) throw dimension_error("HankelTensor::entry: index out of range");
      sum += i;
    }
    return h_[sum];
  }

 private:
  Eigen::VectorXd h_;
  int m_;
  int n_;
};

/// Symmetric Hankel matrix of size s with generator g of length 2s-1:
/// H_ij = g_{i+j}.
class HankelMatrix {
 public:
  explicit HankelMatrix(Eigen::VectorXd generator) : g_(std::move(generator)) {
    if (g_.size() < 1 || g_.size() % 2 == 0)
      throw dimension_error("HankelMatrix: generator length must be odd (2s-1)");
    s_ = static_cast<int>((g_.size() + 1) / 2);
  }

  int size() const noexcept { return s_; }
  const Eigen::VectorXd& generator() const noexcept { return g_; }

  double operator()(int i, int j) const { return g_[i + j]; }

  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd a(s_, s_);
    for (int i = 0; i < s_; ++i)
      for (int j = 0; j < s_; ++j) a(i, j) = g_[i + j];
    return a;
  }

 private:
  Eigen::VectorXd g_;
  int s_;
};

/// Anti-circulant embedding of a Hankel tensor.
///
/// The order-m anti-circulant tensor of dimension N = m(n-1)+1 with the
/// same (now periodic) generator has the source tensor as its leading
/// n x ... x n principal subtensor; the Fourier matrix diagonalizes it.
/// The stored spectral diagonal is the inverse DFT of the generator and
/// drives the fast product path.
class AntiCirculantEmbedding {
 public:
  explicit AntiCirculantEmbedding(const HankelTensor& t) {
    const Eigen::VectorXd& h = t.generator();
    n_ = static_cast<int>(h.size());
    std::vector<fft::cd> buf(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) buf[static_cast<std::size_t>(j)] = h[j];
    buf = fft::dft(std::move(buf), +1);
    spectral_.resize(n_);
    const double inv_n = 1.0 / static_cast<double>(n_);
    for (int j = 0; j < n_; ++j) spectral_[j] = buf[static_cast<std::size_t>(j)] * inv_n;
  }

  int embedding_dim() const noexcept { return n_; }
  const Eigen::VectorXcd& spectral() const noexcept { return spectral_; }

 private:
  Eigen::VectorXcd spectral_;
  int n_;
};

/// Builds the order-m, dimension-n Hankel tensor generated by h.
inline HankelTensor make_hankel(const Eigen::VectorXd& h, int m, int n) {
  return HankelTensor(h, m, n);
}

/// Hankel tensor with generator h_j = 1/(j+1); every entry is the
/// reciprocal of its index sum plus one.
inline HankelTensor hilbert_tensor(int m, int n) {
  if (m < 1 || n < 1) throw dimension_error("hilbert_tensor: order and dim must be positive");
  const Eigen::Index len = static_cast<Eigen::Index>(m) * (n - 1) + 1;
  Eigen::VectorXd h(len);
  for (Eigen::Index j = 0; j < len; ++j) h[j] = 1.0 / static_cast<double>(j + 1);
  return HankelTensor(std::move(h), m, n);
}

/// The square Hankel matrix sharing the tensor's generating vector.
/// Exists only when m(n-1) is even; its size is s = m(n-1)/2 + 1.
inline HankelMatrix associated_matrix(const HankelTensor& t) {
  const long total = static_cast<long>(t.order()) * (t.dim() - 1);
  if (total % 2 != 0)
    throw structure_error("no associated Hankel matrix: m(n-1) is odd");
  return HankelMatrix(t.generator());
}

/// The order-qm Hankel tensor with the identical generator.  Requires q to
/// divide n-1; the lifted dimension is k = (n-1)/q + 1.
inline HankelTensor higher_order_associate(const HankelTensor& t, int q) {
  if (q < 1) throw dimension_error("higher_order_associate: multiplier must be at least 1");
  if ((t.dim() - 1) % q != 0)
    throw dimension_error("higher_order_associate: multiplier must divide dim-1");
  const int k = (t.dim() - 1) / q + 1;
  return HankelTensor(t.generator(), t.order() * q, k);
}

}  // namespace hankel
