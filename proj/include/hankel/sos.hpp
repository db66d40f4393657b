#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "hankel/convolution.hpp"
#include "hankel/errors.hpp"
#include "hankel/hankel_tensor.hpp"
#include "hankel/linalg.hpp"
#include "hankel/products.hpp"

namespace hankel {

/// Sum-of-squares decomposition of an even-order strong Hankel tensor.
///
/// Each term vector generates the q-th-order, n-dimensional Hankel
/// coefficient tensor of one squared polynomial, so that
///
///   sum_k (terms[k] . y^{*q})^2  =  T y^{2q}   for all y.
///
/// The term count equals the factorization rank of the associated Hankel
/// matrix; terms are ordered by descending factor weight.
struct SOSDecomposition {
  int q = 0;
  int dim = 0;
  std::vector<Eigen::VectorXd> terms;
};

/// Value of an SOS form at y along with the individual linear term values
/// p_k = terms[k] . y^{*q} (the value is the sum of their squares).
struct SOSEval {
  double value = 0.0;
  Eigen::VectorXd term_values;
};

/// Constructive SOS decomposition: factor the associated Hankel matrix on
/// the PSD path and scale its orthonormal columns, term_k = sqrt(d_k) u_k.
/// Terms below the rank tolerance are dropped entirely.  Rejects odd
/// orders and tensors whose associated matrix is not PSD.
inline SOSDecomposition sos_decompose(const HankelTensor& t, double tol = 1e-10) {
  if (t.order() % 2 != 0)
    throw structure_error("sos_decompose: order must be even");

  TakagiFactorization f;
  try {
    f = takagi_psd(associated_matrix(t), tol);
  } catch (const not_psd_error& e) {
    throw not_psd_error("not a strong Hankel tensor: associated Hankel matrix has eigenvalue " +
                            std::to_string(e.witness()) + " below tolerance",
                        e.witness());
  }

  SOSDecomposition dec;
  dec.q = t.order() / 2;
  dec.dim = t.dim();
  dec.terms.reserve(static_cast<std::size_t>(f.rank));
  for (int k = 0; k < f.rank; ++k)
    dec.terms.push_back(std::sqrt(f.d[k]) * f.u.col(k));
  return dec;
}

/// Evaluates the SOS form at y.  Always nonnegative; equals poly_eval of
/// the source tensor to 1e-10 relative.
inline SOSEval sos_eval(const SOSDecomposition& dec, const Eigen::VectorXd& y) {
  if (y.size() != dec.dim)
    throw dimension_error("sos_eval: vector length must equal dim");

  SOSEval out;
  out.term_values.resize(static_cast<Eigen::Index>(dec.terms.size()));
  if (dec.terms.empty()) return out;

  const Eigen::VectorXd w = conv_power(y, dec.q);
  for (std::size_t k = 0; k < dec.terms.size(); ++k) {
    const double p = dec.terms[k].dot(w);
    out.term_values[static_cast<Eigen::Index>(k)] = p;
    out.value += p * p;
  }
  return out;
}

}  // namespace hankel
