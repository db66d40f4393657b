#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "hankel/errors.hpp"
#include "hankel/hankel_tensor.hpp"
#include "hankel/linalg.hpp"

namespace hankel {

/// Augmented Vandermonde decomposition of a strong Hankel tensor:
///
///   T = sum_k alpha_k v(xi_k)^{om} + alpha_inf e_n^{om},
///
/// where v(xi) = (1, xi, ..., xi^{n-1}), e_n is the last basis vector and
/// {om} is the m-fold symmetric outer power.  Finite poles are pairwise
/// distinct and reported in descending order, every finite coefficient is
/// positive, and alpha_inf = 0 means the corner term is absent.  The total
/// term count equals the rank of the associated Hankel matrix.
struct VandermondeDecomposition {
  Eigen::VectorXd poles;      ///< Finite poles, descending.
  Eigen::VectorXd alphas;     ///< Positive coefficient per finite pole.
  double alpha_inf = 0.0;     ///< Corner coefficient, 0 when absent.
  int order = 0;              ///< Tensor order m.
  int dim = 0;                ///< Tensor dimension n.
  double yw_condition = 1.0;  ///< Condition estimate of the solved leading system.

  /// Rank-one terms in total: finite poles plus the corner when present.
  int term_count() const {
    return static_cast<int>(poles.size()) + (alpha_inf > 0.0 ? 1 : 0);
  }
};

namespace detail {

/// Membership tolerance for the corner test, deliberately looser than the
/// rank cutoff: range membership degrades faster than eigenvalue counts.
constexpr double kCornerTol = 1e-8;

/// Distance of the last coordinate direction from the range of the
/// column-orthonormal factor u: ||e - u u^T e||.
inline double corner_residual(const Eigen::MatrixXd& u) {
  if (u.cols() == 0) return 1.0;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(u.rows());
  e[u.rows() - 1] = 1.0;
  return (e - u * (u.transpose() * e)).norm();
}

/// Rank of a symmetric PSD matrix under the same counting rule as
/// takagi_psd; throws numeric_error if the matrix fails the PSD bound,
/// since callers use it only on matrices that are PSD by construction.
inline int psd_rank(const Eigen::MatrixXd& h, double tol) {
  const SymEig eig = sym_eig(h);
  const Eigen::Index s = eig.values.size();
  const double scale =
      std::max(std::abs(eig.values[0]), std::abs(eig.values[s - 1]));
  if (eig.values[s - 1] < -tol * scale)
    throw numeric_error("corner peel produced an indefinite matrix",
                        eig.values[s - 1]);
  int rank = 0;
  while (rank < s && eig.values[rank] > tol * scale) ++rank;
  return rank;
}

}  // namespace detail

/// Coefficient of the corner term that can be split off a PSD Hankel
/// matrix factored as u diag(d) u^T:
///
///   alpha = ( sum_j u(s,j)^2 / d_j )^{-1},
///
/// the unique value such that H - alpha e_s e_s^T remains PSD with rank
/// reduced by exactly one.  The drop is verified post hoc by
/// re-factorizing the peeled matrix.  Requires the last coordinate
/// direction to lie in the range of u (throws structure_error otherwise);
/// a failed rank verification is a numeric_error.
inline double peel_corner(const TakagiFactorization& f) {
  const Eigen::Index s = f.u.rows();
  const double membership = detail::corner_residual(f.u);
  if (membership > detail::kCornerTol) {
    throw structure_error(
        "corner test failed: the last coordinate direction is not in the "
        "range of the factorization (residual " + std::to_string(membership) +
        ")");
  }

  double inv = 0.0;
  for (Eigen::Index j = 0; j < f.d.size(); ++j) {
    const double uj = f.u(s - 1, j);
    inv += uj * uj / f.d[j];
  }
  const double alpha = 1.0 / inv;

  Eigen::MatrixXd peeled = f.u * f.d.asDiagonal() * f.u.transpose();
  peeled(s - 1, s - 1) -= alpha;
  const int peeled_rank = detail::psd_rank(peeled, f.tol);
  if (peeled_rank != f.rank - 1) {
    throw numeric_error("corner peel changed the rank from " +
                            std::to_string(f.rank) + " to " +
                            std::to_string(peeled_rank) +
                            " instead of dropping it by one",
                        static_cast<double>(peeled_rank));
  }
  return alpha;
}

namespace detail {

/// Shared decomposition engine on the generator of the associated Hankel
/// matrix (odd length 2s-1).  order/dim only label the result; the moment
/// equations sum_k alpha_k xi_k^j = g_j are identical for the matrix and
/// for any tensor sharing the generator.
inline VandermondeDecomposition avd_core(Eigen::VectorXd g, int order,
                                         int dim, double tol,
                                         std::optional<double> gamma) {
  const Eigen::Index s = (g.size() + 1) / 2;

  VandermondeDecomposition dec;
  dec.order = order;
  dec.dim = dim;

  TakagiFactorization f = [&] {
    try {
        return takagi_psd(HankelMatrix(g), tol);
      } catch (const not_psd_error& e) {
        throw not_psd_error("not a strong Hankel tensor: associated Hankel "
                            "matrix has eigenvalue " +
                                std::to_string(e.witness()) +
                                " below tolerance",
                            e.witness());
      }
    }();

    // Corner branch.  At full rank the range test is vacuous (the factor
    // spans everything), and the full-rank closure below already covers
    // that case, so the peel applies only to rank-deficient matrices.
    if (f.rank < s && corner_residual(f.u) <= kCornerTol) {
      const int rank_before = f.rank;
      dec.alpha_inf = peel_corner(f);
      g[2 * s - 2] -= dec.alpha_inf;
      f = takagi_psd(HankelMatrix(g), tol);
      if (f.rank != rank_before - 1) {
        throw numeric_error(
            "peeled generator did not lose exactly one rank unit",
            static_cast<double>(f.rank));
      }
      // Only one corner can ever be split off: after the peel the last
      // direction has left the range.
      if (f.rank < s && corner_residual(f.u) <= kCornerTol) {
        throw numeric_error("corner direction persists after the peel",
                            corner_residual(f.u));
      }
    }

    const Eigen::Index r = f.rank;
    if (r == 0) return dec;

    // Recurrence coefficients a: the generator of a rank-r corner-free PSD
    // Hankel matrix satisfies g_{r+k} = sum_j a_j g_{k+j}.  The leading
    // r x r principal submatrix is positive definite, so the system is
    // solved by Cholesky.
    Eigen::MatrixXd lead(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j) lead(i, j) = g[i + j];

    Eigen::VectorXd rhs(r);
    if (r < s) {
      for (Eigen::Index i = 0; i < r; ++i) rhs[i] = g[r + i];
    } else {
      for (Eigen::Index i = 0; i + 1 < s; ++i) rhs[i] = g[s + i];
      double closure;
      if (gamma) {
        closure = *gamma;
      } else {
        // Free closure entry: extrapolate one step with the minimum-norm
        // least-squares recurrence fitted to the known windows.
        Eigen::MatrixXd windows(s - 1, s);
        Eigen::VectorXd targets(s - 1);
        for (Eigen::Index k = 0; k + 1 < s; ++k) {
          for (Eigen::Index j = 0; j < s; ++j) windows(k, j) = g[k + j];
          targets[k] = g[s + k];
        }
        const Eigen::VectorXd fit =
            windows.completeOrthogonalDecomposition().solve(targets);
        closure = 0.0;
        for (Eigen::Index j = 0; j < s; ++j) closure += fit[j] * g[s - 1 + j];
      }
      rhs[s - 1] = closure;
    }

    const Eigen::LLT<Eigen::MatrixXd> llt(lead);
    if (llt.info() != Eigen::Success) {
      throw numeric_error(
          "leading principal submatrix is not positive definite at working "
          "precision",
          0.0);
    }
    const double rc = llt.rcond();
    dec.yw_condition = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    const Eigen::VectorXd a = llt.solve(rhs);

    // Poles are the roots of z^r - a_{r-1} z^{r-1} - ... - a_0, real and
    // distinct for genuinely PSD input.
    try {
    const RootSet roots = poly_roots(a);
    Eigen::VectorXd poles(r);
    for (Eigen::Index k = 0; k < r; ++k) {
      const std::complex<double> z = roots.roots[static_cast<size_t>(k)];
      if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) {
        throw numeric_error("pole polynomial produced a complex root " +
                                std::to_string(z.real()) + " + " +
                                std::to_string(z.imag()) + "i",
                            std::abs(z.imag()));
      }
      poles[k] = z.real();
    }
    std::sort(poles.data(), poles.data() + r, std::greater<double>());

    Eigen::VectorXd alphas;
    try {
      alphas = vandermonde_solve(poles, g.head(r));
    } catch (const structure_error&) {
      throw numeric_error(
          "poles are not numerically distinct; a different closure value may "
          "separate them",
          0.0);
    }

    // A closure away from the natural continuation of the generator can
    // park one pole far out with a weight many orders below the others.
    // Such a weight is positive in exact arithmetic but sits under the
    // progressive solver's noise floor, so its computed value (even its
    // sign) is unreliable, while its contribution to the top moments is
    // not negligible.  The Christoffel form 1/(v^T A^{-1} v) evaluates the
    // same weight through the positive definite leading block instead,
    // which is sign-safe and relatively accurate exactly there.
    const double alpha_scale = alphas.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < r; ++k) {
      if (alphas[k] > 1e-8 * alpha_scale) continue;
      Eigen::VectorXd v(r);
      double power = 1.0;
      for (Eigen::Index j = 0; j < r; ++j) {
        v[j] = power;
        power *= poles[k];
      }
      alphas[k] = 1.0 / v.dot(llt.solve(v));
    }

    const double alpha_min = alphas.minCoeff();
    if (alpha_min <= 0.0) {
      throw numeric_error("coefficient " + std::to_string(alpha_min) +
                              " is not positive",
                          alpha_min);
    }

    dec.poles = std::move(poles);
    dec.alphas = std::move(alphas);
    return dec;
  } catch (const numeric_error&) {
    if (r != s || gamma) throw;
    // At full rank the corner cannot be seen by the range test, yet a
    // failed free closure is exactly the signature of a decomposition
    // that wants a pole at infinity: the extrapolated recurrence parks a
    // root near the boundary of the admissible completion interval.  The
    // largest corner weight keeping the matrix PSD is the Schur
    // complement 1/(H^{-1})_{ss}; peeling it makes the matrix rank
    // deficient and reroutes through the identifiable branch.
    Eigen::VectorXd es = Eigen::VectorXd::Zero(s);
    es[s - 1] = 1.0;
    const double alpha_inf = 1.0 / es.dot(llt.solve(es));
    g[2 * s - 2] -= alpha_inf;
    VandermondeDecomposition inner =
        avd_core(std::move(g), order, dim, tol, std::nullopt);
    if (inner.alpha_inf != 0.0) {
      throw numeric_error("corner direction persists after the full-rank peel",
                          inner.alpha_inf);
    }
    inner.alpha_inf = alpha_inf;
    return inner;
  }
}

}  // namespace detail

/// Decomposition of a PSD Hankel matrix H = sum_k alpha_k v(xi_k)^{o2}
/// + alpha_inf e_s^{o2}, the order-2 specialization of the tensor case
/// and the engine behind it.  gamma closes the full-rank recurrence
/// system; when omitted a least-squares extrapolation is used.
inline VandermondeDecomposition matrix_avd(
    const HankelMatrix& h, double tol = 1e-10,
    std::optional<double> gamma = std::nullopt) {
  return detail::avd_core(h.generator(), 2, static_cast<int>(h.size()), tol,
                          gamma);
}

/// Augmented Vandermonde decomposition of a strong Hankel tensor via its
/// associated Hankel matrix.  The finite poles and coefficients solve the
/// same moment equations at both levels, so the matrix engine's output is
/// relabeled with the tensor's order and dimension.  Throws not_psd_error
/// for tensors that are not strong, numeric_error when roots come out
/// complex or coefficients nonpositive (tolerance failures, since theory
/// guarantees real distinct poles with positive weights).
inline VandermondeDecomposition avd_decompose(
    const HankelTensor& t, double tol = 1e-10,
    std::optional<double> gamma = std::nullopt) {
  const HankelMatrix h = associated_matrix(t);
  return detail::avd_core(h.generator(), t.order(), t.dim(), tol, gamma);
}

/// Hankel tensor with generator g_j = sum_k alpha_k xi_k^j, plus alpha_inf
/// added to the final entry: the inverse of avd_decompose.
inline HankelTensor reconstruct(const VandermondeDecomposition& dec) {
  const Eigen::Index len =
      static_cast<Eigen::Index>(dec.order) * (dec.dim - 1) + 1;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(len);
  for (Eigen::Index k = 0; k < dec.poles.size(); ++k) {
    double power = 1.0;
    for (Eigen::Index j = 0; j < len; ++j) {
      g[j] += dec.alphas[k] * power;
      power *= dec.poles[k];
    }
  }
  g[len - 1] += dec.alpha_inf;
  return make_hankel(g, dec.order, dec.dim);
}

}  // namespace hankel
