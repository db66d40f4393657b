#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "hankel/errors.hpp"
#include "hankel/hankel_tensor.hpp"

namespace hankel {

/// Eigendecomposition of a symmetric matrix: values descending, matching
/// orthonormal columns in vectors.
struct SymEig {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// PSD factorization H = U diag(d) U^T with column-orthonormal U, positive
/// d in descending order, and the numerical rank under the tolerance used.
struct TakagiFactorization {
  Eigen::MatrixXd u;
  Eigen::VectorXd d;
  int rank = 0;
  double tol = 0.0;
};

/// Roots of a monic real polynomial plus the largest residual |p(root)|
/// observed when the iteration stopped.
struct RootSet {
  std::vector<std::complex<double>> roots;
  double residual_bound = 0.0;
};

namespace detail {

/// Deterministic sign convention: flip each column so its first component
/// of visible magnitude is positive.
inline void fix_column_signs(Eigen::MatrixXd& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    double lead = 0.0;
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      if (std::abs(v(r, c)) > 1e-12) {
        lead = v(r, c);
        break;
      }
    }
    if (lead < 0.0) v.col(c) = -v.col(c);
  }
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition.  Sweeps rotate every off-diagonal
/// pair until all off-diagonal mass is below 1e-14 * ||H||_F, which keeps
/// the reconstruction error at 1e-12 relative.  Input must be symmetric to
/// 1e-12 relative.
inline SymEig sym_eig(const Eigen::MatrixXd& input) {
  const Eigen::Index n = input.rows();
  if (input.cols() != n) throw structure_error("sym_eig: matrix must be square");
  const double scale = std::max(1.0, input.cwiseAbs().maxCoeff());
  if ((input - input.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw structure_error("sym_eig: matrix must be symmetric");

  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double norm_f = std::max(a.norm(), 1e-300);
  const double target = 1e-14 * norm_f;

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
    if (std::sqrt(off) <= target) break;

    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  double off_final = 0.0;
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = p + 1; q < n; ++q) off_final += 2.0 * a(p, q) * a(p, q);
  if (std::sqrt(off_final) > 10.0 * target)
    throw numeric_error("sym_eig: Jacobi sweeps did not reach the off-diagonal target",
                        std::sqrt(off_final));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

  SymEig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    out.values[c] = a(order[static_cast<std::size_t>(c)], order[static_cast<std::size_t>(c)]);
    out.vectors.col(c) = v.col(order[static_cast<std::size_t>(c)]);
  }
  detail::fix_column_signs(out.vectors);
  return out;
}

inline SymEig sym_eig(const HankelMatrix& h) { return sym_eig(h.dense()); }

/// PSD-restricted Takagi factorization.  For a real PSD symmetric matrix
/// the Takagi form coincides with the eigendecomposition, so eigenpairs
/// with values above tol * ||H||_2 are retained and anything down to
/// -tol * ||H||_2 is treated as roundoff zero.  A value below that bound
/// rejects the input.
inline TakagiFactorization takagi_psd(const HankelMatrix& h, double tol = 1e-10) {
  const SymEig eig = sym_eig(h.dense());
  const Eigen::Index s = eig.values.size();
  const double scale =
      std::max(std::abs(eig.values[0]), std::abs(eig.values[s - 1]));

  const double lambda_min = eig.values[s - 1];
  if (lambda_min < -tol * scale)
    throw not_psd_error("matrix is not positive semidefinite: eigenvalue " +
                            std::to_string(lambda_min) + " below tolerance",
                        lambda_min);

  int rank = 0;
  while (rank < s && eig.values[rank] > tol * scale) ++rank;

  TakagiFactorization f;
  f.u = eig.vectors.leftCols(rank);
  f.d = eig.values.head(rank);
  f.rank = rank;
  f.tol = tol;
  return f;
}

/// All roots of the monic polynomial
///
///   p(z) = z^r - a_{r-1} z^{r-1} - ... - a_1 z - a_0,
///
/// by Aberth-Ehrlich simultaneous iteration.  Starting points sit on a
/// circle inside the companion-matrix Gershgorin bound R = 1 + max|a_j|.
/// Every returned root satisfies |p(root)| <= 1e-8 * max(1, max|a_j|).
inline RootSet poly_roots(const Eigen::VectorXd& a) {
  const int r = static_cast<int>(a.size());
  if (r < 1) throw dimension_error("poly_roots: need at least one coefficient");

  using cd = std::complex<double>;
  std::vector<double> coeff(static_cast<std::size_t>(r) + 1);
  for (int j = 0; j < r; ++j) coeff[static_cast<std::size_t>(j)] = -a[j];
  coeff[static_cast<std::size_t>(r)] = 1.0;

  // Horner evaluation of p, p', and the running magnitude sum
  // sum_j |c_j| |z|^j, whose epsilon multiple is the evaluation noise
  // floor used as the per-root stopping criterion.
  const auto eval = [&](cd z, cd& p, cd& dp, double& floor_scale) {
    p = coeff[static_cast<std::size_t>(r)];
    dp = cd{0.0, 0.0};
    const double az = std::abs(z);
    floor_scale = std::abs(p);
    for (int j = r - 1; j >= 0; --j) {
      dp = dp * z + p;
      p = p * z + coeff[static_cast<std::size_t>(j)];
      floor_scale = floor_scale * az + std::abs(coeff[static_cast<std::size_t>(j)]);
    }
  };

  const double radius_bound = 1.0 + a.cwiseAbs().maxCoeff();
  const double tol = 1e-8 * std::max(1.0, a.cwiseAbs().maxCoeff());

  std::vector<cd> z(static_cast<std::size_t>(r));
  for (int k = 0; k < r; ++k) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(r) + 0.4;
    z[static_cast<std::size_t>(k)] = std::polar(0.7 * radius_bound, angle);
  }

  constexpr double kEps = 2.220446049250313e-16;
  const int cap = 500;
  for (int it = 0; it < cap; ++it) {
    int active = 0;
    for (int k = 0; k < r; ++k) {
      cd p, dp;
      double floor_scale;
      eval(z[static_cast<std::size_t>(k)], p, dp, floor_scale);
      if (std::abs(p) <= 8.0 * kEps * floor_scale) continue;
      ++active;
      if (std::abs(dp) < 1e-300) {
        z[static_cast<std::size_t>(k)] += cd{1e-8 * radius_bound, 1e-8 * radius_bound};
        continue;
      }
      const cd newton = p / dp;
      cd repulsion{0.0, 0.0};
      for (int j = 0; j < r; ++j) {
        if (j == k) continue;
        cd gap = z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)];
        if (std::abs(gap) < 1e-30) gap = cd{1e-30, 0.0};
        repulsion += 1.0 / gap;
      }
      const cd denom = 1.0 - newton * repulsion;
      const cd step = std::abs(denom) < 1e-300 ? newton : newton / denom;
      z[static_cast<std::size_t>(k)] -= step;
    }
    if (active == 0) break;
  }

  // Extended-precision Newton polish.  Double-precision Horner noise at
  // a root grows like eps * sum_j |c_j| |z|^j, which for roots far
  // outside the unit disk exceeds the residual contract below; polishing
  // and measuring in long double keeps the contract attainable there.
  using cld = std::complex<long double>;
  const auto eval_ld = [&](cld x, cld& p, cld& dp) {
    p = cld{1.0L, 0.0L};
    dp = cld{0.0L, 0.0L};
    for (int j = r - 1; j >= 0; --j) {
      dp = dp * x + p;
      p = p * x + static_cast<long double>(coeff[static_cast<std::size_t>(j)]);
    }
  };

  double worst = 0.0;
  for (int k = 0; k < r; ++k) {
    cld x{z[static_cast<std::size_t>(k)].real(), z[static_cast<std::size_t>(k)].imag()};
    cld p, dp;
    eval_ld(x, p, dp);
    cld best_x = x;
    long double best_p = std::abs(p);
    for (int step = 0; step < 4 && std::abs(dp) > 0.0L; ++step) {
      x -= p / dp;
      eval_ld(x, p, dp);
      if (std::abs(p) < best_p) {
        best_p = std::abs(p);
        best_x = x;
      }
    }
    // The bound must describe the root the caller receives, so measure
    // it at the double-rounded point.
    const cd rounded{static_cast<double>(best_x.real()),
                     static_cast<double>(best_x.imag())};
    z[static_cast<std::size_t>(k)] = rounded;
    eval_ld(cld{rounded.real(), rounded.imag()}, p, dp);
    worst = std::max(worst, static_cast<double>(std::abs(p)));
  }
  if (worst > tol)
    throw numeric_error("poly_roots: iteration stopped with residual " + std::to_string(worst),
                        worst);

  RootSet out;
  out.roots = std::move(z);
  out.residual_bound = worst;
  return out;
}

/// Solves the Vandermonde system
///
///   sum_k alpha_k xi_k^j = b_j,   j = 0..r-1,
///
/// by the Bjorck-Pereyra progressive algorithm (O(r^2), no matrix formed).
/// Nodes must be pairwise distinct relative to their spread.
inline Eigen::VectorXd vandermonde_solve(const Eigen::VectorXd& nodes, const Eigen::VectorXd& b) {
  const int r = static_cast<int>(nodes.size());
  if (b.size() != r) throw dimension_error("vandermonde_solve: nodes and rhs sizes differ");
  if (r == 0) throw dimension_error("vandermonde_solve: empty system");

  if (r > 1) {
    Eigen::VectorXd sorted = nodes;
    std::sort(sorted.data(), sorted.data() + r);
    const double spread = std::max(sorted[r - 1] - sorted[0], 1e-300);
    for (int i = 0; i + 1 < r; ++i)
      if (sorted[i + 1] - sorted[i] <= 1e-12 * spread)
        throw structure_error("vandermonde_solve: coincident nodes");
  }

  Eigen::VectorXd alpha = b;
  for (int k = 0; k < r - 1; ++k)
    for (int i = r - 1; i > k; --i) alpha[i] -= nodes[k] * alpha[i - 1];
  for (int k = r - 2; k >= 0; --k) {
    for (int i = k + 1; i < r; ++i) alpha[i] /= (nodes[i] - nodes[i - k - 1]);
    for (int i = k; i < r - 1; ++i) alpha[i] -= alpha[i + 1];
  }
  return alpha;
}

}  // namespace hankel
