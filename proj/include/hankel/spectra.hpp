#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hankel/convolution.hpp"
#include "hankel/errors.hpp"
#include "hankel/hankel_tensor.hpp"
#include "hankel/linalg.hpp"
#include "hankel/products.hpp"
#include "hankel/random.hpp"

namespace hankel {

/// H-eigenpair of a Hankel tensor: T x^{m-1} = lambda x^{[m-1]} with
/// ||x||_2 = 1 and the first component of visible magnitude positive.
/// residual is ||T x^{m-1} - lambda x^{[m-1]}||_2 at the returned pair.
struct HEigenPair {
  double lambda = 0.0;
  Eigen::VectorXd x;
  double residual = 0.0;
};

/// Optimizer estimates of the norm-ratio constants
///
///   c1 = min_y ||y^{*q}||_m^m / ||y||_{qm}^{qm},
///   c2 = max_y ||y^{*q}||_m^m / ||y||_{qm}^{qm},
///
/// over y in R^k, with the witness vectors attaining them.  c1 is the
/// minimum over every probe the optimizer evaluated and c2 the maximum,
/// which errs in the conservative direction for the bounds they feed.
struct LiftBoundConstants {
  double c1 = 1.0;
  double c2 = 1.0;
  int m = 0;
  int q = 0;
  int k = 0;
  Eigen::VectorXd witness_min;
  Eigen::VectorXd witness_max;
  int starts = 0;
};

namespace detail {

/// Componentwise integer power, sign preserved for odd exponents.
inline Eigen::VectorXd comp_pow(const Eigen::VectorXd& x, int p) {
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out[i] = std::pow(x[i], static_cast<double>(p));
  return out;
}

/// Sign-preserving p-th root for odd p.
inline double odd_root(double v, int p) {
  const double r = std::pow(std::abs(v), 1.0 / static_cast<double>(p));
  return v < 0.0 ? -r : r;
}

inline void canonical_sign(Eigen::VectorXd& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > 1e-12) {
      if (x[i] < 0.0) x = -x;
      return;
    }
  }
}

/// Least-squares eigenvalue estimate for T x^{m-1} ~ lambda x^{[m-1]}.
inline double ls_lambda(const Eigen::VectorXd& g, const Eigen::VectorXd& xm1) {
  const double denom = xm1.squaredNorm();
  return denom > 0.0 ? g.dot(xm1) / denom : 0.0;
}

inline double eig_residual(const HankelTensor& t, const Eigen::VectorXd& x,
                           double lambda) {
  return (grad_eval(t, x) - lambda * comp_pow(x, t.order() - 1)).norm();
}

/// Damped Newton iteration on the square system
///
///   F(x, lambda) = [ T x^{m-1} - lambda x^{[m-1]} ; (x^T x - 1)/2 ],
///
/// with Jacobian [ (m-1)(M - lambda diag(x^{[m-2]})), -x^{[m-1]} ; x^T, 0 ]
/// where M = T x^{m-2}.  Polishes (x, lambda) in place; returns the final
/// ||F||.  Backtracking keeps steps that reduce ||F||; a step with no
/// acceptable damping ends the iteration early.
inline double newton_eig(const HankelTensor& t, Eigen::VectorXd& x,
                         double& lambda, int steps = 60) {
  const int n = t.dim();
  const int m = t.order();
  Eigen::VectorXd f(n + 1);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n + 1, n + 1);

  const auto fill_f = [&](const Eigen::VectorXd& xx, double ll,
                          Eigen::VectorXd& out) {
    out.head(n) = grad_eval(t, xx) - ll * comp_pow(xx, m - 1);
    out[n] = 0.5 * (xx.squaredNorm() - 1.0);
  };

  fill_f(x, lambda, f);
  double fnorm = f.norm();
  for (int step = 0; step < steps; ++step) {
    if (fnorm <= 1e-13 * (1.0 + std::abs(lambda))) break;

    jac.topLeftCorner(n, n) =
        static_cast<double>(m - 1) *
        (hess_eval(t, x).dense() -
         lambda * Eigen::MatrixXd(comp_pow(x, m - 2).asDiagonal()));
    jac.topRightCorner(n, 1) = -comp_pow(x, m - 1);
    jac.bottomLeftCorner(1, n) = x.transpose();
    jac(n, n) = 0.0;

    const Eigen::VectorXd delta = jac.partialPivLu().solve(-f);
    if (!delta.allFinite()) break;

    bool accepted = false;
    double damp = 1.0;
    Eigen::VectorXd trial_f(n + 1);
    for (int cut = 0; cut < 25; ++cut, damp *= 0.5) {
      const Eigen::VectorXd xx = x + damp * delta.head(n);
      const double ll = lambda + damp * delta[n];
      fill_f(xx, ll, trial_f);
      if (trial_f.norm() < fnorm * (1.0 - 1e-4 * damp)) {
        x = xx;
        lambda = ll;
        f = trial_f;
        fnorm = f.norm();
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return fnorm;
}

}  // namespace detail

/// Shifted symmetric higher-order power iteration followed by a Newton
/// polish.  For even order the fixed-point map
///
///   x <- normalize( (T x^{m-1} + shift x^{[m-1]})^{[1/(m-1)]} )
///
/// climbs toward a local maximizer of the Rayleigh quotient (negate the
/// generator to search minima); for odd order, where the componentwise
/// root is unavailable, the damped Newton iteration runs directly from
/// the start vector.  shift defaults to m * sum|h_j| * n^{m-1}, large
/// enough to make the even-order map monotone; the start defaults to a
/// deterministic slightly tilted diagonal vector.  Throws numeric_error
/// carrying the final residual if the pair does not reach 1e-8.
inline HEigenPair heig_power(const HankelTensor& t,
                             std::optional<double> shift = std::nullopt,
                             std::optional<Eigen::VectorXd> start = std::nullopt,
                             int cap = 2000) {
  const int n = t.dim();
  const int m = t.order();
  if (m < 2) throw dimension_error("heig_power: order must be >= 2");

  Eigen::VectorXd x;
  if (start) {
    if (start->size() != n)
      throw dimension_error("heig_power: start vector has wrong dimension");
    x = start->normalized();
  } else {
    x.resize(n);
    for (int i = 0; i < n; ++i)
      x[i] = 1.0 + 0.25 * static_cast<double>(i) / static_cast<double>(n);
    x.normalize();
  }

  const double sigma = shift.value_or(
      static_cast<double>(m) * t.generator().cwiseAbs().sum() *
      std::pow(static_cast<double>(n), m - 1));

  double lambda = detail::ls_lambda(grad_eval(t, x), detail::comp_pow(x, m - 1));

  if (m % 2 == 0) {
    double prev_lambda = std::numeric_limits<double>::infinity();
    for (int it = 0; it < cap; ++it) {
      const Eigen::VectorXd g = grad_eval(t, x);
      const Eigen::VectorXd xm1 = detail::comp_pow(x, m - 1);
      lambda = detail::ls_lambda(g, xm1);
      Eigen::VectorXd y = g + sigma * xm1;
      for (int i = 0; i < n; ++i) y[i] = detail::odd_root(y[i], m - 1);
      const double ynorm = y.norm();
      if (ynorm == 0.0) break;
      y /= ynorm;
      const double moved = (y - x).norm();
      x = y;
      if (moved <= 1e-12 && std::abs(lambda - prev_lambda) <=
                                1e-13 * (1.0 + std::abs(lambda)))
        break;
      prev_lambda = lambda;
    }
  }

  detail::newton_eig(t, x, lambda);
  x.normalize();
  detail::canonical_sign(x);
  const double residual = detail::eig_residual(t, x, lambda);
  if (residual > 1e-8)
    throw numeric_error(
        "heig_power: iteration stalled at residual " + std::to_string(residual),
        residual);
  return {lambda, x, residual};
}

namespace detail {

/// Dedupes (lambda, x) against found pairs, treating x and -x as the
/// same eigenvector.
inline bool known_pair(const std::vector<HEigenPair>& pairs, double lambda,
                       const Eigen::VectorXd& x) {
  for (const HEigenPair& p : pairs) {
    if (std::abs(p.lambda - lambda) > 1e-6 * (1.0 + std::abs(lambda))) continue;
    if (std::min((p.x - x).norm(), (p.x + x).norm()) <= 1e-5) return true;
  }
  return false;
}

/// Proportionality root function for n = 2 in extended precision:
/// f(theta) = g_1 x_2^{m-1} - g_2 x_1^{m-1} at x = (cos theta, sin theta),
/// evaluated with the closed binomial form (c, s)^{*p}_j = C(p,j) c^{p-j} s^j.
/// Long double keeps degenerate (multiple) roots locatable: near a root of
/// multiplicity k the usable flat spot scales like eps^{1/k}.
inline long double n2_root_fn(const Eigen::VectorXd& h, int m,
                              long double theta) {
  const long double c = std::cos(theta);
  const long double s = std::sin(theta);
  const int p = m - 1;
  long double binom = 1.0L;
  long double g0 = 0.0L, g1 = 0.0L;
  for (int j = 0; j <= p; ++j) {
    const long double wj =
        binom * std::pow(c, static_cast<long double>(p - j)) *
        std::pow(s, static_cast<long double>(j));
    g0 += static_cast<long double>(h[j]) * wj;
    g1 += static_cast<long double>(h[j + 1]) * wj;
    binom = binom * static_cast<long double>(p - j) /
            static_cast<long double>(j + 1);
  }
  return g0 * std::pow(s, static_cast<long double>(p)) -
         g1 * std::pow(c, static_cast<long double>(p));
}

}  // namespace detail

/// All real H-eigenpairs of a small tensor (n <= 3, m <= 6) up to the
/// x -> -x symmetry (which preserves lambda for both parities), sorted by
/// ascending eigenvalue.
///
/// n=2 walks the angle theta in [0, pi] with a dense grid of the root
/// function f(theta) = g_1 x_2^{m-1} - g_2 x_1^{m-1} (the proportionality
/// condition), bisects every sign change in extended precision, probes
/// small-magnitude local minima of |f| for even-multiplicity roots by
/// golden-section, and polishes with the Newton iteration, falling back
/// to the bisected direction when polishing does not improve it; a
/// located root that does not certify to an eigenpair raises a
/// numeric_error.  A root function that vanishes identically (every
/// direction is an eigenvector, e.g. scaled identities) returns the
/// coordinate-direction pairs.  n=3 polishes a Fibonacci hemisphere of
/// starts and reports every distinct converged pair; n=1 is closed form.
inline std::vector<HEigenPair> heig_all_small(const HankelTensor& t) {
  const int n = t.dim();
  const int m = t.order();
  if (n > 3) throw dimension_error("heig_all_small: dimension must be <= 3");
  if (m > 6) throw dimension_error("heig_all_small: order must be <= 6");

  std::vector<HEigenPair> pairs;

  if (n == 1) {
    Eigen::VectorXd e = Eigen::VectorXd::Ones(1);
    pairs.push_back({t.generator()[0], e, 0.0});
    return pairs;
  }

  if (n == 2) {
    const int grid = 4001;
    const Eigen::VectorXd& h = t.generator();
    const auto f_ld = [&](long double theta) {
      return detail::n2_root_fn(h, m, theta);
    };
    const auto direction = [](long double theta) {
      Eigen::VectorXd x(2);
      x[0] = static_cast<double>(std::cos(theta));
      x[1] = static_cast<double>(std::sin(theta));
      return x;
    };

    std::vector<long double> theta(grid), value(grid);
    long double scale = 0.0L;
    for (int i = 0; i < grid; ++i) {
      const auto k = static_cast<std::size_t>(i);
      theta[k] = std::numbers::pi_v<long double> * i / (grid - 1);
      value[k] = f_ld(theta[k]);
      scale = std::max(scale, std::abs(value[k]));
    }

    const double gen_scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (static_cast<double>(scale) <= 1e-13 * gen_scale) {
      // Every direction solves the proportionality condition; report the
      // coordinate directions.
      for (int i = 0; i < 2; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(2);
        e[i] = 1.0;
        const double lambda =
            detail::ls_lambda(grad_eval(t, e), detail::comp_pow(e, m - 1));
        pairs.push_back({lambda, e, detail::eig_residual(t, e, lambda)});
      }
      return pairs;
    }

    std::vector<long double> roots;

    // Odd-multiplicity roots: one sign change (or exact grid zero) each.
    for (int i = 0; i + 1 < grid; ++i) {
      const long double a = value[static_cast<std::size_t>(i)];
      const long double b = value[static_cast<std::size_t>(i + 1)];
      if (a == 0.0L) {
        if (i == 0) roots.push_back(theta[static_cast<std::size_t>(i)]);
        continue;  // interior exact zeros belong to this interval's left end
      }
      if (b == 0.0L) {
        roots.push_back(theta[static_cast<std::size_t>(i + 1)]);
        continue;
      }
      if (a * b >= 0.0L) continue;
      long double lo = theta[static_cast<std::size_t>(i)];
      long double hi = theta[static_cast<std::size_t>(i + 1)];
      long double flo = a;
      for (int iter = 0; iter < 90; ++iter) {
        const long double mid = 0.5L * (lo + hi);
        const long double fmid = f_ld(mid);
        if (fmid == 0.0L) {
          lo = hi = mid;
          break;
        }
        if (flo * fmid < 0.0L) {
          hi = mid;
        } else {
          lo = mid;
          flo = fmid;
        }
      }
      roots.push_back(0.5L * (lo + hi));
    }

    // Even-multiplicity roots touch zero without crossing: probe every
    // small-magnitude local minimum of |f| away from the crossings above.
    for (int i = 1; i + 1 < grid; ++i) {
      const long double fa = value[static_cast<std::size_t>(i - 1)];
      const long double fb = value[static_cast<std::size_t>(i)];
      const long double fc = value[static_cast<std::size_t>(i + 1)];
      if (fa == 0.0L || fb == 0.0L || fc == 0.0L) continue;
      if (fa * fb < 0.0L || fb * fc < 0.0L) continue;
      if (std::abs(fb) > 1e-4L * scale) continue;
      if (std::abs(fb) > std::abs(fa) || std::abs(fb) > std::abs(fc)) continue;

      long double lo = theta[static_cast<std::size_t>(i - 1)];
      long double hi = theta[static_cast<std::size_t>(i + 1)];
      const long double invphi = 0.6180339887498948482L;
      long double x1 = hi - invphi * (hi - lo);
      long double x2 = lo + invphi * (hi - lo);
      long double f1 = std::abs(f_ld(x1));
      long double f2 = std::abs(f_ld(x2));
      for (int iter = 0; iter < 140; ++iter) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - invphi * (hi - lo);
          f1 = std::abs(f_ld(x1));
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + invphi * (hi - lo);
          f2 = std::abs(f_ld(x2));
        }
      }
      const long double tstar = 0.5L * (lo + hi);
      if (std::abs(f_ld(tstar)) <= 1e-11L * scale) roots.push_back(tstar);
    }

    int lost = 0;
    for (const long double root : roots) {
      // The root location is already at extended precision, so the pair at
      // the located direction is the safety net if the Newton polish jumps
      // to a different root or fails to converge (its Jacobian is singular
      // at multiple roots).
      const Eigen::VectorXd x_bis = direction(root);
      const double lam_bis = detail::ls_lambda(grad_eval(t, x_bis),
                                               detail::comp_pow(x_bis, m - 1));
      const double res_bis = detail::eig_residual(t, x_bis, lam_bis);

      Eigen::VectorXd x = x_bis;
      double lambda = lam_bis;
      detail::newton_eig(t, x, lambda);
      x.normalize();
      double residual = detail::eig_residual(t, x, lambda);
      if (residual > res_bis ||
          std::min((x - x_bis).norm(), (x + x_bis).norm()) > 0.05) {
        x = x_bis;
        lambda = lam_bis;
        residual = res_bis;
      }
      detail::canonical_sign(x);
      if (residual > 1e-8) {
        ++lost;
        continue;
      }
      if (!detail::known_pair(pairs, lambda, x))
        pairs.push_back({lambda, x, residual});
    }

    if (lost > 0) {
      throw numeric_error(
          "heig_all_small: a located root of the proportionality function "
          "did not refine to an eigenpair; grid resolution insufficient",
          static_cast<double>(lost));
    }
  } else {
    // n == 3: Newton from a Fibonacci hemisphere of starts.
    const int starts = 2000;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < starts; ++i) {
      // Upper half sphere: z in (0, 1], spiral in azimuth.
      const double z =
          1.0 - static_cast<double>(i) / static_cast<double>(starts);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * static_cast<double>(i);
      Eigen::VectorXd x(3);
      x[0] = rho * std::cos(phi);
      x[1] = rho * std::sin(phi);
      x[2] = z;

      double lambda =
          detail::ls_lambda(grad_eval(t, x), detail::comp_pow(x, m - 1));
      detail::newton_eig(t, x, lambda);
      const double xnorm = x.norm();
      if (!(xnorm > 0.5 && xnorm < 2.0)) continue;  // wandered off
      x.normalize();
      detail::canonical_sign(x);
      const double residual = detail::eig_residual(t, x, lambda);
      if (residual > 1e-8) continue;
      if (!detail::known_pair(pairs, lambda, x))
        pairs.push_back({lambda, x, residual});
    }
  }

  std::sort(pairs.begin(), pairs.end(),
            [](const HEigenPair& a, const HEigenPair& b) {
              return a.lambda < b.lambda;
            });
  return pairs;
}

/// Norm-ratio constants of the lifting map y -> y^{*q} (see
/// LiftBoundConstants).  Multi-start projected gradient over the unit
/// sphere in R^k, descending for c1 and ascending for c2, with the
/// coordinate directions and the diagonal as deterministic extra starts.
/// q = 1 and k = 1 are exact: the ratio is identically 1.  Results are
/// memoized on (m, q, k, starts, seed).
inline LiftBoundConstants lift_constants(int m, int q, int k,
                                         int starts = 200,
                                         unsigned long seed = 77) {
  if (m < 2 || m % 2 != 0)
    throw dimension_error("lift_constants: order must be even and >= 2");
  if (q < 1) throw dimension_error("lift_constants: multiplier must be >= 1");
  if (k < 1) throw dimension_error("lift_constants: dimension must be >= 1");

  LiftBoundConstants out;
  out.m = m;
  out.q = q;
  out.k = k;
  out.starts = starts;
  if (q == 1 || k == 1) {
    out.c1 = out.c2 = 1.0;
    out.witness_min = Eigen::VectorXd::Zero(k);
    out.witness_min[0] = 1.0;
    out.witness_max = out.witness_min;
    return out;
  }

  using Key = std::tuple<int, int, int, int, unsigned long>;
  static std::map<Key, LiftBoundConstants> memo;
  static std::mutex memo_mutex;
  const Key key{m, q, k, starts, seed};
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    const auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }

  const int qm = q * m;
  const auto ratio = [&](const Eigen::VectorXd& y) {
    const Eigen::VectorXd w = conv_power(y, q);
    double num = 0.0;
    for (Eigen::Index j = 0; j < w.size(); ++j)
      num += std::pow(w[j], static_cast<double>(m));
    double den = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i)
      den += std::pow(y[i], static_cast<double>(qm));
    return num / den;
  };
  const auto ratio_grad = [&](const Eigen::VectorXd& y) {
    const Eigen::VectorXd w = conv_power(y, q);
    const Eigen::VectorXd u = conv_power(y, q - 1);
    double num = 0.0;
    Eigen::VectorXd wp(w.size());
    for (Eigen::Index j = 0; j < w.size(); ++j) {
      num += std::pow(w[j], static_cast<double>(m));
      wp[j] = std::pow(w[j], static_cast<double>(m - 1));
    }
    double den = 0.0;
    Eigen::VectorXd dden(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      den += std::pow(y[i], static_cast<double>(qm));
      dden[i] = static_cast<double>(qm) *
                std::pow(y[i], static_cast<double>(qm - 1));
    }
    // d num / d y_i = m q sum_j w_j^{m-1} (y^{*(q-1)})_{j-i}.
    const Eigen::VectorXd dnum = static_cast<double>(m) *
                                 static_cast<double>(q) *
                                 detail::correlate(wp, u, k);
    return Eigen::VectorXd((dnum * den - num * dden) / (den * den));
  };

  out.c1 = std::numeric_limits<double>::infinity();
  out.c2 = -std::numeric_limits<double>::infinity();
  const auto probe = [&](const Eigen::VectorXd& y) {
    const double r = ratio(y);
    if (r < out.c1) {
      out.c1 = r;
      out.witness_min = y;
    }
    if (r > out.c2) {
      out.c2 = r;
      out.witness_max = y;
    }
    return r;
  };

  std::vector<Eigen::VectorXd> seeds;
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
    e[i] = 1.0;
    seeds.push_back(e);
  }
  seeds.push_back(Eigen::VectorXd::Ones(k).normalized());
  Rng rng(seed);
  for (int s = 0; s < starts; ++s) seeds.push_back(rng.unit_vector(k));

  for (const Eigen::VectorXd& y0 : seeds) {
    for (const double direction : {-1.0, +1.0}) {
      Eigen::VectorXd y = y0;
      double current = probe(y);
      for (int iter = 0; iter < 250; ++iter) {
        const Eigen::VectorXd g = ratio_grad(y);
        const double gn = g.norm();
        if (!(gn > 1e-14)) break;
        bool moved = false;
        for (double step = 0.5; step >= 1e-12; step *= 0.25) {
          Eigen::VectorXd trial = y + direction * (step / gn) * g;
          const double tn = trial.norm();
          if (!(tn > 0.0)) continue;
          trial /= tn;
          const double r = probe(trial);
          if (direction * (r - current) > 1e-15 * (1.0 + std::abs(current))) {
            y = trial;
            current = r;
            moved = true;
            break;
          }
        }
        if (!moved) break;
      }
    }
  }

  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    memo[key] = out;
  }
  return out;
}

/// Report of the order-lifting identity and the two-sided eigenvalue
/// bounds relating a Hankel tensor to its higher-order associate sharing
/// the generator.
struct FirstInheritanceReport {
  int order_low = 0;
  int dim_low = 0;
  int order_high = 0;
  int dim_high = 0;
  int q = 0;
  int samples = 0;
  double identity_gap = 0.0;  ///< max relative gap of the lifting identity
  unsigned long seed = 0;
  bool spectra_checked = false;
  double lambda_min_low = 0.0, lambda_max_low = 0.0;
  double lambda_min_high = 0.0, lambda_max_high = 0.0;
  Eigen::VectorXd witness_min_high;  ///< lifted eigenvector at lambda_min_high
  bool high_psd = false, high_nsd = false;
  double c1 = 1.0, c2 = 1.0;
  double c_min_used = 1.0, c_max_used = 1.0;
  bool min_bound_ok = true, max_bound_ok = true;
};

/// Checks that the higher-order associate of an even-order Hankel tensor
/// inherits its structure: the evaluation identity
/// T_high(y) = T_low(y^{*q}) on random directions, and, when both
/// tensors are small enough for the exhaustive eigen search, the
/// two-sided eigenvalue bounds with the norm-ratio constants
/// (c1 when the lifted tensor is semidefinite on the relevant side,
/// c2 otherwise).
inline FirstInheritanceReport check_first_inheritance(const HankelTensor& low,
                                                      int q,
                                                      int samples = 100,
                                                      unsigned long seed = 31) {
  if (low.order() % 2 != 0)
    throw dimension_error("check_first_inheritance: order must be even");
  const HankelTensor high = higher_order_associate(low, q);

  FirstInheritanceReport rep;
  rep.order_low = low.order();
  rep.dim_low = low.dim();
  rep.order_high = high.order();
  rep.dim_high = high.dim();
  rep.q = q;
  rep.samples = samples;
  rep.seed = seed;

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd y = rng.vector(high.dim(), -1.0, 1.0);
    const double direct = poly_eval(high, y);
    const double through = poly_eval(low, conv_power(y, q));
    rep.identity_gap =
        std::max(rep.identity_gap,
                 std::abs(direct - through) / std::max(1.0, std::abs(direct)));
  }

  if (low.dim() <= 3 && high.order() <= 6) {
    const std::vector<HEigenPair> lo = heig_all_small(low);
    const std::vector<HEigenPair> hi = heig_all_small(high);
    if (lo.empty() || hi.empty()) return rep;  // even order: unreachable
    rep.spectra_checked = true;
    rep.lambda_min_low = lo.front().lambda;
    rep.lambda_max_low = lo.back().lambda;
    rep.lambda_min_high = hi.front().lambda;
    rep.lambda_max_high = hi.back().lambda;
    rep.witness_min_high = hi.front().x;

    const LiftBoundConstants c = lift_constants(low.order(), q, high.dim());
    rep.c1 = c.c1;
    rep.c2 = c.c2;
    rep.high_psd = rep.lambda_min_high >= -1e-8;
    rep.high_nsd = rep.lambda_max_high <= 1e-8;
    // T_high(y) = T_low(y^{*q}) sandwiched by lambda_{min,max}(low) times
    // ||y^{*q}||_m^m; scaling that norm bound by a negative eigenvalue
    // swaps which ratio constant stays conservative.
    rep.c_min_used = rep.lambda_min_low >= 0.0 ? c.c1 : c.c2;
    rep.c_max_used = rep.lambda_max_low >= 0.0 ? c.c2 : c.c1;
    rep.min_bound_ok =
        rep.lambda_min_high >= rep.c_min_used * rep.lambda_min_low - 1e-8;
    rep.max_bound_ok =
        rep.lambda_max_high <= rep.c_max_used * rep.lambda_max_low + 1e-8;
  }
  return rep;
}

/// Multi-start eigen search: random unit starts through heig_power, with
/// failures skipped and duplicates (x vs -x) merged.  For even order each
/// start also climbs the negated tensor, which descends the original
/// spectrum.  Returns the distinct pairs sorted by ascending eigenvalue.
inline std::vector<HEigenPair> heig_search(const HankelTensor& t, int starts,
                                           unsigned long seed,
                                           std::optional<double> shift =
                                               std::nullopt) {
  const int m = t.order();
  const int n = t.dim();
  // Modest globalizer shift: the Newton polish inside heig_power closes
  // the gap, and a smaller shift moves much faster than the guaranteed
  // monotone one.
  const double sigma =
      shift.value_or(static_cast<double>(m) * t.generator().cwiseAbs().sum());
  const HankelTensor negated = make_hankel(-t.generator(), m, n);

  std::vector<HEigenPair> pairs;
  Rng rng(seed);
  for (int s = 0; s < starts; ++s) {
    const Eigen::VectorXd x0 = rng.unit_vector(n);
    try {
      const HEigenPair p = heig_power(t, sigma, x0, 500);
      if (!detail::known_pair(pairs, p.lambda, p.x)) pairs.push_back(p);
    } catch (const numeric_error&) {
    }
    if (m % 2 == 0) {
      try {
        const HEigenPair p = heig_power(negated, sigma, x0, 500);
        if (!detail::known_pair(pairs, -p.lambda, p.x))
          pairs.push_back({-p.lambda, p.x, p.residual});
      } catch (const numeric_error&) {
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const HEigenPair& a, const HEigenPair& b) {
              return a.lambda < b.lambda;
            });
  return pairs;
}

/// Report of the eigenvalue-sign inheritance from the associated Hankel
/// matrix to the tensor, with the quantified lower bound.
struct SecondInheritanceReport {
  int order = 0;
  int dim = 0;
  double lambda_min_matrix = 0.0;
  double lambda_max_matrix = 0.0;
  bool matrix_psd = false;  ///< strong Hankel tensor
  int starts = 0;
  int pairs_found = 0;      ///< converged distinct pairs across starts
  bool any_pair_found = false;
  double power_min = 0.0;   ///< smallest eigenvalue seen by the search
  double power_max = 0.0;
  bool exhaustive = false;  ///< n <= 3 path ran as well
  double exhaustive_min = 0.0;
  double min_found = 0.0;   ///< best available lower spectrum estimate
  Eigen::VectorXd min_witness;  ///< eigenvector attaining min_found
  unsigned long seed = 0;
  double c_quantified = 1.0;
  bool bound_checked = false;
  double bound_margin = 0.0;  ///< min_found - c * lambda_min_matrix
  bool bound_ok = true;
};

/// Checks that a Hankel tensor inherits nonnegativity of its associated
/// Hankel matrix spectrum: multi-start eigen search (exhaustive for
/// n <= 3), and the quantified bound lambda_min(T) >= c * lambda_min(H)
/// with c the norm-ratio minimum for the even-order split (odd orders
/// use the (m-1)/2 split, whose derivation needs every matrix eigenvalue
/// positive, so the bound is only asserted for positive definite H).
inline SecondInheritanceReport check_second_inheritance(
    const HankelTensor& t, int starts = 500, unsigned long seed = 51) {
  const HankelMatrix h = associated_matrix(t);
  const SymEig eig = sym_eig(h);

  SecondInheritanceReport rep;
  rep.order = t.order();
  rep.dim = t.dim();
  rep.starts = starts;
  rep.lambda_min_matrix = eig.values[eig.values.size() - 1];
  rep.lambda_max_matrix = eig.values[0];
  const double mat_scale = std::max(std::abs(rep.lambda_min_matrix),
                                    std::abs(rep.lambda_max_matrix));
  rep.matrix_psd = rep.lambda_min_matrix >= -1e-10 * mat_scale;

  const int m = t.order();
  const int n = t.dim();
  rep.seed = seed;
  std::vector<HEigenPair> pairs = heig_search(t, starts, seed);

  rep.pairs_found = static_cast<int>(pairs.size());
  if (!pairs.empty()) {
    rep.power_min = pairs.front().lambda;
    rep.power_max = pairs.back().lambda;
    rep.min_witness = pairs.front().x;
  }

  if (n <= 3 && m <= 6) {
    rep.exhaustive = true;
    const std::vector<HEigenPair> all = heig_all_small(t);
    if (!all.empty()) {
      rep.exhaustive_min = all.front().lambda;
      if (pairs.empty() || all.front().lambda <= rep.power_min) {
        rep.min_witness = all.front().x;
      }
      if (pairs.empty()) {
        rep.power_min = all.front().lambda;
        rep.power_max = all.back().lambda;
      }
      pairs.insert(pairs.end(), all.begin(), all.end());
    }
  }

  rep.any_pair_found = !pairs.empty();
  if (rep.any_pair_found) {
    double lo = std::numeric_limits<double>::infinity();
    for (const HEigenPair& p : pairs) lo = std::min(lo, p.lambda);
    rep.min_found = lo;
  }

  if (rep.any_pair_found) {
    if (m % 2 == 0) {
      // T(x) = (x^{*q})^T H (x^{*q}) with q = m/2; the norm-ratio constant
      // that keeps lambda_min(H) ||x^{*q}||^2 a lower bound flips with the
      // sign of lambda_min(H).
      const LiftBoundConstants c = lift_constants(2, m / 2, n);
      rep.c_quantified = rep.lambda_min_matrix >= 0.0 ? c.c1 : c.c2;
      rep.bound_checked = true;
    } else {
      rep.c_quantified = lift_constants(2, (m - 1) / 2, n).c1;
      rep.bound_checked = rep.lambda_min_matrix > 0.0;
    }
    if (rep.bound_checked) {
      rep.bound_margin =
          rep.min_found - rep.c_quantified * rep.lambda_min_matrix;
      rep.bound_ok = rep.bound_margin >= -1e-8;
    }
  }
  return rep;
}

}  // namespace hankel
