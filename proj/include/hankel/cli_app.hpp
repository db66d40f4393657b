#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hankel/errors.hpp"
#include "hankel/hankel_tensor.hpp"
#include "hankel/io.hpp"
#include "hankel/linalg.hpp"
#include "hankel/products.hpp"
#include "hankel/random.hpp"
#include "hankel/sos.hpp"
#include "hankel/spectra.hpp"
#include "hankel/vandermonde.hpp"

namespace hankel {
namespace cli {

/// Resolves the effective seed: an explicit value wins, then the
/// HANKEL_SEED environment variable, then a fixed default so unseeded
/// runs are still reproducible.
inline std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed) {
  if (explicit_seed) return *explicit_seed;
  if (const char* env = std::getenv("HANKEL_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
    throw structure_error("HANKEL_SEED is not an unsigned integer");
  }
  return 1729;
}

namespace detail {

using hankel::detail::append_json_array;
using hankel::detail::json_number;

inline std::string json_vector(const Eigen::VectorXd& v) {
  std::string s;
  append_json_array(s, v);
  return s;
}

inline const char* json_bool(bool b) { return b ? "true" : "false"; }

/// Draws `count` values in (lo, hi) pairwise separated by `gap`.
inline Eigen::VectorXd separated_uniform(Rng& rng, int count, double lo,
                                         double hi, double gap) {
  Eigen::VectorXd out(count);
  for (int k = 0; k < count; ++k) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000)
        throw numeric_error("could not separate random poles", gap);
      const double v = rng.uniform(lo, hi);
      bool ok = true;
      for (int j = 0; j < k; ++j)
        if (std::abs(out[j] - v) < gap) ok = false;
      if (ok) {
        out[k] = v;
        break;
      }
    }
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
  std::string kind;  ///< hilbert | planted-vandermonde | random-strong | from-file
  int order = 4;
  int dim = 5;
  std::optional<std::uint64_t> seed;
  std::vector<double> poles;  ///< planted: explicit poles (random when empty)
  int pole_count = 3;
  bool corner = false;
  std::string input;  ///< from-file: source path
};

/// Builds the requested tensor file in memory.
inline TensorFile generate(const GenOptions& opt) {
  TensorFile tf;
  if (opt.kind == "from-file") {
    tf = read_tensor_file(opt.input);
    return tf;
  }
  if (opt.order < 1 || opt.dim < 1)
    throw dimension_error("gen: order and dim must be positive");

  if (opt.kind == "hilbert") {
    const HankelTensor t = hilbert_tensor(opt.order, opt.dim);
    tf.order = opt.order;
    tf.dim = opt.dim;
    tf.generator = t.generator();
    tf.metadata.name = "hilbert";
    return tf;
  }

  const std::uint64_t seed = resolve_seed(opt.seed);
  Rng rng(seed);

  if (opt.kind == "planted-vandermonde") {
    VandermondeDecomposition dec;
    dec.order = opt.order;
    dec.dim = opt.dim;
    if (!opt.poles.empty()) {
      dec.poles = Eigen::Map<const Eigen::VectorXd>(
          opt.poles.data(), static_cast<Eigen::Index>(opt.poles.size()));
    } else {
      dec.poles = detail::separated_uniform(rng, opt.pole_count, 0.0, 1.0, 1e-3);
    }
    std::sort(dec.poles.data(), dec.poles.data() + dec.poles.size(),
              std::greater<double>());
    dec.alphas = Eigen::VectorXd::Ones(dec.poles.size());
    dec.alpha_inf = opt.corner ? 1.0 : 0.0;
    const HankelTensor t = reconstruct(dec);
    tf.order = opt.order;
    tf.dim = opt.dim;
    tf.generator = t.generator();
    tf.metadata.name = "planted-vandermonde";
    tf.metadata.seed = seed;
    tf.metadata.poles = dec.poles;
    tf.metadata.alphas = dec.alphas;
    if (dec.alpha_inf > 0.0) tf.metadata.alpha_inf = dec.alpha_inf;
    return tf;
  }

  if (opt.kind == "random-strong") {
    // Strong Hankel tensors are exactly the positive pole mixtures (plus
    // an optional corner term), so sampling one means sampling that
    // structure; unlike planted-vandermonde the ground truth is not
    // recorded, making these blind property-test instances.
    const long total = static_cast<long>(opt.order) * (opt.dim - 1);
    if (total % 2 != 0)
      throw structure_error(
          "random-strong needs an associated Hankel matrix: m(n-1) must be even");
    const int s = static_cast<int>(total / 2) + 1;
    const int r = 1 + static_cast<int>(rng.integer(
                          0, static_cast<std::uint64_t>(std::max(1, s - 2))));
    VandermondeDecomposition dec;
    dec.order = opt.order;
    dec.dim = opt.dim;
    dec.poles = detail::separated_uniform(rng, r, -0.95, 0.95, 1e-2);
    std::sort(dec.poles.data(), dec.poles.data() + dec.poles.size(),
              std::greater<double>());
    dec.alphas.resize(r);
    for (int k = 0; k < r; ++k) dec.alphas[k] = rng.uniform(0.1, 2.0);
    dec.alpha_inf = opt.corner ? rng.uniform(0.1, 2.0) : 0.0;
    const HankelTensor t = reconstruct(dec);
    tf.order = opt.order;
    tf.dim = opt.dim;
    tf.generator = t.generator();
    tf.metadata.name = "random-strong";
    tf.metadata.seed = seed;
    return tf;
  }

  throw structure_error("gen: unknown kind '" + opt.kind +
                        "' (expected hilbert, planted-vandermonde, "
                        "random-strong, or from-file)");
}

inline int cmd_gen(const GenOptions& opt, const std::string& out_path,
                   std::ostream& out) {
  const TensorFile tf = generate(opt);
  if (out_path.empty() || out_path == "-") {
    out << tensor_file_json(tf);
  } else {
    write_tensor_file(out_path, tf);
    out << "wrote " << out_path << " (order " << tf.order << ", dim "
        << tf.dim << ", generator length " << tf.generator.size() << ")\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// eval

struct EvalOptions {
  std::string path;
  std::vector<double> x;
  std::string method = "conv";  ///< naive | fft | conv
  bool verify = false;          ///< cross-check all three methods
  bool json = false;
};

inline int cmd_eval(const EvalOptions& opt, std::ostream& out) {
  const TensorFile tf = read_tensor_file(opt.path);
  const HankelTensor t = tf.tensor();
  if (static_cast<int>(opt.x.size()) != t.dim())
    throw dimension_error("eval: x has length " +
                          std::to_string(opt.x.size()) + " but dim is " +
                          std::to_string(t.dim()));
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(
      opt.x.data(), static_cast<Eigen::Index>(opt.x.size()));

  const auto value_by = [&](const std::string& method) {
    if (method == "naive")
      return tvp_naive(t, std::vector<Eigen::VectorXd>(
                              static_cast<std::size_t>(t.order()), x));
    if (method == "fft")
      return tvp_fft(t, std::vector<Eigen::VectorXd>(
                            static_cast<std::size_t>(t.order()), x));
    if (method == "conv") return poly_eval(t, x);
    throw structure_error("eval: unknown method '" + method +
                          "' (expected naive, fft, or conv)");
  };

  const double value = value_by(opt.method);
  if (opt.verify) {
    const double naive = value_by("naive");
    const double fft = value_by("fft");
    const double conv = value_by("conv");
    const double scale = std::max(1.0, std::abs(naive));
    const double gap = std::max(std::abs(naive - fft), std::abs(naive - conv)) / scale;
    if (opt.json) {
      out << "{\"value\": " << detail::json_number(value)
          << ", \"method\": \"" << opt.method << "\""
          << ", \"naive\": " << detail::json_number(naive)
          << ", \"fft\": " << detail::json_number(fft)
          << ", \"conv\": " << detail::json_number(conv)
          << ", \"cross_check_gap\": " << detail::json_number(gap) << "}\n";
    } else {
      out << "naive " << detail::json_number(naive) << "\n"
          << "fft   " << detail::json_number(fft) << "\n"
          << "conv  " << detail::json_number(conv) << "\n"
          << "max relative gap " << detail::json_number(gap) << "\n";
    }
    return 0;
  }
  if (opt.json) {
    out << "{\"value\": " << detail::json_number(value) << ", \"method\": \""
        << opt.method << "\"}\n";
  } else {
    out << detail::json_number(value) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sos

struct SosOptions {
  std::string path;
  double tol = 1e-10;
  bool json = false;  ///< suppress the human-readable rendering
};

inline int cmd_sos(const SosOptions& opt, std::ostream& out) {
  const TensorFile tf = read_tensor_file(opt.path);
  const SOSDecomposition dec = sos_decompose(tf.tensor(), opt.tol);

  std::string json = "{\"q\": " + std::to_string(dec.q) + ", \"terms\": [";
  for (std::size_t k = 0; k < dec.terms.size(); ++k) {
    if (k > 0) json += ", ";
    json += detail::json_vector(dec.terms[k]);
  }
  json += "]}";

  if (!opt.json) {
    out << "sum of " << dec.terms.size() << " squares of degree-" << dec.q
        << " forms p_k(y) = c_k . y^{*" << dec.q << "}\n";
    for (std::size_t k = 0; k < dec.terms.size(); ++k)
      out << "  c_" << (k + 1) << " = " << detail::json_vector(dec.terms[k])
          << "\n";
  }
  out << json << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// avd

struct AvdOptions {
  std::string path;
  std::optional<double> gamma;
  double tol = 1e-10;
  bool json = false;
};

inline std::string avd_json(const VandermondeDecomposition& dec) {
  std::string json = "{\"poles\": " + detail::json_vector(dec.poles);
  json += ", \"alphas\": " + detail::json_vector(dec.alphas);
  json += ", \"alpha_inf\": " + detail::json_number(dec.alpha_inf);
  json += ", \"order\": " + std::to_string(dec.order);
  json += ", \"dim\": " + std::to_string(dec.dim) + "}";
  return json;
}

inline int cmd_avd(const AvdOptions& opt, std::ostream& out) {
  const TensorFile tf = read_tensor_file(opt.path);
  const VandermondeDecomposition dec =
      avd_decompose(tf.tensor(), opt.tol, opt.gamma);

  if (!opt.json) {
    out << dec.term_count() << " terms (order " << dec.order << ", dim "
        << dec.dim << ")\n";
    for (Eigen::Index k = 0; k < dec.poles.size(); ++k)
      out << "  pole " << detail::json_number(dec.poles[k]) << "  coefficient "
          << detail::json_number(dec.alphas[k]) << "\n";
    if (dec.alpha_inf > 0.0)
      out << "  corner (last coordinate direction)  coefficient "
          << detail::json_number(dec.alpha_inf) << "\n";
  }
  out << avd_json(dec) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// heig

struct HeigOptions {
  std::string path;
  int starts = 500;
  std::optional<std::uint64_t> seed;
  bool json = false;
};

inline int cmd_heig(const HeigOptions& opt, std::ostream& out) {
  const TensorFile tf = read_tensor_file(opt.path);
  const HankelTensor t = tf.tensor();
  const std::uint64_t seed = resolve_seed(opt.seed);

  std::vector<HEigenPair> pairs;
  bool exhaustive = false;
  if (t.dim() <= 3 && t.order() <= 6) {
    pairs = heig_all_small(t);
    exhaustive = true;
  } else {
    pairs = heig_search(t, opt.starts, seed);
  }

  if (!opt.json) {
    out << (exhaustive ? "exhaustive search" : "multi-start search") << ": "
        << pairs.size() << " distinct eigenpair(s)";
    if (!exhaustive) out << " from " << opt.starts << " starts, seed " << seed;
    out << "\n";
    for (const HEigenPair& p : pairs)
      out << "  lambda " << detail::json_number(p.lambda) << "  x "
          << detail::json_vector(p.x) << "  residual "
          << detail::json_number(p.residual) << "\n";
  }
  std::string json = "{\"exhaustive\": ";
  json += detail::json_bool(exhaustive);
  json += ", \"starts\": " + std::to_string(exhaustive ? 0 : opt.starts);
  json += ", \"seed\": " + std::to_string(seed);
  json += ", \"pairs\": [";
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (k > 0) json += ", ";
    json += "{\"lambda\": " + detail::json_number(pairs[k].lambda);
    json += ", \"x\": " + detail::json_vector(pairs[k].x);
    json += ", \"residual\": " + detail::json_number(pairs[k].residual) + "}";
  }
  json += "]}";
  out << json << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string path;
  std::string property;  ///< first | second
  int q = 2;
  int samples = 100;
  int starts = 500;
  std::optional<std::uint64_t> seed;
  double tol = 1e-12;  ///< identity tolerance for --property first
  bool json = false;
};

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  const TensorFile tf = read_tensor_file(opt.path);
  const HankelTensor t = tf.tensor();
  const std::uint64_t seed = resolve_seed(opt.seed);

  if (opt.property == "first") {
    const FirstInheritanceReport rep =
        check_first_inheritance(t, opt.q, opt.samples, seed);
    const bool identity_ok = rep.identity_gap <= opt.tol;
    const bool ok = identity_ok &&
                    (!rep.spectra_checked ||
                     (rep.min_bound_ok && rep.max_bound_ok));
    if (!opt.json) {
      out << "first inheritance: order " << rep.order_low << " dim "
          << rep.dim_low << " lifted to order " << rep.order_high << " dim "
          << rep.dim_high << " (q = " << rep.q << ")\n";
      out << "  evaluation identity gap " << detail::json_number(rep.identity_gap)
          << " over " << rep.samples << " samples (tol "
          << detail::json_number(opt.tol) << ") -> "
          << (identity_ok ? "ok" : "VIOLATED") << "\n";
      if (rep.spectra_checked) {
        out << "  lambda range low  [" << detail::json_number(rep.lambda_min_low)
            << ", " << detail::json_number(rep.lambda_max_low) << "]\n";
        out << "  lambda range high [" << detail::json_number(rep.lambda_min_high)
            << ", " << detail::json_number(rep.lambda_max_high) << "]\n";
        out << "  constants c1 " << detail::json_number(rep.c1) << "  c2 "
            << detail::json_number(rep.c2) << "\n";
        out << "  min bound (c = " << detail::json_number(rep.c_min_used)
            << ") -> " << (rep.min_bound_ok ? "ok" : "VIOLATED") << "\n";
        out << "  max bound (c = " << detail::json_number(rep.c_max_used)
            << ") -> " << (rep.max_bound_ok ? "ok" : "VIOLATED") << "\n";
      } else {
        out << "  eigen bounds skipped (exhaustive search needs dim <= 3 "
               "and lifted order <= 6)\n";
      }
    }
    std::string json = "{\"property\": \"first\"";
    json += ", \"order_low\": " + std::to_string(rep.order_low);
    json += ", \"dim_low\": " + std::to_string(rep.dim_low);
    json += ", \"order_high\": " + std::to_string(rep.order_high);
    json += ", \"dim_high\": " + std::to_string(rep.dim_high);
    json += ", \"q\": " + std::to_string(rep.q);
    json += ", \"samples\": " + std::to_string(rep.samples);
    json += ", \"seed\": " + std::to_string(rep.seed);
    json += ", \"identity_gap\": " + detail::json_number(rep.identity_gap);
    json += ", \"identity_tol\": " + detail::json_number(opt.tol);
    json += std::string(", \"spectra_checked\": ") +
            detail::json_bool(rep.spectra_checked);
    if (rep.spectra_checked) {
      json += ", \"lambda_min_low\": " + detail::json_number(rep.lambda_min_low);
      json += ", \"lambda_max_low\": " + detail::json_number(rep.lambda_max_low);
      json +=
          ", \"lambda_min_high\": " + detail::json_number(rep.lambda_min_high);
      json +=
          ", \"lambda_max_high\": " + detail::json_number(rep.lambda_max_high);
      json += ", \"witness_min_high\": " +
              detail::json_vector(rep.witness_min_high);
      json += ", \"c1\": " + detail::json_number(rep.c1);
      json += ", \"c2\": " + detail::json_number(rep.c2);
      json += ", \"c_min_used\": " + detail::json_number(rep.c_min_used);
      json += ", \"c_max_used\": " + detail::json_number(rep.c_max_used);
      json += ", \"bound_tol\": 1e-08";
      json += std::string(", \"min_bound_ok\": ") +
              detail::json_bool(rep.min_bound_ok);
      json += std::string(", \"max_bound_ok\": ") +
              detail::json_bool(rep.max_bound_ok);
    }
    json += std::string(", \"ok\": ") + detail::json_bool(ok) + "}";
    out << json << "\n";
    return ok ? 0 : 1;
  }

  if (opt.property == "second") {
    const SecondInheritanceReport rep =
        check_second_inheritance(t, opt.starts, seed);
    const bool sign_ok = !rep.matrix_psd || !rep.any_pair_found ||
                         rep.min_found >= -1e-8;
    const bool ok = sign_ok && (!rep.bound_checked || rep.bound_ok);
    if (!opt.json) {
      out << "second inheritance: order " << rep.order << " dim " << rep.dim
          << "\n";
      out << "  associated matrix lambda range ["
          << detail::json_number(rep.lambda_min_matrix) << ", "
          << detail::json_number(rep.lambda_max_matrix) << "]  "
          << (rep.matrix_psd ? "PSD (strong Hankel tensor)" : "indefinite")
          << "\n";
      if (rep.any_pair_found) {
        out << "  eigen search (" << rep.starts << " starts"
            << (rep.exhaustive ? " + exhaustive" : "") << ", seed " << rep.seed
            << "): " << rep.pairs_found << " pair(s), min "
            << detail::json_number(rep.min_found) << "\n";
      } else {
        out << "  eigen search (" << rep.starts << " starts, seed " << rep.seed
            << "): no H-eigenpairs found (possible for odd order)\n";
      }
      if (rep.matrix_psd && rep.any_pair_found)
        out << "  nonnegativity -> " << (sign_ok ? "ok" : "VIOLATED") << "\n";
      if (rep.bound_checked) {
        out << "  quantified bound lambda_min(T) >= c * lambda_min(H) with c "
            << detail::json_number(rep.c_quantified) << ", margin "
            << detail::json_number(rep.bound_margin) << " -> "
            << (rep.bound_ok ? "ok" : "VIOLATED") << "\n";
      } else {
        out << "  quantified bound not asserted ("
            << (rep.any_pair_found ? "odd order without PD matrix"
                                   : "no pairs found")
            << ")\n";
      }
    }
    std::string json = "{\"property\": \"second\"";
    json += ", \"order\": " + std::to_string(rep.order);
    json += ", \"dim\": " + std::to_string(rep.dim);
    json +=
        ", \"lambda_min_matrix\": " + detail::json_number(rep.lambda_min_matrix);
    json +=
        ", \"lambda_max_matrix\": " + detail::json_number(rep.lambda_max_matrix);
    json += std::string(", \"matrix_psd\": ") + detail::json_bool(rep.matrix_psd);
    json += ", \"starts\": " + std::to_string(rep.starts);
    json += ", \"seed\": " + std::to_string(rep.seed);
    json += ", \"pairs_found\": " + std::to_string(rep.pairs_found);
    json += std::string(", \"any_pair_found\": ") +
            detail::json_bool(rep.any_pair_found);
    json += std::string(", \"exhaustive\": ") + detail::json_bool(rep.exhaustive);
    if (rep.any_pair_found) {
      json += ", \"min_found\": " + detail::json_number(rep.min_found);
      json += ", \"min_witness\": " + detail::json_vector(rep.min_witness);
    }
    json += ", \"c_quantified\": " + detail::json_number(rep.c_quantified);
    json += std::string(", \"bound_checked\": ") +
            detail::json_bool(rep.bound_checked);
    if (rep.bound_checked) {
      json += ", \"bound_margin\": " + detail::json_number(rep.bound_margin);
      json += ", \"bound_tol\": 1e-08";
      json += std::string(", \"bound_ok\": ") + detail::json_bool(rep.bound_ok);
    }
    json += std::string(", \"ok\": ") + detail::json_bool(ok) + "}";
    out << json << "\n";
    return ok ? 0 : 1;
  }

  throw structure_error("verify: unknown property '" + opt.property +
                        "' (expected first or second)");
}

// ---------------------------------------------------------------------------
// repro

namespace detail {

inline double rel_gap(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(a));
}

inline bool report(std::ostream& out, const std::string& label, bool ok,
                   const std::string& detail_text) {
  out << "  [" << (ok ? "PASS" : "FAIL") << "] " << label;
  if (!detail_text.empty()) out << " (" << detail_text << ")";
  out << "\n";
  return ok;
}

}  // namespace detail

/// Scripted end-to-end scenario 1: the alternating quartic whose
/// associated 5x5 matrix factorizes with weights (3, 2) and whose SOS
/// terms are the even/odd indicator generators.
inline int repro_alternating_quartic(std::ostream& out) {
  out << "scenario 1: alternating quartic sum-of-squares\n";
  bool all = true;

  Eigen::VectorXd h(9);
  for (int j = 0; j < 9; ++j) h[j] = (j % 2 == 0) ? 1.0 : 0.0;
  const HankelTensor t = make_hankel(h, 4, 3);

  const TakagiFactorization f = takagi_psd(associated_matrix(t));
  all &= detail::report(out, "factor rank 2", f.rank == 2,
                        "rank " + std::to_string(f.rank));
  const double d_gap = f.rank >= 2
                           ? std::max(std::abs(f.d[0] - 3.0),
                                      std::abs(f.d[1] - 2.0))
                           : 1.0;
  all &= detail::report(out, "weights (3, 2) within 1e-12", d_gap <= 1e-12,
                        "gap " + detail::json_number(d_gap));

  const SOSDecomposition dec = sos_decompose(t);
  bool terms_ok = dec.terms.size() == 2;
  if (terms_ok) {
    Eigen::VectorXd even(5), odd(5);
    even << 1, 0, 1, 0, 1;
    odd << 0, 1, 0, 1, 0;
    const auto matches = [](const Eigen::VectorXd& term,
                            const Eigen::VectorXd& ref) {
      return (term - ref).cwiseAbs().maxCoeff() <= 1e-12 ||
             (term + ref).cwiseAbs().maxCoeff() <= 1e-12;
    };
    terms_ok = (matches(dec.terms[0], even) && matches(dec.terms[1], odd)) ||
               (matches(dec.terms[0], odd) && matches(dec.terms[1], even));
  }
  all &= detail::report(out, "terms are the even/odd generators", terms_ok, "");

  Rng rng(42);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::VectorXd y = rng.vector(3, -1.0, 1.0);
    worst = std::max(
        worst, detail::rel_gap(poly_eval(t, y), sos_eval(dec, y).value));
  }
  all &= detail::report(out, "sos value equals polynomial on 100 samples",
                        worst <= 1e-10, "worst gap " + detail::json_number(worst));

  out << (all ? "scenario 1: PASS\n" : "scenario 1: FAIL\n");
  return all ? 0 : 1;
}

/// Scripted end-to-end scenario 2: the uniform-moment tensor (m=4, n=5)
/// whose decomposition under the natural closure value 1/18 is the
/// 9-point quadrature table.
inline int repro_moment_quadrature(std::ostream& out) {
  out << "scenario 2: uniform-moment tensor quadrature table\n";
  bool all = true;

  const HankelTensor t = hilbert_tensor(4, 5);
  const VandermondeDecomposition dec =
      avd_decompose(t, 1e-15, 1.0 / 18.0);

  static const double kNodes[9] = {0.9841, 0.9180, 0.8067, 0.6621, 0.5000,
                                   0.3379, 0.1933, 0.0820, 0.0159};
  static const double kWeights[9] = {0.0406, 0.0903, 0.1303, 0.1562, 0.1651,
                                     0.1562, 0.1303, 0.0903, 0.0406};

  all &= detail::report(out, "9 poles, no corner term",
                        dec.poles.size() == 9 && dec.alpha_inf == 0.0,
                        std::to_string(dec.poles.size()) + " poles");
  if (dec.poles.size() == 9) {
    double worst = 0.0;
    bool positive = true;
    for (int k = 0; k < 9; ++k) {
      worst = std::max(worst, std::abs(dec.poles[k] - kNodes[k]));
      worst = std::max(worst, std::abs(dec.alphas[k] - kWeights[k]));
      positive &= dec.alphas[k] > 0.0;
    }
    all &= detail::report(out, "table match within 5e-4", worst <= 5e-4,
                          "worst " + detail::json_number(worst));
    all &= detail::report(out, "all coefficients positive", positive, "");
  } else {
    all = false;
  }

  const Eigen::VectorXd back = reconstruct(dec).generator();
  const double recon =
      (back - t.generator()).cwiseAbs().maxCoeff() /
      std::max(1.0, t.generator().cwiseAbs().maxCoeff());
  all &= detail::report(out, "reconstruction within 1e-8", recon <= 1e-8,
                        "gap " + detail::json_number(recon));

  out << (all ? "scenario 2: PASS\n" : "scenario 2: FAIL\n");
  return all ? 0 : 1;
}

/// Scripted end-to-end scenario 3: repeated recovery of two random poles
/// planted with a zero pole and a unit corner term at m=4, n=10.
inline int repro_planted_recovery(std::ostream& out, std::uint64_t seed,
                                  int trials = 100) {
  out << "scenario 3: planted pole recovery over " << trials
      << " trials (seed " << seed << ")\n";
  bool all = true;

  Rng rng(seed);
  double err_sum = 0.0;
  int err_count = 0;
  int corners = 0;
  double alpha_inf_worst = 0.0;
  bool structure_ok = true;

  for (int trial = 0; trial < trials; ++trial) {
    // Two scalars uniform in (0,1), separated from each other and from the
    // planted zero pole.
    const Eigen::VectorXd xi = detail::separated_uniform(rng, 2, 1e-3, 1.0, 1e-3);
    VandermondeDecomposition planted;
    planted.order = 4;
    planted.dim = 10;
    planted.poles.resize(3);
    planted.poles << std::max(xi[0], xi[1]), std::min(xi[0], xi[1]), 0.0;
    planted.alphas = Eigen::VectorXd::Ones(3);
    planted.alpha_inf = 1.0;

    const HankelTensor t = reconstruct(planted);
    const VandermondeDecomposition rec = avd_decompose(t);

    if (rec.alpha_inf > 0.0) {
      ++corners;
      alpha_inf_worst =
          std::max(alpha_inf_worst, std::abs(rec.alpha_inf - 1.0));
    }
    if (rec.poles.size() != 3) {
      structure_ok = false;
      continue;
    }
    for (int i = 0; i < 2; ++i) {
      const double truth = planted.poles[i];
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index k = 0; k < rec.poles.size(); ++k)
        best = std::min(best, std::abs(rec.poles[k] - truth));
      err_sum += best / truth;
      ++err_count;
    }
  }

  const double mean_err = err_count > 0 ? err_sum / err_count : 1.0;
  all &= detail::report(out, "3 poles recovered in every trial", structure_ok,
                        "");
  all &= detail::report(
      out, "corner detected in every trial", corners == trials,
      std::to_string(corners) + "/" + std::to_string(trials));
  all &= detail::report(out, "corner coefficient within 1e-6 of 1",
                        alpha_inf_worst <= 1e-6,
                        "worst " + detail::json_number(alpha_inf_worst));
  all &= detail::report(out, "mean relative pole error <= 1e-8",
                        mean_err <= 1e-8,
                        "mean " + detail::json_number(mean_err));

  out << (all ? "scenario 3: PASS\n" : "scenario 3: FAIL\n");
  return all ? 0 : 1;
}

inline int cmd_repro(int which, std::optional<std::uint64_t> seed,
                     std::ostream& out) {
  switch (which) {
    case 1:
      return repro_alternating_quartic(out);
    case 2:
      return repro_moment_quadrature(out);
    case 3:
      return repro_planted_recovery(out, resolve_seed(seed));
    default:
      throw structure_error("repro: scenario must be 1, 2, or 3");
  }
}

}  // namespace cli
}  // namespace hankel
