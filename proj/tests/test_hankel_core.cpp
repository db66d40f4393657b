#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hankel/hankel_tensor.hpp"
#include "hankel/products.hpp"
#include "hankel/random.hpp"

namespace {

using hankel::HankelTensor;

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Generator of the running rank-2 quartic example: alternating 1/0 pattern,
// order 4, dimension 3.
HankelTensor alternating_quartic() {
  return hankel::make_hankel(vec({1, 0, 1, 0, 1, 0, 1, 0, 1}), 4, 3);
}

HankelTensor random_tensor(hankel::Rng& rng, int m, int n) {
  return hankel::make_hankel(rng.vector(m * (n - 1) + 1, -1.0, 1.0), m, n);
}

std::vector<Eigen::VectorXd> repeated(const Eigen::VectorXd& x, int m) {
  return std::vector<Eigen::VectorXd>(static_cast<std::size_t>(m), x);
}

TEST(MakeHankel, EntryAccessor) {
  const HankelTensor t = alternating_quartic();
  EXPECT_DOUBLE_EQ(t.entry({0, 0, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(t.entry({0, 0, 0, 1}), 0.0);
  EXPECT_DOUBLE_EQ(t.entry({2, 2, 2, 2}), 1.0);
  EXPECT_DOUBLE_EQ(t.entry({1, 0, 1, 0}), 1.0);
}

TEST(MakeHankel, ZeroTensorAndMatrixCase) {
  const HankelTensor z = hankel::make_hankel(Eigen::VectorXd::Zero(4), 3, 2);
  EXPECT_DOUBLE_EQ(z.entry({1, 1, 1}), 0.0);

  const HankelTensor a = hankel::make_hankel(vec({1, 2, 3}), 2, 2);
  EXPECT_DOUBLE_EQ(a.entry({0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(a.entry({0, 1}), 2.0);
  EXPECT_DOUBLE_EQ(a.entry({1, 0}), 2.0);
  EXPECT_DOUBLE_EQ(a.entry({1, 1}), 3.0);
}

TEST(MakeHankel, LengthMismatchNamesExpectedLength) {
  try {
    hankel::make_hankel(Eigen::VectorXd::Zero(5), 4, 3);
    FAIL() << "expected dimension_error";
  } catch (const hankel::dimension_error& e) {
    EXPECT_NE(std::string(e.what()).find("9"), std::string::npos);
  }
}

TEST(HilbertTensor, GeneratorEntries) {
  const HankelTensor t = hankel::hilbert_tensor(4, 5);
  ASSERT_EQ(t.generator().size(), 17);
  for (int j = 0; j < 17; ++j) EXPECT_DOUBLE_EQ(t.generator()[j], 1.0 / (j + 1));

  const HankelTensor one = hankel::hilbert_tensor(2, 1);
  ASSERT_EQ(one.generator().size(), 1);
  EXPECT_DOUBLE_EQ(one.generator()[0], 1.0);

  const HankelTensor m22 = hankel::hilbert_tensor(2, 2);
  EXPECT_DOUBLE_EQ(m22.entry({0, 1}), 0.5);
  EXPECT_DOUBLE_EQ(m22.entry({1, 1}), 1.0 / 3.0);
}

TEST(AssociatedMatrix, SharesGenerator) {
  const HankelTensor t = alternating_quartic();
  const hankel::HankelMatrix h = hankel::associated_matrix(t);
  EXPECT_EQ(h.size(), 5);
  EXPECT_TRUE(h.generator().isApprox(t.generator()));
  EXPECT_DOUBLE_EQ(h(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(h(4, 4), 1.0);
  EXPECT_DOUBLE_EQ(h(0, 1), 0.0);

  const HankelTensor mat = hankel::make_hankel(vec({1, 2, 3}), 2, 2);
  EXPECT_EQ(hankel::associated_matrix(mat).size(), 2);

  const HankelTensor odd = hankel::make_hankel(vec({1, 0, 0, 0}), 3, 2);
  EXPECT_THROW(hankel::associated_matrix(odd), hankel::structure_error);
}

TEST(HigherOrderAssociate, LiftAndIdentity) {
  hankel::Rng rng(11);
  const HankelTensor low = random_tensor(rng, 2, 5);
  const HankelTensor high = hankel::higher_order_associate(low, 2);
  EXPECT_EQ(high.order(), 4);
  EXPECT_EQ(high.dim(), 3);
  EXPECT_TRUE(high.generator().isApprox(low.generator()));

  const HankelTensor same = hankel::higher_order_associate(low, 1);
  EXPECT_EQ(same.order(), 2);
  EXPECT_EQ(same.dim(), 5);

  EXPECT_THROW(hankel::higher_order_associate(low, 3), hankel::dimension_error);

  // The alternating quartic is the q=2 lift of its own associated matrix.
  const HankelTensor t = alternating_quartic();
  const hankel::HankelMatrix assoc = hankel::associated_matrix(t);
  const HankelTensor relift =
      hankel::higher_order_associate(hankel::make_hankel(assoc.generator(), 2, assoc.size()), 2);
  EXPECT_EQ(relift.order(), t.order());
  EXPECT_EQ(relift.dim(), t.dim());
  EXPECT_TRUE(relift.generator().isApprox(t.generator()));
}

TEST(AntiCirculantEmbedding, SpectralDiagonalIsInverseDft) {
  hankel::Rng rng(21);
  const HankelTensor t = random_tensor(rng, 3, 4);
  const hankel::AntiCirculantEmbedding emb(t);
  const int n = emb.embedding_dim();
  EXPECT_EQ(n, 10);

  const Eigen::VectorXd& h = t.generator();
  for (int j = 0; j < n; ++j) {
    std::complex<double> sum{0.0, 0.0};
    for (int k = 0; k < n; ++k)
      sum += h[k] * std::polar(1.0, 2.0 * std::numbers::pi * j * k / n);
    sum /= static_cast<double>(n);
    EXPECT_LE(std::abs(emb.spectral()[j] - sum), 1e-12);
  }
}

TEST(AntiCirculantEmbedding, LeadingSubtensorMatchesSource) {
  // The dense anti-circulant tensor built from the periodic generator has
  // the Hankel tensor as its leading principal block.
  const HankelTensor t = hankel::make_hankel(vec({3, 1, 4, 1, 5}), 2, 3);
  const int big = static_cast<int>(t.generator().size());
  for (int i = 0; i < t.dim(); ++i) {
    for (int j = 0; j < t.dim(); ++j) {
      const double circ = t.generator()[(i + j) % big];
      EXPECT_DOUBLE_EQ(circ, t.entry({i, j}));
    }
  }
}

TEST(TvpNaive, CornersAndSymmetry) {
  hankel::Rng rng(31);
  const int m = 3, n = 4;
  const HankelTensor t = random_tensor(rng, m, n);
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(n);
  e1[0] = 1.0;
  Eigen::VectorXd en = Eigen::VectorXd::Zero(n);
  en[n - 1] = 1.0;
  EXPECT_DOUBLE_EQ(hankel::tvp_naive(t, repeated(e1, m)), t.generator()[0]);
  EXPECT_DOUBLE_EQ(hankel::tvp_naive(t, repeated(en, m)), t.generator()[m * (n - 1)]);

  std::vector<Eigen::VectorXd> xs;
  for (int k = 0; k < m; ++k) xs.push_back(rng.vector(n, -1.0, 1.0));
  const double base = hankel::tvp_naive(t, xs);
  std::vector<Eigen::VectorXd> perm = {xs[2], xs[0], xs[1]};
  EXPECT_NEAR(hankel::tvp_naive(t, perm), base, 1e-12 * (1.0 + std::abs(base)));

  EXPECT_THROW(hankel::tvp_naive(t, repeated(e1.head(2), m)), hankel::dimension_error);
}

TEST(TvpNaive, QuarticValueAtOnes) {
  // Against the closed form (y1^2+y2^2+y3^2+2 y1 y3)^2 + (2 y1 y2 + 2 y2 y3)^2
  // of the alternating quartic, which gives 25 + 16 at the all-ones vector.
  const HankelTensor t = alternating_quartic();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(3);
  EXPECT_NEAR(hankel::tvp_naive(t, repeated(ones, 4)), 41.0, 1e-12);
}

TEST(TvpFft, AgreesWithNaive) {
  hankel::Rng rng(41);
  for (int rep = 0; rep < 30; ++rep) {
    const int m = 2 + static_cast<int>(rng.integer(0, 2));
    const int n = 2 + static_cast<int>(rng.integer(0, 8));
    const HankelTensor t = random_tensor(rng, m, n);
    std::vector<Eigen::VectorXd> xs;
    for (int k = 0; k < m; ++k) xs.push_back(rng.vector(n, -1.0, 1.0));
    const double naive = hankel::tvp_naive(t, xs);
    const double fast = hankel::tvp_fft(t, xs);
    EXPECT_LE(std::abs(fast - naive), 1e-10 * (1.0 + std::abs(naive))) << "m=" << m << " n=" << n;
  }
}

TEST(TvpFft, CornerAndHilbertValues) {
  const HankelTensor t = alternating_quartic();
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(3);
  e1[0] = 1.0;
  EXPECT_NEAR(hankel::tvp_fft(t, repeated(e1, 4)), 1.0, 1e-12);

  const HankelTensor hil = hankel::hilbert_tensor(4, 5);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(5);
  const double naive = hankel::tvp_naive(hil, repeated(ones, 4));
  const double fast = hankel::tvp_fft(hil, repeated(ones, 4));
  EXPECT_GT(fast, 0.0);
  EXPECT_LE(std::abs(fast - naive), 1e-10 * (1.0 + naive));
}

TEST(TvpFft, RectangularModeLengths) {
  // Unequal mode lengths, checked against direct summation over the
  // rectangular index box.
  hankel::Rng rng(51);
  const std::vector<int> dims = {3, 2, 4};
  const int len = (dims[0] - 1) + (dims[1] - 1) + (dims[2] - 1) + 1;
  const Eigen::VectorXd h = rng.vector(len, -1.0, 1.0);
  std::vector<Eigen::VectorXd> xs;
  for (int d : dims) xs.push_back(rng.vector(d, -1.0, 1.0));

  double want = 0.0;
  for (int i = 0; i < dims[0]; ++i)
    for (int j = 0; j < dims[1]; ++j)
      for (int k = 0; k < dims[2]; ++k) want += h[i + j + k] * xs[0][i] * xs[1][j] * xs[2][k];

  const double got = hankel::detail::tvp_fft_rect(h, xs);
  EXPECT_LE(std::abs(got - want), 1e-10 * (1.0 + std::abs(want)));
}

TEST(PolyEval, MatchesNaiveAndConvolutionIdentity) {
  hankel::Rng rng(61);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 2 + static_cast<int>(rng.integer(0, 2));
    const int n = 2 + static_cast<int>(rng.integer(0, 6));
    const HankelTensor t = random_tensor(rng, m, n);
    const Eigen::VectorXd x = rng.vector(n, -1.0, 1.0);
    const double value = hankel::poly_eval(t, x);
    const double naive = hankel::tvp_naive(t, repeated(x, m));
    EXPECT_LE(std::abs(value - naive), 1e-10 * (1.0 + std::abs(naive)));

    const double conv = t.generator().dot(hankel::conv_power(x, m));
    EXPECT_LE(std::abs(value - conv), 1e-12 * (1.0 + std::abs(conv)));
  }

  const HankelTensor t = alternating_quartic();
  EXPECT_NEAR(hankel::poly_eval(t, Eigen::VectorXd::Ones(3)), 41.0, 1e-12);
}

TEST(OrderLifting, EvaluationIdentity) {
  // poly_eval(T_high, y) = poly_eval(T_low, y^{*q}) for lifts of the same
  // generator.
  hankel::Rng rng(71);
  const std::vector<std::array<int, 3>> cases = {{2, 2, 5}, {2, 3, 7}, {4, 2, 5}};
  for (const auto& [m, q, n] : cases) {
    const HankelTensor low = random_tensor(rng, m, n);
    const HankelTensor high = hankel::higher_order_associate(low, q);
    for (int rep = 0; rep < 30; ++rep) {
      const Eigen::VectorXd y = rng.vector(high.dim(), -1.0, 1.0);
      const double a = hankel::poly_eval(high, y);
      const double b = hankel::poly_eval(low, hankel::conv_power(y, q));
      EXPECT_LE(std::abs(a - b), 1e-12 * (1.0 + std::abs(b)));
    }
  }
}

TEST(GradEval, SliceAndMatrixCases) {
  hankel::Rng rng(81);
  const int n = 4;
  const HankelTensor t = random_tensor(rng, 3, n);
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(n);
  e1[0] = 1.0;
  const Eigen::VectorXd g = hankel::grad_eval(t, e1);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(g[i], t.generator()[i], 1e-14);

  const HankelTensor mat = random_tensor(rng, 2, 5);
  const Eigen::VectorXd x = rng.vector(5, -1.0, 1.0);
  const Eigen::VectorXd hx = hankel::associated_matrix(mat).dense() * x;
  EXPECT_TRUE(hankel::grad_eval(mat, x).isApprox(hx, 1e-12));
}

TEST(GradEval, MatchesDenseOracle) {
  hankel::Rng rng(91);
  const int m = 3, n = 4;
  const HankelTensor t = random_tensor(rng, m, n);
  const Eigen::VectorXd x = rng.vector(n, -1.0, 1.0);
  const Eigen::VectorXd g = hankel::grad_eval(t, x);

  for (int i = 0; i < n; ++i) {
    double want = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) want += t.entry({i, j, k}) * x[j] * x[k];
    EXPECT_NEAR(g[i], want, 1e-12 * (1.0 + std::abs(want)));
  }
}

TEST(GradEval, EulerIdentityAndFiniteDifferences) {
  hankel::Rng rng(102);
  for (int rep = 0; rep < 10; ++rep) {
    const int m = 2 + static_cast<int>(rng.integer(0, 2));
    const int n = 2 + static_cast<int>(rng.integer(0, 4));
    const HankelTensor t = random_tensor(rng, m, n);
    const Eigen::VectorXd x = rng.vector(n, -1.0, 1.0);
    const Eigen::VectorXd g = hankel::grad_eval(t, x);
    const double value = hankel::poly_eval(t, x);
    EXPECT_LE(std::abs(x.dot(g) - value), 1e-12 * (1.0 + std::abs(value)));

    // Central differences of poly_eval against the analytic gradient m*g.
    const double step = 1e-6;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd hi = x, lo = x;
      hi[i] += step;
      lo[i] -= step;
      const double fd = (hankel::poly_eval(t, hi) - hankel::poly_eval(t, lo)) / (2.0 * step);
      EXPECT_LE(std::abs(fd - m * g[i]), 1e-6 * (1.0 + std::abs(fd)));
    }
  }
}

TEST(HessEval, MatchesDenseOracle) {
  hankel::Rng rng(112);
  const int m = 4, n = 3;
  const HankelTensor t = random_tensor(rng, m, n);
  const Eigen::VectorXd x = rng.vector(n, -1.0, 1.0);
  const hankel::HankelMatrix slice = hankel::hess_eval(t, x);
  ASSERT_EQ(slice.size(), n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double want = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) want += t.entry({i, j, a, b}) * x[a] * x[b];
      EXPECT_NEAR(slice(i, j), want, 1e-12 * (1.0 + std::abs(want)));
    }
  }

  const HankelTensor mat = random_tensor(rng, 2, 4);
  const hankel::HankelMatrix self = hankel::hess_eval(mat, Eigen::VectorXd::Zero(4));
  EXPECT_TRUE(self.generator().isApprox(mat.generator()));
}

}  // namespace
