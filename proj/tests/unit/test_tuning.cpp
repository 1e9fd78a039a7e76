#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "gpgraph/estimators.hpp"
#include "gpgraph/kernels.hpp"
#include "gpgraph/recovery.hpp"
#include "gpgraph/tuning.hpp"

using namespace gpgraph;

namespace {

DiagBlocks scaled_identity_blocks(double base, int R) {
  // D / R has spectral norm `base`
  return diag_blocks(GramMatrix{base * R * Matrix::Identity(R, R)}, make_partition(R, 2));
}

// Standard normal quantile by bisection on erfc, used to build a smooth unimodal sample.
double normal_quantile(double prob) {
  double lo = -10, hi = 10;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (0.5 * std::erfc(-mid / std::sqrt(2.0)) < prob ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(LambdaGrid, CompleteDecades) {
  const auto g = lambda_grid(scaled_identity_blocks(1.0, 4), RidgeRegime::Complete);
  ASSERT_EQ(g.values.size(), 15u);
  for (int j = 0; j < 15; ++j) EXPECT_NEAR(g.values[j], std::pow(10.0, -j), 1e-12 * std::pow(10.0, -j));
}

TEST(LambdaGrid, DiscreteEndpoints) {
  const auto g = lambda_grid(scaled_identity_blocks(1.0, 4), RidgeRegime::Discrete);
  ASSERT_EQ(g.values.size(), 15u);
  EXPECT_NEAR(*std::max_element(g.values.begin(), g.values.end()), 10.0, 1e-12);
  EXPECT_NEAR(*std::min_element(g.values.begin(), g.values.end()), 0.01, 1e-15);
  EXPECT_TRUE(std::is_sorted(g.values.rbegin(), g.values.rend()));
}

TEST(LambdaGrid, LinearInBase) {
  const auto a = lambda_grid(scaled_identity_blocks(1.0, 4), RidgeRegime::Complete);
  const auto b = lambda_grid(scaled_identity_blocks(2.0, 4), RidgeRegime::Complete);
  for (std::size_t j = 0; j < a.values.size(); ++j) EXPECT_NEAR(b.values[j], 2 * a.values[j], 1e-12 * a.values[j]);
}

TEST(LambdaGrid, ZeroBaseThrows) {
  EXPECT_THROW(lambda_grid(diag_blocks(GramMatrix{Matrix::Zero(4, 4)}, make_partition(4, 2)), RidgeRegime::Complete),
               EstimationError);
}

TEST(RidgeCv, ScalarClosedForm) {
  const int R = 6;
  const double d = 3.0;
  const GramMatrix constant{d * Matrix::Identity(R, R)};
  const auto part = make_partition(R, 3);
  const auto grid = lambda_grid(diag_blocks(constant, part), RidgeRegime::Complete);
  const auto sel = ridge_cv(10, [&](std::span<const int>) { return constant; }, constant, part, 5, grid);
  ASSERT_EQ(sel.criterion.size(), grid.values.size());
  for (std::size_t j = 0; j < grid.values.size(); ++j) {
    const double lam = grid.values[j], a = d / R;
    EXPECT_NEAR(sel.criterion[j], a * lam / (lam + a), 1e-12 * a);
  }
  EXPECT_EQ(sel.kappa, grid.values.back());
}

TEST(RidgeCv, DuplicatedCurvesPickSmallestRidge) {
  const auto g = gram(KernelKind::brownian(), Grid(20));
  Matrix one = sample_paths(g, 1, 3);
  const Matrix data = one.replicate(10, 1);
  const auto part = make_partition(20, 4);
  const auto full = empirical_cov(data);
  const auto grid = lambda_grid(diag_blocks(full, part), RidgeRegime::Complete);
  auto est = [&](std::span<const int> idx) {
    Matrix sub(idx.size(), data.cols());
    for (std::size_t k = 0; k < idx.size(); ++k) sub.row(k) = data.row(idx[k]);
    return empirical_cov(sub);
  };
  EXPECT_EQ(ridge_cv(10, est, full, part, 5, grid).kappa, grid.values.back());
}

TEST(RidgeCv, ResultOnGridAndFoldPermutationInvariant) {
  const auto g = gram(KernelKind::integrated_bm(), Grid(30));
  const Matrix data = sample_paths(g, 40, 17);
  Matrix shuffled = data;
  std::mt19937_64 rng(4);
  const auto bounds = fold_bounds(40, 5);
  for (int s = 0; s < 5; ++s) {
    std::vector<int> perm(bounds[s + 1] - bounds[s]);
    std::iota(perm.begin(), perm.end(), bounds[s]);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t k = 0; k < perm.size(); ++k) shuffled.row(bounds[s] + k) = data.row(perm[k]);
  }
  const auto part = make_partition(30, 5);
  auto run = [&](const Matrix& x) {
    auto est = [&](std::span<const int> idx) {
      Matrix sub(idx.size(), x.cols());
      for (std::size_t k = 0; k < idx.size(); ++k) sub.row(k) = x.row(idx[k]);
      return empirical_cov(sub);
    };
    const auto full = empirical_cov(x);
    const auto grid = lambda_grid(diag_blocks(full, part), RidgeRegime::Complete);
    const auto sel = ridge_cv(40, est, full, part, 5, grid);
    EXPECT_NE(std::find(grid.values.begin(), grid.values.end(), sel.kappa), grid.values.end());
    return sel.kappa;
  };
  EXPECT_EQ(run(data), run(shuffled));
}

TEST(RidgeCv, TooFewCurves) {
  EXPECT_THROW(fold_bounds(3, 5), EstimationError);
  EXPECT_EQ(fold_bounds(10, 3), (std::vector<int>{0, 3, 6, 10}));
}

TEST(Bandwidth, Silverman) {
  const std::vector<double> v{1, 2, 3, 4, 5};
  // sd = 1.5811, IQR = 2 -> 2 / 1.34 = 1.4925
  EXPECT_NEAR(silverman_bandwidth(v), 0.9 * (2 / 1.34) * std::pow(5.0, -0.2), 1e-12);
}

TEST(Candidates, BimodalSeparates) {
  const int p = 10;
  BlockNormMatrix bn{Matrix(p, p)};
  std::mt19937_64 rng(6);
  std::normal_distribution<double> z(0.0, 0.2);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) bn.norms(i, j) = std::pow(10.0, ((i + j) % 2 ? 0.0 : 8.0) + z(rng));
  bn.norms = 0.5 * (bn.norms + bn.norms.transpose()).eval();
  const auto c = threshold_candidates(bn);
  ASSERT_EQ(c.minima.size(), 1u);
  const double rho = c.minima[0];
  int wrong = 0;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) wrong += (bn.norms(i, j) > rho) != ((i + j) % 2 == 0);
  EXPECT_EQ(wrong, 0);
  EXPECT_EQ(deepest_valley(c), rho);
}

TEST(Candidates, ConstantHasNone) {
  const auto c = threshold_candidates(BlockNormMatrix{Matrix::Constant(5, 5, 2.0)});
  EXPECT_TRUE(c.minima.empty());
  EXPECT_TRUE(c.elbows.empty());
  EXPECT_EQ(deepest_valley(c), 0.0);
}

TEST(Candidates, UnimodalHasNoMinima) {
  const int p = 12, n = p * p;
  BlockNormMatrix bn{Matrix(p, p)};
  for (int k = 0; k < n; ++k) bn.norms(k % p, k / p) = std::pow(10.0, 3.0 + normal_quantile((k + 0.5) / n));
  const auto c = threshold_candidates(bn);
  EXPECT_TRUE(c.minima.empty());
  EXPECT_EQ(c.density_curve.size(), 512u);
}

TEST(Candidates, ZerosCountedAndStrictlyInside) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    std::mt19937_64 rng(s);
    std::uniform_real_distribution<double> u(-3, 3);
    const int p = 8;
    BlockNormMatrix bn{Matrix(p, p)};
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) bn.norms(i, j) = std::pow(10.0, u(rng));
    bn.norms(0, 1) = 0.0;
    const auto c = threshold_candidates(bn);
    EXPECT_EQ(c.zero_entries, 1);
    double lo = 1e300;
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        if (bn.norms(i, j) > 0) lo = std::min(lo, bn.norms(i, j));
    const double hi = bn.norms.maxCoeff();
    for (double r : c.minima) {
      EXPECT_GT(r, lo);
      EXPECT_LT(r, hi);
    }
    for (double r : c.elbows) {
      EXPECT_GT(r, lo);
      EXPECT_LT(r, hi);
    }
    EXPECT_TRUE(std::is_sorted(c.minima.begin(), c.minima.end()));
    EXPECT_TRUE(std::is_sorted(c.elbows.begin(), c.elbows.end()));
  }
}
