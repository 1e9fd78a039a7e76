#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "gpgraph/recovery.hpp"
#include "oracles.hpp"

using namespace gpgraph;

namespace {

PixelGraph band(int p) {
  PixelGraph g(p);
  for (int i = 0; i + 1 < p; ++i) g.set(i, i + 1, true);
  return g;
}

BlockNormMatrix random_norms(int p, std::mt19937_64& rng, int levels = 0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> k(0, std::max(levels - 1, 0));
  Matrix m(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) m(i, j) = m(j, i) = levels ? k(rng) / double(levels) : u(rng);
  return {m};
}

PixelGraph random_graph(int p, std::mt19937_64& rng) {
  PixelGraph g(p);
  std::bernoulli_distribution b(0.35);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) g.set(i, j, b(rng));
  return g;
}

}  // namespace

TEST(Threshold, Extremes) {
  std::mt19937_64 rng(1);
  const auto bn = random_norms(6, rng);
  EXPECT_EQ(threshold_graph(bn, bn.norms.maxCoeff()), PixelGraph::diagonal(6));
  EXPECT_EQ(threshold_graph(bn, bn.norms.minCoeff() / 2), PixelGraph::complete(6));
}

TEST(Threshold, TwoByTwoClosedForm) {
  Matrix m(2, 2);
  m << 4.0 / 3, 2.0 / 3, 2.0 / 3, 4.0 / 3;
  EXPECT_EQ(threshold_graph({m}, 1.0), PixelGraph::diagonal(2));
  EXPECT_EQ(threshold_graph({m}, 0.5), PixelGraph::complete(2));
}

TEST(Threshold, Monotone) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const auto bn = random_norms(7, rng);
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    EXPECT_TRUE(threshold_graph(bn, a).contains(threshold_graph(bn, b)));
  }
}

TEST(Rates, Examples) {
  const auto truth = band(20);
  EXPECT_EQ(truth.edge_count(), 58);
  auto r = tpr_fpr(truth, truth);
  EXPECT_EQ(r.tpr, 1.0);
  EXPECT_EQ(r.fpr, 0.0);
  r = tpr_fpr(PixelGraph::complete(20), truth);
  EXPECT_EQ(r.tpr, 1.0);
  EXPECT_EQ(r.fpr, 1.0);
  r = tpr_fpr(PixelGraph::diagonal(20), truth);
  EXPECT_DOUBLE_EQ(r.tpr, 20.0 / 58.0);
  EXPECT_EQ(r.fpr, 0.0);
  EXPECT_EQ(tpr_fpr(PixelGraph::diagonal(4), PixelGraph::complete(4)).fpr, 0.0);
  EXPECT_THROW(tpr_fpr(PixelGraph(3), PixelGraph(4)), ConfigError);
}

TEST(Roc, PerfectSeparation) {
  const auto truth = band(6);
  Matrix m(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) = truth(i, j) ? 2.0 + i + j : 1.0 / (1 + i + j);
  const auto curve = roc({m}, truth);
  EXPECT_NE(std::find(curve.points.begin(), curve.points.end(), RocPoint{0.0, 1.0}), curve.points.end());
  EXPECT_DOUBLE_EQ(auc(curve), 1.0);
}

TEST(Roc, ConstantNorms) {
  // The only sweep value yields the forced diagonal, which already scores 4 of the 10 truth pixels.
  const auto curve = roc({Matrix::Constant(4, 4, 3.0)}, band(4));
  ASSERT_EQ(curve.points.size(), 3u);
  EXPECT_EQ(curve.points[0], (RocPoint{0, 0}));
  EXPECT_EQ(curve.points[1], (RocPoint{0, 0.4}));
  EXPECT_EQ(curve.points[2], (RocPoint{1, 1}));
  EXPECT_DOUBLE_EQ(auc(curve), 0.4 + 0.6 / 2);
}

TEST(Roc, MatchesBruteForceOracle) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto bn = random_norms(5, rng, t % 2 ? 4 : 0);
    const auto truth = random_graph(5, rng);
    const auto curve = roc(bn, truth);
    const auto ref = oracle::brute_roc(bn.norms, truth);
    ASSERT_EQ(curve.points.size(), ref.size()) << "instance " << t;
    for (std::size_t k = 0; k < ref.size(); ++k) {
      EXPECT_DOUBLE_EQ(curve.points[k].fpr, ref[k].fpr);
      EXPECT_DOUBLE_EQ(curve.points[k].tpr, ref[k].tpr);
    }
    EXPECT_NEAR(auc(curve), oracle::trapezoid(ref), 1e-15);
  }
}

TEST(Roc, MonotoneAndEndpoints) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto bn = random_norms(8, rng);
    const auto truth = random_graph(8, rng);
    const auto curve = roc(bn, truth);
    EXPECT_EQ(curve.points.front(), (RocPoint{0, 0}));
    EXPECT_EQ(curve.points.back(), (RocPoint{1, 1}));
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
      EXPECT_GE(curve.points[k].fpr, curve.points[k - 1].fpr);
      EXPECT_GE(curve.points[k].tpr, curve.points[k - 1].tpr);
    }
    const double a = auc(curve);
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
  }
}

TEST(Auc, Staircase) {
  RocCurve c;
  c.points = {{0, 0}, {0, 0.5}, {0.5, 0.5}, {0.5, 1}, {1, 1}};
  // 0.5 * 0.5 under the first step plus 0.5 * 1 under the second
  const double ref = oracle::trapezoid({{0, 0}, {0, 0.5}, {0.5, 0.5}, {0.5, 1}, {1, 1}});
  EXPECT_DOUBLE_EQ(ref, 0.75);
  EXPECT_DOUBLE_EQ(auc(c), ref);
  c.points = {{0, 0}, {1, 1}};
  EXPECT_DOUBLE_EQ(auc(c), 0.5);
  c.points = {{0, 0}, {0, 1}, {1, 1}};
  EXPECT_DOUBLE_EQ(auc(c), 1.0);
}

TEST(Auc, OneIffSeparated) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto bn = random_norms(5, rng, t % 3 ? 0 : 3);
    const auto truth = random_graph(5, rng);
    double min_in = 1e300, max_out = -1e300;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        if (i == j) continue;
        (truth(i, j) ? min_in : max_out) = truth(i, j) ? std::min(min_in, bn.norms(i, j)) : std::max(max_out, bn.norms(i, j));
      }
    const bool separated = min_in > max_out;
    EXPECT_EQ(auc(roc(bn, truth)) == 1.0, separated) << "instance " << t;
  }
}
