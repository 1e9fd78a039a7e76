#include <cstdlib>

#include <gtest/gtest.h>

#include "gpgraph/partition.hpp"

using namespace gpgraph;

namespace {

PixelGraph band(int p, int radius) {
  PixelGraph g(p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      if (std::abs(i - j) <= radius) g.set(i, j, true);
  return g;
}

void expect_symmetric_with_diagonal(const PixelGraph& g) {
  for (int i = 0; i < g.size(); ++i) {
    EXPECT_TRUE(g(i, i));
    for (int j = 0; j < g.size(); ++j) EXPECT_EQ(g(i, j), g(j, i));
  }
}

}  // namespace

TEST(Partition, CellSizes) {
  EXPECT_EQ(make_partition(600, 20).cell_size(), 30);
  EXPECT_EQ(make_partition(4, 4).cell_size(), 1);
  EXPECT_THROW(make_partition(6, 4), ConfigError);
  EXPECT_THROW(make_partition(6, 0), ConfigError);
}

TEST(Partition, EveryGridPointInOneCell) {
  const auto part = make_partition(600, 40);
  std::vector<int> counts(40, 0);
  for (int i = 0; i < 600; ++i) {
    const int c = part.cell_of(i);
    ASSERT_GE(c, 0);
    ASSERT_LT(c, 40);
    const double u = Grid(600).point(i);
    EXPECT_GE(u, part.lower(c));
    EXPECT_LT(u, part.upper(c));
    ++counts[c];
  }
  for (int c : counts) EXPECT_EQ(c, 15);
}

TEST(Pixelate, DiagonalBandWidthZero) {
  EXPECT_EQ(pixelate_truth(TruthSpec{DiagBand{0.0}}, 20), band(20, 1));
  EXPECT_EQ(pixelate_truth(markov_truth(), 20), band(20, 1));
}

TEST(Pixelate, DistanceHalf) {
  const auto g = pixelate_truth(TruthSpec{DistanceSet{{0.5}}}, 20);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const int d = std::abs(i - j);
      const bool want = d <= 1 || (d >= 9 && d <= 11);
      EXPECT_EQ(g(i, j), want) << i << "," << j;
    }
  }
}

TEST(Pixelate, FullSquareIsComplete) {
  for (int p : {1, 7, 20}) {
    EXPECT_EQ(pixelate_truth(TruthSpec{RectangleUnion{{Rectangle{0, 1, 0, 1}}}}, p), PixelGraph::complete(p));
  }
}

TEST(Pixelate, MonotoneInBandWidth) {
  for (int p : {10, 20, 30}) {
    PixelGraph prev = pixelate_truth(TruthSpec{DiagBand{0.0}}, p);
    for (double w : {0.01, 0.05, 0.1, 0.2, 0.5}) {
      const auto next = pixelate_truth(TruthSpec{DiagBand{w}}, p);
      EXPECT_TRUE(next.contains(prev)) << "p=" << p << " w=" << w;
      prev = next;
    }
  }
}

TEST(Pixelate, RefinementCoherence) {
  const std::vector<TruthSpec> specs{markov_truth(), integrated_bm_truth(), polya_truth(), kms_truth(10),
                                     TruthSpec{DiagBand{0.13}}};
  for (const auto& spec : specs) {
    EXPECT_EQ(coarsen(pixelate_truth(spec, 40), 2), pixelate_truth(spec, 20));
  }
}

TEST(Pixelate, SymmetricWithDiagonal) {
  for (const auto& spec : {markov_truth(), integrated_bm_truth(), polya_truth(), kms_truth(10)}) {
    for (int p : {5, 20, 30}) expect_symmetric_with_diagonal(pixelate_truth(spec, p));
  }
}

TEST(Pixelate, KmsLatticeBandClosedContact) {
  // Cells [k/10, (k+1)/10] touch lattice cells k - 1 .. k + 1 by their closed edges.
  const auto g = pixelate_truth(kms_truth(10), 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) EXPECT_EQ(g(i, j), std::abs(i - j) <= 3) << i << "," << j;
}

TEST(Pixelate, PolyaCorners) {
  const auto g = pixelate_truth(polya_truth(), 20);
  EXPECT_TRUE(g(0, 19));   // (0, 1) corner
  EXPECT_TRUE(g(3, 16));   // (0.2, 0.8) point
  EXPECT_TRUE(g(0, 16));   // distance 0.8 line
  EXPECT_FALSE(g(0, 10));
}

TEST(PixelGraphOps, FromMatrixSymmetrizes) {
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> a = Eigen::Matrix<bool, -1, -1>::Constant(3, 3, false);
  a(0, 2) = true;
  const auto g = PixelGraph::from_matrix(a);
  EXPECT_TRUE(g(2, 0));
  EXPECT_TRUE(g(1, 1));
  EXPECT_EQ(g.edge_count(), 5);
}

TEST(PixelGraphOps, CoarsenOr) {
  PixelGraph g(4);
  g.set(0, 3, true);
  const auto c = coarsen(g, 2);
  EXPECT_EQ(c.size(), 2);
  EXPECT_TRUE(c(0, 1));
  EXPECT_THROW(coarsen(g, 3), ConfigError);
}
