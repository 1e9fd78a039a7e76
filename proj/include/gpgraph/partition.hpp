#pragma once

// Uniform partitions of [0, 1], pixel graphs, and pixelation of continuum
// conditional-independence sets into ground-truth graphs.

#include <iosfwd>
#include <variant>
#include <vector>

#include "gpgraph/types.hpp"

namespace gpgraph {

// p contiguous cells U_j = [j/p, (j+1)/p) (the last one closed) over a grid of
// R midpoints, with p dividing R so every cell holds exactly R/p grid points.
class Partition {
 public:
  Partition() = default;  // trivial 1-cell partition of a 1-point grid
  Partition(int grid_size, int cells);

  int grid_size() const { return grid_size_; }
  int cells() const { return cells_; }
  int cell_size() const { return grid_size_ / cells_; }
  int cell_of(int grid_index) const { return grid_index / cell_size(); }
  int first_index(int cell) const { return cell * cell_size(); }
  double lower(int cell) const { return static_cast<double>(cell) / cells_; }
  double upper(int cell) const { return static_cast<double>(cell + 1) / cells_; }

  bool operator==(const Partition&) const = default;

 private:
  int grid_size_ = 1;
  int cells_ = 1;
};

Partition make_partition(int grid_size, int cells);

// Continuum sets in [0, 1]^2 used to describe conditional-independence graphs.

// {(u, v) : |u - v| <= width}
struct DiagBand {
  double width = 0.0;
};

// {(u, v) : |u - v| in distances} plus the diagonal.
struct DistanceSet {
  std::vector<double> distances;
};

// {(u, v) : |floor(q u) - floor(q v)| <= radius}, lattice cells clipped to 0..q-1.
struct LatticeBand {
  int q = 1;
  int radius = 0;
};

// Closed rectangle [u0, u1] x [v0, v1]; degenerate rectangles encode points.
struct Rectangle {
  double u0 = 0.0, u1 = 0.0, v0 = 0.0, v1 = 0.0;
};

struct RectangleUnion {
  std::vector<Rectangle> rectangles;
};

using TruthTerm = std::variant<DiagBand, DistanceSet, LatticeBand, RectangleUnion>;

// Union of continuum terms.
struct TruthSpec {
  std::vector<TruthTerm> terms;

  TruthSpec() = default;
  TruthSpec(std::initializer_list<TruthTerm> list) : terms(list) {}
};

// p x p symmetric adjacency with a true diagonal.
class PixelGraph {
 public:
  PixelGraph() = default;
  explicit PixelGraph(int size);  // diagonal only

  static PixelGraph diagonal(int size) { return PixelGraph(size); }
  static PixelGraph complete(int size);
  // Symmetrizes by OR and forces the diagonal.
  static PixelGraph from_matrix(const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& adjacency);

  int size() const { return static_cast<int>(adjacency_.rows()); }
  bool operator()(int i, int j) const { return adjacency_(i, j); }
  // Sets both (i, j) and (j, i); diagonal entries stay true.
  void set(int i, int j, bool value);
  int edge_count() const;  // ordered pairs, diagonal included
  bool contains(const PixelGraph& other) const;
  const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& adjacency() const { return adjacency_; }

  bool operator==(const PixelGraph& other) const;

 private:
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> adjacency_;
};

// Pixel (i, j) belongs to the result iff the closed pixel touches the closure
// of the continuum set. Symmetric with a true diagonal.
PixelGraph pixelate_truth(const TruthSpec& spec, const Partition& partition);
PixelGraph pixelate_truth(const TruthSpec& spec, int cells);

// OR-coarsening by an integer factor (factor must divide the size).
PixelGraph coarsen(const PixelGraph& graph, int factor);

// Continuum descriptions of the benchmark kernels' graphs (K1 ... K5).
TruthSpec markov_truth();                         // diagonal only (K1, K2)
TruthSpec integrated_bm_truth();                  // |u - v| in {0, 0.5}
TruthSpec polya_truth();                          // |u - v| in {0, 0.8} u {0, 0.2, 0.8, 1}^2
TruthSpec kms_truth(int q = 10);                  // |floor(qu) - floor(qv)| <= 1

}  // namespace gpgraph
