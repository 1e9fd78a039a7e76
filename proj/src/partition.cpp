#include "gpgraph/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gpgraph {

namespace {

// Slack for comparisons between real set parameters and pixel edges k / p.
constexpr double kContactSlack = 1e-9;

// Closed pixels i and j (k = |i - j| apart) realize the distances
// [max(0, k - 1) / p, (k + 1) / p].
bool distance_contact(int k, double distance, int p) {
  const double scaled = distance * p;
  return static_cast<double>(k - 1) <= scaled + kContactSlack &&
         scaled <= static_cast<double>(k + 1) + kContactSlack;
}

bool interval_contact(double lo, double hi, int cell, int p) {
  return lo * p <= cell + 1 + kContactSlack && hi * p >= cell - kContactSlack;
}

// Lattice cells a in 0..q-1 whose closure meets the closed pixel [i/p, (i+1)/p].
std::pair<int, int> touched_lattice_cells(int i, int p, int q) {
  // a p <= (i + 1) q  and  (a + 1) p >= i q
  const long long lo_num = static_cast<long long>(i) * q;
  int lo = static_cast<int>((lo_num + p - 1) / p) - 1;
  int hi = static_cast<int>((static_cast<long long>(i + 1) * q) / p);
  return {std::max(lo, 0), std::min(hi, q - 1)};
}

bool term_contact(const TruthTerm& term, int i, int j, int p) {
  const int k = std::abs(i - j);
  return std::visit(
      [&](const auto& t) -> bool {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, DiagBand>) {
          return static_cast<double>(k - 1) <= t.width * p + kContactSlack;
        } else if constexpr (std::is_same_v<T, DistanceSet>) {
          if (k <= 1) return true;
          return std::any_of(t.distances.begin(), t.distances.end(),
                             [&](double d) { return distance_contact(k, d, p); });
        } else if constexpr (std::is_same_v<T, LatticeBand>) {
          const auto [ai, bi] = touched_lattice_cells(i, p, t.q);
          const auto [aj, bj] = touched_lattice_cells(j, p, t.q);
          const int gap = std::max({0, ai - bj, aj - bi});
          return gap <= t.radius;
        } else {
          return std::any_of(t.rectangles.begin(), t.rectangles.end(), [&](const Rectangle& r) {
            return (interval_contact(r.u0, r.u1, i, p) && interval_contact(r.v0, r.v1, j, p)) ||
                   (interval_contact(r.u0, r.u1, j, p) && interval_contact(r.v0, r.v1, i, p));
          });
        }
      },
      term);
}

}  // namespace

Partition::Partition(int grid_size, int cells) : grid_size_(grid_size), cells_(cells) {
  if (grid_size <= 0 || cells <= 0) {
    throw ConfigError("partition needs positive grid size and cell count, got R=" + std::to_string(grid_size) +
                      ", p=" + std::to_string(cells));
  }
  if (grid_size % cells != 0) {
    throw ConfigError("partition size p=" + std::to_string(cells) + " must divide grid size R=" +
                      std::to_string(grid_size));
  }
}

Partition make_partition(int grid_size, int cells) { return Partition(grid_size, cells); }

PixelGraph::PixelGraph(int size) {
  if (size < 0) throw ConfigError("graph size must be nonnegative");
  adjacency_.setConstant(size, size, false);
  for (int i = 0; i < size; ++i) adjacency_(i, i) = true;
}

PixelGraph PixelGraph::complete(int size) {
  PixelGraph g(size);
  g.adjacency_.setConstant(true);
  return g;
}

PixelGraph PixelGraph::from_matrix(const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& adjacency) {
  if (adjacency.rows() != adjacency.cols()) throw ConfigError("adjacency matrix must be square");
  PixelGraph g(static_cast<int>(adjacency.rows()));
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      if (adjacency(i, j)) g.set(i, j, true);
    }
  }
  return g;
}

void PixelGraph::set(int i, int j, bool value) {
  if (i == j) return;
  adjacency_(i, j) = value;
  adjacency_(j, i) = value;
}

int PixelGraph::edge_count() const { return static_cast<int>(adjacency_.count()); }

bool PixelGraph::contains(const PixelGraph& other) const {
  if (other.size() != size()) return false;
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if (other(i, j) && !(*this)(i, j)) return false;
    }
  }
  return true;
}

bool PixelGraph::operator==(const PixelGraph& other) const {
  return size() == other.size() && adjacency_ == other.adjacency_;
}

PixelGraph pixelate_truth(const TruthSpec& spec, int cells) {
  PixelGraph graph(cells);
  for (int i = 0; i < cells; ++i) {
    for (int j = i + 1; j < cells; ++j) {
      const bool hit = std::any_of(spec.terms.begin(), spec.terms.end(),
                                   [&](const TruthTerm& t) { return term_contact(t, i, j, cells); });
      if (hit) graph.set(i, j, true);
    }
  }
  return graph;
}

PixelGraph pixelate_truth(const TruthSpec& spec, const Partition& partition) {
  return pixelate_truth(spec, partition.cells());
}

PixelGraph coarsen(const PixelGraph& graph, int factor) {
  if (factor <= 0 || graph.size() % factor != 0) {
    throw ConfigError("coarsening factor must divide the graph size");
  }
  PixelGraph out(graph.size() / factor);
  for (int i = 0; i < graph.size(); ++i) {
    for (int j = 0; j < graph.size(); ++j) {
      if (graph(i, j)) out.set(i / factor, j / factor, true);
    }
  }
  return out;
}

TruthSpec markov_truth() { return {DiagBand{0.0}}; }

TruthSpec integrated_bm_truth() { return {DistanceSet{{0.5}}}; }

TruthSpec polya_truth() {
  RectangleUnion corners;
  for (double a : {0.0, 0.2, 0.8, 1.0}) {
    for (double b : {0.0, 0.2, 0.8, 1.0}) corners.rectangles.push_back({a, a, b, b});
  }
  return {DistanceSet{{0.8}}, corners};
}

TruthSpec kms_truth(int q) { return {LatticeBand{q, 1}}; }

}  // namespace gpgraph
