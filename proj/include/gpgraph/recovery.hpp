#pragma once

// Thresholding block norms into graphs and scoring against a ground truth.

#include <vector>

#include "gpgraph/operator_core.hpp"
#include "gpgraph/partition.hpp"

namespace gpgraph {

// Pixel (i, j) is kept when norms(i, j) > rho; symmetrized by OR, diagonal true.
PixelGraph threshold_graph(const BlockNormMatrix& norms, double rho);

struct Rates {
  double tpr = 0.0;
  double fpr = 0.0;
};

// Counts ordered pixel pairs over all p^2 cells, diagonal included. FPR is 0
// when the truth is the complete graph.
Rates tpr_fpr(const PixelGraph& estimate, const PixelGraph& truth);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  bool operator==(const RocPoint&) const = default;
};

struct RocCurve {
  std::vector<RocPoint> points;      // (0,0) first, (1,1) last, sorted by FPR
  std::vector<double> thresholds;    // rho per interior point (points[1..size-2])
};

// Sweeps rho over the distinct norm values in descending order.
RocCurve roc(const BlockNormMatrix& norms, const PixelGraph& truth);

// Trapezoidal area under the curve.
double auc(const RocCurve& curve);

}  // namespace gpgraph
