#include "gpgraph/recovery.hpp"

#include <algorithm>
#include <functional>

namespace gpgraph {

PixelGraph threshold_graph(const BlockNormMatrix& norms, double rho) {
  PixelGraph graph(norms.size());
  for (int i = 0; i < norms.size(); ++i) {
    for (int j = 0; j < norms.size(); ++j) {
      if (i != j && norms.norms(i, j) > rho) graph.set(i, j, true);
    }
  }
  return graph;
}

Rates tpr_fpr(const PixelGraph& estimate, const PixelGraph& truth) {
  if (estimate.size() != truth.size()) {
    throw ConfigError("graph sizes differ: " + std::to_string(estimate.size()) + " vs " +
                      std::to_string(truth.size()));
  }
  long long true_pos = 0, false_pos = 0, positives = 0, negatives = 0;
  for (int i = 0; i < truth.size(); ++i) {
    for (int j = 0; j < truth.size(); ++j) {
      if (truth(i, j)) {
        ++positives;
        if (estimate(i, j)) ++true_pos;
      } else {
        ++negatives;
        if (estimate(i, j)) ++false_pos;
      }
    }
  }
  Rates r;
  r.tpr = positives > 0 ? static_cast<double>(true_pos) / positives : 0.0;
  r.fpr = negatives > 0 ? static_cast<double>(false_pos) / negatives : 0.0;
  return r;
}

RocCurve roc(const BlockNormMatrix& norms, const PixelGraph& truth) {
  if (norms.size() != truth.size()) {
    throw ConfigError("norm matrix and truth graph sizes differ: " + std::to_string(norms.size()) + " vs " +
                      std::to_string(truth.size()));
  }
  std::vector<double> levels(norms.norms.data(), norms.norms.data() + norms.norms.size());
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  for (double rho : levels) {
    const Rates r = tpr_fpr(threshold_graph(norms, rho), truth);
    const RocPoint point{r.fpr, r.tpr};
    if (point == curve.points.back()) continue;
    curve.points.push_back(point);
    curve.thresholds.push_back(rho);
  }
  if (!(curve.points.back() == RocPoint{1.0, 1.0})) {
    curve.points.push_back({1.0, 1.0});
  } else if (!curve.thresholds.empty()) {
    // (1, 1) was reached by a threshold; it is the closing endpoint, not an interior point.
    curve.thresholds.pop_back();
  }
  return curve;
}

double auc(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    const RocPoint& a = curve.points[k - 1];
    const RocPoint& b = curve.points[k];
    area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  return area;
}

}  // namespace gpgraph
