#pragma once

// Tuning-parameter selection: the ridge by k-fold cross-validation on the
// diagonal blocks, and threshold candidates from the density of log10 block norms.

#include <functional>
#include <span>
#include <vector>

#include "gpgraph/operator_core.hpp"

namespace gpgraph {

// Descending, strictly positive candidate ridges.
struct RidgeGrid {
  std::vector<double> values;
};

enum class RidgeRegime {
  Complete,  // 10^{-j} base, j = 0..14
  Discrete,  // 10^{-a} base, a evenly spaced over [-1, 2], 15 values
};

// base = spectral norm of D/R. Throws EstimationError when base is zero.
RidgeGrid lambda_grid(const DiagBlocks& d, RidgeRegime regime);

// Produces the covariance estimate from the curves with the given indices.
using SubsetEstimator = std::function<GramMatrix(std::span<const int> curves)>;

struct RidgeSelection {
  double kappa = 0.0;
  std::vector<double> criterion;  // mean fold criterion per grid value
  double floor = 0.0;
};

// Fold s holds a contiguous block of curve indices. For each grid value lambda
// the criterion averages, over folds, ||A - A (lambda I + B)^{-1} A|| with
// A = D_s / R and B = D_{-s} / R (spectral norm, block by block). The argmin
// (ties towards the larger lambda) is clamped to at least the ridge floor of
// the full-data estimate.
RidgeSelection ridge_cv(int curves, const SubsetEstimator& estimator, const GramMatrix& full_estimate,
                        const Partition& partition, int folds, const RidgeGrid& grid);

// Contiguous fold boundaries: fold s covers [bounds[s], bounds[s+1]).
std::vector<int> fold_bounds(int curves, int folds);

struct DensityPoint {
  double x = 0.0;        // log10 norm
  double density = 0.0;
};

struct ThresholdCandidates {
  std::vector<double> minima;  // rho values, ascending
  std::vector<double> elbows;  // rho values, ascending
  std::vector<DensityPoint> density_curve;
  double bandwidth = 0.0;
  int zero_entries = 0;        // norms equal to zero, left out of the log
};

// Silverman's rule of thumb (0.9 min(sd, IQR/1.34) n^{-1/5}) with the usual
// fallbacks for degenerate spreads.
double silverman_bandwidth(std::span<const double> values);

// Gaussian kernel density of log10 of all p^2 norms on 512 points spanning
// [min - 3h, max + 3h]. Minima are interior local minima of the sampled curve;
// elbows are interior local maxima of its second difference right of the
// global mode. Candidates are kept only strictly inside (min norm, max norm).
ThresholdCandidates threshold_candidates(const BlockNormMatrix& norms);

// Minimum candidate sitting in the deepest valley of the density; 0 when there
// is no minimum.
double deepest_valley(const ThresholdCandidates& candidates);

}  // namespace gpgraph
