#include "gpgraph/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace gpgraph {

namespace {

constexpr int kDensityPoints = 512;
constexpr double kDensityCut = 3.0;
constexpr int kGridSize = 15;

double symmetric_norm(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

// Type-7 sample quantile of sorted data.
double quantile(const std::vector<double>& sorted, double prob) {
  const double h = (sorted.size() - 1) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

double gaussian_kde(std::span<const double> values, double h, double x) {
  double sum = 0.0;
  for (double v : values) {
    const double z = (x - v) / h;
    sum += std::exp(-0.5 * z * z);
  }
  return sum / (values.size() * h * std::sqrt(2.0 * std::numbers::pi));
}

// Interior local minima of f; a flat run counts once, at its middle.
std::vector<std::size_t> local_minima(const std::vector<double>& f) {
  std::vector<std::size_t> out;
  std::size_t k = 1;
  while (k + 1 < f.size()) {
    if (f[k] < f[k - 1]) {
      std::size_t end = k;
      while (end + 1 < f.size() && f[end + 1] == f[k]) ++end;
      if (end + 1 < f.size() && f[end + 1] > f[k]) out.push_back((k + end) / 2);
      k = end + 1;
    } else {
      ++k;
    }
  }
  return out;
}

}  // namespace

RidgeGrid lambda_grid(const DiagBlocks& d, RidgeRegime regime) {
  const double inv_r = 1.0 / d.partition.grid_size();
  double base = 0.0;
  for (const Matrix& block : d.blocks) base = std::max(base, symmetric_norm(block) * inv_r);
  if (!(base > 0.0)) throw EstimationError("ridge grid is degenerate: diagonal blocks are zero");
  RidgeGrid grid;
  grid.values.reserve(kGridSize);
  for (int j = 0; j < kGridSize; ++j) {
    const double exponent = regime == RidgeRegime::Complete
                                ? static_cast<double>(j)
                                : 2.0 * j / (kGridSize - 1) - 1.0 * (kGridSize - 1 - j) / (kGridSize - 1);
    grid.values.push_back(std::pow(10.0, -exponent) * base);
  }
  return grid;
}

std::vector<int> fold_bounds(int curves, int folds) {
  if (folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
  if (curves < folds) {
    throw EstimationError("cross-validation needs at least as many curves (" + std::to_string(curves) +
                          ") as folds (" + std::to_string(folds) + ")");
  }
  std::vector<int> bounds(folds + 1);
  for (int s = 0; s <= folds; ++s) {
    bounds[s] = static_cast<int>(static_cast<long long>(s) * curves / folds);
  }
  return bounds;
}

RidgeSelection ridge_cv(int curves, const SubsetEstimator& estimator, const GramMatrix& full_estimate,
                        const Partition& partition, int folds, const RidgeGrid& grid) {
  if (grid.values.empty()) throw ConfigError("ridge grid is empty");
  const std::vector<int> bounds = fold_bounds(curves, folds);
  const double inv_r = 1.0 / partition.grid_size();
  const std::size_t m = grid.values.size();

  std::vector<double> total(m, 0.0);
  std::vector<int> in_fold, out_fold;
  for (int s = 0; s < folds; ++s) {
    in_fold.clear();
    out_fold.clear();
    for (int k = 0; k < curves; ++k) (k >= bounds[s] && k < bounds[s + 1] ? in_fold : out_fold).push_back(k);
    const DiagBlocks held = diag_blocks(estimator(in_fold), partition);
    const DiagBlocks rest = diag_blocks(estimator(out_fold), partition);

    std::vector<double> fold_crit(m, 0.0);
    for (std::size_t k = 0; k < held.blocks.size(); ++k) {
      const Matrix a = 0.5 * (held.blocks[k] + held.blocks[k].transpose()) * inv_r;
      Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (rest.blocks[k] + rest.blocks[k].transpose()) * inv_r);
      const Matrix va = eig.eigenvectors().transpose() * a;  // V^T A
      for (std::size_t g = 0; g < m; ++g) {
        const Vector shifted = eig.eigenvalues().array() + grid.values[g];
        double crit = std::numeric_limits<double>::infinity();
        if ((shifted.array() > 0.0).all()) {
          const Matrix residual = a - va.transpose() * shifted.cwiseInverse().asDiagonal() * va;
          crit = symmetric_norm(residual);
        }
        fold_crit[g] = std::max(fold_crit[g], crit);
      }
    }
    for (std::size_t g = 0; g < m; ++g) total[g] += fold_crit[g];
  }

  RidgeSelection out;
  out.criterion.resize(m);
  std::size_t best = 0;
  for (std::size_t g = 0; g < m; ++g) {
    out.criterion[g] = total[g] / folds;
    // Ties go to the larger ridge.
    const bool better = out.criterion[g] < out.criterion[best] ||
                        (out.criterion[g] == out.criterion[best] && grid.values[g] > grid.values[best]);
    if (better) best = g;
  }
  out.floor = ridge_floor(diag_blocks(full_estimate, partition));
  out.kappa = grid.values[best];
  if (out.kappa < out.floor) out.kappa = out.floor + 1e-12;
  return out;
}

double silverman_bandwidth(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 1.0;
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1));
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  double spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0)) spread = sd;
  if (!(spread > 0.0)) spread = std::abs(values[0]);
  if (!(spread > 0.0)) spread = 1.0;
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

ThresholdCandidates threshold_candidates(const BlockNormMatrix& norms) {
  ThresholdCandidates out;
  std::vector<double> logs;
  logs.reserve(norms.norms.size());
  for (Eigen::Index j = 0; j < norms.norms.cols(); ++j) {
    for (Eigen::Index i = 0; i < norms.norms.rows(); ++i) {
      const double v = norms.norms(i, j);
      if (v == 0.0) {
        ++out.zero_entries;
      } else if (std::isfinite(v) && v > 0.0) {
        logs.push_back(std::log10(v));
      }
    }
  }
  std::vector<double> distinct = logs;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 2) return out;

  const double lo_value = distinct.front();
  const double hi_value = distinct.back();
  const double h = silverman_bandwidth(logs);
  out.bandwidth = h;
  const double lo = lo_value - kDensityCut * h;
  const double hi = hi_value + kDensityCut * h;
  std::vector<double> xs(kDensityPoints), f(kDensityPoints);
  for (int k = 0; k < kDensityPoints; ++k) {
    xs[k] = lo + (hi - lo) * k / (kDensityPoints - 1);
    f[k] = gaussian_kde(logs, h, xs[k]);
    out.density_curve.push_back({xs[k], f[k]});
  }
  auto inside = [&](double x) { return x > lo_value && x < hi_value; };

  for (std::size_t k : local_minima(f)) {
    if (inside(xs[k])) out.minima.push_back(std::pow(10.0, xs[k]));
  }

  const auto mode = static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
  std::vector<double> curvature(kDensityPoints, 0.0);
  for (int k = 1; k + 1 < kDensityPoints; ++k) curvature[k] = f[k - 1] - 2.0 * f[k] + f[k + 1];
  for (int k = 2; k + 2 < kDensityPoints; ++k) {
    if (static_cast<std::size_t>(k) <= mode) continue;
    if (curvature[k] > curvature[k - 1] && curvature[k] > curvature[k + 1] && inside(xs[k])) {
      out.elbows.push_back(std::pow(10.0, xs[k]));
    }
  }
  return out;
}

double deepest_valley(const ThresholdCandidates& candidates) {
  double best = 0.0;
  double best_density = std::numeric_limits<double>::infinity();
  for (double rho : candidates.minima) {
    const double x = std::log10(rho);
    // The candidate coincides with a sampled curve point; look it up.
    const auto it = std::min_element(candidates.density_curve.begin(), candidates.density_curve.end(),
                                     [x](const DensityPoint& a, const DensityPoint& b) {
                                       return std::abs(a.x - x) < std::abs(b.x - x);
                                     });
    if (it->density <= best_density) {
      best_density = it->density;
      best = rho;
    }
  }
  return best;
}

}  // namespace gpgraph
