#pragma once

// Covariance estimators for the complete, regular-grid, sparse and
// pairwise-missing observation regimes. Every output is exactly symmetric.
//
// Accumulation over curves runs in ascending curve order, so results are
// reproducible bit for bit.

#include <cstdint>
#include <span>
#include <vector>

#include "gpgraph/types.hpp"

namespace gpgraph {

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

// (1/n) sum_k x_k x_k^T over the rows of `samples` (n x R). With `center` the
// column means are subtracted first.
GramMatrix empirical_cov(const Matrix& samples, bool center = false);

// Local-averaging estimator for curves observed on the endpoint grid
// T_l = l / M, l = 0..M (obs is n x (M+1)). The M x M result holds, for each
// grid cell pair (u, v), the mean of the off-diagonal entries among
// F(u, v), F(u+1, v), F(u, v+1), F(u+1, v+1), where F = (1/n) sum_k y_k y_k^T.
GramMatrix regular_cov(const Matrix& observations);

struct SparseCurve {
  std::vector<double> t;
  std::vector<double> y;
};

struct SparseCovariance {
  GramMatrix gram;
  int used_curves = 0;
  int skipped_curves = 0;  // curves with fewer than two observations
};

// Binned estimator: M^2 K_pq on each bin pair of M uniform bins, expanded onto
// an R-point midpoint grid (M must divide R).
SparseCovariance sparse_cov(std::span<const SparseCurve> curves, int bins, int grid_size);

// Curves on a common grid with missing values; `observed(k, i)` marks presence.
struct MaskedSamples {
  Matrix values;
  BoolMatrix observed;

  static MaskedSamples complete(const Matrix& values);
  int curves() const { return static_cast<int>(values.rows()); }
  int points() const { return static_cast<int>(values.cols()); }
};

// Entry (i, j) averages x_k(u_i) x_k(u_j) over the curves observing both points.
GramMatrix pairwise_cov(const MaskedSamples& samples, bool center = false);

// Nearest positive semidefinite matrix in Frobenius norm (negative eigenvalues zeroed).
GramMatrix psd_project(const GramMatrix& g);

// Operator trace (1/R) sum_i K(u_i, u_i) of a discretized kernel.
double operator_trace(const Matrix& gram);

// Noise variance eta * tr K.
double noise_variance(double eta, const Matrix& gram);

// Adds i.i.d. N(0, eta * tr K) to every finite entry; NaN entries are left alone.
Matrix add_noise(Matrix samples, double eta, const GramMatrix& gram, std::uint64_t seed);

}  // namespace gpgraph
