#include "gpgraph/estimators.hpp"

#include <cmath>
#include <random>
#include <string>

#include "gpgraph/simd.hpp"

namespace gpgraph {

namespace {

// acc += sum over rows k of x_k x_k^T, one column axpy at a time.
void accumulate_outer(const Matrix& rows, Matrix& acc) {
  const Eigen::Index dim = rows.cols();
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < rows.rows(); ++k) {
    for (Eigen::Index i = 0; i < dim; ++i) x[i] = rows(k, i);
    for (Eigen::Index i = 0; i < dim; ++i) {
      simd::axpy(x[i], x, {acc.col(i).data(), static_cast<std::size_t>(dim)});
    }
  }
}

int sparse_bin(double t, int bins) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("observation location " + std::to_string(t) + " outside [0, 1]");
  return std::min(static_cast<int>(std::floor(t * bins)), bins - 1);
}

}  // namespace

GramMatrix empirical_cov(const Matrix& samples, bool center) {
  if (samples.rows() == 0) throw EstimationError("empirical covariance needs at least one curve");
  Matrix acc = Matrix::Zero(samples.cols(), samples.cols());
  if (center) {
    const Eigen::RowVectorXd mean = samples.colwise().mean();
    accumulate_outer(samples.rowwise() - mean, acc);
  } else {
    accumulate_outer(samples, acc);
  }
  acc /= static_cast<double>(samples.rows());
  return GramMatrix{std::move(acc)};
}

GramMatrix regular_cov(const Matrix& observations) {
  if (observations.rows() == 0) throw EstimationError("regular-grid covariance needs at least one curve");
  const int cells = static_cast<int>(observations.cols()) - 1;
  if (cells < 2) throw ConfigError("regular grid needs M >= 2 cells (M + 1 >= 3 points)");
  const Matrix f = empirical_cov(observations).values;
  Matrix out(cells, cells);
  for (int u = 0; u < cells; ++u) {
    for (int v = u; v < cells; ++v) {
      double sum = 0.0;
      int count = 0;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          if (u + i == v + j) continue;
          sum += f(u + i, v + j);
          ++count;
        }
      }
      out(u, v) = sum / count;
      out(v, u) = out(u, v);
    }
  }
  return GramMatrix{std::move(out)};
}

SparseCovariance sparse_cov(std::span<const SparseCurve> curves, int bins, int grid_size) {
  if (bins < 2) throw ConfigError("sparse covariance needs M >= 2 bins");
  if (grid_size % bins != 0) {
    throw ConfigError("bin count M=" + std::to_string(bins) + " must divide grid size R=" + std::to_string(grid_size));
  }
  SparseCovariance result;
  Matrix binned = Matrix::Zero(bins, bins);
  std::vector<int> where;
  for (const SparseCurve& curve : curves) {
    if (curve.t.size() != curve.y.size()) throw ConfigError("sparse curve has mismatched t and y lengths");
    const auto count = static_cast<double>(curve.t.size());
    if (curve.t.size() < 2) {
      ++result.skipped_curves;
      continue;
    }
    ++result.used_curves;
    where.resize(curve.t.size());
    for (std::size_t i = 0; i < curve.t.size(); ++i) where[i] = sparse_bin(curve.t[i], bins);
    const double weight = 1.0 / (count * (count - 1.0));
    // Ordered pairs (i, j) and (j, i) contribute the same product to mirrored bins.
    for (std::size_t i = 0; i < curve.t.size(); ++i) {
      for (std::size_t j = i + 1; j < curve.t.size(); ++j) {
        const double term = weight * curve.y[i] * curve.y[j];
        binned(where[i], where[j]) += term;
        binned(where[j], where[i]) += term;
      }
    }
  }
  if (result.used_curves == 0) {
    throw EstimationError("sparse covariance needs at least one curve with two or more observations");
  }
  binned *= static_cast<double>(bins) * bins / result.used_curves;

  const int per_bin = grid_size / bins;
  Matrix out(grid_size, grid_size);
  for (int i = 0; i < grid_size; ++i) {
    for (int j = 0; j < grid_size; ++j) out(i, j) = binned(i / per_bin, j / per_bin);
  }
  result.gram = GramMatrix{std::move(out)};
  return result;
}

MaskedSamples MaskedSamples::complete(const Matrix& values) {
  return MaskedSamples{values, BoolMatrix::Constant(values.rows(), values.cols(), true)};
}

GramMatrix pairwise_cov(const MaskedSamples& samples, bool center) {
  if (samples.observed.rows() != samples.values.rows() || samples.observed.cols() != samples.values.cols()) {
    throw ConfigError("missing-value mask does not match the data shape");
  }
  const Eigen::Index n = samples.values.rows();
  const Eigen::Index dim = samples.values.cols();
  if (n == 0) throw EstimationError("pairwise covariance needs at least one curve");

  std::vector<double> mean(static_cast<std::size_t>(dim), 0.0);
  if (center) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      double sum = 0.0;
      int seen = 0;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (samples.observed(k, i)) {
          sum += samples.values(k, i);
          ++seen;
        }
      }
      mean[i] = seen > 0 ? sum / seen : 0.0;
    }
  }

  Matrix sums = Matrix::Zero(dim, dim);
  Matrix counts = Matrix::Zero(dim, dim);
  std::vector<double> x(static_cast<std::size_t>(dim));
  std::vector<double> mask(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const bool present = samples.observed(k, i);
      x[i] = present ? samples.values(k, i) - mean[i] : 0.0;
      mask[i] = present ? 1.0 : 0.0;
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (!samples.observed(k, i)) continue;
      simd::axpy(x[i], x, {sums.col(i).data(), static_cast<std::size_t>(dim)});
      simd::axpy(1.0, mask, {counts.col(i).data(), static_cast<std::size_t>(dim)});
    }
  }

  Matrix out(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (counts(i, j) == 0.0) {
        throw EstimationError("grid points " + std::to_string(i) + " and " + std::to_string(j) +
                              " are never observed together");
      }
      out(i, j) = sums(i, j) / counts(i, j);
    }
  }
  return GramMatrix{std::move(out)};
}

GramMatrix psd_project(const GramMatrix& g) {
  const Matrix sym = 0.5 * (g.values + g.values.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  const Vector clipped = eig.eigenvalues().cwiseMax(0.0);
  Matrix out = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
  Matrix symmetric = 0.5 * (out + out.transpose());
  return GramMatrix{std::move(symmetric)};
}

double operator_trace(const Matrix& gram) {
  if (gram.rows() == 0) return 0.0;
  return gram.trace() / static_cast<double>(gram.rows());
}

double noise_variance(double eta, const Matrix& gram) {
  if (eta < 0.0) throw ConfigError("noise level must be nonnegative");
  return eta * operator_trace(gram);
}

Matrix add_noise(Matrix samples, double eta, const GramMatrix& gram, std::uint64_t seed) {
  const double variance = noise_variance(eta, gram.values);
  if (variance == 0.0) return samples;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(variance));
  for (Eigen::Index k = 0; k < samples.rows(); ++k) {
    for (Eigen::Index i = 0; i < samples.cols(); ++i) {
      if (std::isfinite(samples(k, i))) samples(k, i) += normal(rng);
    }
  }
  return samples;
}

}  // namespace gpgraph
