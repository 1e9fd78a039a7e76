#include "gpgraph/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gpgraph {

namespace {

constexpr double kRidgeMargin = 1e-12;

Matrix symmetric_part(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

Matrix DiagBlocks::assemble() const {
  Matrix d = Matrix::Zero(partition.grid_size(), partition.grid_size());
  const int w = partition.cell_size();
  for (int k = 0; k < partition.cells(); ++k) d.block(k * w, k * w, w, w) = blocks[k];
  return d;
}

DiagBlocks diag_blocks(const GramMatrix& g, const Partition& partition) {
  if (g.size() != partition.grid_size()) {
    throw ConfigError("gram size " + std::to_string(g.size()) + " does not match partition grid size " +
                      std::to_string(partition.grid_size()));
  }
  DiagBlocks d{{}, partition};
  const int w = partition.cell_size();
  d.blocks.reserve(partition.cells());
  for (int k = 0; k < partition.cells(); ++k) d.blocks.emplace_back(g.values.block(k * w, k * w, w, w));
  return d;
}

double ridge_floor(const DiagBlocks& d) {
  const double scale = 1.0 / d.partition.grid_size();
  double lowest = std::numeric_limits<double>::infinity();
  for (const Matrix& block : d.blocks) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetric_part(block), Eigen::EigenvaluesOnly);
    lowest = std::min(lowest, eig.eigenvalues().minCoeff() * scale);
  }
  return std::max(0.0, -lowest);
}

CorrMatrix corr_matrix(const GramMatrix& g, const Partition& partition, double kappa) {
  const DiagBlocks d = diag_blocks(g, partition);
  const int cells = partition.cells();
  const int w = partition.cell_size();
  const double inv_r = 1.0 / partition.grid_size();

  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> eig(cells);
  double lowest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < cells; ++k) {
    eig[k].compute(symmetric_part(d.blocks[k]));
    lowest = std::min(lowest, eig[k].eigenvalues().minCoeff() * inv_r);
  }
  const double floor = std::max(0.0, -lowest);

  CorrMatrix c;
  c.partition = partition;
  c.kappa = kappa;
  if (!(kappa >= floor)) {
    c.kappa = floor + kRidgeMargin;
    c.kappa_clamped = true;
  }
  if (c.kappa <= 0.0 && lowest <= 0.0) {
    c.kappa = kRidgeMargin;
    c.kappa_clamped = true;
  }

  // W_k = V diag((kappa + max(lambda, 0)/R)^{-1/2}) V^T
  std::vector<Matrix> whiten(cells);
  for (int k = 0; k < cells; ++k) {
    const Vector lambda = eig[k].eigenvalues();
    Vector scale(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
      scale[i] = 1.0 / std::sqrt(c.kappa + std::max(lambda[i], 0.0) * inv_r);
    }
    const Matrix& v = eig[k].eigenvectors();
    whiten[k] = symmetric_part(v * scale.asDiagonal() * v.transpose());
  }

  c.r0 = Matrix::Zero(partition.grid_size(), partition.grid_size());
  for (int i = 0; i < cells; ++i) {
    for (int j = i + 1; j < cells; ++j) {
      const Matrix block = whiten[i] * g.values.block(i * w, j * w, w, w) * whiten[j];
      c.r0.block(i * w, j * w, w, w) = block;
      c.r0.block(j * w, i * w, w, w) = block.transpose();
    }
  }
  return c;
}

PrecMatrix precision(const CorrMatrix& c) {
  const Eigen::Index r = c.r0.rows();
  if (c.r0.isZero(0.0)) return PrecMatrix{Matrix::Identity(r, r), c.partition, 1.0};
  const Matrix s = c.r0 / static_cast<double>(c.partition.grid_size());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
  const Vector& sigma = eig.eigenvalues();
  const double lowest = 1.0 + sigma.minCoeff();
  if (!(lowest > kSingularityThreshold)) {
    throw SingularityError("I + r0/R is numerically singular (min eigenvalue " + std::to_string(lowest) + ")",
                           lowest);
  }
  // (I + S)^{-1} S shares eigenvectors with S: eigenvalues sigma / (1 + sigma).
  const Vector ratio = sigma.array() / (1.0 + sigma.array());
  const Matrix& v = eig.eigenvectors();
  Matrix p = Matrix::Identity(r, r) - v * ratio.asDiagonal() * v.transpose();
  return PrecMatrix{symmetric_part(p), c.partition, lowest};
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

BlockNormMatrix block_norms(const PrecMatrix& pm, const Partition& partition) {
  if (pm.values.rows() != partition.grid_size()) {
    throw ConfigError("precision matrix size does not match the partition grid size");
  }
  const int cells = partition.cells();
  const int w = partition.cell_size();
  BlockNormMatrix out{Matrix::Zero(cells, cells)};
  for (int i = 0; i < cells; ++i) {
    for (int j = i; j < cells; ++j) {
      const double norm = spectral_norm(pm.values.block(i * w, j * w, w, w));
      out.norms(i, j) = norm;
      out.norms(j, i) = norm;
    }
  }
  return out;
}

}  // namespace gpgraph
