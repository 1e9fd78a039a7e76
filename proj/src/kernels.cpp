#include "gpgraph/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "gpgraph/simd.hpp"

namespace gpgraph {

namespace {

// Integral of min(s, t) over [0, x] x [0, y].
double min_antiderivative(double x, double y) {
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  return lo * lo * hi / 2.0 - lo * lo * lo / 6.0;
}

// Covariance of X_u = \int_{max(0, u - 1/2)}^{u} W_s ds, evaluated exactly via
// inclusion-exclusion on the antiderivative of min(s, t).
double integrated_bm(double u, double v) {
  const double a = std::max(0.0, u - 0.5);
  const double c = std::max(0.0, v - 0.5);
  return min_antiderivative(u, v) - min_antiderivative(a, v) - min_antiderivative(u, c) +
         min_antiderivative(a, c);
}

double hat(double t, double width) {
  const double r = 1.0 - std::abs(t / width);
  return r >= 0.0 ? r : 0.0;
}

double polya(const std::vector<double>& params, double t) {
  double value = 0.0;
  for (std::size_t k = 0; k + 1 < params.size(); k += 2) value += params[k] * hat(t, params[k + 1]);
  return value;
}

// Bilinear interpolation of the lattice covariance alpha^{|a - b|}, a, b = 0..q.
double interpolated_kms(double alpha, int q, double u, double v) {
  auto locate = [q](double x, int& cell, double& frac) {
    cell = std::min(static_cast<int>(std::floor(x * q)), q - 1);
    frac = x * q - cell;
  };
  int i = 0, j = 0;
  double up = 0.0, vp = 0.0;
  locate(u, i, up);
  locate(v, j, vp);
  auto lattice = [alpha](int a, int b) { return std::pow(alpha, std::abs(a - b)); };
  return (1 - up) * (1 - vp) * lattice(i, j) + (1 - up) * vp * lattice(i, j + 1) +
         up * (1 - vp) * lattice(i + 1, j) + up * vp * lattice(i + 1, j + 1);
}

}  // namespace

void KernelKind::validate() const {
  switch (tag) {
    case KernelTag::Polya: {
      if (params.empty() || params.size() % 2 != 0) {
        throw ConfigError("Polya kernel needs (weight, width) pairs");
      }
      double total = 0.0;
      for (std::size_t k = 0; k < params.size(); k += 2) {
        if (params[k] < 0.0) throw ConfigError("Polya weights must be nonnegative");
        if (params[k + 1] <= 0.0) throw ConfigError("Polya widths must be positive");
        total += params[k];
      }
      if (std::abs(total - 1.0) > 1e-12) throw ConfigError("Polya weights must sum to 1");
      break;
    }
    case KernelTag::InterpolatedKMS: {
      if (params.size() != 2) throw ConfigError("interpolated KMS kernel needs (alpha, q)");
      if (!(params[0] > -1.0 && params[0] < 1.0)) throw ConfigError("KMS alpha must lie in (-1, 1)");
      if (params[1] < 1.0 || params[1] != std::floor(params[1])) {
        throw ConfigError("KMS q must be a positive integer");
      }
      break;
    }
    default:
      if (!params.empty()) throw ConfigError("kernel '" + kernel_name(*this) + "' takes no parameters");
  }
}

std::vector<KernelKind> benchmark_kernels() {
  return {KernelKind::gaussian(), KernelKind::brownian(), KernelKind::integrated_bm(),
          KernelKind::polya(), KernelKind::interpolated_kms()};
}

KernelKind parse_kernel(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "gaussian" || lower == "k1") return KernelKind::gaussian();
  if (lower == "brownian" || lower == "k2") return KernelKind::brownian();
  if (lower == "ibm" || lower == "integrated_bm" || lower == "k3") return KernelKind::integrated_bm();
  if (lower == "polya" || lower == "k4") return KernelKind::polya();
  if (lower == "kms" || lower == "interpolated_kms" || lower == "k5") return KernelKind::interpolated_kms();
  throw ConfigError("unknown kernel '" + std::string(name) + "'");
}

std::string kernel_name(const KernelKind& kind) {
  switch (kind.tag) {
    case KernelTag::Gaussian: return "gaussian";
    case KernelTag::Brownian: return "brownian";
    case KernelTag::IntegratedBM: return "ibm";
    case KernelTag::Polya: return "polya";
    case KernelTag::InterpolatedKMS: return "kms";
  }
  return "unknown";
}

double eval_kernel(const KernelKind& kind, double u, double v) {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
    throw DomainError("kernel arguments must lie in [0, 1], got (" + std::to_string(u) + ", " +
                      std::to_string(v) + ")");
  }
  switch (kind.tag) {
    case KernelTag::Gaussian: return std::exp(-(u - v) * (u - v));
    case KernelTag::Brownian: return std::min(u, v);
    case KernelTag::IntegratedBM: return integrated_bm(std::min(u, v), std::max(u, v));  // exact symmetry
    case KernelTag::Polya: return polya(kind.params, u - v);
    case KernelTag::InterpolatedKMS:
      return interpolated_kms(kind.params.at(0), static_cast<int>(kind.params.at(1)), std::min(u, v), std::max(u, v));
  }
  return 0.0;
}

Matrix gram_at(const KernelKind& kind, const std::vector<double>& points) {
  kind.validate();
  const auto n = static_cast<Eigen::Index>(points.size());
  Matrix values(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double k = eval_kernel(kind, points[i], points[j]);
      values(i, j) = k;
      values(j, i) = k;
    }
  }
  return values;
}

GramMatrix gram(const KernelKind& kind, const Grid& grid) {
  std::vector<double> points(grid.size());
  for (int i = 0; i < grid.size(); ++i) points[i] = grid.point(i);
  return GramMatrix{gram_at(kind, points)};
}

GaussianSampler::GaussianSampler(const Matrix& covariance) : dimension_(static_cast<int>(covariance.rows())) {
  if (covariance.rows() != covariance.cols()) throw ConfigError("covariance must be square");
  const Matrix sym = 0.5 * (covariance + covariance.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  const Vector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix factor = eig.eigenvectors() * root.asDiagonal();
  factor_rows_.resize(static_cast<std::size_t>(dimension_) * dimension_);
  for (int i = 0; i < dimension_; ++i) {
    for (int j = 0; j < dimension_; ++j) factor_rows_[static_cast<std::size_t>(i) * dimension_ + j] = factor(i, j);
  }
}

Matrix GaussianSampler::draw(int n, std::mt19937_64& rng) const {
  Matrix out(std::max(n, 0), dimension_);
  std::vector<double> z(dimension_);
  for (int k = 0; k < n; ++k) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& zi : z) zi = normal(rng);
    for (int i = 0; i < dimension_; ++i) {
      out(k, i) = simd::dot({factor_rows_.data() + static_cast<std::size_t>(i) * dimension_,
                             static_cast<std::size_t>(dimension_)},
                            z);
    }
  }
  return out;
}

void GaussianSampler::draw_components(const std::vector<int>& indices, std::mt19937_64& rng,
                                      std::vector<double>& out) const {
  std::vector<double> z(dimension_);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& zi : z) zi = normal(rng);
  out.resize(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    out[k] = simd::dot({factor_rows_.data() + static_cast<std::size_t>(indices[k]) * dimension_,
                        static_cast<std::size_t>(dimension_)},
                       z);
  }
}

Matrix sample_paths(const GramMatrix& gram, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return GaussianSampler(gram.values).draw(n, rng);
}

}  // namespace gpgraph
