#pragma once

// Benchmark covariance kernels on U = [0, 1] and Gaussian path sampling.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gpgraph/types.hpp"

namespace gpgraph {

enum class KernelTag { Gaussian, Brownian, IntegratedBM, Polya, InterpolatedKMS };

// A kernel family plus its parameters.
//   Polya:           {weight_1, width_1, weight_2, width_2, ...} for sum_k weight_k * hat(t / width_k)
//   InterpolatedKMS: {alpha, q}
//   others:          no parameters
struct KernelKind {
  KernelTag tag = KernelTag::Gaussian;
  std::vector<double> params;

  static KernelKind gaussian() { return {KernelTag::Gaussian, {}}; }
  static KernelKind brownian() { return {KernelTag::Brownian, {}}; }
  static KernelKind integrated_bm() { return {KernelTag::IntegratedBM, {}}; }
  // 0.8 * hat_{0.7} + 0.2 * hat_{0.8}
  static KernelKind polya() { return {KernelTag::Polya, {0.8, 0.7, 0.2, 0.8}}; }
  static KernelKind interpolated_kms(double alpha = 0.3, int q = 10) {
    return {KernelTag::InterpolatedKMS, {alpha, static_cast<double>(q)}};
  }

  // Throws ConfigError when the parameters break the family's invariants.
  void validate() const;

  bool operator==(const KernelKind&) const = default;
};

// The five benchmark kernels, K1 ... K5.
std::vector<KernelKind> benchmark_kernels();

// Accepts gaussian|brownian|ibm|polya|kms (and K1..K5).
KernelKind parse_kernel(std::string_view name);
std::string kernel_name(const KernelKind& kind);

// K(u, v) for u, v in [0, 1]; throws DomainError outside.
double eval_kernel(const KernelKind& kind, double u, double v);

// [K(u_i, u_j)] over the midpoint grid; exactly symmetric.
GramMatrix gram(const KernelKind& kind, const Grid& grid);

// [K(t_i, t_j)] over arbitrary points in [0, 1], e.g. the endpoint grid l / M.
Matrix gram_at(const KernelKind& kind, const std::vector<double>& points);

// Draws mean-zero Gaussian vectors with covariance equal to a symmetric matrix
// whose negative eigenvalues have been clipped to zero. The factor is computed
// once; draws are reproducible for a given generator state.
class GaussianSampler {
 public:
  explicit GaussianSampler(const Matrix& covariance);

  int dimension() const { return dimension_; }

  // n x dimension matrix of independent draws.
  Matrix draw(int n, std::mt19937_64& rng) const;

  // Fills `out[k]` with component `indices[k]` of a single draw.
  void draw_components(const std::vector<int>& indices, std::mt19937_64& rng,
                       std::vector<double>& out) const;

 private:
  // Row-major storage of L with L L^T = clipped covariance, so that each
  // component is a contiguous dot product with the standard normal vector.
  std::vector<double> factor_rows_;
  int dimension_ = 0;
};

// n i.i.d. rows from N(0, gram) (negative eigenvalues clipped), seeded.
Matrix sample_paths(const GramMatrix& gram, int n, std::uint64_t seed);

}  // namespace gpgraph
