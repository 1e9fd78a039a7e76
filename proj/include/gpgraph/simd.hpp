#pragma once

// Data-parallel inner loops used by the estimators and the path sampler.
//
// Each kernel has a scalar reference implementation and optional vector
// variants. All variants are bitwise equivalent: they perform the same
// multiplications and additions in the same association order (four
// interleaved accumulation lanes, no fused multiply-add), so results never
// depend on which instruction set was picked at runtime.

#include <cstddef>
#include <span>
#include <string_view>

namespace gpgraph::simd {

enum class Isa { Scalar, Avx2, Neon };

struct KernelTable {
  Isa isa;
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // Four-lane dot product: lane l accumulates i = l (mod 4) over whole chunks,
  // lanes are combined as (l0 + l1) + (l2 + l3), then the tail is added in order.
  double (*dot)(const double* x, const double* y, std::size_t n);
};

std::string_view isa_name(Isa isa);

// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

// Kernel table for a specific instruction set; throws ConfigError if unavailable.
const KernelTable& kernels_for(Isa isa);

// Best available instruction set. The environment variable GPGRAPH_SIMD
// (scalar|avx2|neon) overrides the choice when that variant is available.
Isa active_isa();

const KernelTable& active_kernels();

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active_kernels().axpy(alpha, x.data(), y.data(), x.size());
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active_kernels().dot(x.data(), y.data(), x.size());
}

namespace scalar {
void axpy(double alpha, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
}  // namespace scalar

#if defined(GPGRAPH_HAVE_AVX2)
namespace avx2 {
void axpy(double alpha, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
}  // namespace avx2
#endif

#if defined(GPGRAPH_HAVE_NEON)
namespace neon {
void axpy(double alpha, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
}  // namespace neon
#endif

}  // namespace gpgraph::simd
