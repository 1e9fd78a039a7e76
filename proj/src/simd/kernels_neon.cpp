#include <arm_neon.h>

#include "gpgraph/simd.hpp"

namespace gpgraph::simd::neon {

// Two 2-lane registers emulate the four reference lanes; vmulq/vaddq keep the
// multiply and add unfused.

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t a = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t prod = vmulq_f64(a, vld1q_f64(x + i));
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), prod));
  }
  for (; i < n; ++i) {
    const double prod = alpha * x[i];
    y[i] = y[i] + prod;
  }
}

double dot(const double* x, const double* y, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  const std::size_t whole = n - n % 4;
  for (std::size_t i = 0; i < whole; i += 4) {
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
  }
  const double l0 = vgetq_lane_f64(lo, 0), l1 = vgetq_lane_f64(lo, 1);
  const double l2 = vgetq_lane_f64(hi, 0), l3 = vgetq_lane_f64(hi, 1);
  double sum = (l0 + l1) + (l2 + l3);
  for (std::size_t i = whole; i < n; ++i) {
    const double prod = x[i] * y[i];
    sum = sum + prod;
  }
  return sum;
}

}  // namespace gpgraph::simd::neon
