#include "gpgraph/simd.hpp"

namespace gpgraph::simd::scalar {

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double prod = alpha * x[i];
    y[i] = y[i] + prod;
  }
}

double dot(const double* x, const double* y, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t whole = n - n % 4;
  for (std::size_t i = 0; i < whole; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const double prod = x[i + l] * y[i + l];
      lane[l] = lane[l] + prod;
    }
  }
  double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (std::size_t i = whole; i < n; ++i) {
    const double prod = x[i] * y[i];
    sum = sum + prod;
  }
  return sum;
}

}  // namespace gpgraph::simd::scalar
