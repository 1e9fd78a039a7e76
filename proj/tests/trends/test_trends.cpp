// Replicated simulation trends: more curves help, noise does not.

#include <gtest/gtest.h>

#include "gpgraph/harness.hpp"

using namespace gpgraph;

namespace {

double median_auc(const KernelKind& kind, Regime regime, int n, int p, double eta) {
  ExperimentConfig c;
  c.kernel = kind;
  c.regime = regime;
  c.n = n;
  c.R = 600;
  c.p = p;
  c.eta = eta;
  c.reps = 20;
  c.seed = 31337;
  return run_config(c).median_auc;
}

class PerKernel : public ::testing::TestWithParam<int> {
 protected:
  KernelKind kind() const { return benchmark_kernels()[GetParam()]; }
};

}  // namespace

TEST_P(PerKernel, CompleteAucGrowsWithSampleSize) {
  const double small = median_auc(kind(), Regime::Complete, 50, 20, 0.0);
  const double large = median_auc(kind(), Regime::Complete, 200, 20, 0.0);
  EXPECT_GE(large, small) << kernel_name(kind()) << ": n=50 " << small << ", n=200 " << large;
}

TEST_P(PerKernel, RegularNoiseDoesNotHelp) {
  for (int p : {20, 30, 40}) {
    const double clean = median_auc(kind(), Regime::Regular, 100, p, 0.0);
    const double noisy = median_auc(kind(), Regime::Regular, 100, p, 0.1);
    EXPECT_LE(noisy, clean + 0.02) << kernel_name(kind()) << " p=" << p << ": eta=0 " << clean << ", eta=0.1 " << noisy;
  }
}

INSTANTIATE_TEST_SUITE_P(Benchmarks, PerKernel, ::testing::Range(0, 5),
                         [](const ::testing::TestParamInfo<int>& info) {
                           return kernel_name(benchmark_kernels()[info.param]);
                         });
