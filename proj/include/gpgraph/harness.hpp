#pragma once

// Simulation study: replicated graph recovery under the complete, regular and
// sparse observation regimes, summarized by the median and mean absolute
// deviation of the AUC.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpgraph/kernels.hpp"
#include "gpgraph/operator_core.hpp"
#include "gpgraph/partition.hpp"
#include "gpgraph/recovery.hpp"

namespace gpgraph {

enum class Regime { Complete, Regular, Sparse };

Regime parse_regime(const std::string& name);
std::string regime_name(Regime regime);

struct ExperimentConfig {
  KernelKind kernel = KernelKind::gaussian();
  Regime regime = Regime::Complete;
  int n = 100;        // curves per replicate
  int R = 600;        // grid size; the regular regime observes R + 1 endpoints
  int p = 20;         // partition cells
  double eta = 0.0;   // noise variance as a fraction of the operator trace
  int M = 20;         // bins of the sparse estimator
  int r = 5;          // observations kept per curve (sparse)
  int reps = 20;
  std::uint64_t seed = 1;
  int folds = 5;
  int workers = 1;    // threads; results do not depend on it

  // Throws ConfigError naming the offending field.
  void validate() const;
};

struct SummaryRow {
  ExperimentConfig config;
  double median_auc = 0.0;
  double mad_auc = 0.0;
  std::vector<double> per_rep_aucs;
};

struct PopulationRecovery {
  BlockNormMatrix norms;
  double kappa = 0.0;
  double rho = 0.0;
  PixelGraph graph;
};

// Runs the pipeline on the exact kernel. Defaults: kappa = 1e-8 ||D/R||,
// rho = deepest density valley of the log10 norms.
PopulationRecovery population_recovery(const KernelKind& kind, int R, int p,
                                       std::optional<double> kappa = std::nullopt,
                                       std::optional<double> rho = std::nullopt);

// Ground truth used for scoring: pixelated continuum graphs for the Gaussian,
// Brownian and interpolated-KMS kernels, population recovery otherwise.
PixelGraph reference_truth(const KernelKind& kind, int R, int p);

// Median and mean absolute deviation about the median.
struct Summary {
  double median = 0.0;
  double mad = 0.0;
};
Summary summarize(std::span<const double> values);

// Seed of replicate `rep`, derived from the master seed by a splitmix64 mix.
std::uint64_t replicate_seed(std::uint64_t master, int rep);

// Block norms of one simulated replicate (sampling, estimation, ridge
// cross-validation, correlation, precision).
struct ReplicateResult {
  BlockNormMatrix norms;
  double kappa = 0.0;
  double auc = 0.0;
};

class Experiment {
 public:
  explicit Experiment(const ExperimentConfig& config);

  const ExperimentConfig& config() const { return config_; }
  const PixelGraph& truth() const { return truth_; }

  ReplicateResult run_replicate(int rep) const;
  SummaryRow run() const;

 private:
  ExperimentConfig config_;
  Partition partition_;
  GaussianSampler sampler_;
  double noise_sd_ = 0.0;
  PixelGraph truth_;
};

SummaryRow run_config(const ExperimentConfig& config);

}  // namespace gpgraph
