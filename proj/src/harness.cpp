#include "gpgraph/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include "gpgraph/estimators.hpp"
#include "gpgraph/tuning.hpp"

namespace gpgraph {

namespace {

constexpr double kPopulationRidge = 1e-8;

Matrix sampling_covariance(const ExperimentConfig& cfg) {
  if (cfg.regime == Regime::Regular) {
    std::vector<double> endpoints(cfg.R + 1);
    for (int l = 0; l <= cfg.R; ++l) endpoints[l] = static_cast<double>(l) / cfg.R;
    return gram_at(cfg.kernel, endpoints);
  }
  return gram(cfg.kernel, Grid(cfg.R)).values;
}

Matrix select_rows(const Matrix& m, std::span<const int> rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = m.row(rows[k]);
  return out;
}

// r distinct grid indices, ascending (partial Fisher-Yates).
std::vector<int> draw_locations(int grid_size, int count, std::mt19937_64& rng, std::vector<int>& pool) {
  pool.resize(grid_size);
  for (int i = 0; i < grid_size; ++i) pool[i] = i;
  for (int k = 0; k < count; ++k) {
    std::uniform_int_distribution<int> pick(k, grid_size - 1);
    std::swap(pool[k], pool[pick(rng)]);
  }
  std::vector<int> out(pool.begin(), pool.begin() + count);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Regime parse_regime(const std::string& name) {
  if (name == "complete") return Regime::Complete;
  if (name == "regular") return Regime::Regular;
  if (name == "sparse") return Regime::Sparse;
  throw ConfigError("unknown regime '" + name + "' (expected complete, regular or sparse)");
}

std::string regime_name(Regime regime) {
  switch (regime) {
    case Regime::Complete: return "complete";
    case Regime::Regular: return "regular";
    case Regime::Sparse: return "sparse";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  kernel.validate();
  if (n <= 0) throw ConfigError("n must be positive");
  if (R <= 0) throw ConfigError("R must be positive");
  if (p <= 0 || R % p != 0) throw ConfigError("p must be positive and divide R (R=" + std::to_string(R) + ")");
  if (eta < 0.0) throw ConfigError("eta must be nonnegative");
  if (reps < 1) throw ConfigError("reps must be at least 1");
  if (folds < 2) throw ConfigError("folds must be at least 2");
  if (n < folds) throw ConfigError("n must be at least folds");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (regime == Regime::Regular && R < 2) throw ConfigError("R must be at least 2 for the regular regime");
  if (regime == Regime::Sparse) {
    if (M < 2 || R % M != 0) throw ConfigError("M must be at least 2 and divide R");
    if (r < 2 || r > R) throw ConfigError("r must lie in [2, R]");
  }
}

PopulationRecovery population_recovery(const KernelKind& kind, int R, int p, std::optional<double> kappa,
                                       std::optional<double> rho) {
  const Partition partition(R, p);
  const GramMatrix g = gram(kind, Grid(R));
  PopulationRecovery out;
  if (kappa) {
    out.kappa = *kappa;
  } else {
    const RidgeGrid grid = lambda_grid(diag_blocks(g, partition), RidgeRegime::Complete);
    out.kappa = kPopulationRidge * grid.values.front();
  }
  const CorrMatrix c = corr_matrix(g, partition, out.kappa);
  out.norms = block_norms(precision(c), partition);
  if (rho) {
    out.rho = *rho;
  } else {
    out.rho = deepest_valley(threshold_candidates(out.norms));
    if (!(out.rho > 0.0)) {
      throw EstimationError("population norms of kernel '" + kernel_name(kind) + "' show no density valley");
    }
  }
  out.graph = threshold_graph(out.norms, out.rho);
  return out;
}

PixelGraph reference_truth(const KernelKind& kind, int R, int p) {
  switch (kind.tag) {
    case KernelTag::Gaussian:
    case KernelTag::Brownian:
      return pixelate_truth(markov_truth(), p);
    case KernelTag::InterpolatedKMS:
      return pixelate_truth(kms_truth(static_cast<int>(kind.params.at(1))), p);
    default:
      return population_recovery(kind, R, p).graph;
  }
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw ConfigError("cannot summarize an empty list");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  Summary s;
  s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  double total = 0.0;
  for (double v : values) total += std::abs(v - s.median);
  s.mad = total / static_cast<double>(n);
  return s;
}

std::uint64_t replicate_seed(std::uint64_t master, int rep) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(rep) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Experiment::Experiment(const ExperimentConfig& config)
    : config_((config.validate(), config)),
      partition_(config.R, config.p),
      sampler_(sampling_covariance(config)),
      noise_sd_(std::sqrt(noise_variance(config.eta, gram(config.kernel, Grid(config.R)).values))),
      truth_(reference_truth(config.kernel, config.R, config.p)) {}

ReplicateResult Experiment::run_replicate(int rep) const {
  const ExperimentConfig& cfg = config_;
  std::mt19937_64 rng(replicate_seed(cfg.seed, rep));

  GramMatrix estimate;
  SubsetEstimator estimator;
  RidgeRegime ridge_regime = RidgeRegime::Discrete;
  Matrix curves;
  std::vector<SparseCurve> sparse;

  switch (cfg.regime) {
    case Regime::Complete: {
      curves = sampler_.draw(cfg.n, rng);
      estimate = empirical_cov(curves);
      estimator = [&curves](std::span<const int> rows) { return empirical_cov(select_rows(curves, rows)); };
      ridge_regime = RidgeRegime::Complete;
      break;
    }
    case Regime::Regular: {
      curves = sampler_.draw(cfg.n, rng);
      if (noise_sd_ > 0.0) {
        std::normal_distribution<double> noise(0.0, noise_sd_);
        for (Eigen::Index k = 0; k < curves.rows(); ++k) {
          for (Eigen::Index l = 0; l < curves.cols(); ++l) curves(k, l) += noise(rng);
        }
      }
      estimate = regular_cov(curves);
      estimator = [&curves](std::span<const int> rows) { return regular_cov(select_rows(curves, rows)); };
      break;
    }
    case Regime::Sparse: {
      sparse.resize(cfg.n);
      std::vector<int> pool;
      std::vector<double> values;
      for (SparseCurve& curve : sparse) {
        const std::vector<int> where = draw_locations(cfg.R, cfg.r, rng, pool);
        sampler_.draw_components(where, rng, values);
        if (noise_sd_ > 0.0) {
          std::normal_distribution<double> noise(0.0, noise_sd_);
          for (double& v : values) v += noise(rng);
        }
        for (int idx : where) curve.t.push_back((idx + 0.5) / cfg.R);
        curve.y = values;
      }
      estimate = sparse_cov(sparse, cfg.M, cfg.R).gram;
      estimator = [&sparse, &cfg](std::span<const int> rows) {
        std::vector<SparseCurve> subset;
        subset.reserve(rows.size());
        for (int k : rows) subset.push_back(sparse[k]);
        return sparse_cov(subset, cfg.M, cfg.R).gram;
      };
      break;
    }
  }

  const RidgeGrid grid = lambda_grid(diag_blocks(estimate, partition_), ridge_regime);
  const RidgeSelection ridge = ridge_cv(cfg.n, estimator, estimate, partition_, cfg.folds, grid);
  const CorrMatrix c = corr_matrix(estimate, partition_, ridge.kappa);
  ReplicateResult out;
  out.kappa = c.kappa;
  out.norms = block_norms(precision(c), partition_);
  out.auc = auc(roc(out.norms, truth_));
  return out;
}

SummaryRow Experiment::run() const {
  const int reps = config_.reps;
  std::vector<double> aucs(reps, 0.0);
  std::vector<std::exception_ptr> failures(reps);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int rep = next++; rep < reps; rep = next++) {
      try {
        aucs[rep] = run_replicate(rep).auc;
      } catch (...) {
        failures[rep] = std::current_exception();
      }
    }
  };
  const int workers = std::min(config_.workers, reps);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  for (int rep = 0; rep < reps; ++rep) {
    if (!failures[rep]) continue;
    try {
      std::rethrow_exception(failures[rep]);
    } catch (const SingularityError& e) {
      throw SingularityError("replicate " + std::to_string(rep) + ": " + e.what(), e.min_eigenvalue());
    } catch (const std::exception& e) {
      throw Error("replicate " + std::to_string(rep) + ": " + e.what());
    }
  }
  SummaryRow row;
  row.config = config_;
  row.per_rep_aucs = aucs;
  const Summary s = summarize(aucs);
  row.median_auc = s.median;
  row.mad_auc = s.mad;
  return row;
}

SummaryRow run_config(const ExperimentConfig& config) { return Experiment(config).run(); }

}  // namespace gpgraph
