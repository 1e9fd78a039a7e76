#include "gpgraph/cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gpgraph/estimators.hpp"
#include "gpgraph/harness.hpp"
#include "gpgraph/io.hpp"
#include "gpgraph/recovery.hpp"
#include "gpgraph/tuning.hpp"

namespace gpgraph {

namespace {

// Destination of a table: a file when a path is given, the caller's stream otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::string quote(const std::string& arg) {
  if (!arg.empty() && arg.find_first_of(" \t\"'") == std::string::npos) return arg;
  std::string q = "'";
  for (char c : arg) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

std::string invocation(const std::vector<std::string>& args) {
  std::string line = "# gpgraph";
  for (const std::string& a : args) line += " " + quote(a);
  return line + "\n";
}

Matrix select_rows(const Matrix& m, std::span<const int> rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = m.row(rows[k]);
  return out;
}

MaskedSamples select_rows(const MaskedSamples& s, std::span<const int> rows) {
  MaskedSamples out;
  out.values = select_rows(s.values, rows);
  out.observed.resize(static_cast<Eigen::Index>(rows.size()), s.observed.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) out.observed.row(static_cast<Eigen::Index>(k)) = s.observed.row(rows[k]);
  return out;
}

struct SimulateOptions {
  std::string config;
  std::string out;
  std::string dump;
  std::string kernel;
  std::string regime;
  std::optional<int> n, grid, partition, bins, per_curve, reps, folds, workers;
  std::optional<double> noise;
  std::optional<std::uint64_t> seed;
};

int cmd_simulate(const SimulateOptions& o, const std::string& header, std::ostream& out) {
  std::vector<ExperimentConfig> configs;
  if (!o.config.empty()) {
    configs = io::read_config_file(o.config);
    if (o.workers) {
      for (ExperimentConfig& c : configs) c.workers = *o.workers;
    }
  } else {
    if (o.kernel.empty()) throw ConfigError("missing --kernel (or give --config)");
    if (o.regime.empty()) throw ConfigError("missing --regime (or give --config)");
    if (!o.n) throw ConfigError("missing --n (or give --config)");
    if (!o.partition) throw ConfigError("missing --partition (or give --config)");
    if (!o.seed) throw ConfigError("missing --seed (or give --config)");
    ExperimentConfig c;
    c.kernel = parse_kernel(o.kernel);
    c.regime = parse_regime(o.regime);
    c.n = *o.n;
    c.p = *o.partition;
    c.seed = *o.seed;
    if (o.grid) c.R = *o.grid;
    if (o.noise) c.eta = *o.noise;
    if (o.bins) c.M = *o.bins;
    if (o.per_curve) c.r = *o.per_curve;
    if (o.reps) c.reps = *o.reps;
    if (o.folds) c.folds = *o.folds;
    if (o.workers) c.workers = *o.workers;
    c.validate();
    configs.push_back(c);
  }

  std::vector<SummaryRow> rows;
  rows.reserve(configs.size());
  for (const ExperimentConfig& c : configs) rows.push_back(run_config(c));

  Sink sink(o.out, out);
  *sink << header << "# AUC median and mean absolute deviation about the median over each row's reps\n";
  io::write_summary_header(*sink);
  for (const SummaryRow& row : rows) io::write_summary_row(*sink, row);

  if (!o.dump.empty()) {
    Sink dump(o.dump, out);
    *dump << header << "row,rep,auc\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
      for (std::size_t r = 0; r < rows[k].per_rep_aucs.size(); ++r) {
        *dump << k << ',' << r << ',' << io::format_double(rows[k].per_rep_aucs[r]) << '\n';
      }
    }
  }
  return kExitOk;
}

struct EstimateOptions {
  std::string data;
  std::string regime = "complete";
  std::string out;
  int partition = 0;
  std::optional<double> ridge;
  bool cv = false;
  int folds = 5;
  int bins = 0;
  int grid = 0;
  bool center = false;
};

int cmd_estimate(const EstimateOptions& o, const std::string& header, std::ostream& out, std::ostream& err) {
  if (o.ridge.has_value() == o.cv) throw ConfigError("give exactly one of --ridge and --cv");
  GramMatrix estimate;
  SubsetEstimator estimator;
  RidgeRegime ridge_regime = RidgeRegime::Complete;
  int curves = 0;

  MaskedSamples dense;
  std::vector<SparseCurve> sparse;
  if (o.regime == "sparse") {
    if (o.bins <= 0) throw ConfigError("sparse estimation needs --bins");
    if (o.grid <= 0) throw ConfigError("sparse estimation needs --grid");
    sparse = io::read_sparse_file(o.data);
    const SparseCovariance sc = sparse_cov(sparse, o.bins, o.grid);
    if (sc.skipped_curves > 0) {
      err << "warning: skipped " << sc.skipped_curves << " curve(s) with fewer than two observations\n";
    }
    estimate = sc.gram;
    curves = static_cast<int>(sparse.size());
    const int bins = o.bins, grid = o.grid;
    estimator = [&sparse, bins, grid](std::span<const int> rows) {
      std::vector<SparseCurve> subset;
      for (int k : rows) subset.push_back(sparse[k]);
      return sparse_cov(subset, bins, grid).gram;
    };
    ridge_regime = RidgeRegime::Discrete;
  } else {
    dense = io::read_dense_file(o.data);
    curves = dense.curves();
    const bool center = o.center;
    if (o.regime == "pairwise") {
      estimate = psd_project(pairwise_cov(dense, center));
      estimator = [&dense, center](std::span<const int> rows) {
        return psd_project(pairwise_cov(select_rows(dense, rows), center));
      };
    } else {
      if (!dense.observed.all()) {
        throw ConfigError(o.data + ": missing values need --regime pairwise");
      }
      if (o.regime == "complete") {
        estimate = empirical_cov(dense.values, center);
        estimator = [&dense, center](std::span<const int> rows) {
          return empirical_cov(select_rows(dense.values, rows), center);
        };
      } else if (o.regime == "regular") {
        estimate = regular_cov(dense.values);
        estimator = [&dense](std::span<const int> rows) { return regular_cov(select_rows(dense.values, rows)); };
        ridge_regime = RidgeRegime::Discrete;
      } else {
        throw ConfigError("unknown regime '" + o.regime + "' (expected complete, pairwise, regular or sparse)");
      }
    }
  }

  const Partition partition(estimate.size(), o.partition);
  double kappa = 0.0;
  if (o.cv) {
    const RidgeGrid grid = lambda_grid(diag_blocks(estimate, partition), ridge_regime);
    kappa = ridge_cv(curves, estimator, estimate, partition, o.folds, grid).kappa;
  } else {
    kappa = *o.ridge;
    if (!(kappa >= 0.0)) throw ConfigError("--ridge must be nonnegative");
  }
  const CorrMatrix c = corr_matrix(estimate, partition, kappa);
  const BlockNormMatrix norms = block_norms(precision(c), partition);

  Sink sink(o.out, out);
  *sink << header << "# kappa " << io::format_double(c.kappa) << (c.kappa_clamped ? " (raised to the ridge floor)" : "")
        << "\n";
  io::write_norms(*sink, norms);
  if (!o.out.empty()) out << "kappa " << io::format_double(c.kappa) << "\n";
  return kExitOk;
}

int cmd_tune(const std::string& norms_path, const std::string& out_path, const std::string& density_path,
             const std::string& header, std::ostream& out) {
  const BlockNormMatrix norms = io::read_norms_file(norms_path);
  const ThresholdCandidates t = threshold_candidates(norms);
  Sink sink(out_path, out);
  *sink << header << "# bandwidth " << io::format_double(t.bandwidth) << "\n# zero entries " << t.zero_entries
        << "\nkind,rho\n";
  for (double rho : t.minima) *sink << "minimum," << io::format_double(rho) << '\n';
  for (double rho : t.elbows) *sink << "elbow," << io::format_double(rho) << '\n';
  if (!density_path.empty()) {
    Sink density(density_path, out);
    *density << header << "log10_norm,density\n";
    for (const DensityPoint& d : t.density_curve) {
      *density << io::format_double(d.x) << ',' << io::format_double(d.density) << '\n';
    }
  }
  return kExitOk;
}

int cmd_recover(const std::string& norms_path, double rho, const std::string& out_path, const std::string& header,
                std::ostream& out) {
  if (!(rho > 0.0)) throw ConfigError("--threshold must be positive");
  const PixelGraph g = threshold_graph(io::read_norms_file(norms_path), rho);
  Sink sink(out_path, out);
  *sink << header;
  io::write_graph(*sink, g);
  return kExitOk;
}

struct TruthOptions {
  std::string kernel;
  std::vector<double> bands;
  std::vector<double> distances;
  int lattice = 0;
  int radius = 1;
  int partition = 0;
  std::string out;
};

int cmd_truth(const TruthOptions& o, const std::string& header, std::ostream& out) {
  TruthSpec spec;
  if (!o.kernel.empty()) {
    const KernelKind k = parse_kernel(o.kernel);
    TruthSpec base;
    switch (k.tag) {
      case KernelTag::Gaussian:
      case KernelTag::Brownian: base = markov_truth(); break;
      case KernelTag::IntegratedBM: base = integrated_bm_truth(); break;
      case KernelTag::Polya: base = polya_truth(); break;
      case KernelTag::InterpolatedKMS: base = kms_truth(static_cast<int>(k.params.at(1))); break;
    }
    spec.terms.insert(spec.terms.end(), base.terms.begin(), base.terms.end());
  }
  for (double w : o.bands) {
    if (!(w >= 0.0)) throw ConfigError("--band widths must be nonnegative");
    spec.terms.push_back(DiagBand{w});
  }
  if (!o.distances.empty()) spec.terms.push_back(DistanceSet{o.distances});
  if (o.lattice > 0) spec.terms.push_back(LatticeBand{o.lattice, o.radius});
  if (spec.terms.empty()) throw ConfigError("give at least one of --kernel, --band, --distances, --lattice");
  if (o.partition <= 0) throw ConfigError("--partition must be positive");
  const PixelGraph g = pixelate_truth(spec, o.partition);
  Sink sink(o.out, out);
  *sink << header;
  io::write_graph(*sink, g);
  return kExitOk;
}

int cmd_eval(const std::string& graph_path, const std::string& norms_path, const std::string& truth_path,
             const std::string& out_path, const std::string& header, std::ostream& out) {
  const PixelGraph truth = io::read_graph_file(truth_path);
  Sink sink(out_path, out);
  if (!graph_path.empty()) {
    const Rates r = tpr_fpr(io::read_graph_file(graph_path), truth);
    *sink << header << "tpr,fpr\n" << io::format_double(r.tpr) << ',' << io::format_double(r.fpr) << '\n';
  } else {
    const RocCurve curve = roc(io::read_norms_file(norms_path), truth);
    *sink << header << "# auc " << io::format_double(auc(curve)) << "\nfpr,tpr\n";
    for (const RocPoint& pt : curve.points) {
      *sink << io::format_double(pt.fpr) << ',' << io::format_double(pt.tpr) << '\n';
    }
  }
  return kExitOk;
}

int cmd_logreturns(const std::string& prices_path, const std::string& out_path, const std::string& header,
                   std::ostream& out) {
  MaskedSamples prices = io::read_dense_file(prices_path);
  MaskedSamples returns = prices;
  for (Eigen::Index i = 0; i < prices.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < prices.values.cols(); ++j) {
      if (prices.observed(i, j) && !(prices.values(i, j) > 0.0)) {
        throw DomainError(prices_path + ": price at row " + std::to_string(i + 1) + ", column " +
                          std::to_string(j + 1) + " is not positive");
      }
    }
    const bool has_open = prices.observed(i, 0);
    for (Eigen::Index j = 0; j < prices.values.cols(); ++j) {
      const bool present = has_open && prices.observed(i, j);
      returns.observed(i, j) = present;
      returns.values(i, j) =
          present ? std::log(prices.values(i, j) / prices.values(i, 0)) : std::numeric_limits<double>::quiet_NaN();
    }
  }
  Sink sink(out_path, out);
  *sink << header;
  io::write_dense(*sink, returns);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conditional-independence graphs of Gaussian processes at finite resolution", "gpgraph"};
  app.require_subcommand(1);
  const std::string header = invocation(args);

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Replicated recovery study, one summary row per config");
  simulate->add_option("--config", sim.config, "Key-value config; comma lists expand into a sweep")
      ->check(CLI::ExistingFile);
  simulate->add_option("--kernel", sim.kernel, "gaussian|brownian|ibm|polya|kms");
  simulate->add_option("--regime", sim.regime, "complete|regular|sparse");
  simulate->add_option("--n", sim.n, "Curves per replicate");
  simulate->add_option("--grid", sim.grid, "Grid size R");
  simulate->add_option("--partition", sim.partition, "Cells p");
  simulate->add_option("--noise", sim.noise, "Noise level eta");
  simulate->add_option("--bins", sim.bins, "Sparse estimator bins M");
  simulate->add_option("--per-curve", sim.per_curve, "Observations per curve r (sparse)");
  simulate->add_option("--reps", sim.reps, "Replicates");
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--folds", sim.folds, "Cross-validation folds");
  simulate->add_option("--workers", sim.workers, "Threads (output does not depend on it)");
  simulate->add_option("--out", sim.out, "Summary table path");
  simulate->add_option("--dump-reps", sim.dump, "Per-replicate AUC table path");

  EstimateOptions est;
  CLI::App* estimate = app.add_subcommand("estimate", "Block norms of the estimated precision");
  estimate->add_option("--data", est.data, "Curve file")->required()->check(CLI::ExistingFile);
  estimate->add_option("--regime", est.regime, "complete|pairwise|regular|sparse")->capture_default_str();
  estimate->add_option("--partition", est.partition, "Cells p")->required();
  CLI::Option* ridge_opt = estimate->add_option("--ridge", est.ridge, "Fixed ridge kappa");
  CLI::Option* cv_opt = estimate->add_flag("--cv", est.cv, "Choose the ridge by cross-validation");
  ridge_opt->excludes(cv_opt);
  estimate->add_option("--folds", est.folds, "Cross-validation folds");
  estimate->add_option("--bins", est.bins, "Sparse estimator bins M");
  estimate->add_option("--grid", est.grid, "Output grid size R (sparse)");
  estimate->add_flag("--center", est.center, "Subtract column means (dense regimes)");
  estimate->add_option("--out", est.out, "Norm matrix path");

  std::string tune_norms, tune_out, tune_density;
  CLI::App* tune = app.add_subcommand("tune", "Threshold candidates from the density of log10 norms");
  tune->add_option("--norms", tune_norms, "Norm matrix")->required()->check(CLI::ExistingFile);
  tune->add_option("--out", tune_out, "Candidate table path");
  tune->add_option("--density", tune_density, "Density curve table path");

  std::string rec_norms, rec_out;
  double rho = 0.0;
  CLI::App* recover = app.add_subcommand("recover", "Threshold block norms into a graph");
  recover->add_option("--norms", rec_norms, "Norm matrix")->required()->check(CLI::ExistingFile);
  recover->add_option("--threshold", rho, "rho")->required();
  recover->add_option("--out", rec_out, "Graph path");

  TruthOptions tr;
  CLI::App* truth = app.add_subcommand("truth", "Pixelated ground-truth graph");
  truth->add_option("--kernel", tr.kernel, "Benchmark kernel whose graph to pixelate");
  truth->add_option("--band", tr.bands, "Diagonal band half-width (repeatable)");
  truth->add_option("--distances", tr.distances, "Distance set, comma-separated")->delimiter(',');
  truth->add_option("--lattice", tr.lattice, "Lattice size q of a lattice band");
  truth->add_option("--radius", tr.radius, "Lattice band radius")->capture_default_str();
  truth->add_option("--partition", tr.partition, "Cells p")->required();
  truth->add_option("--out", tr.out, "Graph path");

  std::string ev_graph, ev_norms, ev_truth, ev_out;
  CLI::App* eval = app.add_subcommand("eval", "TPR/FPR of a graph, or ROC and AUC of norms");
  CLI::Option* g_opt = eval->add_option("--graph", ev_graph, "Estimated graph")->check(CLI::ExistingFile);
  CLI::Option* n_opt = eval->add_option("--norms", ev_norms, "Norm matrix")->check(CLI::ExistingFile);
  g_opt->excludes(n_opt);
  eval->add_option("--truth", ev_truth, "Truth graph")->required()->check(CLI::ExistingFile);
  eval->add_option("--out", ev_out, "Result path");

  std::string lr_prices, lr_out;
  CLI::App* logreturns = app.add_subcommand("logreturns", "Cumulative log-returns log(P_t / P_0) per row");
  logreturns->add_option("--prices", lr_prices, "Price file, opening price first")->required()->check(
      CLI::ExistingFile);
  logreturns->add_option("--out", lr_out, "Curve file path");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim, header, out);
    if (estimate->parsed()) return cmd_estimate(est, header, out, err);
    if (tune->parsed()) return cmd_tune(tune_norms, tune_out, tune_density, header, out);
    if (recover->parsed()) return cmd_recover(rec_norms, rho, rec_out, header, out);
    if (truth->parsed()) return cmd_truth(tr, header, out);
    if (eval->parsed()) {
      if (ev_graph.empty() && ev_norms.empty()) throw ConfigError("give --graph or --norms");
      return cmd_eval(ev_graph, ev_norms, ev_truth, ev_out, header, out);
    }
    if (logreturns->parsed()) return cmd_logreturns(lr_prices, lr_out, header, out);
  } catch (const SingularityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSingular;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EstimationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace gpgraph
