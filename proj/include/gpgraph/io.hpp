#pragma once

// Text file formats.
//
//   dense curves   one curve per row, comma-separated; an empty field or NA is missing
//   sparse curves  rows "curve_id,t,y"
//   norm matrix    p x p, comma-separated
//   graph          p x p of 0/1, space-separated
//   config         "key = value" lines; comma lists expand into a sweep
//
// Lines starting with '#' are comments everywhere. Parse failures raise
// ParseError with "source:line" (and the column when it is known).

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "gpgraph/estimators.hpp"
#include "gpgraph/harness.hpp"
#include "gpgraph/operator_core.hpp"
#include "gpgraph/partition.hpp"

namespace gpgraph::io {

// Shortest round-trip decimal form.
std::string format_double(double value);

MaskedSamples read_dense(std::istream& in, const std::string& source);
MaskedSamples read_dense_file(const std::string& path);
// Missing entries are written as NA.
void write_dense(std::ostream& out, const MaskedSamples& samples);

// Curves are returned in order of first appearance of their id. An optional
// header row "curve_id,t,y" is skipped.
std::vector<SparseCurve> read_sparse(std::istream& in, const std::string& source);
std::vector<SparseCurve> read_sparse_file(const std::string& path);

BlockNormMatrix read_norms(std::istream& in, const std::string& source);
BlockNormMatrix read_norms_file(const std::string& path);
void write_norms(std::ostream& out, const BlockNormMatrix& norms);

PixelGraph read_graph(std::istream& in, const std::string& source);
PixelGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const PixelGraph& graph);

// Keys: kernel, regime, n, R, p, eta, M, r, reps, seed, folds, workers.
// kernel, regime, n, p and seed are required. Sweeps are expanded with the
// first listed key varying slowest.
std::vector<ExperimentConfig> read_config(std::istream& in, const std::string& source);
std::vector<ExperimentConfig> read_config_file(const std::string& path);

void write_summary_header(std::ostream& out);
void write_summary_row(std::ostream& out, const SummaryRow& row);

}  // namespace gpgraph::io
