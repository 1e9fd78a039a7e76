#include "gpgraph/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string_view>
#include <utility>

namespace gpgraph::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool skippable(std::string_view line) {
  const std::string_view t = trim(line);
  return t.empty() || t.front() == '#';
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) ++k;
    const std::size_t start = k;
    while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') ++k;
    if (k > start) out.push_back(line.substr(start, k - start));
  }
  return out;
}

std::string where(const std::string& source, int line, int column = 0) {
  std::string s = source + ":" + std::to_string(line);
  if (column > 0) s += ":" + std::to_string(column);
  return s;
}

std::optional<double> to_double(std::string_view field) {
  double value = 0.0;
  const char* end = field.data() + field.size();
  // from_chars rejects a leading '+'.
  const char* begin = field.data();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || field.empty()) return std::nullopt;
  return value;
}

double parse_number(std::string_view field, const std::string& source, int line, int column) {
  if (auto v = to_double(field)) return *v;
  throw ParseError(where(source, line, column) + ": expected a number, got '" + std::string(field) + "'");
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return in;
}

// Rows of comma-separated numbers; NaN marks missing entries when allowed.
Matrix read_table(std::istream& in, const std::string& source, bool allow_missing, char sep) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  std::size_t width = 0;
  int first_line = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto fields = sep == ' ' ? split_ws(line) : split(line, sep);
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (allow_missing && (fields[c].empty() || fields[c] == "NA")) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
      } else {
        row.push_back(parse_number(fields[c], source, lineno, static_cast<int>(c) + 1));
      }
    }
    if (rows.empty()) {
      width = row.size();
      first_line = lineno;
    } else if (row.size() != width) {
      throw ParseError(where(source, lineno) + ": expected " + std::to_string(width) + " fields as on line " +
                       std::to_string(first_line) + ", got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(source + ": no data rows");
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

template <typename Fn>
auto read_file(const std::string& path, Fn&& fn) {
  std::ifstream in = open(path);
  return fn(in, path);
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "NA";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

MaskedSamples read_dense(std::istream& in, const std::string& source) {
  MaskedSamples s;
  s.values = read_table(in, source, true, ',');
  s.observed = s.values.array().isNaN() == false;
  return s;
}

MaskedSamples read_dense_file(const std::string& path) {
  return read_file(path, [](std::istream& in, const std::string& src) { return read_dense(in, src); });
}

void write_dense(std::ostream& out, const MaskedSamples& samples) {
  for (Eigen::Index i = 0; i < samples.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < samples.values.cols(); ++j) {
      if (j > 0) out << ',';
      out << (samples.observed(i, j) ? format_double(samples.values(i, j)) : "NA");
    }
    out << '\n';
  }
}

std::vector<SparseCurve> read_sparse(std::istream& in, const std::string& source) {
  std::vector<SparseCurve> curves;
  std::map<std::string, std::size_t> index;
  std::string line;
  int lineno = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto fields = split(line, ',');
    if (!seen_data && fields.size() == 3 && fields[0] == "curve_id") {
      seen_data = true;
      continue;
    }
    seen_data = true;
    if (fields.size() != 3) {
      throw ParseError(where(source, lineno) + ": expected curve_id,t,y, got " + std::to_string(fields.size()) +
                       " fields");
    }
    if (fields[0].empty()) throw ParseError(where(source, lineno, 1) + ": empty curve id");
    if (fields[2].empty() || fields[2] == "NA") continue;
    const double t = parse_number(fields[1], source, lineno, 2);
    const double y = parse_number(fields[2], source, lineno, 3);
    if (!(t >= 0.0 && t <= 1.0)) {
      throw ParseError(where(source, lineno, 2) + ": time " + std::string(fields[1]) + " outside [0, 1]");
    }
    auto [it, inserted] = index.emplace(std::string(fields[0]), curves.size());
    if (inserted) curves.emplace_back();
    curves[it->second].t.push_back(t);
    curves[it->second].y.push_back(y);
  }
  if (curves.empty()) throw ParseError(source + ": no observations");
  return curves;
}

std::vector<SparseCurve> read_sparse_file(const std::string& path) {
  return read_file(path, [](std::istream& in, const std::string& src) { return read_sparse(in, src); });
}

BlockNormMatrix read_norms(std::istream& in, const std::string& source) {
  BlockNormMatrix out;
  out.norms = read_table(in, source, false, ',');
  if (out.norms.rows() != out.norms.cols()) {
    throw ParseError(source + ": norm matrix is " + std::to_string(out.norms.rows()) + " x " +
                     std::to_string(out.norms.cols()) + ", expected square");
  }
  for (Eigen::Index i = 0; i < out.norms.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.norms.cols(); ++j) {
      if (!(out.norms(i, j) >= 0.0) || !std::isfinite(out.norms(i, j))) {
        throw ParseError(where(source, 0) + ": entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                         ") is not a finite nonnegative number");
      }
    }
  }
  return out;
}

BlockNormMatrix read_norms_file(const std::string& path) {
  return read_file(path, [](std::istream& in, const std::string& src) { return read_norms(in, src); });
}

void write_norms(std::ostream& out, const BlockNormMatrix& norms) {
  for (Eigen::Index i = 0; i < norms.norms.rows(); ++i) {
    for (Eigen::Index j = 0; j < norms.norms.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(norms.norms(i, j));
    }
    out << '\n';
  }
}

PixelGraph read_graph(std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 0;
  std::vector<std::vector<bool>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto fields = split_ws(line);
    std::vector<bool> row;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c] == "1") {
        row.push_back(true);
      } else if (fields[c] == "0") {
        row.push_back(false);
      } else {
        throw ParseError(where(source, lineno, static_cast<int>(c) + 1) + ": expected 0 or 1, got '" +
                         std::string(fields[c]) + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(where(source, lineno) + ": row has " + std::to_string(row.size()) + " entries, expected " +
                       std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(source + ": empty graph");
  if (rows.size() != rows.front().size()) {
    throw ParseError(source + ": graph is " + std::to_string(rows.size()) + " x " +
                     std::to_string(rows.front().size()) + ", expected square");
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  BoolMatrix adjacency(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) adjacency(i, j) = rows[i][j];
  }
  return PixelGraph::from_matrix(adjacency);
}

PixelGraph read_graph_file(const std::string& path) {
  return read_file(path, [](std::istream& in, const std::string& src) { return read_graph(in, src); });
}

void write_graph(std::ostream& out, const PixelGraph& graph) {
  for (int i = 0; i < graph.size(); ++i) {
    for (int j = 0; j < graph.size(); ++j) {
      if (j > 0) out << ' ';
      out << (graph(i, j) ? '1' : '0');
    }
    out << '\n';
  }
}

namespace {

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

template <typename T>
T parse_integer(std::string_view text, const std::string& key) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"kernel", [](ExperimentConfig& c, std::string_view v) { c.kernel = parse_kernel(v); }},
      {"regime", [](ExperimentConfig& c, std::string_view v) { c.regime = parse_regime(std::string(v)); }},
      {"n", [](ExperimentConfig& c, std::string_view v) { c.n = parse_integer<int>(v, "n"); }},
      {"R", [](ExperimentConfig& c, std::string_view v) { c.R = parse_integer<int>(v, "R"); }},
      {"p", [](ExperimentConfig& c, std::string_view v) { c.p = parse_integer<int>(v, "p"); }},
      {"eta",
       [](ExperimentConfig& c, std::string_view v) {
         const auto x = to_double(v);
         if (!x) throw ConfigError("key 'eta': expected a number, got '" + std::string(v) + "'");
         c.eta = *x;
       }},
      {"M", [](ExperimentConfig& c, std::string_view v) { c.M = parse_integer<int>(v, "M"); }},
      {"r", [](ExperimentConfig& c, std::string_view v) { c.r = parse_integer<int>(v, "r"); }},
      {"reps", [](ExperimentConfig& c, std::string_view v) { c.reps = parse_integer<int>(v, "reps"); }},
      {"seed", [](ExperimentConfig& c, std::string_view v) { c.seed = parse_integer<std::uint64_t>(v, "seed"); }},
      {"folds", [](ExperimentConfig& c, std::string_view v) { c.folds = parse_integer<int>(v, "folds"); }},
      {"workers", [](ExperimentConfig& c, std::string_view v) { c.workers = parse_integer<int>(v, "workers"); }},
  };
  return table;
}

}  // namespace

std::vector<ExperimentConfig> read_config(std::istream& in, const std::string& source) {
  std::vector<std::pair<std::string, std::vector<std::string>>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(where(source, lineno) + ": expected 'key = value'");
    const std::string key(trim(std::string_view(line).substr(0, eq)));
    if (!setters().contains(key)) throw ConfigError(where(source, lineno) + ": unknown key '" + key + "'");
    for (const auto& e : entries) {
      if (e.first == key) throw ConfigError(where(source, lineno) + ": duplicate key '" + key + "'");
    }
    std::vector<std::string> values;
    for (std::string_view v : split(std::string_view(line).substr(eq + 1), ',')) {
      if (v.empty()) throw ConfigError(where(source, lineno) + ": empty value for key '" + key + "'");
      values.emplace_back(v);
    }
    entries.emplace_back(key, std::move(values));
  }
  for (const char* required : {"kernel", "regime", "n", "p", "seed"}) {
    bool found = false;
    for (const auto& e : entries) found = found || e.first == required;
    if (!found) throw ConfigError(source + ": missing required key '" + std::string(required) + "'");
  }

  std::vector<ExperimentConfig> out;
  std::vector<std::size_t> choice(entries.size(), 0);
  while (true) {
    ExperimentConfig cfg;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      try {
        setters().at(entries[k].first)(cfg, entries[k].second[choice[k]]);
      } catch (const ConfigError& e) {
        throw ConfigError(source + ": key '" + entries[k].first + "': " + e.what());
      }
    }
    try {
      cfg.validate();
    } catch (const ConfigError& e) {
      throw ConfigError(source + ": " + e.what());
    }
    out.push_back(cfg);
    // Odometer with the last key varying fastest.
    std::size_t k = entries.size();
    while (k > 0) {
      --k;
      if (++choice[k] < entries[k].second.size()) break;
      choice[k] = 0;
      if (k == 0) return out;
    }
    if (entries.empty()) return out;
  }
}

std::vector<ExperimentConfig> read_config_file(const std::string& path) {
  return read_file(path, [](std::istream& in, const std::string& src) { return read_config(in, src); });
}

void write_summary_header(std::ostream& out) {
  out << "kernel,regime,n,R,p,eta,M,r,reps,seed,folds,median_auc,mad_auc\n";
}

void write_summary_row(std::ostream& out, const SummaryRow& row) {
  const ExperimentConfig& c = row.config;
  out << kernel_name(c.kernel) << ',' << regime_name(c.regime) << ',' << c.n << ',' << c.R << ',' << c.p << ','
      << format_double(c.eta) << ',' << c.M << ',' << c.r << ',' << c.reps << ',' << c.seed << ',' << c.folds << ','
      << format_double(row.median_auc) << ',' << format_double(row.mad_auc) << '\n';
}

}  // namespace gpgraph::io
