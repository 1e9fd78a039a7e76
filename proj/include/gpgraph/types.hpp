#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gpgraph {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Error hierarchy. Every failure raised by the library derives from Error so
// callers (the CLI in particular) can map categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent sizes or parameters supplied by the caller.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Data are insufficient for the requested estimate.
class EstimationError : public Error {
 public:
  using Error::Error;
};

// Malformed input text; carries the location when known.
class ParseError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

// Uniform grid of R cell midpoints u_i = (i + 1/2) / R on [0, 1].
class Grid {
 public:
  explicit Grid(int size) : size_(size) {
    if (size <= 0) throw ConfigError("grid size must be positive, got " + std::to_string(size));
  }
  int size() const { return size_; }
  double point(int i) const { return (i + 0.5) / size_; }
  bool operator==(const Grid&) const = default;

 private:
  int size_;
};

// R x R symmetric discretization of a covariance kernel or of its estimate.
struct GramMatrix {
  Matrix values;

  int size() const { return static_cast<int>(values.rows()); }
  Grid grid() const { return Grid(size()); }
};

}  // namespace gpgraph
