#pragma once

// Discretized correlation and precision operator matrices.
//
// Quadrature convention: an integral operator whose kernel is discretized as
// the R x R matrix M acts on coordinate vectors as (1/R) M. With it the
// whitened off-diagonal part and the precision read
//
//   r0 = [kappa I + D/R]^{-1/2} (K - D) [kappa I + D/R]^{-1/2}
//   P  = I - [I + r0/R]^{-1} (r0/R)
//
// where D keeps only the within-cell blocks of K.

#include <vector>

#include "gpgraph/partition.hpp"
#include "gpgraph/types.hpp"

namespace gpgraph {

// Within-cell restrictions K_ii of a gram matrix.
struct DiagBlocks {
  std::vector<Matrix> blocks;
  Partition partition;

  Matrix assemble() const;  // block-diagonal R x R matrix D
};

DiagBlocks diag_blocks(const GramMatrix& g, const Partition& partition);

// Smallest ridge keeping kappa + lambda_min(D/R) >= 0: max(0, -lambda_min(D/R)).
double ridge_floor(const DiagBlocks& d);

struct CorrMatrix {
  Matrix r0;            // diagonal blocks exactly zero
  double kappa = 0.0;   // ridge actually used
  bool kappa_clamped = false;
  Partition partition;
};

// Ridge below the floor (or a zero ridge facing a singular block) is raised to
// floor + 1e-12 and flagged rather than rejected.
CorrMatrix corr_matrix(const GramMatrix& g, const Partition& partition, double kappa);

struct PrecMatrix {
  Matrix values;
  Partition partition;
  double min_eigenvalue = 1.0;  // of I + r0/R
};

// Threshold below which I + r0/R is treated as singular.
inline constexpr double kSingularityThreshold = 1e-12;

// Throws SingularityError when lambda_min(I + r0/R) <= 1e-12.
PrecMatrix precision(const CorrMatrix& c);

struct BlockNormMatrix {
  Matrix norms;  // p x p, nonnegative
  int size() const { return static_cast<int>(norms.rows()); }
};

// Spectral norms of the raw (R/p) x (R/p) blocks of P.
BlockNormMatrix block_norms(const PrecMatrix& pm, const Partition& partition);

// Largest singular value.
double spectral_norm(const Matrix& m);

}  // namespace gpgraph
