// Exact linear algebra over the rationals and over the integers.

#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mw/rat.hpp"

namespace mw {

/// Rank by exact Gaussian elimination.
Eigen::Index rank_exact(RatMat m);

/// Basis of ker(m) over Q, returned as columns. Empty matrix (n x 0) if trivial.
RatMat kernel_rational(const RatMat& m);

/// Solves m x = b exactly; returns false if inconsistent.
bool solve_exact(const RatMat& m, const RatVec& b, RatVec& x);

/// Scales a rational vector to a primitive integer vector (gcd of entries 1),
/// preserving direction. Zero vector stays zero.
RatVec primitive_integer(const RatVec& v);

/// Saturated integer kernel: columns generate ker(m) \cap Z^n as a lattice.
/// Entries of m must be integers. Computed from a Smith decomposition.
/// Throws if m is rank-deficient over Q when require_full_rank is set.
RatMat kernel_lattice(const RatMat& m, bool require_full_rank = true);

/// Smith normal form diagonal of an integer matrix (nonzero entries only).
std::vector<BigInt> smith_diagonal(const RatMat& m);

/// Full Smith decomposition U m V = S with U, V unimodular (integer).
struct SmithDecomposition {
  RatMat u, v, s;
  Eigen::Index rank = 0;
};
SmithDecomposition smith_decompose(const RatMat& m);

/// Integer solution of m x = b if one exists.
std::optional<RatVec> solve_integer(const RatMat& m, const RatVec& b);

/// Exact inverse of a square invertible rational matrix.
RatMat inverse_exact(const RatMat& m);

// --- sparse complexes ------------------------------------------------------

/// Column-major sparse matrix over Q with explicit dimensions.
struct SparseMat {
  Eigen::Index rows = 0, cols = 0;
  // cols entries: sorted by row index
  std::vector<std::vector<std::pair<Eigen::Index, Rat>>> col;

  void init(Eigen::Index r, Eigen::Index c) {
    rows = r;
    cols = c;
    col.assign(static_cast<size_t>(c), {});
  }
  void add(Eigen::Index r, Eigen::Index c, const Rat& v);
  RatMat dense() const;
};

/// A bounded cochain complex: basis sizes per degree and differentials
/// d[k] : C^{lo+k} -> C^{lo+k+1}.
struct GradedComplex {
  int lo = 0;
  std::vector<Eigen::Index> dims;     // size D
  std::vector<SparseMat> d;           // size D-1 (or D with trailing zero maps)

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  bool check_d2() const;
};

/// Graded cohomology dimensions, degree -> dim (zero entries omitted).
/// Uses unit-pivot reduction (cancellation of +-1 entries) and finishes any
/// residual by exact elimination.
std::map<int, Eigen::Index> cohomology_dims(GradedComplex cx);

/// Rank of a sparse matrix, destructive.
Eigen::Index sparse_rank(SparseMat m);

}  // namespace mw
