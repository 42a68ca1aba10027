// Exact rational polyhedra in H-representation, with Fourier-Motzkin
// elimination as the only decision procedure. No floating point, no LP.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mw/rat.hpp"

namespace mw {

enum class Rel { LE, LT, EQ };

struct LinCon {
  RatVec a;  // row functional
  Rat c;     // bound
  Rel rel = Rel::LE;  // a.x <= c, a.x < c, a.x == c
};

/// One-dimensional interval endpoint from a support computation.
struct Bound {
  bool finite = false;
  Rat value;      // meaningful if finite
  bool strict = false;
};

class Polyhedron {
 public:
  Polyhedron() = default;
  explicit Polyhedron(Eigen::Index dim) : dim_(dim) {}

  static Polyhedron whole_space(Eigen::Index dim) { return Polyhedron(dim); }
  static Polyhedron empty(Eigen::Index dim);
  static Polyhedron box(Eigen::Index dim, const Rat& radius, bool strict = false);
  /// {x : x_i rel_i 0} from a sign pattern (+1 -> x_i >= 0, -1 -> <= 0, 0 -> == 0,
  /// +2 -> > 0, -2 -> < 0, 9 -> free).
  static Polyhedron orthant(const std::vector<int>& pattern);

  Eigen::Index dim() const { return dim_; }
  const std::vector<LinCon>& rows() const { return rows_; }

  void add(const LinCon& r);
  void add(const RatVec& a, const Rat& c, Rel rel = Rel::LE);
  void add_all(const Polyhedron& other);

  bool contains(const RatVec& x) const;
  bool feasible() const;
  std::optional<RatVec> witness() const;

  /// Exact image {L x : x in P}; L maps dim() -> L.rows().
  Polyhedron project(const RatMat& L) const;
  /// Image under x -> x + t, same dimension.
  Polyhedron translate(const RatVec& t) const;
  Polyhedron intersect(const Polyhedron& other) const;

  /// Minkowski sum with a finitely generated cone {sum lambda_i g_i, lambda >= 0}.
  Polyhedron minkowski_cone(const RatMat& gens) const;
  /// Minkowski sum with another polyhedron.
  Polyhedron minkowski(const Polyhedron& other) const;

  /// [lo, hi] of {d.x : x in P}; infeasible P yields lo > hi convention
  /// (lo finite 1, hi finite -1... callers should test feasible() first).
  std::pair<Bound, Bound> support_interval(const RatVec& d) const;

  bool bounded() const;

  /// All integer points (closed constraints; boundary included).
  /// Throws std::domain_error when some axis is unbounded.
  std::vector<IVec> lattice_points() const;

  /// Normalizes rows, removes duplicates and redundant rows, and turns
  /// implied equalities into Rel::EQ rows. Result is deterministic.
  Polyhedron canonicalized() const;

  /// Strictifies all LE rows to LT (equalities untouched).
  Polyhedron relative_interior_system() const;

  std::string str() const;

 private:
  Eigen::Index dim_ = 0;
  std::vector<LinCon> rows_;
};

/// True when P is a subset of the union of the given polyhedra (all compared
/// with strict/closed semantics as written). Exact, by recursive splitting.
bool contained_in_union(const Polyhedron& p, const std::vector<Polyhedron>& pieces);

}  // namespace mw
