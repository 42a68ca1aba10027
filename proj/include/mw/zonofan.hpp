// Zonotopes with integer generators, their exact H-representations, and
// exterior conormal fans with face lookup.

#pragma once

#include <vector>

#include "mw/polyhedron.hpp"

namespace mw {

/// shift + sum_i [-g_i/2, +g_i/2], generators integer column vectors.
class Zonotope {
 public:
  Zonotope() = default;
  Zonotope(RatMat gens, RatVec shift);

  /// sum_i [0, v_i] as a zonotope (gens v_i, shift sum v_i / 2).
  static Zonotope from_segments(const RatMat& segs);

  Eigen::Index dim() const { return shift_.size(); }
  const RatMat& gens() const { return gens_; }
  const RatVec& shift() const { return shift_; }

  /// Support function: max of <xi, x> over the zonotope.
  Rat support(const RatVec& xi) const;

  /// Exact minimal H-representation (equalities first when degenerate).
  Polyhedron h_rep() const;

  bool contains(const RatVec& x) const;

 private:
  RatMat gens_;
  RatVec shift_;
};

struct ArrangementCell {
  std::vector<int> sign;  // per hyperplane: -1, 0, +1
  RatVec point;           // strictly inside the cell
};

/// Cells of an affine hyperplane arrangement inside the interior of a box,
/// one witness point per nonempty cell, all dimensions. Deterministic order
/// (lexicographic in the sign vector, -1 < 0 < +1).
std::vector<ArrangementCell> arrangement_cells(const std::vector<LinCon>& hyperplanes,
                                               const Polyhedron& box);

struct Cone {
  std::vector<int> sign;  // per zonotope generator
  Polyhedron hrep;        // closed cone in covector space
  RatVec witness;         // in the relative interior
  int dim = 0;

  bool is_zero() const { return dim == 0; }
  /// Extreme rays as primitive integer vectors, ambient dim <= 2 only.
  std::vector<RatVec> rays() const;
};

struct Fan {
  Zonotope zonotope;
  std::vector<Cone> cones;  // canonical order: (dim, sign vector)

  /// Face of the zonotope selected by a cone: argmax of any interior covector.
  Zonotope face(const Cone& c) const;
  /// The unique cone whose relative interior contains xi.
  const Cone& locate(const RatVec& xi) const;
};

/// Exterior conormal fan of a full-dimensional zonotope: cones correspond
/// one-to-one with faces.
Fan normal_fan(const Zonotope& z);

}  // namespace mw
