// Rectilinear skeletons Lambda_I as finite index families: probe resolutions,
// probe homs, leaks, flooded quadrants and the pi-coff criterion.

#pragma once

#include <optional>
#include <vector>

#include "mw/action.hpp"
#include "mw/poset.hpp"
#include "mw/polyhedron.hpp"

namespace mw {

struct IndexFamily {
  int N = 0;
  std::vector<Mask> members;  // ascending mask order, no duplicates

  static IndexFamily make(int n, std::vector<Mask> ms);
  bool has(Mask i) const;
  Mask full() const { return (Mask(1) << N) - 1; }
  bool has_zero_section() const { return has(full()); }
  /// Whether some member contains i.
  bool dominates(Mask i) const;

  /// The family as a poset ordered by inclusion.
  FinitePoset poset() const;
  std::vector<bool> upset(Mask i) const;  // members containing i
};

struct ProbeComplex {
  Mask quadrant = 0;
  // terms[d] = top elements of (d+1)-chains of the up-set, with multiplicity
  std::vector<std::vector<Mask>> terms;
  bool zero() const { return terms.empty(); }
};

/// Order-complex resolution of the probe sheaf of quadrant Q_I.
ProbeComplex probe_resolution(const IndexFamily& fam, Mask i);

/// Graded dims of Hom(F_I, F_J) (the stalk of F_J on Q_I).
GradedDims probe_hom(const IndexFamily& fam, Mask i, Mask j);

/// All leak labels J in I^c: every I u J' with J' <= J misses the family.
std::vector<Mask> leaks(const IndexFamily& fam, Mask i);

struct Flood {
  Mask quadrant;
  GradedDims stalk;
};

/// Quadrants Q_J with J not inside I carrying nonzero probe stalk.
std::vector<Flood> flooded_quadrants(const IndexFamily& fam, Mask i);

using SignVec = std::vector<int>;  // entries -1, 0, +1

/// s(I,J): + off I, 0 on I cap J, - on I minus J.
SignVec pair_sign(Mask i, Mask j, int n);

/// Deduplicated sign cones sigma_{s(I,J)} over all pairs of the family
/// (the fiber of SS_Hom at the center point).
std::vector<SignVec> ss_hom_at_point(const IndexFamily& fam);

/// ker(pi) meets the open positive quadrant.
bool noncharacteristic(const RatMat& pi);

struct CoffReport {
  bool ok = false;
  bool zero_section = false;  // hypotheses of the criterion
  std::optional<Mask> witness_quadrant;
  std::optional<RatVec> witness_point;
};

/// Leak-image = flood-image criterion for the co-restriction functor along pi.
CoffReport coff_check(const IndexFamily& fam, const RatMat& pi);

/// Koszul acyclicity probe: for dominated I outside the family, the total
/// complex Hom(Koszul(I), P_L) is acyclic for every member L.
bool koszul_acyclic_against(const IndexFamily& fam, Mask i, Mask l);

/// Leak(I) as explicit faces in R^N (maximal labels only).
std::vector<Polyhedron> leak_faces(const IndexFamily& fam, Mask i);
/// Closures of flooded quadrants in R^N.
std::vector<Polyhedron> flood_closures(const IndexFamily& fam, Mask i);

}  // namespace mw
