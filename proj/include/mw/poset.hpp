// Finite posets, order complexes, and relative hom cochain complexes over Q.

#pragma once

#include <map>
#include <vector>

#include "mw/linalg.hpp"

namespace mw {

class FinitePoset {
 public:
  /// leq(i,j) true when element i <= element j; must be a partial order.
  FinitePoset(int n, std::vector<std::vector<bool>> leq);

  int size() const { return n_; }
  bool leq(int i, int j) const { return leq_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
  bool lt(int i, int j) const { return i != j && leq(i, j); }

  /// Strictly increasing chains grouped by length-1 (degree), canonical order.
  /// Degree d holds chains of d+1 elements.
  std::vector<std::vector<std::vector<int>>> order_complex(int maxdim = -1) const;

 private:
  int n_;
  std::vector<std::vector<bool>> leq_;
};

using GradedDims = std::map<int, Eigen::Index>;

/// Cochain complex of the full order complex (coefficients Q).
GradedComplex poset_cochain_complex(const FinitePoset& p);

/// Relative hom of sub-posets: cochains on Delta(P2) supported on chains that
/// meet P1, with the simplicial coboundary. Returns graded cohomology dims.
GradedDims relative_hom(const FinitePoset& p, const std::vector<bool>& in_p1,
                        const std::vector<bool>& in_p2);

/// Relative hom cochain complex itself (for Euler characteristic checks).
GradedComplex relative_hom_complex(const FinitePoset& p, const std::vector<bool>& in_p1,
                                   const std::vector<bool>& in_p2);

/// Cohomology of an explicit complex; throws if d.d != 0.
GradedDims cohomology(GradedComplex cx);

}  // namespace mw
