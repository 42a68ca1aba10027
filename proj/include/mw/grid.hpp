// Brute-force oracle: constructible sheaves on a box in R^N stratified by the
// integer grid, modeled as representations of the finite cell poset.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mw/family.hpp"
#include "mw/poset.hpp"

namespace mw {

/// One axis cell: the point {a} or the open interval (a, a+1).
struct AxisCell {
  long long a = 0;
  bool open = false;
};

/// Cells of the open box (-R, R)^N stratified by the integer grid.
/// Per-axis order is geometric: (-R,-R+1), {-R+1}, (-R+1,-R+2), ..., (R-1,R).
struct GridBox {
  int N = 1;
  long long R = 2;

  int axis_cells() const { return static_cast<int>(4 * R - 1); }
  AxisCell axis_cell(int idx) const;
  int axis_index(const AxisCell& c) const;
  /// c <= c' in the per-axis face order (c in closure of c').
  bool axis_leq(int x, int y) const;
  size_t cell_count() const;
};

using Cell = std::vector<int>;  // per-axis indices

/// Locally closed interval with integer or infinite endpoints.
struct AxisIval {
  bool lo_inf = true, hi_inf = true;
  long long lo = 0, hi = 0;
  bool lo_strict = true, hi_strict = true;

  static AxisIval all();
  static AxisIval greater(long long a, bool strict = true);
  static AxisIval less(long long a, bool strict = true);
  static AxisIval between(long long a, long long b, bool lo_strict, bool hi_strict);
  static AxisIval point(long long a);
};

/// Product of per-axis locally closed intervals.
struct Block {
  std::vector<AxisIval> axes;

  static Block open_quadrant(const IVec& w);          // w + R_{>0}^N
  static Block wedge(Mask i, int n);                  // P_I
  static Block closed_negative_quadrant(Mask i, int n);  // closure of Q_I-style
  static Block orthant_closed(const std::vector<int>& pattern);
};

/// Whether the axis cell lies inside the interval.
bool axis_cell_in(const GridBox& box, int idx, const AxisIval& iv);

/// Formal bounded complex of blocks with scalar canonical maps between them
/// (cellwise identity times the coefficient on the common support).
struct BlockComplex {
  int N = 1;
  struct Term {
    int deg;
    Block block;
    std::string label;
  };
  struct Map {
    int from, to;  // term indices, deg(to) == deg(from) + 1
    Rat coef;
  };
  std::vector<Term> terms;
  std::vector<Map> maps;

  static BlockComplex single(int n, const Block& b, int deg = 0, const std::string& label = "");
  long long feature_radius() const;
  int min_deg() const;
  int max_deg() const;
  /// Shifts every degree by s.
  BlockComplex shifted(int s) const;
};

/// Default box for a complex: feature radius + 2.
GridBox default_box(const BlockComplex& cx, long long extra = 2);

/// Checks block features fit in the box; throws "increase R" otherwise.
void validate_in_box(const GridBox& box, const BlockComplex& cx);

/// Cellwise d^2 = 0 and naturality of all maps (test helper; O(cells)).
bool validate_complex(const GridBox& box, const BlockComplex& cx);

/// Per-cell cohomology of the evaluated complex.
GradedDims stalk(const GridBox& box, const BlockComplex& cx, const Cell& cell);

/// Microlocal stalk in the covector direction s (supported on point axes of
/// the cell). Degrees are normalized so that a pure conormal sits in degree 0.
GradedDims microstalk(const GridBox& box, const BlockComplex& cx, const Cell& cell,
                      const SignVec& s);

struct SSEntry {
  Cell cell;
  SignVec s;  // zero vector encodes the zero section over a support cell
};

/// Exhaustive scan of (cell, sign covector) pairs with nonzero microstalk,
/// plus zero-section entries over support cells.
std::vector<SSEntry> singular_support(const GridBox& box, const BlockComplex& cx);

/// Derived hom over the open box. Engine "resolution" (default) resolves each
/// block by star projectives; engine "bar" is the cell-poset nerve complex.
enum class HomEngine { Resolution, Bar };
GradedDims rhom(const GridBox& box, const BlockComplex& m, const BlockComplex& n,
                HomEngine engine = HomEngine::Resolution);

/// rhom restricted to the open star of a cell.
GradedDims hom_sheaf_stalk(const GridBox& box, const BlockComplex& m, const BlockComplex& n,
                           const Cell& cell);

/// Support comparison without materializing cells: every cell's stalk is
/// nonzero exactly when the cell lies in the expected block. Returns the
/// first mismatching cell otherwise.
std::optional<Cell> support_mismatch(const GridBox& box, const BlockComplex& cx,
                                     const Block& expected);

/// Closure of the union of nonzero-stalk cells as a polyhedron (via the
/// expected-block shortcut is not assumed; this scans cells). Small N only.
std::vector<Cell> support_cells(const GridBox& box, const BlockComplex& cx);

RatVec cell_sample_point(const GridBox& box, const Cell& cell);

/// Probe sheaf of a quadrant realized through its order-complex resolution
/// by wedge blocks, with the simplicial differential.
BlockComplex realize_probe(const IndexFamily& fam, Mask i);

}  // namespace mw
