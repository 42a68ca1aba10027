// Everything indexed by the shift parameter delta: windows, local index
// families, the closed-form singular support of the sheaf of categories with
// its brute-force cross-check, coff verification, sign patterns and reduced
// probes at the intermediate level, vanishing cycles, window generation,
// the discriminant and schober regions.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mw/action.hpp"
#include "mw/family.hpp"
#include "mw/grid.hpp"
#include "mw/zonofan.hpp"

namespace mw {

/// W_delta = (delta + nabla) cap Z^k, sorted lexicographically.
std::vector<IVec> window(const ActionSpec& spec, const RatVec& delta);

/// No lattice point on the boundary of nabla_delta.
bool generic_shift(const ActionSpec& spec, const RatVec& delta);

/// I(delta, v): I present iff delta - v lies in nabla - beta_I - C_I.
IndexFamily local_index_family(const ActionSpec& spec, const RatVec& delta, const IVec& v);

/// Caches the zonotope, its H-rep and local families per residue.
class WindowContext {
 public:
  WindowContext(ActionSpec spec, RatVec delta);
  const ActionSpec& spec() const { return spec_; }
  const RatVec& delta() const { return delta_; }
  const Zonotope& nabla() const { return nabla_; }
  const Polyhedron& nabla_h() const { return nabla_h_; }
  const Fan& fan() const;
  const IndexFamily& local_family(const IVec& v) const;
  std::vector<IVec> window_points() const;

 private:
  ActionSpec spec_;
  RatVec delta_;
  Zonotope nabla_;
  Polyhedron nabla_h_;
  mutable std::optional<Fan> fan_;
  mutable std::map<std::string, IndexFamily> families_;
};

struct SSComponent {
  size_t cone = 0;                 // index into the fan of nabla
  int sigma_dim = 0;
  RatVec aff_point;                // point of Aff(delta + F_sigma)
  RatMat aff_basis;                // spanning directions (k x d)
  Polyhedron aff;                  // the affine hull as an equality system
  std::vector<RatVec> covector_rays;  // rays of -sigma (ambient k <= 2)
  bool has_lattice = true;
};

struct SSRecord {
  std::vector<SSComponent> components;

  bool regular_value(const RatVec& l) const;
};

/// Components Aff(delta + F_sigma) x (-sigma) over the faces whose shift
/// meets the lattice.
SSRecord ss_closed_form(const WindowContext& ctx);

/// Fiber of the singular support at a lattice point v, computed from the
/// local index family by sign-cone enumeration: cone indices of the fan whose
/// interior covectors appear.
std::vector<size_t> ss_oracle_fiber(const WindowContext& ctx, const IVec& v);

/// Fiber of the closed form at v (cone indices of present covector cones).
std::vector<size_t> ss_closed_form_fiber(const WindowContext& ctx, const SSRecord& rec,
                                         const IVec& v);

struct CoffVerification {
  bool ok = true;
  std::vector<std::pair<IVec, CoffReport>> failures;
  int checked = 0;
};

/// coff at the intermediate level for K = q^{-1}(delta), every lattice vhat
/// with sup-norm at most radius.
CoffVerification verify_coff(const ActionSpec& spec, const RatVec& delta, long long radius);

/// I(K, vhat) at level m for a closed convex K (given by its H-rep in R^m).
IndexFamily level_index_family(const ActionSpec& spec, const Polyhedron& k_poly, const IVec& vhat);

/// Fiber polytope q^{-1}(delta) inside R^m.
Polyhedron fiber_polytope(const ActionSpec& spec, const RatVec& delta);

struct SignPattern {
  std::vector<SignVec> s;        // members of S_{K,I,v}, sorted
  Polyhedron k_iv;               // the witness polytope (mixed strict rows)
  bool characterizations_agree = true;
  bool interior_property = true;
};

SignPattern sign_pattern(const ActionSpec& spec, const Polyhedron& k_poly, Mask i, const IVec& vhat);

/// One reduced-probe term: per line, the factor from the construction table.
struct ReducedFactor {
  enum Kind { Plain, HourglassPlus, HourglassMinus } kind = Plain;
};

struct ReducedProbe {
  Mask quadrant = 0;
  // terms indexed by chains of Delta(-Sigma_{K,I,v}); per term: top sign and
  // the per-line factors
  struct Term {
    int deg;
    SignVec top;
    std::vector<ReducedFactor> factors;
  };
  std::vector<Term> terms;
  std::vector<SignVec> minus_sigma;  // the poset elements

  /// Hom(Q_J, reduced probe) via the sign-pattern poset formula.
  GradedDims stalk(const ActionSpec& spec, Mask j) const;
};

ReducedProbe reduced_probe(const ActionSpec& spec, const Polyhedron& k_poly, Mask i,
                           const IVec& vhat);

struct FaceSubproblem {
  size_t cone = 0;
  Mask i_sigma = 0;
  Mask i_plus = 0, i_zero = 0, i_minus = 0;
  Polyhedron tangent_cone;       // C_{F_sigma, nabla}
  RatVec aff_point;              // base point of V_{delta,sigma}
  RatMat lattice_basis;          // saturated basis of U = span cap Z^k (k x r)
  std::vector<IVec> orbit_reps;  // representatives of V^Z / U_sigma^Z
  std::optional<ActionSpec> induced;  // weights of I_zero in U coordinates
};

FaceSubproblem face_subproblem(const WindowContext& ctx, size_t cone_index);

struct VanishingCycle {
  IVec vtilde;
  Mask i_sigma;
  BlockComplex koszul;       // complex of L_w blocks
  Block stalk_support;       // half-open product where stalks are nonzero
  Polyhedron closed_support; // its closure in R^N
  Polyhedron mu_image;       // C_{delta,sigma}
};

std::vector<VanishingCycle> vanishing_cycle_generators(const WindowContext& ctx, size_t cone_index,
                                                       long long lift_radius);

struct GenNode {
  IVec w;
  bool in_window = false;
  Rat radius;  // gauge of mu(w) - delta, zonotope norm
  std::vector<std::pair<Mask, GenNode>> children;  // Koszul label -> child
};

struct GenerationResult {
  GenNode root;
  std::vector<std::pair<int, IVec>> terms;   // flattened (degree, weight)
  std::optional<BlockComplex> realized;      // when the maps are canonical
};

GenerationResult generate_probe_from_windows(const ActionSpec& spec, const RatVec& delta,
                                             const IVec& w);

struct DiscriminantPiece {
  RatVec facet_normal;
  IVec lattice_point;
  Polyhedron piece;  // in (delta, l) coordinates, dimension 2k
};

struct Discriminant {
  std::vector<DiscriminantPiece> pieces;
  int complement_components = 0;
};

Discriminant discriminant(const ActionSpec& spec, const Rat& box_radius);

bool point_in_discriminant(const ActionSpec& spec, const RatVec& delta, const RatVec& l);
/// Exact check of a segment in (delta, l) space against the discriminant.
bool segment_meets_discriminant(const ActionSpec& spec, const RatVec& p, const RatVec& q,
                                RatVec* hit = nullptr);

struct StrataCell {
  std::vector<int> sign;
  RatVec point;
  std::vector<IVec> window;
};

/// Cells of the delta-stratification inside a box, labeled by their window.
std::vector<StrataCell> delta_stratification(const ActionSpec& spec, const Rat& box_radius);

struct SchoberRegion {
  std::vector<int> pattern;      // sign per stratification hyperplane through delta
  RatVec delta_prime;            // witness of the neighboring stratum
  Polyhedron region;             // R_S in l-space
  bool families_agree = true;
  std::vector<IVec> checked;
};

std::vector<SchoberRegion> schober_regions(const ActionSpec& spec, const RatVec& delta,
                                           long long check_radius);

WindowGitReport check_window_equals_git_impl(const ActionSpec& spec, const RatVec& delta,
                                             const GKZChamber& c, long long radius);

}  // namespace mw
