// Torus-action bookkeeping: weight matrices, quasi-symmetry, the
// factorization R^N -> R^m -> R^k, GKZ chambers and stable regions.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mw/polyhedron.hpp"
#include "mw/zonofan.hpp"

namespace mw {

using Mask = std::uint32_t;  // subset of [N], bit i = element i+1

class ActionSpec {
 public:
  ActionSpec(Eigen::Index n, Eigen::Index k, RatMat beta);

  static ActionSpec from_json(const std::string& text);

  Eigen::Index N() const { return n_; }
  Eigen::Index k() const { return k_; }
  Eigen::Index m() const { return static_cast<Eigen::Index>(lines_.size()); }
  const RatMat& beta() const { return beta_; }
  RatVec beta_col(Eigen::Index i) const { return beta_.col(i); }

  bool quasi_symmetric() const { return qs_; }
  const std::vector<std::vector<int>>& lines() const { return lines_; }
  int line_of(Eigen::Index i) const { return line_of_[static_cast<size_t>(i)]; }
  /// Primitive direction of line L.
  RatVec line_dir(int L) const { return line_dir_.col(L); }
  /// beta_i = coeff_i * line_dir(line_of(i)).
  const Rat& coeff(Eigen::Index i) const { return coeff_[static_cast<size_t>(i)]; }
  /// Window size of line L (sum of positive coefficients); qs only.
  const Rat& eta(int L) const { return eta_[static_cast<size_t>(L)]; }

  /// mu : R^N -> R^k (the weight matrix itself).
  const RatMat& mu_mat() const { return beta_; }
  /// pi : R^N -> R^m, e_i -> coeff_i E_{line(i)}.
  RatMat pi_mat() const;
  /// q : R^m -> R^k, E_L -> line_dir(L).
  RatMat q_mat() const;

  /// Saturated basis of ker(mu_Z), columns.
  const RatMat& kernel_lattice_basis() const { return kernelM_; }

  IVec mu(const IVec& w) const;

  /// Magic-window zonotope nabla = (1/2) sum [0, beta_i]; requires qs.
  Zonotope nabla() const;
  /// The box B = prod [-eta/2, eta/2] at level m; requires qs.
  Zonotope level_box() const;
  /// sum_{i in J} [0, beta_i] for a subset mask J.
  Zonotope segment_zonotope(Mask j) const;

  Rat beta_sum(Mask i, Eigen::Index row) const;
  RatVec beta_sum(Mask i) const;
  /// cone(beta_i : i in I) as a polyhedron, via projection of the orthant.
  Polyhedron weight_cone(Mask i) const;

 private:
  Eigen::Index n_ = 0, k_ = 0;
  RatMat beta_;
  bool qs_ = false;
  std::vector<std::vector<int>> lines_;
  std::vector<int> line_of_;
  RatMat line_dir_;
  std::vector<Rat> coeff_;
  std::vector<Rat> eta_;
  RatMat kernelM_;
};

struct QsReport {
  bool quasi_symmetric = false;
  std::vector<std::vector<int>> lines;  // 1-based element labels for display
  std::vector<Rat> eta;
};

QsReport check_quasi_symmetric(const ActionSpec& spec);

struct GKZChamber {
  Polyhedron cone;       // closed, full-dimensional
  RatVec witness;        // interior point
  std::vector<Mask> index_family;  // I_C, ascending mask order
};

/// Maximal chambers of the GKZ fan, deterministic order.
std::vector<GKZChamber> gkz_fan(const ActionSpec& spec);

/// I_C = { I : cone(beta_i, i in I) contains C }, computed at the witness.
std::vector<Mask> chamber_index(const ActionSpec& spec, const GKZChamber& c);

/// Cross-check variant: { I : mu^{-1}(witness) meets the strictly positive
/// orthant of R^I }.
std::vector<Mask> chamber_index_positive(const ActionSpec& spec, const GKZChamber& c);

/// C_P = intersection over p in P of (p + C), closed H-representation.
Polyhedron stable_region(const Polyhedron& p, const GKZChamber& c);

/// Whether every generic-half-space zonotope nabla_H fits in P up to translation.
bool is_large_enough(const ActionSpec& spec, const Polyhedron& p);

struct WindowGitReport {
  bool pass = false;
  std::vector<IVec> tested;
  std::vector<IVec> mismatches;
};

/// Theorem-level check: local index families over the stable region of
/// nabla_delta agree with I_C, for lattice points of sup-norm at most radius.
WindowGitReport check_window_equals_git(const ActionSpec& spec, const RatVec& delta,
                                        const GKZChamber& c, long long radius);

std::string mask_str(Mask m, Eigen::Index n);

}  // namespace mw
