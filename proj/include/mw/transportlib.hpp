// Parallel-transport bookkeeping: monotone paths in l-space, crossing logs,
// semiorthogonal decomposition terms, and monodromy in the universal base.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mw/window.hpp"

namespace mw {

struct Crossing {
  size_t segment = 0;
  Rat t;                 // parameter within the segment
  RatVec point;
  size_t component = 0;  // index into the SSRecord
  bool positive = false; // sign of <gamma', xi> for the component covectors
};

struct SodTerm {
  size_t crossing = 0;
  size_t cone = 0;
  Mask i_sigma = 0;
  std::vector<IVec> generators;  // orbit representatives (mu-level)
  std::vector<IVec> lifts;       // one integral lift per representative
};

struct TransportLog {
  std::vector<RatVec> path;
  std::vector<Crossing> crossings;
  std::vector<SodTerm> sod;
  bool valid = false;
  std::string error;
};

/// Validates transversality and monotonicity of a polyline against the
/// jumping loci of C_delta; fills the crossing log.
TransportLog validate_monotone_path(const WindowContext& ctx, const std::vector<RatVec>& path);

/// Monotone validation plus the vanishing-cycle generator list per crossing.
TransportLog transport_decomposition(const WindowContext& ctx, const std::vector<RatVec>& path);

struct UniversalMove {
  bool delta_move = false;  // otherwise an l-move
  RatVec from, to;          // in (delta, l) coordinates
  bool inverse_piece = false;  // l-move against the hairs (inverse equivalence)
};

struct UniversalCertificate {
  bool ok = false;
  std::string error;
  std::vector<UniversalMove> moves;
  std::optional<RatVec> first_hit;
};

/// Straightens a polyline in B^o into axis moves within convex tubes and
/// certifies each move.
UniversalCertificate universal_transport(const ActionSpec& spec, const std::vector<RatVec>& path);

/// Net lattice translation of a loop in the quotient of B^o by the diagonal
/// Z^k action; the input is the lifted path.
IVec monodromy_loop(const ActionSpec& spec, const std::vector<RatVec>& path);

}  // namespace mw
