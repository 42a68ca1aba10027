#include "mw/transportlib.hpp"

#include <algorithm>

namespace mw {

namespace {

// Intersection of a segment with the affine hull of a component.
// Returns: 0 = disjoint, 1 = single parameter (filled), 2 = contained.
int segment_meets_affine(const Polyhedron& aff, const RatVec& p, const RatVec& q, Rat& t) {
  // aff is a system of equalities a.x = c
  bool constrained = false;
  bool have_t = false;
  for (const auto& r : aff.rows()) {
    Rat ap(0), ad(0);
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      ap += r.a(i) * p(i);
      ad += r.a(i) * (q(i) - p(i));
    }
    if (ad == Rat(0)) {
      if (ap != r.c) return 0;  // parallel, off the hull
      continue;
    }
    constrained = true;
    Rat tt = (r.c - ap) / ad;
    if (have_t && tt != t) return 0;
    t = tt;
    have_t = true;
  }
  if (!constrained) return 2;
  return have_t ? 1 : 2;
}

}  // namespace

TransportLog validate_monotone_path(const WindowContext& ctx, const std::vector<RatVec>& path) {
  TransportLog log;
  log.path = path;
  if (path.size() < 2) {
    log.error = "path needs at least two points";
    return log;
  }
  SSRecord rec = ss_closed_form(ctx);
  for (const RatVec& p : {path.front(), path.back()}) {
    if (!rec.regular_value(p)) {
      log.error = "endpoint on jumping locus";
      return log;
    }
  }
  const Fan& fan = ctx.fan();
  for (size_t s = 0; s + 1 < path.size(); ++s) {
    const RatVec& p = path[s];
    const RatVec& q = path[s + 1];
    std::vector<Crossing> seg_crossings;
    for (size_t ci = 0; ci < rec.components.size(); ++ci) {
      const SSComponent& comp = rec.components[ci];
      Rat t;
      int kind = segment_meets_affine(comp.aff, p, q, t);
      if (kind == 0) continue;
      if (kind == 2) {
        log.error = "non-transverse path";
        return log;
      }
      if (t < Rat(0) || t > Rat(1)) continue;
      if ((t == Rat(0) && s == 0) || (t == Rat(1) && s + 2 == path.size())) {
        // endpoints already checked regular; numerical guard
        continue;
      }
      if (comp.sigma_dim >= 2) {
        // codimension >= 2 stratum of the jumping loci
        log.error = "path crosses a codimension-two component";
        return log;
      }
      Crossing cr;
      cr.segment = s;
      cr.t = t;
      cr.point = p + (q - p) * t;
      cr.component = ci;
      // pairing of the velocity with the covector ray(s) of -sigma
      bool pos = true, neg = true;
      const Cone& cone = fan.cones[comp.cone];
      for (const RatVec& ray : cone.rays()) {
        Rat d(0);
        for (Eigen::Index i = 0; i < p.size(); ++i) d += (q(i) - p(i)) * (-ray(i));
        if (!(d > Rat(0))) pos = false;
        if (!(d < Rat(0))) neg = false;
      }
      if (!pos && !neg) {
        log.error = "path tangent to a jumping component";
        return log;
      }
      cr.positive = pos;
      seg_crossings.push_back(std::move(cr));
    }
    std::sort(seg_crossings.begin(), seg_crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.t < b.t; });
    for (size_t i = 0; i + 1 < seg_crossings.size(); ++i)
      if (seg_crossings[i].t == seg_crossings[i + 1].t) {
        log.error = "path crosses two components at one point";
        return log;
      }
    for (auto& c : seg_crossings) log.crossings.push_back(std::move(c));
  }
  // kink points must avoid the loci
  for (size_t s = 1; s + 1 < path.size(); ++s)
    if (!rec.regular_value(path[s])) {
      log.error = "path vertex on jumping locus";
      return log;
    }
  for (const auto& c : log.crossings)
    if (!c.positive) {
      log.error = "crossing pairs negatively with the covector";
      return log;
    }
  log.valid = true;
  return log;
}

TransportLog transport_decomposition(const WindowContext& ctx, const std::vector<RatVec>& path) {
  TransportLog log = validate_monotone_path(ctx, path);
  if (!log.valid) return log;
  SSRecord rec = ss_closed_form(ctx);
  for (size_t i = 0; i < log.crossings.size(); ++i) {
    const Crossing& cr = log.crossings[i];
    const SSComponent& comp = rec.components[cr.component];
    FaceSubproblem sub = face_subproblem(ctx, comp.cone);
    SodTerm term;
    term.crossing = i;
    term.cone = comp.cone;
    term.i_sigma = sub.i_sigma;
    for (const IVec& rep : sub.orbit_reps) {
      term.generators.push_back(rep);
      auto lift = solve_integer(ctx.spec().beta(), to_rat_vec(rep));
      if (lift) term.lifts.push_back(to_ivec(*lift));
    }
    log.sod.push_back(std::move(term));
  }
  return log;
}

UniversalCertificate universal_transport(const ActionSpec& spec, const std::vector<RatVec>& path) {
  UniversalCertificate cert;
  Eigen::Index k = spec.k();
  if (path.size() < 2) {
    cert.error = "path needs at least two points";
    return cert;
  }
  for (size_t s = 0; s + 1 < path.size(); ++s) {
    RatVec hit(2 * k);
    if (segment_meets_discriminant(spec, path[s], path[s + 1], &hit)) {
      cert.error = "path meets the discriminant";
      cert.first_hit = hit;
      return cert;
    }
  }
  // straighten each segment within a convex tube: delta-move then l-move,
  // or l-move then delta-move, whichever corner keeps the tube off D
  for (size_t s = 0; s + 1 < path.size(); ++s) {
    const RatVec& p = path[s];
    const RatVec& q = path[s + 1];
    RatVec corner1(2 * k), corner2(2 * k);
    for (Eigen::Index i = 0; i < k; ++i) {
      corner1(i) = q(i);            // delta first
      corner1(k + i) = p(k + i);
      corner2(i) = p(i);            // l first
      corner2(k + i) = q(k + i);
    }
    auto tube_ok = [&](const RatVec& corner) {
      return !segment_meets_discriminant(spec, p, corner, nullptr) &&
             !segment_meets_discriminant(spec, corner, q, nullptr) &&
             !segment_meets_discriminant(spec, p, q, nullptr);
    };
    RatVec corner = corner1;
    if (!tube_ok(corner1)) {
      if (!tube_ok(corner2)) {
        cert.error = "cannot straighten segment within a convex tube";
        return cert;
      }
      corner = corner2;
    }
    bool delta_first = (corner == corner1);
    UniversalMove m1{delta_first, p, corner, false};
    UniversalMove m2{!delta_first, corner, q, false};
    for (UniversalMove mv : {m1, m2}) {
      if (mv.from == mv.to) continue;
      if (mv.delta_move) {
        // the move already avoids the discriminant slabs exactly, so l stays
        // a regular value along it; spot-check regularity at the endpoints
        RatVec l(k);
        for (Eigen::Index i = 0; i < k; ++i) l(i) = mv.from(k + i);
        for (const RatVec* end : {&mv.from, &mv.to}) {
          RatVec d(k);
          for (Eigen::Index i = 0; i < k; ++i) d(i) = (*end)(i);
          WindowContext ctx(spec, d);
          if (!ss_closed_form(ctx).regular_value(l)) {
            cert.error = "delta move endpoint sits on a jumping locus";
            return cert;
          }
        }
      } else {
        // l-move: validate monotone, or mark as an inverse equivalence
        RatVec d(k), l0(k), l1(k);
        for (Eigen::Index i = 0; i < k; ++i) {
          d(i) = mv.from(i);
          l0(i) = mv.from(k + i);
          l1(i) = mv.to(k + i);
        }
        WindowContext ctx(spec, d);
        TransportLog fwd = validate_monotone_path(ctx, {l0, l1});
        if (!fwd.valid) {
          TransportLog bwd = validate_monotone_path(ctx, {l1, l0});
          if (!bwd.valid) {
            cert.error = "l move is not monotone in either direction: " + fwd.error;
            return cert;
          }
          mv.inverse_piece = true;
        }
      }
      cert.moves.push_back(mv);
    }
  }
  cert.ok = true;
  return cert;
}

IVec monodromy_loop(const ActionSpec& spec, const std::vector<RatVec>& path) {
  Eigen::Index k = spec.k();
  if (path.size() < 2) throw std::invalid_argument("loop needs at least two points");
  RatVec diff = path.back() - path.front();
  IVec q(static_cast<size_t>(k), 0);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (diff(i) != diff(k + i) || !diff(i).is_integer())
      throw std::invalid_argument("loop not closed in the quotient");
    q[static_cast<size_t>(i)] = diff(i).num().convert_to<long long>();
  }
  for (size_t s = 0; s + 1 < path.size(); ++s)
    if (segment_meets_discriminant(spec, path[s], path[s + 1], nullptr))
      throw std::invalid_argument("loop meets the discriminant");
  return q;
}

}  // namespace mw
