#include "mw/window.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mw/linalg.hpp"

namespace mw {

namespace {

std::string ivec_key(const IVec& v) {
  std::ostringstream os;
  for (long long x : v) os << x << ",";
  return os.str();
}

// the face lies inside the facet hyperplane of the zonotope
bool face_inside_facet(const Zonotope& nabla, const Zonotope& face, const RatVec& normal) {
  Rat h = nabla.support(normal);
  return face.support(normal) == h && -face.support(-normal) == h;
}

LinCon canonical_hyperplane(const LinCon& h) {
  LinCon out = h;
  out.rel = Rel::EQ;
  for (Eigen::Index i = 0; i < out.a.size(); ++i) {
    if (out.a(i) == Rat(0)) continue;
    if (out.a(i) < Rat(0)) {
      out.a = -out.a;
      out.c = -out.c;
    }
    break;
  }
  return out;
}

std::vector<Eigen::Index> mask_elems(Mask m, Eigen::Index n) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < n; ++i)
    if (m & (Mask(1) << i)) out.push_back(i);
  return out;
}

}  // namespace

std::vector<IVec> window(const ActionSpec& spec, const RatVec& delta) {
  Polyhedron nd = spec.nabla().h_rep().translate(delta);
  return nd.lattice_points();
}

bool generic_shift(const ActionSpec& spec, const RatVec& delta) {
  Polyhedron nd = spec.nabla().h_rep().translate(delta);
  for (const IVec& w : nd.lattice_points()) {
    RatVec x = to_rat_vec(w);
    for (const auto& r : nd.rows()) {
      if (r.rel != Rel::LE) continue;
      Rat v(0);
      for (Eigen::Index i = 0; i < x.size(); ++i) v += r.a(i) * x(i);
      if (v == r.c) return false;
    }
  }
  return true;
}

IndexFamily local_index_family(const ActionSpec& spec, const RatVec& delta, const IVec& v) {
  Polyhedron nh = spec.nabla().h_rep();
  Eigen::Index k = spec.k();
  RatVec target = delta - to_rat_vec(v);
  std::vector<Mask> members;
  Mask full = (Mask(1) << spec.N()) - 1;
  for (Mask i = 0; i <= full; ++i) {
    // target in nabla - beta_I - cone(beta_i, i in I):
    // exists y in nabla, lambda >= 0 with y = target + beta_I + sum lambda beta
    auto elems = mask_elems(i, spec.N());
    Eigen::Index nl = static_cast<Eigen::Index>(elems.size());
    Polyhedron sys(k + nl);
    RatVec bI = spec.beta_sum(i);
    for (const auto& r : nh.rows()) {
      RatVec a(k + nl);
      a.setConstant(Rat(0));
      for (Eigen::Index t = 0; t < k; ++t) a(t) = r.a(t);
      sys.add(a, r.c, r.rel);
    }
    for (Eigen::Index t = 0; t < nl; ++t) {
      RatVec a(k + nl);
      a.setConstant(Rat(0));
      a(k + t) = -1;
      sys.add(a, Rat(0), Rel::LE);
    }
    for (Eigen::Index r = 0; r < k; ++r) {
      RatVec a(k + nl);
      a.setConstant(Rat(0));
      a(r) = 1;
      for (Eigen::Index t = 0; t < nl; ++t) a(k + t) = -spec.beta()(r, elems[static_cast<size_t>(t)]);
      sys.add(a, target(r) + bI(r), Rel::EQ);
    }
    if (sys.feasible()) members.push_back(i);
  }
  return IndexFamily::make(static_cast<int>(spec.N()), std::move(members));
}

WindowContext::WindowContext(ActionSpec spec, RatVec delta)
    : spec_(std::move(spec)), delta_(std::move(delta)), nabla_(spec_.nabla()),
      nabla_h_(nabla_.h_rep()) {}

const Fan& WindowContext::fan() const {
  if (!fan_) fan_ = normal_fan(nabla_);
  return *fan_;
}

const IndexFamily& WindowContext::local_family(const IVec& v) const {
  auto key = ivec_key(v);
  auto it = families_.find(key);
  if (it == families_.end())
    it = families_.emplace(key, local_index_family(spec_, delta_, v)).first;
  return it->second;
}

std::vector<IVec> WindowContext::window_points() const {
  return nabla_h_.translate(delta_).lattice_points();
}

bool SSRecord::regular_value(const RatVec& l) const {
  for (const auto& comp : components)
    if (comp.aff.contains(l)) return false;
  return true;
}

SSRecord ss_closed_form(const WindowContext& ctx) {
  const Fan& fan = ctx.fan();
  Eigen::Index k = ctx.spec().k();
  SSRecord rec;
  for (size_t ci = 0; ci < fan.cones.size(); ++ci) {
    const Cone& cone = fan.cones[ci];
    if (cone.dim == 0) continue;
    Zonotope face = fan.face(cone);
    Polyhedron face_poly = face.h_rep().translate(ctx.delta());
    if (face_poly.lattice_points().empty()) continue;
    SSComponent comp;
    comp.cone = ci;
    comp.sigma_dim = cone.dim;
    comp.aff_point = ctx.delta() + face.shift();
    comp.aff_basis = face.gens();
    // affine hull: normals orthogonal to the face directions
    RatMat gt(face.gens().cols(), k);
    for (Eigen::Index i = 0; i < face.gens().cols(); ++i)
      for (Eigen::Index j = 0; j < k; ++j) gt(i, j) = face.gens()(j, i);
    RatMat perp = kernel_rational(gt);
    Polyhedron aff(k);
    for (Eigen::Index c = 0; c < perp.cols(); ++c) {
      RatVec nvec = primitive_integer(perp.col(c));
      Rat b(0);
      for (Eigen::Index t = 0; t < k; ++t) b += nvec(t) * comp.aff_point(t);
      aff.add(nvec, b, Rel::EQ);
    }
    comp.aff = aff;
    if (k <= 2)
      for (const RatVec& r : cone.rays()) comp.covector_rays.push_back(-r);
    comp.has_lattice = true;
    rec.components.push_back(std::move(comp));
  }
  return rec;
}

std::vector<size_t> ss_oracle_fiber(const WindowContext& ctx, const IVec& v) {
  const Fan& fan = ctx.fan();
  const IndexFamily& fam = ctx.local_family(v);
  const ActionSpec& spec = ctx.spec();
  std::vector<size_t> out;
  for (size_t ci = 0; ci < fan.cones.size(); ++ci) {
    const Cone& cone = fan.cones[ci];
    if (cone.dim == 0) continue;
    // sign of <beta_i, xi> for an interior covector xi
    SignVec t(static_cast<size_t>(spec.N()));
    for (Eigen::Index i = 0; i < spec.N(); ++i) {
      Rat d(0);
      for (Eigen::Index r = 0; r < spec.k(); ++r) d += spec.beta()(r, i) * cone.witness(r);
      t[static_cast<size_t>(i)] = d.sign();
    }
    bool present = false;
    for (Mask i : fam.members) {
      for (Mask j : fam.members) {
        SignVec s = pair_sign(i, j, static_cast<int>(spec.N()));
        bool le = true;
        for (size_t x = 0; x < t.size(); ++x)
          if (t[x] != 0 && s[x] != t[x]) { le = false; break; }
        if (le) { present = true; break; }
      }
      if (present) break;
    }
    if (present) out.push_back(ci);
  }
  return out;
}

std::vector<size_t> ss_closed_form_fiber(const WindowContext& ctx, const SSRecord& rec,
                                         const IVec& v) {
  const Fan& fan = ctx.fan();
  RatVec vv = to_rat_vec(v);
  std::set<size_t> out;
  for (const auto& comp : rec.components) {
    if (!comp.aff.contains(vv)) continue;
    // covector cone is -sigma; find the opposite cone in the fan
    std::vector<int> neg = fan.cones[comp.cone].sign;
    for (int& s : neg) s = -s;
    for (size_t ci = 0; ci < fan.cones.size(); ++ci)
      if (fan.cones[ci].sign == neg) { out.insert(ci); break; }
  }
  return {out.begin(), out.end()};
}

Polyhedron fiber_polytope(const ActionSpec& spec, const RatVec& delta) {
  RatMat q = spec.q_mat();
  Polyhedron p(spec.m());
  for (Eigen::Index r = 0; r < spec.k(); ++r) {
    RatVec a(spec.m());
    for (Eigen::Index c = 0; c < spec.m(); ++c) a(c) = q(r, c);
    p.add(a, delta(r), Rel::EQ);
  }
  return p;
}

IndexFamily level_index_family(const ActionSpec& spec, const Polyhedron& k_poly, const IVec& vhat) {
  Eigen::Index m = spec.m();
  RatMat pi = spec.pi_mat();
  std::vector<Mask> members;
  Mask full = (Mask(1) << spec.N()) - 1;
  for (Mask i = 0; i <= full; ++i) {
    auto elems = mask_elems(i, spec.N());
    Eigen::Index nl = static_cast<Eigen::Index>(elems.size());
    // vars (y in R^m, lambda in R^nl): y in K, lambda >= 0,
    // y + pi(e_I) + sum lambda pi(e_i) - vhat in B
    Polyhedron sys(m + nl);
    for (const auto& r : k_poly.rows()) {
      RatVec a(m + nl);
      a.setConstant(Rat(0));
      for (Eigen::Index t = 0; t < m; ++t) a(t) = r.a(t);
      sys.add(a, r.c, r.rel);
    }
    for (Eigen::Index t = 0; t < nl; ++t) {
      RatVec a(m + nl);
      a.setConstant(Rat(0));
      a(m + t) = -1;
      sys.add(a, Rat(0), Rel::LE);
    }
    RatVec shift(m);
    shift.setConstant(Rat(0));
    for (Eigen::Index t = 0; t < nl; ++t)
      shift(spec.line_of(elems[static_cast<size_t>(t)])) += spec.coeff(elems[static_cast<size_t>(t)]);
    for (Eigen::Index row = 0; row < m; ++row) {
      RatVec a(m + nl);
      a.setConstant(Rat(0));
      a(row) = 1;
      for (Eigen::Index t = 0; t < nl; ++t)
        if (spec.line_of(elems[static_cast<size_t>(t)]) == row)
          a(m + t) = spec.coeff(elems[static_cast<size_t>(t)]);
      Rat base = Rat(vhat[static_cast<size_t>(row)]) - shift(row);
      Rat half = spec.eta(static_cast<int>(row)) / Rat(2);
      sys.add(a, base + half, Rel::LE);
      sys.add(-a, -(base - half), Rel::LE);
    }
    if (sys.feasible()) members.push_back(i);
  }
  (void)pi;
  return IndexFamily::make(static_cast<int>(spec.N()), std::move(members));
}

CoffVerification verify_coff(const ActionSpec& spec, const RatVec& delta, long long radius) {
  CoffVerification out;
  Polyhedron k_poly = fiber_polytope(spec, delta);
  RatMat pi = spec.pi_mat();
  Eigen::Index m = spec.m();
  IVec vhat(static_cast<size_t>(m), -radius);
  while (true) {
    IndexFamily fam = level_index_family(spec, k_poly, vhat);
    CoffReport rep = coff_check(fam, pi);
    ++out.checked;
    if (!rep.ok) {
      out.ok = false;
      out.failures.push_back({vhat, rep});
    }
    size_t i = 0;
    while (i < vhat.size()) {
      if (++vhat[i] <= radius) break;
      vhat[i] = -radius;
      ++i;
    }
    if (i == vhat.size()) break;
  }
  return out;
}

namespace {

// B_s = B + sigma_s + delta_s as per-axis constraints at level m.
Polyhedron level_bs(const ActionSpec& spec, const SignVec& s, bool interior) {
  Eigen::Index m = spec.m();
  Polyhedron p(m);
  Rel rel = interior ? Rel::LT : Rel::LE;
  for (Eigen::Index i = 0; i < m; ++i) {
    Rat half = spec.eta(static_cast<int>(i)) / Rat(2);
    RatVec e(m);
    e.setConstant(Rat(0));
    if (s[static_cast<size_t>(i)] == 0) {
      e(i) = 1;
      p.add(e, half, rel);
      e(i) = -1;
      p.add(e, half, rel);
    } else if (s[static_cast<size_t>(i)] > 0) {
      e(i) = -1;
      p.add(e, -half, rel);  // x_i >= eta/2 (from B + eta + R_{>=0})
    } else {
      e(i) = 1;
      p.add(e, -half, rel);
    }
  }
  return p;
}

Polyhedron k_of_i(const ActionSpec& spec, const Polyhedron& k_poly, Mask i) {
  auto elems = mask_elems(i, spec.N());
  Eigen::Index m = spec.m();
  RatVec shift(m);
  shift.setConstant(Rat(0));
  RatMat gens(m, static_cast<Eigen::Index>(elems.size()));
  gens.setConstant(Rat(0));
  for (size_t t = 0; t < elems.size(); ++t) {
    shift(spec.line_of(elems[t])) += spec.coeff(elems[t]);
    gens(spec.line_of(elems[t]), static_cast<Eigen::Index>(t)) = spec.coeff(elems[t]);
  }
  return k_poly.translate(shift).minkowski_cone(gens);
}

bool sign_condition2(const ActionSpec& spec, Mask i, const SignVec& s) {
  for (int line = 0; line < spec.m(); ++line) {
    bool plus = false, minus = false;
    for (int e : spec.lines()[static_cast<size_t>(line)]) {
      if (!(i & (Mask(1) << e))) continue;
      if (spec.coeff(e) > Rat(0)) plus = true;
      else minus = true;
    }
    if (plus && s[static_cast<size_t>(line)] < 0) return false;
    if (minus && s[static_cast<size_t>(line)] > 0) return false;
  }
  return true;
}

Polyhedron interior_bi0(const ActionSpec& spec, Mask i, Eigen::Index m) {
  Polyhedron p(m);
  for (int line = 0; line < spec.m(); ++line) {
    bool plus = false, minus = false;
    for (int e : spec.lines()[static_cast<size_t>(line)]) {
      if (!(i & (Mask(1) << e))) continue;
      if (spec.coeff(e) > Rat(0)) plus = true;
      else minus = true;
    }
    Rat half = spec.eta(line) / Rat(2);
    RatVec ev(m);
    ev.setConstant(Rat(0));
    if (plus) {  // x_line > -eta/2
      ev(line) = -1;
      p.add(ev, half, Rel::LT);
      ev.setConstant(Rat(0));
    }
    if (minus) {  // -x_line > -eta/2
      ev(line) = 1;
      p.add(ev, half, Rel::LT);
    }
  }
  return p;
}

}  // namespace

SignPattern sign_pattern(const ActionSpec& spec, const Polyhedron& k_poly, Mask i,
                         const IVec& vhat) {
  Eigen::Index m = spec.m();
  Polyhedron ki = k_of_i(spec, k_poly, i).translate(-to_rat_vec(vhat));
  Polyhedron kiv = ki.intersect(interior_bi0(spec, i, m));
  SignPattern out;
  out.k_iv = kiv;
  SignVec s(static_cast<size_t>(m), -1);
  while (true) {
    bool cond2 = sign_condition2(spec, i, s);
    bool cond1 = cond2 && ki.intersect(level_bs(spec, s, false)).feasible();
    bool by_def = cond1 && cond2;
    bool by_kiv = kiv.intersect(level_bs(spec, s, false)).feasible();
    if (by_def != by_kiv) out.characterizations_agree = false;
    if (by_kiv) {
      // the fattened witness polytope meets the open cone piece for every
      // small fattening radius: (x, y, t) with x in K_{I,v}, |y - x| <= t,
      // y in Int(B_s); require the feasible t-interval to reach down to zero
      Polyhedron fat(2 * m + 1);
      auto lift_rows = [&](const Polyhedron& p, Eigen::Index offset) {
        for (const auto& r : p.rows()) {
          RatVec a(2 * m + 1);
          a.setConstant(Rat(0));
          for (Eigen::Index tix = 0; tix < m; ++tix) a(offset + tix) = r.a(tix);
          fat.add(a, r.c, r.rel);
        }
      };
      lift_rows(kiv, 0);
      lift_rows(level_bs(spec, s, true), m);
      for (Eigen::Index tix = 0; tix < m; ++tix) {
        RatVec a(2 * m + 1);
        a.setConstant(Rat(0));
        a(tix) = 1;
        a(m + tix) = -1;
        a(2 * m) = -1;
        fat.add(a, Rat(0), Rel::LE);  // x - y <= t
        a(tix) = -1;
        a(m + tix) = 1;
        fat.add(a, Rat(0), Rel::LE);  // y - x <= t
      }
      RatVec tdir(2 * m + 1);
      tdir.setConstant(Rat(0));
      tdir(2 * m) = 1;
      auto [lo, hi] = fat.support_interval(tdir);
      bool reaches_zero = fat.feasible() && lo.finite && lo.value <= Rat(0);
      if (!reaches_zero) out.interior_property = false;
    }
    if (by_def) out.s.push_back(s);
    size_t t = 0;
    while (t < s.size()) {
      if (++s[t] <= 1) break;
      s[t] = -1;
      ++t;
    }
    if (t == s.size()) break;
  }
  std::sort(out.s.begin(), out.s.end());
  if (!out.characterizations_agree)
    throw std::logic_error("sign pattern characterizations disagree");
  return out;
}

namespace {

FinitePoset sign_poset(const std::vector<SignVec>& elems) {
  int n = static_cast<int>(elems.size());
  std::vector<std::vector<bool>> leq(static_cast<size_t>(n),
                                     std::vector<bool>(static_cast<size_t>(n), false));
  auto le = [](const SignVec& a, const SignVec& b) {
    for (size_t t = 0; t < a.size(); ++t)
      if (a[t] != 0 && a[t] != b[t]) return false;
    return true;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      leq[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          le(elems[static_cast<size_t>(a)], elems[static_cast<size_t>(b)]);
  return FinitePoset(n, std::move(leq));
}

}  // namespace

ReducedProbe reduced_probe(const ActionSpec& spec, const Polyhedron& k_poly, Mask i,
                           const IVec& vhat) {
  SignPattern sp = sign_pattern(spec, k_poly, i, vhat);
  ReducedProbe out;
  out.quadrant = i;
  for (const SignVec& s : sp.s) {
    SignVec t = s;
    for (int& x : t) x = -x;
    out.minus_sigma.push_back(t);
  }
  std::sort(out.minus_sigma.begin(), out.minus_sigma.end());
  if (out.minus_sigma.empty()) return out;
  FinitePoset pos = sign_poset(out.minus_sigma);
  auto chains = pos.order_complex();
  for (size_t d = 0; d < chains.size(); ++d)
    for (const auto& ch : chains[d]) {
      ReducedProbe::Term term;
      term.deg = static_cast<int>(d);
      term.top = out.minus_sigma[static_cast<size_t>(ch.back())];
      for (int line = 0; line < spec.m(); ++line) {
        ReducedFactor f;
        int ti = term.top[static_cast<size_t>(line)];
        if (ti > 0) f.kind = ReducedFactor::HourglassPlus;
        else if (ti < 0) f.kind = ReducedFactor::HourglassMinus;
        else f.kind = ReducedFactor::Plain;
        term.factors.push_back(f);
      }
      out.terms.push_back(std::move(term));
    }
  return out;
}

GradedDims ReducedProbe::stalk(const ActionSpec& spec, Mask j) const {
  // J \ I must be [N]_s for a sign vector s
  Mask diff = j & ~quadrant;
  SignVec s(static_cast<size_t>(spec.m()), 0);
  int deg_shift = 0;
  for (int line = 0; line < spec.m(); ++line) {
    Mask plus = 0, minus = 0;
    for (int e : spec.lines()[static_cast<size_t>(line)]) {
      if (spec.coeff(e) > Rat(0)) plus |= (Mask(1) << e);
      else minus |= (Mask(1) << e);
    }
    Mask part = 0;
    for (int e : spec.lines()[static_cast<size_t>(line)])
      part |= (diff & (Mask(1) << e));
    if (part == 0) { s[static_cast<size_t>(line)] = 0; continue; }
    if (part == plus) {
      s[static_cast<size_t>(line)] = 1;
      deg_shift += __builtin_popcount(plus) - 1;
    } else if (part == minus) {
      s[static_cast<size_t>(line)] = -1;
      deg_shift += __builtin_popcount(minus) - 1;
    } else {
      return {};
    }
  }
  if (minus_sigma.empty()) return {};
  FinitePoset pos = sign_poset(minus_sigma);
  std::vector<bool> p1(minus_sigma.size(), false), p2(minus_sigma.size(), true);
  auto ge = [](const SignVec& t, const SignVec& s2) {
    for (size_t x = 0; x < s2.size(); ++x)
      if (s2[x] != 0 && t[x] != s2[x]) return false;
    return true;
  };
  for (size_t t = 0; t < minus_sigma.size(); ++t) p1[t] = ge(minus_sigma[t], s);
  GradedDims dims = relative_hom(pos, p1, p2);
  GradedDims out;
  for (const auto& [d, v] : dims) out[d + deg_shift] = v;
  return out;
}

FaceSubproblem face_subproblem(const WindowContext& ctx, size_t cone_index) {
  const Fan& fan = ctx.fan();
  const ActionSpec& spec = ctx.spec();
  Eigen::Index k = spec.k();
  const Cone& cone = fan.cones[cone_index];
  Zonotope face = fan.face(cone);
  Polyhedron face_poly = face.h_rep().translate(ctx.delta());
  auto face_lattice = face_poly.lattice_points();
  if (face_lattice.empty())
    throw std::domain_error("no vanishing cycles on this face");
  FaceSubproblem out;
  out.cone = cone_index;
  // tangent cone: active facet normals of nabla at the face
  Polyhedron tangent(k);
  for (const auto& r : ctx.nabla_h().rows()) {
    if (r.rel != Rel::LE) continue;
    if (face_inside_facet(ctx.nabla(), face, r.a)) tangent.add(r.a, Rat(0), Rel::LE);
  }
  out.tangent_cone = tangent.canonicalized();
  for (Eigen::Index i = 0; i < spec.N(); ++i) {
    Mask bit = Mask(1) << i;
    if (!out.tangent_cone.contains(spec.beta_col(i))) out.i_sigma |= bit;
    Rat d(0);
    for (Eigen::Index r = 0; r < k; ++r) d += spec.beta()(r, i) * cone.witness(r);
    if (d > Rat(0)) out.i_plus |= bit;
    else if (d < Rat(0)) out.i_minus |= bit;
    else out.i_zero |= bit;
  }
  out.aff_point = to_rat_vec(face_lattice.front());
  // saturated lattice in the face direction space
  auto zero_elems = mask_elems(out.i_zero, spec.N());
  RatMat span(k, static_cast<Eigen::Index>(zero_elems.size()));
  for (size_t t = 0; t < zero_elems.size(); ++t)
    span.col(static_cast<Eigen::Index>(t)) = spec.beta_col(zero_elems[t]);
  Eigen::Index r = rank_exact(span);
  if (r == 0) {
    out.lattice_basis = RatMat(k, 0);
    out.orbit_reps = {face_lattice.front()};
  } else {
    RatMat st(static_cast<Eigen::Index>(zero_elems.size()), k);
    for (Eigen::Index a = 0; a < st.rows(); ++a)
      for (Eigen::Index b = 0; b < k; ++b) st(a, b) = span(b, a);
    RatMat perp = kernel_rational(st);  // normals to the span
    RatMat rows(perp.cols(), k);
    for (Eigen::Index c = 0; c < perp.cols(); ++c) {
      RatVec nrm = primitive_integer(perp.col(c));
      for (Eigen::Index b = 0; b < k; ++b) rows(c, b) = nrm(b);
    }
    RatMat lat = (perp.cols() > 0) ? kernel_lattice(rows, false)
                                   : [&] {
                                       RatMat id(k, k);
                                       id.setConstant(Rat(0));
                                       for (Eigen::Index t = 0; t < k; ++t) id(t, t) = 1;
                                       return id;
                                     }();
    out.lattice_basis = lat;
    // induced weights in lattice coordinates
    RatMat coords(lat.cols(), static_cast<Eigen::Index>(zero_elems.size()));
    for (size_t t = 0; t < zero_elems.size(); ++t) {
      RatVec x;
      if (!solve_exact(lat, spec.beta_col(zero_elems[t]), x))
        throw std::logic_error("face weight outside its own span");
      for (Eigen::Index a = 0; a < lat.cols(); ++a) {
        if (!x(a).is_integer()) throw std::logic_error("face weight not integral in lattice");
        coords(a, static_cast<Eigen::Index>(t)) = x(a);
      }
    }
    out.induced = ActionSpec(static_cast<Eigen::Index>(zero_elems.size()), lat.cols(), coords);
    if (!out.induced->quasi_symmetric())
      throw std::logic_error("induced face action is not quasi-symmetric");
    // orbit representatives of U_sigma^Z inside the saturated lattice
    SmithDecomposition sd = smith_decompose(coords);
    RatMat uinv = inverse_exact(sd.u);
    std::vector<IVec> reps;
    std::vector<long long> diag(static_cast<size_t>(lat.cols()), 1);
    for (Eigen::Index t = 0; t < sd.rank; ++t)
      diag[static_cast<size_t>(t)] = sd.s(t, t).num().convert_to<long long>();
    IVec a(static_cast<size_t>(lat.cols()), 0);
    while (true) {
      RatVec y = uinv * to_rat_vec(a);
      RatVec p = out.aff_point + lat * y;
      reps.push_back(to_ivec(p));
      size_t t = 0;
      while (t < a.size()) {
        if (++a[t] < diag[t]) break;
        a[t] = 0;
        ++t;
      }
      if (t == a.size()) break;
    }
    std::sort(reps.begin(), reps.end());
    out.orbit_reps = std::move(reps);
  }
  return out;
}

std::vector<VanishingCycle> vanishing_cycle_generators(const WindowContext& ctx, size_t cone_index,
                                                       long long lift_radius) {
  const ActionSpec& spec = ctx.spec();
  FaceSubproblem sub = face_subproblem(ctx, cone_index);
  const Fan& fan = ctx.fan();
  Zonotope face = fan.face(fan.cones[cone_index]);
  Polyhedron face_poly = face.h_rep().translate(ctx.delta());
  auto vs = face_poly.lattice_points();
  // lifts within the box, grouped by mu-image
  std::map<std::string, std::vector<IVec>> lifts;
  {
    IVec w(static_cast<size_t>(spec.N()), -lift_radius);
    while (true) {
      lifts[ivec_key(spec.mu(w))].push_back(w);
      size_t t = 0;
      while (t < w.size()) {
        if (++w[t] <= lift_radius) break;
        w[t] = -lift_radius;
        ++t;
      }
      if (t == w.size()) break;
    }
  }
  std::vector<VanishingCycle> out;
  for (const IVec& v : vs) {
    std::vector<IVec> wl;
    auto it = lifts.find(ivec_key(v));
    if (it != lifts.end()) wl = it->second;
    if (wl.empty()) {
      auto sol = solve_integer(spec.beta(), to_rat_vec(v));
      if (!sol) throw std::logic_error("face lattice point has no integral lift");
      wl.push_back(to_ivec(*sol));
    }
    for (const IVec& vt : wl) {
      VanishingCycle vc;
      vc.vtilde = vt;
      vc.i_sigma = sub.i_sigma;
      auto elems = mask_elems(sub.i_sigma, spec.N());
      // Koszul complex over subsets of I_sigma
      BlockComplex cx;
      cx.N = static_cast<int>(spec.N());
      std::map<Mask, int> term_of;
      Mask isg = sub.i_sigma;
      for (Mask s = 0;; s = ((s | ~isg) + 1) & isg) {
        IVec w = vt;
        for (Eigen::Index e : mask_elems(s, spec.N())) w[static_cast<size_t>(e)] -= 1;
        term_of[s] = static_cast<int>(cx.terms.size());
        cx.terms.push_back({__builtin_popcount(s), Block::open_quadrant(w),
                            "L" + ivec_key(w)});
        if (s == isg) break;
      }
      for (const auto& [s, idx] : term_of)
        for (Eigen::Index e : mask_elems(isg & ~s, spec.N())) {
          Mask s2 = s | (Mask(1) << e);
          int before = __builtin_popcount(s & ((Mask(1) << e) - 1));
          cx.maps.push_back({idx, term_of[s2], (before % 2 == 0) ? Rat(1) : Rat(-1)});
        }
      vc.koszul = std::move(cx);
      // expected nonzero-stalk region and closed support
      Block supp;
      Polyhedron closed(spec.N());
      for (Eigen::Index i = 0; i < spec.N(); ++i) {
        long long vi = vt[static_cast<size_t>(i)];
        RatVec e(spec.N());
        e.setConstant(Rat(0));
        if (sub.i_sigma & (Mask(1) << i)) {
          supp.axes.push_back(AxisIval::between(vi - 1, vi, true, false));
          e(i) = 1;
          closed.add(e, Rat(vi), Rel::LE);
          e(i) = -1;
          closed.add(e, Rat(-(vi - 1)), Rel::LE);
        } else {
          supp.axes.push_back(AxisIval::greater(vi, true));
          e(i) = -1;
          closed.add(e, Rat(-vi), Rel::LE);
        }
      }
      vc.stalk_support = std::move(supp);
      vc.closed_support = std::move(closed);
      vc.mu_image = sub.tangent_cone.translate(to_rat_vec(v)).canonicalized();
      out.push_back(std::move(vc));
    }
  }
  return out;
}

namespace {

struct PatNode {
  bool in_window = false;
  std::vector<std::pair<Mask, std::shared_ptr<PatNode>>> kids;
};

struct GenEnv {
  const ActionSpec* spec;
  RatVec delta;
  Polyhedron nabla_h;
  Zonotope nabla;
  Polyhedron tangent_any;
  Fan fan;
  std::map<std::string, std::shared_ptr<PatNode>> memo;
};

Rat gauge(const GenEnv& env, const RatVec& x) {
  Rat g(0);
  for (const auto& r : env.nabla_h.rows()) {
    if (r.rel != Rel::LE) continue;
    Rat num(0);
    for (Eigen::Index i = 0; i < x.size(); ++i) num += r.a(i) * x(i);
    Rat h = r.c;  // support value of nabla in direction a
    if (h <= Rat(0)) throw std::logic_error("zonotope gauge needs full dimension");
    Rat q = num / h;
    if (q > g) g = q;
  }
  return g;
}

std::shared_ptr<PatNode> expand(GenEnv& env, const IVec& v) {
  auto key = ivec_key(v);
  auto it = env.memo.find(key);
  if (it != env.memo.end()) return it->second;
  auto node = std::make_shared<PatNode>();
  env.memo[key] = node;
  RatVec x = to_rat_vec(v) - env.delta;
  Rat g = gauge(env, x);
  if (g <= Rat(1)) {
    node->in_window = true;
    return node;
  }
  // minimal face of g * nabla containing x: sum of active facet normals
  RatVec xi(env.delta.size());
  xi.setConstant(Rat(0));
  for (const auto& r : env.nabla_h.rows()) {
    if (r.rel != Rel::LE) continue;
    Rat num(0);
    for (Eigen::Index i = 0; i < x.size(); ++i) num += r.a(i) * x(i);
    if (num == g * r.c) xi += r.a;
  }
  const Cone& cone = env.fan.locate(xi);
  // I_sigma via the tangent cone (scale invariant)
  Zonotope face = env.fan.face(cone);
  Mask i_sigma = 0;
  const ActionSpec& spec = *env.spec;
  // active facet normals of nabla at the face
  std::vector<RatVec> active;
  for (const auto& r : env.nabla_h.rows()) {
    if (r.rel != Rel::LE) continue;
    if (face_inside_facet(env.nabla, face, r.a)) active.push_back(r.a);
  }
  for (Eigen::Index i = 0; i < spec.N(); ++i) {
    for (const RatVec& n : active) {
      Rat d(0);
      for (Eigen::Index t = 0; t < n.size(); ++t) d += n(t) * spec.beta()(t, i);
      if (d > Rat(0)) { i_sigma |= (Mask(1) << i); break; }
    }
  }
  if (i_sigma == 0) throw std::logic_error("window generation found an empty face set");
  for (Mask s = 0;; s = ((s | ~i_sigma) + 1) & i_sigma) {
    if (s != 0) {
      RatVec bs(env.delta.size());
      bs.setConstant(Rat(0));
      for (Eigen::Index i = 0; i < spec.N(); ++i)
        if (s & (Mask(1) << i)) bs += spec.beta_col(i);
      IVec v2 = v;
      for (Eigen::Index t = 0; t < env.delta.size(); ++t)
        v2[static_cast<size_t>(t)] -= bs(t).num().convert_to<long long>();
      Rat g2 = gauge(env, to_rat_vec(v2) - env.delta);
      if (!(g2 < g)) throw std::logic_error("window generation radius did not drop");
      node->kids.push_back({s, expand(env, v2)});
    }
    if (s == i_sigma) break;
  }
  return node;
}

void build_tree(const GenEnv& env, const ActionSpec& spec, const PatNode& pat, const IVec& w,
                GenNode& out) {
  out.w = w;
  out.in_window = pat.in_window;
  out.radius = gauge(env, to_rat_vec(spec.mu(w)) - env.delta);
  for (const auto& [mask, kid] : pat.kids) {
    IVec w2 = w;
    for (Eigen::Index i = 0; i < spec.N(); ++i)
      if (mask & (Mask(1) << i)) w2[static_cast<size_t>(i)] -= 1;
    GenNode child;
    build_tree(env, spec, *kid, w2, child);
    out.children.push_back({mask, std::move(child)});
  }
}

void flatten(const GenNode& node, int deg, std::vector<std::pair<int, IVec>>& out) {
  if (node.in_window) {
    out.push_back({deg, node.w});
    return;
  }
  for (const auto& [mask, child] : node.children)
    flatten(child, deg + __builtin_popcount(mask) - 1, out);
}

std::optional<BlockComplex> try_realize(const ActionSpec& spec, const GenNode& node) {
  if (node.in_window)
    return BlockComplex::single(static_cast<int>(spec.N()), Block::open_quadrant(node.w));
  if (node.children.size() == 1 && __builtin_popcount(node.children[0].first) == 1)
    return try_realize(spec, node.children[0].second);
  // depth-1 Koszul: every child must be a window object
  for (const auto& [mask, child] : node.children)
    if (!child.in_window) return std::nullopt;
  BlockComplex cx;
  cx.N = static_cast<int>(spec.N());
  std::map<Mask, int> term_of;
  for (const auto& [mask, child] : node.children) {
    term_of[mask] = static_cast<int>(cx.terms.size());
    cx.terms.push_back({__builtin_popcount(mask) - 1, Block::open_quadrant(child.w), ""});
  }
  for (const auto& [mask, child] : node.children)
    for (const auto& [mask2, child2] : node.children) {
      Mask diff = mask2 & ~mask;
      if (mask2 == (mask | diff) && __builtin_popcount(diff) == 1 && (mask & diff) == 0 &&
          mask2 != mask) {
        Eigen::Index e = 0;
        while (!(diff & (Mask(1) << e))) ++e;
        int before = __builtin_popcount(mask & ((Mask(1) << e) - 1));
        cx.maps.push_back({term_of[mask], term_of[mask2], (before % 2 == 0) ? Rat(1) : Rat(-1)});
      }
    }
  return cx;
}

}  // namespace

GenerationResult generate_probe_from_windows(const ActionSpec& spec, const RatVec& delta,
                                             const IVec& w) {
  if (!spec.quasi_symmetric())
    throw std::domain_error("window generation requires a quasi-symmetric action");
  GenEnv env;
  env.spec = &spec;
  env.delta = delta;
  env.nabla = spec.nabla();
  env.nabla_h = env.nabla.h_rep();
  env.fan = normal_fan(env.nabla);
  auto pat = expand(env, spec.mu(w));
  GenerationResult out;
  build_tree(env, spec, *pat, w, out.root);
  flatten(out.root, 0, out.terms);
  std::sort(out.terms.begin(), out.terms.end());
  out.realized = try_realize(spec, out.root);
  return out;
}

Discriminant discriminant(const ActionSpec& spec, const Rat& box_radius) {
  Eigen::Index k = spec.k();
  Zonotope nabla = spec.nabla();
  Polyhedron nh = nabla.h_rep();
  Fan fan = normal_fan(nabla);
  Discriminant out;
  // lattice candidates for facet anchor points
  long long zr = rat_ceil(box_radius).convert_to<long long>() + 2;
  for (const auto& fc : nh.rows()) {
    if (fc.rel != Rel::LE) continue;
    const Cone& cone = fan.locate(fc.a);
    Zonotope face = fan.face(cone);
    Polyhedron face_h = face.h_rep();
    Rat h = fc.c;
    // enumerate lattice anchors z with the piece meeting the box
    IVec z(static_cast<size_t>(k), -zr);
    while (true) {
      // piece in (delta, l): z - delta in face, |<n, l - delta>| <= h
      Polyhedron piece(2 * k);
      bool any = true;
      for (const auto& fr : face_h.rows()) {
        RatVec a(2 * k);
        a.setConstant(Rat(0));
        Rat zc(0);
        for (Eigen::Index t = 0; t < k; ++t) {
          a(t) = -fr.a(t);
          zc += fr.a(t) * Rat(z[static_cast<size_t>(t)]);
        }
        piece.add(a, fr.c - zc, fr.rel);
      }
      RatVec a(2 * k);
      a.setConstant(Rat(0));
      for (Eigen::Index t = 0; t < k; ++t) {
        a(t) = -fc.a(t);
        a(k + t) = fc.a(t);
      }
      piece.add(a, h, Rel::LE);
      piece.add(-a, h, Rel::LE);
      Polyhedron clipped = piece.intersect(Polyhedron::box(2 * k, box_radius));
      if (any && clipped.feasible()) {
        DiscriminantPiece dp;
        dp.facet_normal = fc.a;
        dp.lattice_point = z;
        dp.piece = piece.canonicalized();
        out.pieces.push_back(std::move(dp));
      }
      size_t t = 0;
      while (t < z.size()) {
        if (++z[t] <= zr) break;
        z[t] = -zr;
        ++t;
      }
      if (t == z.size()) break;
    }
  }
  // complement components inside the box, via the cell adjacency graph
  std::vector<LinCon> hyps;
  std::set<std::string> seen;
  for (const auto& dp : out.pieces)
    for (const auto& r : dp.piece.rows()) {
      std::string key = rat_vec_str(r.a) + "|" + rat_str(r.c);
      if (seen.insert(key).second) hyps.push_back(LinCon{r.a, r.c, Rel::EQ});
    }
  auto cells = arrangement_cells(hyps, Polyhedron::box(2 * k, box_radius, true));
  std::vector<int> comp(cells.size(), -1);
  std::vector<size_t> free_cells;
  auto in_d = [&](const RatVec& x) {
    for (const auto& dp : out.pieces)
      if (dp.piece.contains(x)) return true;
    return false;
  };
  std::vector<bool> is_free(cells.size(), false);
  for (size_t i = 0; i < cells.size(); ++i) is_free[i] = !in_d(cells[i].point);
  // union-find over comparable free cells
  std::vector<size_t> parent(cells.size());
  for (size_t i = 0; i < cells.size(); ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto covers = [&](const std::vector<int>& lo, const std::vector<int>& hi2) {
    for (size_t t = 0; t < lo.size(); ++t)
      if (lo[t] != 0 && lo[t] != hi2[t]) return false;
    return true;
  };
  for (size_t a = 0; a < cells.size(); ++a)
    for (size_t b = 0; b < cells.size(); ++b) {
      if (a == b || !is_free[a] || !is_free[b]) continue;
      if (covers(cells[a].sign, cells[b].sign)) parent[find(a)] = find(b);
    }
  std::set<size_t> roots;
  for (size_t i = 0; i < cells.size(); ++i)
    if (is_free[i]) roots.insert(find(i));
  out.complement_components = static_cast<int>(roots.size());
  (void)comp;
  (void)free_cells;
  return out;
}

bool point_in_discriminant(const ActionSpec& spec, const RatVec& delta, const RatVec& l) {
  Zonotope nabla = spec.nabla();
  Polyhedron nh = nabla.h_rep();
  Fan fan = normal_fan(nabla);
  for (const auto& fc : nh.rows()) {
    if (fc.rel != Rel::LE) continue;
    Rat d(0);
    for (Eigen::Index t = 0; t < delta.size(); ++t) d += fc.a(t) * (l(t) - delta(t));
    if (abs(d) > fc.c) continue;
    const Cone& cone = fan.locate(fc.a);
    Zonotope face = fan.face(cone);
    Polyhedron fp = face.h_rep().translate(delta);
    if (!fp.lattice_points().empty()) return true;
  }
  return false;
}

bool segment_meets_discriminant(const ActionSpec& spec, const RatVec& p, const RatVec& q,
                                RatVec* hit) {
  Eigen::Index k = spec.k();
  Zonotope nabla = spec.nabla();
  Polyhedron nh = nabla.h_rep();
  Fan fan = normal_fan(nabla);
  // bounding box for anchors
  Rat maxc(0);
  for (Eigen::Index t = 0; t < 2 * k; ++t) {
    maxc = std::max(maxc, abs(p(t)), [](const Rat& a, const Rat& b) { return a < b; });
    maxc = std::max(maxc, abs(q(t)), [](const Rat& a, const Rat& b) { return a < b; });
  }
  long long zr = rat_ceil(maxc).convert_to<long long>() + 3;
  for (const auto& fc : nh.rows()) {
    if (fc.rel != Rel::LE) continue;
    const Cone& cone = fan.locate(fc.a);
    Zonotope face = fan.face(cone);
    Polyhedron face_h = face.h_rep();
    IVec z(static_cast<size_t>(k), -zr);
    while (true) {
      // feasibility in t: delta(t) = p_d + t (q_d - p_d), l(t) similarly
      Polyhedron sys(1);
      RatVec e1(1);
      e1(0) = 1;
      sys.add(e1, Rat(1), Rel::LE);
      sys.add(-e1, Rat(0), Rel::LE);
      auto row_in_t = [&](const RatVec& coef_delta, const RatVec& coef_l, const Rat& c, Rel rel) {
        // coef_delta . delta(t) + coef_l . l(t) rel c
        Rat c0(0), c1(0);
        for (Eigen::Index t2 = 0; t2 < k; ++t2) {
          c0 += coef_delta(t2) * p(t2) + coef_l(t2) * p(k + t2);
          c1 += coef_delta(t2) * (q(t2) - p(t2)) + coef_l(t2) * (q(k + t2) - p(k + t2));
        }
        RatVec a(1);
        a(0) = c1;
        sys.add(a, c - c0, rel);
      };
      for (const auto& fr : face_h.rows()) {
        Rat zc(0);
        for (Eigen::Index t2 = 0; t2 < k; ++t2) zc += fr.a(t2) * Rat(z[static_cast<size_t>(t2)]);
        row_in_t(-fr.a, RatVec::Constant(k, Rat(0)), fr.c - zc, fr.rel);
      }
      row_in_t(-fc.a, fc.a, fc.c, Rel::LE);
      row_in_t(fc.a, -fc.a, fc.c, Rel::LE);
      if (sys.feasible()) {
        if (hit) {
          auto w = sys.witness();
          RatVec x(2 * k);
          for (Eigen::Index t2 = 0; t2 < 2 * k; ++t2)
            x(t2) = p(t2) + (*w)(0) * (q(t2) - p(t2));
          *hit = x;
        }
        return true;
      }
      size_t t = 0;
      while (t < z.size()) {
        if (++z[t] <= zr) break;
        z[t] = -zr;
        ++t;
      }
      if (t == z.size()) break;
    }
  }
  return false;
}

std::vector<StrataCell> delta_stratification(const ActionSpec& spec, const Rat& box_radius) {
  Eigen::Index k = spec.k();
  Polyhedron nh = spec.nabla().h_rep();
  // facet hyperplanes of v + A_I over lattice v in range
  std::vector<LinCon> hyps;
  std::set<std::string> seen;
  long long vr = rat_ceil(box_radius).convert_to<long long>() + 2;
  Mask full = (Mask(1) << spec.N()) - 1;
  Polyhedron box = Polyhedron::box(k, box_radius);
  for (Mask i = 0; i <= full; ++i) {
    auto elems = mask_elems(i, spec.N());
    RatMat gens(k, static_cast<Eigen::Index>(elems.size()));
    for (size_t t = 0; t < elems.size(); ++t)
      gens.col(static_cast<Eigen::Index>(t)) = -spec.beta_col(elems[t]);
    Polyhedron ai = nh.translate(-spec.beta_sum(i)).minkowski_cone(gens).canonicalized();
    for (const auto& r : ai.rows()) {
      IVec v(static_cast<size_t>(k), -vr);
      while (true) {
        Rat shift(0);
        for (Eigen::Index t = 0; t < k; ++t) shift += r.a(t) * Rat(v[static_cast<size_t>(t)]);
        LinCon h = canonical_hyperplane(LinCon{r.a, r.c + shift, Rel::EQ});
        // keep only hyperplanes meeting the box
        Polyhedron test = box;
        test.add(h);
        if (test.feasible()) {
          std::string key = rat_vec_str(h.a) + "|" + rat_str(h.c);
          if (seen.insert(key).second) hyps.push_back(h);
        }
        size_t t = 0;
        while (t < v.size()) {
          if (++v[t] <= vr) break;
          v[t] = -vr;
          ++t;
        }
        if (t == v.size()) break;
      }
    }
  }
  std::sort(hyps.begin(), hyps.end(), [](const LinCon& a, const LinCon& b) {
    return rat_vec_str(a.a) + "|" + rat_str(a.c) < rat_vec_str(b.a) + "|" + rat_str(b.c);
  });
  auto cells = arrangement_cells(hyps, Polyhedron::box(k, box_radius, true));
  std::vector<StrataCell> out;
  for (const auto& c : cells) {
    StrataCell sc;
    sc.sign = c.sign;
    sc.point = c.point;
    sc.window = window(spec, c.point);
    out.push_back(std::move(sc));
  }
  return out;
}

std::vector<SchoberRegion> schober_regions(const ActionSpec& spec, const RatVec& delta,
                                           long long check_radius) {
  Eigen::Index k = spec.k();
  WindowContext ctx(spec, delta);
  SSRecord rec = ss_closed_form(ctx);
  std::vector<SchoberRegion> out;
  if (rec.components.empty()) return out;  // generic delta
  // stratification hyperplanes near delta
  Rat rad(0);
  for (Eigen::Index t = 0; t < k; ++t) rad += abs(delta(t));
  auto cells_hyps = [&]() {
    std::vector<LinCon> hyps;
    std::set<std::string> seen;
    Polyhedron nh = ctx.nabla_h();
    long long vr = rat_ceil(rad).convert_to<long long>() + 3;
    Mask full = (Mask(1) << spec.N()) - 1;
    for (Mask i = 0; i <= full; ++i) {
      auto elems = mask_elems(i, spec.N());
      RatMat gens(k, static_cast<Eigen::Index>(elems.size()));
      for (size_t t = 0; t < elems.size(); ++t)
        gens.col(static_cast<Eigen::Index>(t)) = -spec.beta_col(elems[t]);
      Polyhedron ai = nh.translate(-spec.beta_sum(i)).minkowski_cone(gens).canonicalized();
      for (const auto& r : ai.rows()) {
        IVec v(static_cast<size_t>(k), -vr);
        while (true) {
          Rat shift(0);
          for (Eigen::Index t = 0; t < k; ++t) shift += r.a(t) * Rat(v[static_cast<size_t>(t)]);
          LinCon h = canonical_hyperplane(LinCon{r.a, r.c + shift, Rel::EQ});
          std::string key = rat_vec_str(h.a) + "|" + rat_str(h.c);
          if (seen.insert(key).second) hyps.push_back(h);
          size_t t = 0;
          while (t < v.size()) {
            if (++v[t] <= vr) break;
            v[t] = -vr;
            ++t;
          }
          if (t == v.size()) break;
        }
      }
    }
    return hyps;
  };
  auto hyps = cells_hyps();
  std::vector<LinCon> through;
  Rat rho(1);
  bool have_rho = false;
  for (const auto& h : hyps) {
    Rat v(0);
    for (Eigen::Index t = 0; t < k; ++t) v += h.a(t) * delta(t);
    if (v == h.c) {
      through.push_back(h);
    } else {
      Rat l1(0);
      for (Eigen::Index t = 0; t < k; ++t) l1 += abs(h.a(t));
      Rat dist = abs(v - h.c) / l1;
      if (!have_rho || dist < rho) { rho = dist; have_rho = true; }
    }
  }
  rho = rho / Rat(2);
  // realized sign patterns within the rho-ball
  std::vector<std::vector<int>> patterns;
  {
    std::vector<int> pat(through.size(), -1);
    std::function<void(size_t, Polyhedron)> rec2 = [&](size_t idx, Polyhedron sys) {
      if (idx == through.size()) {
        patterns.push_back(pat);
        return;
      }
      for (int s : {-1, 0, 1}) {
        Polyhedron ext = sys;
        const auto& h = through[idx];
        if (s == 0) ext.add(h.a, h.c, Rel::EQ);
        else if (s > 0) ext.add(-h.a, -h.c, Rel::LT);
        else ext.add(h.a, h.c, Rel::LT);
        if (ext.feasible()) {
          pat[idx] = s;
          rec2(idx + 1, std::move(ext));
        }
      }
    };
    Polyhedron ball = Polyhedron::box(k, rho, true).translate(delta);
    rec2(0, ball);
  }
  Zonotope nabla = ctx.nabla();
  for (const auto& pat : patterns) {
    SchoberRegion reg;
    reg.pattern = pat;
    // witness delta'
    Polyhedron sys = Polyhedron::box(k, rho, true).translate(delta);
    for (size_t t = 0; t < through.size(); ++t) {
      const auto& h = through[t];
      if (pat[t] == 0) sys.add(h.a, h.c, Rel::EQ);
      else if (pat[t] > 0) sys.add(-h.a, -h.c, Rel::LT);
      else sys.add(h.a, h.c, Rel::LT);
    }
    auto w = sys.witness();
    if (!w) continue;
    reg.delta_prime = *w;
    // region in l-space from thickened hyperplanes
    Polyhedron region(k);
    for (size_t t = 0; t < through.size(); ++t) {
      const auto& h = through[t];
      Rat hplus = nabla.support(h.a);
      Rat hminus = nabla.support(-h.a);
      Rat c(0);
      for (Eigen::Index x = 0; x < k; ++x) c += h.a(x) * delta(x);
      if (pat[t] > 0) {
        region.add(-h.a, -(c + hplus), Rel::LT);
      } else if (pat[t] < 0) {
        region.add(h.a, c - hminus, Rel::LT);
      } else {
        region.add(h.a, c + hplus, Rel::LT);
        region.add(-h.a, -(c - hminus), Rel::LT);
      }
    }
    reg.region = region;
    // lattice-sample equality of local families over the region
    reg.families_agree = true;
    Polyhedron clipped = region.intersect(Polyhedron::box(k, Rat(check_radius)));
    for (const IVec& v : clipped.lattice_points()) {
      reg.checked.push_back(v);
      IndexFamily a = ctx.local_family(v);
      IndexFamily b = local_index_family(spec, reg.delta_prime, v);
      if (!(a.members == b.members)) reg.families_agree = false;
    }
    out.push_back(std::move(reg));
  }
  return out;
}

WindowGitReport check_window_equals_git_impl(const ActionSpec& spec, const RatVec& delta,
                                             const GKZChamber& c, long long radius) {
  WindowGitReport rep;
  Polyhedron nd = spec.nabla().h_rep().translate(delta);
  Polyhedron cp = stable_region(nd, c);
  Polyhedron inner = cp.relative_interior_system().intersect(Polyhedron::box(spec.k(), Rat(radius)));
  auto pts = inner.lattice_points();
  if (pts.empty())
    throw std::domain_error("no lattice samples in the stable region; increase the radius");
  WindowContext ctx(spec, delta);
  rep.pass = true;
  for (const IVec& v : pts) {
    rep.tested.push_back(v);
    const IndexFamily& fam = ctx.local_family(v);
    if (!(fam.members == c.index_family)) {
      rep.pass = false;
      rep.mismatches.push_back(v);
    }
  }
  return rep;
}

WindowGitReport check_window_equals_git(const ActionSpec& spec, const RatVec& delta,
                                        const GKZChamber& c, long long radius) {
  return check_window_equals_git_impl(spec, delta, c, radius);
}

}  // namespace mw
