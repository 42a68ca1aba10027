#include "mw/action.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mw/linalg.hpp"

namespace mw {

namespace {

RatVec canonical_primitive(const RatVec& v) {
  RatVec p = primitive_integer(v);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) == Rat(0)) continue;
    if (p(i) < Rat(0)) p = -p;
    break;
  }
  return p;
}

}  // namespace

ActionSpec::ActionSpec(Eigen::Index n, Eigen::Index k, RatMat beta)
    : n_(n), k_(k), beta_(std::move(beta)) {
  if (beta_.rows() != k_ || beta_.cols() != n_)
    throw std::invalid_argument("beta must be k x N");
  for (Eigen::Index i = 0; i < k_; ++i)
    for (Eigen::Index j = 0; j < n_; ++j)
      if (!beta_(i, j).is_integer()) throw std::invalid_argument("beta must be integer");
  // group columns into lines
  line_of_.assign(static_cast<size_t>(n_), -1);
  std::vector<RatVec> dirs;
  for (Eigen::Index i = 0; i < n_; ++i) {
    RatVec col = beta_.col(i);
    bool zero = true;
    for (Eigen::Index r = 0; r < k_; ++r) zero = zero && col(r) == Rat(0);
    if (zero) throw std::invalid_argument("beta_i must be nonzero");
    RatVec d = canonical_primitive(col);
    int found = -1;
    for (size_t l = 0; l < dirs.size(); ++l)
      if (dirs[l] == d) { found = static_cast<int>(l); break; }
    if (found < 0) {
      found = static_cast<int>(dirs.size());
      dirs.push_back(d);
      lines_.push_back({});
    }
    line_of_[static_cast<size_t>(i)] = found;
    lines_[static_cast<size_t>(found)].push_back(static_cast<int>(i));
  }
  line_dir_ = RatMat(k_, static_cast<Eigen::Index>(dirs.size()));
  for (size_t l = 0; l < dirs.size(); ++l) line_dir_.col(static_cast<Eigen::Index>(l)) = dirs[l];
  // coefficients along lines
  coeff_.resize(static_cast<size_t>(n_));
  for (Eigen::Index i = 0; i < n_; ++i) {
    int l = line_of_[static_cast<size_t>(i)];
    RatVec d = line_dir_.col(l);
    Eigen::Index nz = 0;
    while (d(nz) == Rat(0)) ++nz;
    coeff_[static_cast<size_t>(i)] = beta_(nz, i) / d(nz);
  }
  // quasi-symmetry and eta per line
  qs_ = true;
  eta_.assign(lines_.size(), Rat(0));
  for (size_t l = 0; l < lines_.size(); ++l) {
    Rat sum(0), pos(0);
    for (int i : lines_[l]) {
      sum += coeff_[static_cast<size_t>(i)];
      if (coeff_[static_cast<size_t>(i)] > Rat(0)) pos += coeff_[static_cast<size_t>(i)];
    }
    if (sum != Rat(0)) qs_ = false;
    eta_[l] = pos;
  }
  if (rank_exact(beta_) != k_) throw std::invalid_argument("weights do not span");
  kernelM_ = kernel_lattice(beta_);
}

ActionSpec ActionSpec::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Eigen::Index n = j.at("N").get<Eigen::Index>();
  Eigen::Index k = j.at("k").get<Eigen::Index>();
  RatMat beta(k, n);
  const auto& rows = j.at("beta");
  if (static_cast<Eigen::Index>(rows.size()) != k)
    throw std::invalid_argument("beta must have k rows");
  for (Eigen::Index r = 0; r < k; ++r) {
    const auto& row = rows[static_cast<size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != n)
      throw std::invalid_argument("beta row length must be N");
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& cell = row[static_cast<size_t>(c)];
      if (cell.is_number_integer()) beta(r, c) = Rat(cell.get<long long>());
      else if (cell.is_string()) beta(r, c) = parse_rat(cell.get<std::string>());
      else throw std::invalid_argument("beta entries must be integers");
    }
  }
  return ActionSpec(n, k, std::move(beta));
}

RatMat ActionSpec::pi_mat() const {
  RatMat p(m(), n_);
  p.setConstant(Rat(0));
  for (Eigen::Index i = 0; i < n_; ++i)
    p(line_of_[static_cast<size_t>(i)], i) = coeff_[static_cast<size_t>(i)];
  return p;
}

RatMat ActionSpec::q_mat() const { return line_dir_; }

IVec ActionSpec::mu(const IVec& w) const {
  IVec v(static_cast<size_t>(k_), 0);
  for (Eigen::Index r = 0; r < k_; ++r) {
    Rat acc(0);
    for (Eigen::Index i = 0; i < n_; ++i) acc += beta_(r, i) * Rat(w[static_cast<size_t>(i)]);
    v[static_cast<size_t>(r)] = acc.num().convert_to<long long>();
  }
  return v;
}

Zonotope ActionSpec::nabla() const {
  if (!qs_) throw std::domain_error("nabla requires a quasi-symmetric action");
  RatMat gens(k_, m());
  for (int l = 0; l < m(); ++l) gens.col(l) = line_dir_.col(l) * eta_[static_cast<size_t>(l)];
  RatVec shift(k_);
  shift.setConstant(Rat(0));
  return Zonotope(gens, shift);
}

Zonotope ActionSpec::level_box() const {
  if (!qs_) throw std::domain_error("level box requires a quasi-symmetric action");
  RatMat gens(m(), m());
  gens.setConstant(Rat(0));
  for (int l = 0; l < m(); ++l) gens(l, l) = eta_[static_cast<size_t>(l)];
  RatVec shift(m());
  shift.setConstant(Rat(0));
  return Zonotope(gens, shift);
}

Zonotope ActionSpec::segment_zonotope(Mask j) const {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < n_; ++i)
    if (j & (Mask(1) << i)) idx.push_back(i);
  RatMat segs(k_, static_cast<Eigen::Index>(idx.size()));
  for (size_t t = 0; t < idx.size(); ++t) segs.col(static_cast<Eigen::Index>(t)) = beta_.col(idx[t]);
  return Zonotope::from_segments(segs);
}

Rat ActionSpec::beta_sum(Mask i, Eigen::Index row) const {
  Rat s(0);
  for (Eigen::Index c = 0; c < n_; ++c)
    if (i & (Mask(1) << c)) s += beta_(row, c);
  return s;
}

RatVec ActionSpec::beta_sum(Mask i) const {
  RatVec s(k_);
  for (Eigen::Index r = 0; r < k_; ++r) s(r) = beta_sum(i, r);
  return s;
}

Polyhedron ActionSpec::weight_cone(Mask i) const {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index c = 0; c < n_; ++c)
    if (i & (Mask(1) << c)) idx.push_back(c);
  Polyhedron orth(static_cast<Eigen::Index>(idx.size()));
  for (size_t t = 0; t < idx.size(); ++t) {
    RatVec e(static_cast<Eigen::Index>(idx.size()));
    e.setConstant(Rat(0));
    e(static_cast<Eigen::Index>(t)) = -1;
    orth.add(e, Rat(0), Rel::LE);
  }
  RatMat L(k_, static_cast<Eigen::Index>(idx.size()));
  for (size_t t = 0; t < idx.size(); ++t) L.col(static_cast<Eigen::Index>(t)) = beta_.col(idx[t]);
  return orth.project(L);
}

QsReport check_quasi_symmetric(const ActionSpec& spec) {
  QsReport r;
  r.quasi_symmetric = spec.quasi_symmetric();
  for (const auto& line : spec.lines()) {
    std::vector<int> labels;
    for (int i : line) labels.push_back(i + 1);
    r.lines.push_back(labels);
  }
  for (int l = 0; l < spec.m(); ++l) r.eta.push_back(spec.eta(l));
  return r;
}

std::vector<GKZChamber> gkz_fan(const ActionSpec& spec) {
  Eigen::Index k = spec.k();
  // walls: hyperplanes spanned by rank k-1 subsets of weights
  std::vector<LinCon> hyps;
  std::set<std::string> seen;
  auto add_normal = [&](const RatVec& nrm) {
    RatVec n = canonical_primitive(nrm);
    bool zero = true;
    for (Eigen::Index i = 0; i < k; ++i) zero = zero && n(i) == Rat(0);
    if (zero) return;
    std::string key = rat_vec_str(n);
    if (seen.insert(key).second) hyps.push_back(LinCon{n, Rat(0), Rel::EQ});
  };
  if (k == 1) {
    RatVec one(1);
    one(0) = 1;
    add_normal(one);
  } else {
    std::vector<Eigen::Index> subset;
    std::function<void(Eigen::Index)> rec = [&](Eigen::Index start) {
      if (static_cast<Eigen::Index>(subset.size()) == k - 1) {
        RatMat m(k, k - 1);
        for (size_t j = 0; j < subset.size(); ++j)
          m.col(static_cast<Eigen::Index>(j)) = spec.beta().col(subset[j]);
        if (rank_exact(m) != k - 1) return;
        RatMat mt(k - 1, k);
        for (Eigen::Index i = 0; i < k - 1; ++i)
          for (Eigen::Index j = 0; j < k; ++j) mt(i, j) = m(j, i);
        RatMat ker = kernel_rational(mt);
        for (Eigen::Index c = 0; c < ker.cols(); ++c) add_normal(ker.col(c));
        return;
      }
      for (Eigen::Index i = start; i < spec.N(); ++i) {
        subset.push_back(i);
        rec(i + 1);
        subset.pop_back();
      }
    };
    rec(0);
  }
  Polyhedron support = spec.weight_cone((Mask(1) << spec.N()) - 1);
  auto cells = arrangement_cells(hyps, Polyhedron::box(k, Rat(1), true));
  std::vector<GKZChamber> out;
  for (const auto& cell : cells) {
    bool full = true;
    for (int s : cell.sign) full = full && s != 0;
    if (!full) continue;
    if (!support.contains(cell.point)) continue;
    GKZChamber ch;
    ch.witness = cell.point;
    Polyhedron cone(k);
    for (size_t h = 0; h < hyps.size(); ++h) {
      LinCon r;
      r.a = cell.sign[h] > 0 ? -hyps[h].a : hyps[h].a;
      r.c = 0;
      r.rel = Rel::LE;
      cone.add(r);
    }
    ch.cone = cone.canonicalized();
    out.push_back(std::move(ch));
  }
  for (auto& ch : out) ch.index_family = chamber_index(spec, ch);
  return out;
}

std::vector<Mask> chamber_index(const ActionSpec& spec, const GKZChamber& c) {
  std::vector<Mask> out;
  Mask full = (Mask(1) << spec.N()) - 1;
  for (Mask i = 0; i <= full; ++i) {
    if (spec.weight_cone(i).contains(c.witness)) out.push_back(i);
  }
  return out;
}

std::vector<Mask> chamber_index_positive(const ActionSpec& spec, const GKZChamber& c) {
  std::vector<Mask> out;
  Mask full = (Mask(1) << spec.N()) - 1;
  for (Mask i = 0; i <= full; ++i) {
    // exists x with x_j > 0 (j in I), x_j = 0 otherwise, mu(x) = witness
    Polyhedron sys(spec.N());
    for (Eigen::Index j = 0; j < spec.N(); ++j) {
      RatVec e(spec.N());
      e.setConstant(Rat(0));
      e(j) = -1;
      if (i & (Mask(1) << j)) sys.add(e, Rat(0), Rel::LT);
      else sys.add(-e, Rat(0), Rel::EQ);
    }
    for (Eigen::Index r = 0; r < spec.k(); ++r) {
      RatVec a(spec.N());
      for (Eigen::Index j = 0; j < spec.N(); ++j) a(j) = spec.beta()(r, j);
      sys.add(a, c.witness(r), Rel::EQ);
    }
    if (sys.feasible()) out.push_back(i);
  }
  return out;
}

Polyhedron stable_region(const Polyhedron& p, const GKZChamber& c) {
  Polyhedron out(p.dim());
  for (const auto& row : c.cone.rows()) {
    if (row.rel == Rel::EQ) throw std::invalid_argument("chamber cone must be full-dimensional");
    auto [lo, hi] = p.support_interval(row.a);
    (void)hi;
    if (!lo.finite) throw std::invalid_argument("stable_region requires bounded P");
    out.add(row.a, lo.value, Rel::LE);
  }
  return out.canonicalized();
}

bool is_large_enough(const ActionSpec& spec, const Polyhedron& p) {
  if (!p.feasible()) return false;
  Eigen::Index k = spec.k();
  // generic half-space types: full-dimensional sign cells of the weight
  // hyperplane arrangement
  std::vector<LinCon> hyps;
  std::set<std::string> seen;
  for (Eigen::Index i = 0; i < spec.N(); ++i) {
    RatVec n = canonical_primitive(spec.beta().col(i));
    std::string key = rat_vec_str(n);
    if (seen.insert(key).second) hyps.push_back(LinCon{n, Rat(0), Rel::EQ});
  }
  auto cells = arrangement_cells(hyps, Polyhedron::box(k, Rat(1), true));
  for (const auto& cell : cells) {
    bool full = true;
    for (int s : cell.sign) full = full && s != 0;
    if (!full) continue;
    Mask j = 0;
    for (Eigen::Index i = 0; i < spec.N(); ++i) {
      Rat d(0);
      for (Eigen::Index r = 0; r < k; ++r) d += spec.beta()(r, i) * cell.point(r);
      if (d > Rat(0)) j |= (Mask(1) << i);
    }
    Zonotope nh = spec.segment_zonotope(j);
    // shift s with s + nabla_H inside P
    Polyhedron shifts(k);
    bool ok = true;
    for (const auto& row : p.rows()) {
      Rat hi = nh.support(row.a);
      if (row.rel == Rel::EQ) {
        Rat lo = -nh.support(-row.a);
        if (hi != lo) { ok = false; break; }
        shifts.add(row.a, row.c - hi, Rel::EQ);
      } else {
        shifts.add(row.a, row.c - hi, row.rel);
      }
    }
    if (!ok || !shifts.feasible()) return false;
  }
  return true;
}

std::string mask_str(Mask m, Eigen::Index n) {
  if (m == 0) return "{}";
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (Eigen::Index i = 0; i < n; ++i)
    if (m & (Mask(1) << i)) {
      if (!first) os << ",";
      os << (i + 1);
      first = false;
    }
  os << "}";
  return os.str();
}

}  // namespace mw
