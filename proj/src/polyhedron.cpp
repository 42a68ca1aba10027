#include "mw/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mw/linalg.hpp"

namespace mw {

namespace {

// Scale (a, c) to primitive integers, gcd 1, keeping orientation.
LinCon normalize_row(const LinCon& r) {
  BigInt lcm = r.c.den();
  for (Eigen::Index i = 0; i < r.a.size(); ++i)
    lcm = boost::multiprecision::lcm(lcm, r.a(i).den());
  BigInt g = (r.c.num() * (lcm / r.c.den()));
  g = abs(g);
  std::vector<BigInt> ints(static_cast<size_t>(r.a.size()));
  for (Eigen::Index i = 0; i < r.a.size(); ++i) {
    ints[static_cast<size_t>(i)] = r.a(i).num() * (lcm / r.a(i).den());
    g = boost::multiprecision::gcd(g, abs(ints[static_cast<size_t>(i)]));
  }
  if (g == 0) return r;
  LinCon out;
  out.rel = r.rel;
  out.a = RatVec(r.a.size());
  for (Eigen::Index i = 0; i < r.a.size(); ++i) out.a(i) = Rat(BigInt(ints[static_cast<size_t>(i)] / g));
  out.c = Rat(BigInt(r.c.num() * (lcm / r.c.den()) / g));
  return out;
}

std::string row_key(const LinCon& r) {
  std::ostringstream os;
  os << static_cast<int>(r.rel) << "|" << rat_str(r.c) << "|";
  for (Eigen::Index i = 0; i < r.a.size(); ++i) os << rat_str(r.a(i)) << ",";
  return os.str();
}

// System in the first nv variables of the row vectors.
struct FmSystem {
  Eigen::Index nv;
  std::vector<LinCon> rows;
  bool trivially_infeasible = false;
};

bool const_row_ok(const LinCon& r) {
  // all-zero functional: 0 rel c
  switch (r.rel) {
    case Rel::LE: return Rat(0) <= r.c;
    case Rel::LT: return Rat(0) < r.c;
    case Rel::EQ: return r.c == Rat(0);
  }
  return true;
}

bool is_zero_functional(const LinCon& r, Eigen::Index nv) {
  for (Eigen::Index i = 0; i < nv; ++i)
    if (r.a(i) != Rat(0)) return false;
  return true;
}

void dedupe(std::vector<LinCon>& rows) {
  std::map<std::string, size_t> seen;
  std::vector<LinCon> out;
  for (auto& r : rows) {
    auto key = row_key(r);
    if (seen.count(key)) continue;
    seen[key] = out.size();
    out.push_back(r);
  }
  // same normal: keep the tightest bound only
  std::map<std::string, size_t> best;
  std::vector<LinCon> out2;
  for (auto& r : rows) {
    if (r.rel == Rel::EQ) continue;
    std::ostringstream os;
    for (Eigen::Index i = 0; i < r.a.size(); ++i) os << rat_str(r.a(i)) << ",";
    auto key = os.str();
    auto it = best.find(key);
    if (it == best.end()) {
      best[key] = out2.size();
      out2.push_back(r);
    } else {
      LinCon& b = out2[it->second];
      if (r.c < b.c || (r.c == b.c && r.rel == Rel::LT)) b = r;
    }
  }
  for (auto& r : rows)
    if (r.rel == Rel::EQ) out2.push_back(r);
  rows = std::move(out2);
}

// Eliminates variable j (0-based) in place. Rows must be normalized.
// Returns false if a trivially infeasible constant row appears.
bool eliminate_var(FmSystem& s, Eigen::Index j) {
  // prefer an equality pivot
  Eigen::Index eq_pivot = -1;
  for (size_t i = 0; i < s.rows.size(); ++i)
    if (s.rows[i].rel == Rel::EQ && s.rows[i].a(j) != Rat(0)) {
      eq_pivot = static_cast<Eigen::Index>(i);
      break;
    }
  std::vector<LinCon> next;
  if (eq_pivot >= 0) {
    const LinCon p = s.rows[static_cast<size_t>(eq_pivot)];
    for (size_t i = 0; i < s.rows.size(); ++i) {
      if (static_cast<Eigen::Index>(i) == eq_pivot) continue;
      LinCon r = s.rows[i];
      if (r.a(j) != Rat(0)) {
        Rat f = r.a(j) / p.a(j);
        r.a -= f * p.a;
        r.c -= f * p.c;
      }
      r = normalize_row(r);
      if (is_zero_functional(r, s.nv)) {
        if (!const_row_ok(r)) return false;
        continue;
      }
      next.push_back(r);
    }
  } else {
    std::vector<const LinCon*> pos, neg, zero;
    for (const auto& r : s.rows) {
      if (r.a(j) > Rat(0)) pos.push_back(&r);
      else if (r.a(j) < Rat(0)) neg.push_back(&r);
      else zero.push_back(&r);
    }
    for (const auto* r : zero) next.push_back(*r);
    for (const auto* p : pos)
      for (const auto* n : neg) {
        // p: a.x <= c with a_j > 0 ; n: b.x <= d with b_j < 0
        Rat fp = -n->a(j);  // > 0
        Rat fn = p->a(j);   // > 0
        LinCon r;
        r.a = fp * p->a + fn * n->a;
        r.c = fp * p->c + fn * n->c;
        r.rel = (p->rel == Rel::LT || n->rel == Rel::LT) ? Rel::LT : Rel::LE;
        r = normalize_row(r);
        if (is_zero_functional(r, s.nv)) {
          if (!const_row_ok(r)) return false;
          continue;
        }
        next.push_back(r);
      }
  }
  dedupe(next);
  s.rows = std::move(next);
  return true;
}

}  // namespace

Polyhedron Polyhedron::empty(Eigen::Index dim) {
  Polyhedron p(dim);
  RatVec z(dim);
  z.setConstant(Rat(0));
  p.add(z, Rat(-1), Rel::LE);
  return p;
}

Polyhedron Polyhedron::box(Eigen::Index dim, const Rat& radius, bool strict) {
  Polyhedron p(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    RatVec e(dim);
    e.setConstant(Rat(0));
    e(i) = 1;
    p.add(e, radius, strict ? Rel::LT : Rel::LE);
    e(i) = -1;
    p.add(e, radius, strict ? Rel::LT : Rel::LE);
  }
  return p;
}

Polyhedron Polyhedron::orthant(const std::vector<int>& pattern) {
  Polyhedron p(static_cast<Eigen::Index>(pattern.size()));
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == 9) continue;
    RatVec e(p.dim());
    e.setConstant(Rat(0));
    e(static_cast<Eigen::Index>(i)) = (pattern[i] > 0) ? Rat(-1) : Rat(1);
    Rel rel = (pattern[i] == 0) ? Rel::EQ
              : (std::abs(pattern[i]) == 2 ? Rel::LT : Rel::LE);
    if (pattern[i] == 0) e(static_cast<Eigen::Index>(i)) = 1;
    p.add(e, Rat(0), rel);
  }
  return p;
}

void Polyhedron::add(const LinCon& r) {
  if (r.a.size() != dim_) throw std::invalid_argument("row dimension mismatch");
  rows_.push_back(normalize_row(r));
}

void Polyhedron::add(const RatVec& a, const Rat& c, Rel rel) { add(LinCon{a, c, rel}); }

void Polyhedron::add_all(const Polyhedron& other) {
  for (const auto& r : other.rows()) add(r);
}

bool Polyhedron::contains(const RatVec& x) const {
  for (const auto& r : rows_) {
    Rat v(0);
    for (Eigen::Index i = 0; i < dim_; ++i) v += r.a(i) * x(i);
    switch (r.rel) {
      case Rel::LE: if (!(v <= r.c)) return false; break;
      case Rel::LT: if (!(v < r.c)) return false; break;
      case Rel::EQ: if (v != r.c) return false; break;
    }
  }
  return true;
}

bool Polyhedron::feasible() const {
  FmSystem s{dim_, rows_, false};
  for (const auto& r : s.rows)
    if (is_zero_functional(r, dim_) && !const_row_ok(r)) return false;
  for (Eigen::Index j = dim_ - 1; j >= 0; --j)
    if (!eliminate_var(s, j)) return false;
  for (const auto& r : s.rows)
    if (!const_row_ok(r)) return false;
  return true;
}

std::optional<RatVec> Polyhedron::witness() const {
  std::vector<std::vector<LinCon>> stages;
  FmSystem s{dim_, rows_, false};
  for (const auto& r : s.rows)
    if (is_zero_functional(r, dim_) && !const_row_ok(r)) return std::nullopt;
  for (Eigen::Index j = dim_ - 1; j >= 0; --j) {
    stages.push_back(s.rows);
    if (!eliminate_var(s, j)) return std::nullopt;
  }
  for (const auto& r : s.rows)
    if (!const_row_ok(r)) return std::nullopt;
  RatVec x(dim_);
  x.setConstant(Rat(0));
  for (Eigen::Index j = 0; j < dim_; ++j) {
    const auto& rows = stages[static_cast<size_t>(dim_ - 1 - j)];
    Bound lo, hi;
    std::optional<Rat> eq;
    for (const auto& r : rows) {
      if (r.a(j) == Rat(0)) continue;
      Rat rest(0);
      for (Eigen::Index i = 0; i < j; ++i) rest += r.a(i) * x(i);
      // also variables above j must be zero in this stage (already eliminated)
      Rat bound = (r.c - rest) / r.a(j);
      if (r.rel == Rel::EQ) {
        if (eq && *eq != bound) return std::nullopt;
        eq = bound;
        continue;
      }
      bool strict = (r.rel == Rel::LT);
      if (r.a(j) > Rat(0)) {
        if (!hi.finite || bound < hi.value || (bound == hi.value && strict))
          hi = Bound{true, bound, strict};
      } else {
        if (!lo.finite || bound > lo.value || (bound == lo.value && strict))
          lo = Bound{true, bound, strict};
      }
    }
    if (eq) {
      x(j) = *eq;
      continue;
    }
    if (lo.finite && hi.finite) {
      if (lo.value == hi.value) x(j) = lo.value;  // both necessarily closed here
      else x(j) = (lo.value + hi.value) / Rat(2);
    } else if (lo.finite) {
      x(j) = lo.strict ? lo.value + Rat(1) : lo.value;
    } else if (hi.finite) {
      x(j) = hi.strict ? hi.value - Rat(1) : hi.value;
    } else {
      x(j) = 0;
    }
  }
  return x;
}

Polyhedron Polyhedron::project(const RatMat& L) const {
  if (L.cols() != dim_) throw std::invalid_argument("projection dimension mismatch");
  Eigen::Index r = L.rows();
  // variables (y_0..y_{r-1}, x_0..x_{dim-1}); eliminate x
  FmSystem s{r + dim_, {}, false};
  for (const auto& row : rows_) {
    LinCon e;
    e.a = RatVec(r + dim_);
    e.a.setConstant(Rat(0));
    for (Eigen::Index i = 0; i < dim_; ++i) e.a(r + i) = row.a(i);
    e.c = row.c;
    e.rel = row.rel;
    s.rows.push_back(normalize_row(e));
  }
  for (Eigen::Index i = 0; i < r; ++i) {
    LinCon e;
    e.a = RatVec(r + dim_);
    e.a.setConstant(Rat(0));
    e.a(i) = 1;
    for (Eigen::Index j = 0; j < dim_; ++j) e.a(r + j) = -L(i, j);
    e.c = 0;
    e.rel = Rel::EQ;
    s.rows.push_back(normalize_row(e));
  }
  for (Eigen::Index j = r + dim_ - 1; j >= r; --j) {
    if (!eliminate_var(s, j)) {
      return Polyhedron::empty(r);
    }
  }
  Polyhedron out(r);
  for (const auto& row : s.rows) {
    LinCon e;
    e.a = row.a.head(r);
    e.c = row.c;
    e.rel = row.rel;
    if (is_zero_functional(e, r)) continue;
    out.add(e);
  }
  return out;
}

Polyhedron Polyhedron::translate(const RatVec& t) const {
  Polyhedron out(dim_);
  for (const auto& r : rows_) {
    Rat shift(0);
    for (Eigen::Index i = 0; i < dim_; ++i) shift += r.a(i) * t(i);
    out.add(r.a, r.c + shift, r.rel);
  }
  return out;
}

Polyhedron Polyhedron::intersect(const Polyhedron& other) const {
  Polyhedron out = *this;
  out.add_all(other);
  return out;
}

Polyhedron Polyhedron::minkowski_cone(const RatMat& gens) const {
  // { x + sum lambda_i g_i } : vars (y, x, lambda), y = x + G lambda
  Eigen::Index n = dim_, g = gens.cols();
  RatMat L(n, n + n + g);
  Polyhedron aux(n + g);
  // encode x in first n coords, lambda after; project by y = x + G lambda
  for (const auto& r : rows_) {
    LinCon e;
    e.a = RatVec(n + g);
    e.a.setConstant(Rat(0));
    for (Eigen::Index i = 0; i < n; ++i) e.a(i) = r.a(i);
    e.c = r.c;
    e.rel = r.rel;
    aux.add(e);
  }
  for (Eigen::Index i = 0; i < g; ++i) {
    LinCon e;
    e.a = RatVec(n + g);
    e.a.setConstant(Rat(0));
    e.a(n + i) = -1;
    e.c = 0;
    e.rel = Rel::LE;  // lambda_i >= 0
    aux.add(e);
  }
  RatMat M(n, n + g);
  M.setConstant(Rat(0));
  for (Eigen::Index i = 0; i < n; ++i) M(i, i) = 1;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < g; ++j) M(i, n + j) = gens(i, j);
  return aux.project(M);
}

Polyhedron Polyhedron::minkowski(const Polyhedron& other) const {
  if (other.dim() != dim_) throw std::invalid_argument("minkowski dim mismatch");
  Eigen::Index n = dim_;
  Polyhedron aux(2 * n);  // (x, z): x in P, z in Q; project x + z
  for (const auto& r : rows_) {
    LinCon e;
    e.a = RatVec(2 * n);
    e.a.setConstant(Rat(0));
    for (Eigen::Index i = 0; i < n; ++i) e.a(i) = r.a(i);
    e.c = r.c;
    e.rel = r.rel;
    aux.add(e);
  }
  for (const auto& r : other.rows()) {
    LinCon e;
    e.a = RatVec(2 * n);
    e.a.setConstant(Rat(0));
    for (Eigen::Index i = 0; i < n; ++i) e.a(n + i) = r.a(i);
    e.c = r.c;
    e.rel = r.rel;
    aux.add(e);
  }
  RatMat M(n, 2 * n);
  M.setConstant(Rat(0));
  for (Eigen::Index i = 0; i < n; ++i) {
    M(i, i) = 1;
    M(i, n + i) = 1;
  }
  return aux.project(M);
}

std::pair<Bound, Bound> Polyhedron::support_interval(const RatVec& d) const {
  RatMat L(1, dim_);
  for (Eigen::Index i = 0; i < dim_; ++i) L(0, i) = d(i);
  Polyhedron line = project(L);
  Bound lo, hi;
  bool lower_open_space = true, upper_open_space = true;
  for (const auto& r : line.rows()) {
    Rat a = r.a(0);
    if (a == Rat(0)) continue;
    Rat bound = r.c / a;
    if (r.rel == Rel::EQ) {
      if (!lo.finite || bound > lo.value) lo = Bound{true, bound, false};
      if (!hi.finite || bound < hi.value) hi = Bound{true, bound, false};
      lower_open_space = upper_open_space = false;
      continue;
    }
    bool strict = (r.rel == Rel::LT);
    if (a > Rat(0)) {
      if (!hi.finite || bound < hi.value || (bound == hi.value && strict))
        hi = Bound{true, bound, strict};
      upper_open_space = false;
    } else {
      if (!lo.finite || bound > lo.value || (bound == lo.value && strict))
        lo = Bound{true, bound, strict};
      lower_open_space = false;
    }
  }
  (void)lower_open_space;
  (void)upper_open_space;
  return {lo, hi};
}

bool Polyhedron::bounded() const {
  if (!feasible()) return true;
  for (Eigen::Index i = 0; i < dim_; ++i) {
    RatVec d(dim_);
    d.setConstant(Rat(0));
    d(i) = 1;
    auto [lo, hi] = support_interval(d);
    if (!lo.finite || !hi.finite) return false;
  }
  return true;
}

std::vector<IVec> Polyhedron::lattice_points() const {
  std::vector<IVec> out;
  if (!feasible()) return out;
  std::vector<long long> lo(static_cast<size_t>(dim_)), hi(static_cast<size_t>(dim_));
  for (Eigen::Index i = 0; i < dim_; ++i) {
    RatVec d(dim_);
    d.setConstant(Rat(0));
    d(i) = 1;
    auto [l, h] = support_interval(d);
    if (!l.finite || !h.finite) throw std::domain_error("lattice_points: unbounded polyhedron");
    lo[static_cast<size_t>(i)] = rat_ceil(l.value).convert_to<long long>();
    hi[static_cast<size_t>(i)] = rat_floor(h.value).convert_to<long long>();
  }
  IVec cur(static_cast<size_t>(dim_));
  RatVec x(dim_);
  std::function<void(Eigen::Index)> rec = [&](Eigen::Index i) {
    if (i == dim_) {
      if (contains(x)) out.push_back(cur);
      return;
    }
    for (long long v = lo[static_cast<size_t>(i)]; v <= hi[static_cast<size_t>(i)]; ++v) {
      cur[static_cast<size_t>(i)] = v;
      x(i) = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

Polyhedron Polyhedron::canonicalized() const {
  if (!feasible()) return Polyhedron::empty(dim_);
  std::vector<LinCon> rows = rows_;
  dedupe(rows);
  // implied equalities
  for (auto& r : rows) {
    if (r.rel == Rel::EQ) continue;
    Polyhedron test(dim_);
    for (const auto& q : rows) test.add(q);
    test.add(r.a, r.c, Rel::LT);
    // replace the copy of r by strict: if infeasible, r holds with equality
    // (the LT row dominates the original LE duplicate)
    if (!test.feasible()) r.rel = Rel::EQ;
  }
  // redundancy: drop rows implied by the others
  std::vector<bool> keep(rows.size(), true);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].rel == Rel::EQ) continue;
    Polyhedron test(dim_);
    for (size_t j = 0; j < rows.size(); ++j)
      if (j != i && keep[j]) test.add(rows[j]);
    LinCon neg;
    neg.a = -rows[i].a;
    neg.c = -rows[i].c;
    neg.rel = (rows[i].rel == Rel::LE) ? Rel::LT : Rel::LE;
    test.add(neg);
    if (!test.feasible()) keep[i] = false;
  }
  Polyhedron out(dim_);
  std::vector<LinCon> kept;
  for (size_t i = 0; i < rows.size(); ++i)
    if (keep[i]) kept.push_back(rows[i]);
  std::sort(kept.begin(), kept.end(), [](const LinCon& a, const LinCon& b) {
    return row_key(a) < row_key(b);
  });
  for (auto& r : kept) out.add(r);
  return out;
}

Polyhedron Polyhedron::relative_interior_system() const {
  Polyhedron out(dim_);
  for (const auto& r : rows_) {
    LinCon q = r;
    if (q.rel == Rel::LE) q.rel = Rel::LT;
    out.add(q);
  }
  return out;
}

std::string Polyhedron::str() const {
  std::ostringstream os;
  os << "{dim " << dim_ << ";";
  for (const auto& r : rows_) {
    os << " [";
    for (Eigen::Index i = 0; i < dim_; ++i) os << (i ? "," : "") << rat_str(r.a(i));
    os << (r.rel == Rel::EQ ? "] = " : (r.rel == Rel::LT ? "] < " : "] <= "));
    os << rat_str(r.c) << ";";
  }
  os << "}";
  return os.str();
}

bool contained_in_union(const Polyhedron& p, const std::vector<Polyhedron>& pieces) {
  if (!p.feasible()) return true;
  if (pieces.empty()) return false;
  const Polyhedron& q = pieces.front();
  std::vector<Polyhedron> rest(pieces.begin() + 1, pieces.end());
  // split p into the parts outside q, one per violated constraint of q
  std::vector<Polyhedron> outside;
  Polyhedron prefix = p;  // accumulates satisfied constraints of q
  for (const auto& r : q.rows()) {
    auto push_part = [&](const LinCon& neg) {
      Polyhedron part = prefix;
      part.add(neg);
      if (part.feasible()) outside.push_back(part);
    };
    if (r.rel == Rel::EQ) {
      LinCon lt{r.a, r.c, Rel::LT};
      LinCon gt{-r.a, -r.c, Rel::LT};
      push_part(lt);
      push_part(gt);
    } else {
      LinCon neg;
      neg.a = -r.a;
      neg.c = -r.c;
      neg.rel = (r.rel == Rel::LE) ? Rel::LT : Rel::LE;
      push_part(neg);
    }
    prefix.add(r);
  }
  for (const auto& part : outside)
    if (!contained_in_union(part, rest)) return false;
  return true;
}

}  // namespace mw
