#include "mw/zonofan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "mw/linalg.hpp"

namespace mw {

Zonotope::Zonotope(RatMat gens, RatVec shift) : gens_(std::move(gens)), shift_(std::move(shift)) {
  for (Eigen::Index i = 0; i < gens_.rows(); ++i)
    for (Eigen::Index j = 0; j < gens_.cols(); ++j)
      if (!gens_(i, j).is_integer())
        throw std::invalid_argument("zonotope generators must be integer");
}

Zonotope Zonotope::from_segments(const RatMat& segs) {
  RatVec shift(segs.rows());
  shift.setConstant(Rat(0));
  for (Eigen::Index j = 0; j < segs.cols(); ++j) shift += segs.col(j) / Rat(2);
  return Zonotope(segs, shift);
}

Rat Zonotope::support(const RatVec& xi) const {
  Rat s(0);
  for (Eigen::Index i = 0; i < shift_.size(); ++i) s += shift_(i) * xi(i);
  for (Eigen::Index j = 0; j < gens_.cols(); ++j) {
    Rat d(0);
    for (Eigen::Index i = 0; i < shift_.size(); ++i) d += gens_(i, j) * xi(i);
    s += abs(d) / Rat(2);
  }
  return s;
}

namespace {

std::string vec_key(const RatVec& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += rat_str(v(i)) + ",";
  return s;
}

// canonical primitive normal: first nonzero entry positive
RatVec canonical_dir(const RatVec& v) {
  RatVec p = primitive_integer(v);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) == Rat(0)) continue;
    if (p(i) < Rat(0)) p = -p;
    break;
  }
  return p;
}

// all primitive normals of hyperplanes spanned by rank k-1 subsets of cols,
// within the span of cols (handles degenerate zonotopes via a span basis).
std::vector<RatVec> facet_normals(const RatMat& gens) {
  Eigen::Index k = gens.rows();
  // basis of the span
  RatMat span = gens;
  Eigen::Index r = rank_exact(span);
  std::set<std::string> seen;
  std::vector<RatVec> out;
  if (r == 0) return out;
  if (r == 1 && k >= 1) {
    // single direction: normals in the span are +-direction itself
    for (Eigen::Index j = 0; j < gens.cols(); ++j) {
      RatVec g = gens.col(j);
      bool zero = true;
      for (Eigen::Index i = 0; i < k; ++i) zero = zero && g(i) == Rat(0);
      if (zero) continue;
      RatVec n = canonical_dir(g);
      if (seen.insert(vec_key(n)).second) out.push_back(n);
      break;
    }
    return out;
  }
  // enumerate (r-1)-subsets of generator columns, compute their orthogonal
  // complement inside the span: a normal when the subset has rank r-1
  std::vector<Eigen::Index> idx(static_cast<size_t>(gens.cols()));
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<Eigen::Index>(i);
  std::vector<Eigen::Index> subset;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (subset.size() == static_cast<size_t>(r - 1)) {
      RatMat m(k, static_cast<Eigen::Index>(subset.size()));
      for (size_t j = 0; j < subset.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = gens.col(subset[j]);
      if (rank_exact(m) != r - 1) return;
      // normal: kernel of [subset^T; span-complement constraints]
      // i.e. xi with <xi, g_j> = 0 for j in subset and xi in span(gens)
      // span(gens) = row space of gens^T; xi in span <=> xi = gens * t
      RatMat mt(static_cast<Eigen::Index>(subset.size()), gens.cols());
      for (size_t j = 0; j < subset.size(); ++j)
        for (Eigen::Index c = 0; c < gens.cols(); ++c) {
          Rat d(0);
          for (Eigen::Index i = 0; i < k; ++i) d += gens(i, subset[j]) * gens(i, c);
          mt(static_cast<Eigen::Index>(j), c) = d;
        }
      RatMat ker = kernel_rational(mt);
      for (Eigen::Index c = 0; c < ker.cols(); ++c) {
        RatVec xi = gens * ker.col(c);
        bool zero = true;
        for (Eigen::Index i = 0; i < k; ++i) zero = zero && xi(i) == Rat(0);
        if (zero) continue;
        RatVec n = canonical_dir(xi);
        if (seen.insert(vec_key(n)).second) out.push_back(n);
      }
      return;
    }
    for (size_t i = start; i < idx.size(); ++i) {
      subset.push_back(idx[i]);
      rec(i + 1);
      subset.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

}  // namespace

Polyhedron Zonotope::h_rep() const {
  Eigen::Index k = dim();
  Polyhedron p(k);
  // equalities for the affine hull
  RatMat gt(gens_.cols(), k);
  for (Eigen::Index i = 0; i < gens_.cols(); ++i)
    for (Eigen::Index j = 0; j < k; ++j) gt(i, j) = gens_(j, i);
  RatMat perp = kernel_rational(gt);  // covectors vanishing on all generators
  for (Eigen::Index c = 0; c < perp.cols(); ++c) {
    RatVec n = primitive_integer(perp.col(c));
    Rat b(0);
    for (Eigen::Index i = 0; i < k; ++i) b += n(i) * shift_(i);
    p.add(n, b, Rel::EQ);
  }
  for (const RatVec& n : facet_normals(gens_)) {
    p.add(n, support(n), Rel::LE);
    p.add(-n, support(-n), Rel::LE);
  }
  return p;
}

bool Zonotope::contains(const RatVec& x) const { return h_rep().contains(x); }

std::vector<ArrangementCell> arrangement_cells(const std::vector<LinCon>& hyperplanes,
                                               const Polyhedron& box) {
  struct Partial {
    std::vector<int> sign;
    Polyhedron poly;
  };
  std::vector<Partial> cells{{{}, box}};
  for (const auto& h : hyperplanes) {
    std::vector<Partial> next;
    for (const auto& cell : cells) {
      for (int s : {-1, 0, 1}) {
        Partial ext = cell;
        ext.sign.push_back(s);
        LinCon r;
        if (s == 0) {
          r = LinCon{h.a, h.c, Rel::EQ};
        } else if (s > 0) {
          r = LinCon{-h.a, -h.c, Rel::LT};
        } else {
          r = LinCon{h.a, h.c, Rel::LT};
        }
        ext.poly.add(r);
        if (ext.poly.feasible()) next.push_back(std::move(ext));
      }
    }
    cells = std::move(next);
  }
  std::sort(cells.begin(), cells.end(),
            [](const Partial& a, const Partial& b) { return a.sign < b.sign; });
  std::vector<ArrangementCell> out;
  out.reserve(cells.size());
  for (const auto& c : cells) {
    auto w = c.poly.witness();
    if (!w) throw std::logic_error("arrangement cell lost its witness");
    out.push_back({c.sign, *w});
  }
  return out;
}

std::vector<RatVec> Cone::rays() const {
  Eigen::Index k = witness.size();
  if (dim == 0) return {};
  if (k == 1) {
    RatVec r(1);
    r(0) = witness(0) > Rat(0) ? 1 : -1;
    return {r};
  }
  if (k != 2) throw std::logic_error("Cone::rays implemented for ambient dim <= 2");
  if (dim == 1) return {primitive_integer(witness)};
  // dim 2: boundary rays lie on the bounding hyperplanes
  std::vector<RatVec> out;
  std::set<std::string> seen;
  for (const auto& row : hrep.rows()) {
    // candidates orthogonal to the row normal
    RatVec cand(2);
    cand(0) = -row.a(1);
    cand(1) = row.a(0);
    for (int s : {1, -1}) {
      RatVec r = primitive_integer(cand) * Rat(s);
      if (!hrep.contains(r)) continue;
      // on the boundary: this row active
      Rat v = r(0) * row.a(0) + r(1) * row.a(1);
      if (v != row.c) continue;
      std::string key = rat_str(r(0)) + "," + rat_str(r(1));
      if (seen.insert(key).second) out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

Zonotope Fan::face(const Cone& c) const {
  const RatMat& g = zonotope.gens();
  Eigen::Index k = zonotope.dim();
  std::vector<Eigen::Index> zero;
  RatVec shift = zonotope.shift();
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    if (c.sign[static_cast<size_t>(j)] == 0) zero.push_back(j);
    else shift += g.col(j) * Rat(c.sign[static_cast<size_t>(j)]) / Rat(2);
  }
  RatMat sub(k, static_cast<Eigen::Index>(zero.size()));
  for (size_t j = 0; j < zero.size(); ++j) sub.col(static_cast<Eigen::Index>(j)) = g.col(zero[j]);
  return Zonotope(sub, shift);
}

const Cone& Fan::locate(const RatVec& xi) const {
  const RatMat& g = zonotope.gens();
  std::vector<int> sign(static_cast<size_t>(g.cols()));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    Rat d(0);
    for (Eigen::Index i = 0; i < g.rows(); ++i) d += g(i, j) * xi(i);
    sign[static_cast<size_t>(j)] = d.sign();
  }
  for (const auto& c : cones)
    if (c.sign == sign) return c;
  throw std::logic_error("fan does not cover the given covector");
}

Fan normal_fan(const Zonotope& z) {
  Eigen::Index k = z.dim();
  const RatMat& g = z.gens();
  if (rank_exact(g) != k) throw std::invalid_argument("normal_fan: zonotope not full-dimensional");
  // distinct generator hyperplanes
  std::vector<LinCon> hyps;
  std::set<std::string> seen;
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    RatVec n = primitive_integer(g.col(j));
    for (Eigen::Index i = 0; i < k; ++i) {
      if (n(i) == Rat(0)) continue;
      if (n(i) < Rat(0)) n = -n;
      break;
    }
    auto key = vec_key(n);
    if (!seen.insert(key).second) continue;
    hyps.push_back(LinCon{n, Rat(0), Rel::EQ});
  }
  auto cells = arrangement_cells(hyps, Polyhedron::box(k, Rat(1), true));
  Fan fan;
  fan.zonotope = z;
  for (const auto& cell : cells) {
    Cone c;
    c.witness = cell.point;
    c.sign.resize(static_cast<size_t>(g.cols()));
    Polyhedron hrep(k);
    std::vector<RatVec> zero_normals;
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      Rat d(0);
      for (Eigen::Index i = 0; i < k; ++i) d += g(i, j) * cell.point(i);
      int s = d.sign();
      c.sign[static_cast<size_t>(j)] = s;
      RatVec n = g.col(j);
      if (s == 0) {
        hrep.add(n, Rat(0), Rel::EQ);
        zero_normals.push_back(n);
      } else if (s > 0) {
        hrep.add(-n, Rat(0), Rel::LE);
      } else {
        hrep.add(n, Rat(0), Rel::LE);
      }
    }
    c.hrep = hrep.canonicalized();
    RatMat zn(k, static_cast<Eigen::Index>(zero_normals.size()));
    for (size_t j = 0; j < zero_normals.size(); ++j)
      zn.col(static_cast<Eigen::Index>(j)) = zero_normals[j];
    c.dim = static_cast<int>(k - rank_exact(zn));
    fan.cones.push_back(std::move(c));
  }
  std::sort(fan.cones.begin(), fan.cones.end(), [](const Cone& a, const Cone& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.sign < b.sign;
  });
  return fan;
}

}  // namespace mw
