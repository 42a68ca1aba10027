#include "mw/grid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mw {

AxisCell GridBox::axis_cell(int idx) const {
  if (idx < 0 || idx >= axis_cells()) throw std::out_of_range("axis cell index");
  if (idx % 2 == 0) return AxisCell{-R + idx / 2, true};
  return AxisCell{-R + (idx + 1) / 2, false};
}

int GridBox::axis_index(const AxisCell& c) const {
  long long idx = c.open ? 2 * (c.a + R) : 2 * (c.a + R) - 1;
  if (idx < 0 || idx >= axis_cells()) throw std::out_of_range("axis cell outside box");
  return static_cast<int>(idx);
}

bool GridBox::axis_leq(int x, int y) const {
  if (x == y) return true;
  // points are odd indices; point p is a face of the two adjacent intervals
  return (x % 2 == 1) && (y % 2 == 0) && (y == x - 1 || y == x + 1);
}

size_t GridBox::cell_count() const {
  size_t n = 1;
  for (int i = 0; i < N; ++i) n *= static_cast<size_t>(axis_cells());
  return n;
}

AxisIval AxisIval::all() { return AxisIval{}; }

AxisIval AxisIval::greater(long long a, bool strict) {
  AxisIval v;
  v.lo_inf = false;
  v.lo = a;
  v.lo_strict = strict;
  return v;
}

AxisIval AxisIval::less(long long a, bool strict) {
  AxisIval v;
  v.hi_inf = false;
  v.hi = a;
  v.hi_strict = strict;
  return v;
}

AxisIval AxisIval::between(long long a, long long b, bool lo_strict, bool hi_strict) {
  AxisIval v;
  v.lo_inf = v.hi_inf = false;
  v.lo = a;
  v.hi = b;
  v.lo_strict = lo_strict;
  v.hi_strict = hi_strict;
  return v;
}

AxisIval AxisIval::point(long long a) { return between(a, a, false, false); }

Block Block::open_quadrant(const IVec& w) {
  Block b;
  for (long long wi : w) b.axes.push_back(AxisIval::greater(wi, true));
  return b;
}

Block Block::wedge(Mask i, int n) {
  Block b;
  for (int t = 0; t < n; ++t)
    b.axes.push_back((i & (Mask(1) << t)) ? AxisIval::all() : AxisIval::greater(0, true));
  return b;
}

Block Block::closed_negative_quadrant(Mask i, int n) {
  Block b;
  for (int t = 0; t < n; ++t)
    b.axes.push_back((i & (Mask(1) << t)) ? AxisIval::less(0, false)
                                          : AxisIval::greater(0, false));
  return b;
}

Block Block::orthant_closed(const std::vector<int>& pattern) {
  Block b;
  for (int p : pattern) {
    if (p == 9) b.axes.push_back(AxisIval::all());
    else if (p > 0) b.axes.push_back(AxisIval::greater(0, false));
    else if (p < 0) b.axes.push_back(AxisIval::less(0, false));
    else b.axes.push_back(AxisIval::point(0));
  }
  return b;
}

bool axis_cell_in(const GridBox& box, int idx, const AxisIval& iv) {
  AxisCell c = box.axis_cell(idx);
  if (c.open) {
    // (a, a+1) inside iff lo <= a and a+1 <= hi
    if (!iv.lo_inf && iv.lo > c.a) return false;
    if (!iv.hi_inf && iv.hi < c.a + 1) return false;
    return true;
  }
  if (!iv.lo_inf) {
    if (iv.lo_strict ? !(iv.lo < c.a) : !(iv.lo <= c.a)) return false;
  }
  if (!iv.hi_inf) {
    if (iv.hi_strict ? !(c.a < iv.hi) : !(c.a <= iv.hi)) return false;
  }
  return true;
}

BlockComplex BlockComplex::single(int n, const Block& b, int deg, const std::string& label) {
  BlockComplex cx;
  cx.N = n;
  cx.terms.push_back({deg, b, label});
  return cx;
}

long long BlockComplex::feature_radius() const {
  long long r = 0;
  for (const auto& t : terms)
    for (const auto& iv : t.block.axes) {
      if (!iv.lo_inf) r = std::max(r, std::abs(iv.lo));
      if (!iv.hi_inf) r = std::max(r, std::abs(iv.hi));
    }
  return r;
}

int BlockComplex::min_deg() const {
  int d = 0;
  for (const auto& t : terms) d = std::min(d, t.deg);
  return d;
}

int BlockComplex::max_deg() const {
  int d = 0;
  for (const auto& t : terms) d = std::max(d, t.deg);
  return d;
}

BlockComplex BlockComplex::shifted(int s) const {
  BlockComplex out = *this;
  for (auto& t : out.terms) t.deg += s;
  return out;
}

GridBox default_box(const BlockComplex& cx, long long extra) {
  GridBox box;
  box.N = cx.N;
  box.R = cx.feature_radius() + extra;
  return box;
}

void validate_in_box(const GridBox& box, const BlockComplex& cx) {
  if (box.N != cx.N) throw std::invalid_argument("box dimension mismatch");
  if (cx.feature_radius() > box.R - 1)
    throw std::invalid_argument("block features outside the box: increase R");
}

namespace {

bool cell_in_block(const GridBox& box, const Cell& cell, const Block& b) {
  for (int i = 0; i < box.N; ++i)
    if (!axis_cell_in(box, cell[static_cast<size_t>(i)], b.axes[static_cast<size_t>(i)]))
      return false;
  return true;
}

bool cell_leq(const GridBox& box, const Cell& a, const Cell& b) {
  for (int i = 0; i < box.N; ++i)
    if (!box.axis_leq(a[static_cast<size_t>(i)], b[static_cast<size_t>(i)])) return false;
  return true;
}

void for_each_cell(const GridBox& box, const std::function<void(const Cell&)>& f) {
  Cell cell(static_cast<size_t>(box.N), 0);
  while (true) {
    f(cell);
    int i = 0;
    while (i < box.N) {
      if (++cell[static_cast<size_t>(i)] < box.axis_cells()) break;
      cell[static_cast<size_t>(i)] = 0;
      ++i;
    }
    if (i == box.N) break;
  }
}

// Evaluated complex at a cell: dims per degree, differential entries among
// the terms containing the cell.
GradedComplex stalk_complex(const GridBox& box, const BlockComplex& cx, const Cell& cell) {
  int lo = cx.min_deg(), hi = cx.max_deg();
  GradedComplex g;
  g.lo = lo;
  g.dims.assign(static_cast<size_t>(hi - lo + 1), 0);
  std::vector<Eigen::Index> pos(cx.terms.size(), -1);
  for (size_t t = 0; t < cx.terms.size(); ++t) {
    if (!cell_in_block(box, cell, cx.terms[t].block)) continue;
    pos[t] = g.dims[static_cast<size_t>(cx.terms[t].deg - lo)]++;
  }
  g.d.resize(static_cast<size_t>(hi - lo), SparseMat{});
  for (int d = lo; d < hi; ++d)
    g.d[static_cast<size_t>(d - lo)].init(g.dims[static_cast<size_t>(d - lo + 1)],
                                          g.dims[static_cast<size_t>(d - lo)]);
  for (const auto& m : cx.maps) {
    if (pos[static_cast<size_t>(m.from)] < 0 || pos[static_cast<size_t>(m.to)] < 0) continue;
    int d = cx.terms[static_cast<size_t>(m.from)].deg;
    g.d[static_cast<size_t>(d - lo)].add(pos[static_cast<size_t>(m.to)],
                                         pos[static_cast<size_t>(m.from)], m.coef);
  }
  return g;
}

}  // namespace

bool validate_complex(const GridBox& box, const BlockComplex& cx) {
  validate_in_box(box, cx);
  for (const auto& m : cx.maps)
    if (cx.terms[static_cast<size_t>(m.to)].deg != cx.terms[static_cast<size_t>(m.from)].deg + 1)
      return false;
  // naturality of each map and d^2 = 0, cellwise over comparable pairs
  bool ok = true;
  for_each_cell(box, [&](const Cell& cell) {
    if (!ok) return;
    // d^2 at the cell
    std::map<std::pair<int, int>, Rat> sq;
    for (const auto& m1 : cx.maps)
      for (const auto& m2 : cx.maps) {
        if (m1.to != m2.from) continue;
        bool a = cell_in_block(box, cell, cx.terms[static_cast<size_t>(m1.from)].block);
        bool b = cell_in_block(box, cell, cx.terms[static_cast<size_t>(m1.to)].block);
        bool c = cell_in_block(box, cell, cx.terms[static_cast<size_t>(m2.to)].block);
        if (a && b && c) sq[{m1.from, m2.to}] += m1.coef * m2.coef;
      }
    for (const auto& [k, v] : sq)
      if (v != Rat(0)) ok = false;
  });
  if (!ok) return false;
  // naturality: for every map and adjacent cells c <= c', the square with the
  // generization maps commutes
  for_each_cell(box, [&](const Cell& cell) {
    if (!ok) return;
    for (int axis = 0; axis < box.N && ok; ++axis) {
      int idx = cell[static_cast<size_t>(axis)];
      for (int up : {idx - 1, idx + 1}) {
        if (up < 0 || up >= box.axis_cells()) continue;
        if (!box.axis_leq(idx, up)) continue;
        Cell cc = cell;
        cc[static_cast<size_t>(axis)] = up;
        for (const auto& m : cx.maps) {
          const Block& bf = cx.terms[static_cast<size_t>(m.from)].block;
          const Block& bt = cx.terms[static_cast<size_t>(m.to)].block;
          Rat lhs = (cell_in_block(box, cell, bf) && cell_in_block(box, cell, bt) &&
                     cell_in_block(box, cc, bt))
                        ? m.coef
                        : Rat(0);
          Rat rhs = (cell_in_block(box, cell, bf) && cell_in_block(box, cc, bf) &&
                     cell_in_block(box, cc, bt))
                        ? m.coef
                        : Rat(0);
          if (lhs != rhs) { ok = false; break; }
        }
      }
    }
  });
  return ok;
}

GradedDims stalk(const GridBox& box, const BlockComplex& cx, const Cell& cell) {
  validate_in_box(box, cx);
  return cohomology_dims(stalk_complex(box, cx, cell));
}

GradedDims microstalk(const GridBox& box, const BlockComplex& cx, const Cell& cell,
                      const SignVec& s) {
  validate_in_box(box, cx);
  std::vector<int> supp;
  for (int i = 0; i < box.N; ++i) {
    if (s[static_cast<size_t>(i)] == 0) continue;
    if (box.axis_cell(cell[static_cast<size_t>(i)]).open)
      throw std::invalid_argument("sign vector not transverse to the cell");
    supp.push_back(i);
  }
  int k = static_cast<int>(supp.size());
  int lo = cx.min_deg(), hi = cx.max_deg();
  // basis: (subset T of supp, term u containing cell_T), degree p + |T| - k
  auto cell_of = [&](unsigned subset) {
    Cell c = cell;
    for (int t = 0; t < k; ++t) {
      if (!(subset & (1u << t))) continue;
      int axis = supp[static_cast<size_t>(t)];
      int idx = c[static_cast<size_t>(axis)];
      // move to the interval on the side opposite to the covector sign
      c[static_cast<size_t>(axis)] = (s[static_cast<size_t>(axis)] < 0) ? idx + 1 : idx - 1;
      if (c[static_cast<size_t>(axis)] < 0 || c[static_cast<size_t>(axis)] >= box.axis_cells())
        throw std::invalid_argument("microstalk cell touches the box boundary: increase R");
    }
    return c;
  };
  struct Key {
    unsigned subset;
    int term;
    bool operator<(const Key& o) const {
      return std::tie(subset, term) < std::tie(o.subset, o.term);
    }
  };
  std::map<int, std::vector<Key>> basis;
  std::map<Key, std::pair<int, Eigen::Index>> where;
  for (unsigned subset = 0; subset < (1u << k); ++subset) {
    Cell ct = cell_of(subset);
    for (size_t u = 0; u < cx.terms.size(); ++u) {
      if (!cell_in_block(box, ct, cx.terms[u].block)) continue;
      int deg = cx.terms[u].deg + __builtin_popcount(subset) - k;
      Key key{subset, static_cast<int>(u)};
      where[key] = {deg, static_cast<Eigen::Index>(basis[deg].size())};
      basis[deg].push_back(key);
    }
  }
  if (basis.empty()) return {};
  int blo = basis.begin()->first, bhi = basis.rbegin()->first;
  GradedComplex g;
  g.lo = blo;
  g.dims.assign(static_cast<size_t>(bhi - blo + 1), 0);
  for (auto& [d, v] : basis) g.dims[static_cast<size_t>(d - blo)] = static_cast<Eigen::Index>(v.size());
  g.d.resize(static_cast<size_t>(std::max(0, bhi - blo)), SparseMat{});
  for (int d = blo; d < bhi; ++d)
    g.d[static_cast<size_t>(d - blo)].init(g.dims[static_cast<size_t>(d - blo + 1)],
                                           g.dims[static_cast<size_t>(d - blo)]);
  (void)lo;
  (void)hi;
  for (auto& [d, keys] : basis) {
    if (d >= bhi) continue;
    auto& mtx = g.d[static_cast<size_t>(d - blo)];
    for (size_t bi = 0; bi < keys.size(); ++bi) {
      Key key = keys[bi];
      Cell ct = cell_of(key.subset);
      int tsz = __builtin_popcount(key.subset);
      // Koszul extension: add one axis to the subset (generization in the term)
      for (int t = 0; t < k; ++t) {
        if (key.subset & (1u << t)) continue;
        unsigned sub2 = key.subset | (1u << t);
        Key k2{sub2, key.term};
        auto it = where.find(k2);
        if (it == where.end()) continue;
        int before = __builtin_popcount(key.subset & ((1u << t) - 1));
        mtx.add(it->second.second, static_cast<Eigen::Index>(bi),
                (before % 2 == 0) ? Rat(1) : Rat(-1));
      }
      // internal differential, sign (-1)^{|T|}
      for (const auto& m : cx.maps) {
        if (m.from != key.term) continue;
        Key k2{key.subset, m.to};
        auto it = where.find(k2);
        if (it == where.end()) continue;
        if (!cell_in_block(box, ct, cx.terms[static_cast<size_t>(m.to)].block)) continue;
        mtx.add(it->second.second, static_cast<Eigen::Index>(bi),
                (tsz % 2 == 0) ? m.coef : -m.coef);
      }
    }
  }
  if (!g.check_d2()) throw std::logic_error("microstalk differential broken");
  return cohomology_dims(std::move(g));
}

std::vector<SSEntry> singular_support(const GridBox& box, const BlockComplex& cx) {
  validate_in_box(box, cx);
  std::vector<SSEntry> out;
  for_each_cell(box, [&](const Cell& cell) {
    if (!stalk(box, cx, cell).empty()) out.push_back({cell, SignVec(static_cast<size_t>(box.N), 0)});
    // sign vectors on point axes, avoiding box-boundary issues
    std::vector<int> pts;
    for (int i = 0; i < box.N; ++i)
      if (!box.axis_cell(cell[static_cast<size_t>(i)]).open) pts.push_back(i);
    int k = static_cast<int>(pts.size());
    if (k == 0) return;
    std::vector<int> sv(static_cast<size_t>(k), -1);
    while (true) {
      SignVec s(static_cast<size_t>(box.N), 0);
      bool nonzero = false;
      for (int t = 0; t < k; ++t) {
        s[static_cast<size_t>(pts[static_cast<size_t>(t)])] = sv[static_cast<size_t>(t)];
        nonzero = nonzero || sv[static_cast<size_t>(t)] != 0;
      }
      if (nonzero && !microstalk(box, cx, cell, s).empty()) out.push_back({cell, s});
      int i = 0;
      while (i < k) {
        if (++sv[static_cast<size_t>(i)] <= 1) break;
        sv[static_cast<size_t>(i)] = -1;
        ++i;
      }
      if (i == k) break;
    }
  });
  return out;
}

RatVec cell_sample_point(const GridBox& box, const Cell& cell) {
  RatVec x(box.N);
  for (int i = 0; i < box.N; ++i) {
    AxisCell c = box.axis_cell(cell[static_cast<size_t>(i)]);
    x(i) = c.open ? Rat(2 * c.a + 1, 2) : Rat(c.a);
  }
  return x;
}

// --- bar engine -------------------------------------------------------------

namespace {

struct SubPoset {
  std::vector<Cell> cells;
  // leq by index
  std::vector<std::vector<bool>> leq;
};

SubPoset star_poset(const GridBox& box, const Cell& center) {
  SubPoset sp;
  std::vector<std::vector<int>> per_axis(static_cast<size_t>(box.N));
  for (int i = 0; i < box.N; ++i) {
    int idx = center[static_cast<size_t>(i)];
    per_axis[static_cast<size_t>(i)].push_back(idx);
    for (int up : {idx - 1, idx + 1})
      if (up >= 0 && up < box.axis_cells() && box.axis_leq(idx, up))
        per_axis[static_cast<size_t>(i)].push_back(up);
  }
  Cell cur(static_cast<size_t>(box.N));
  std::function<void(int)> rec = [&](int axis) {
    if (axis == box.N) {
      sp.cells.push_back(cur);
      return;
    }
    for (int idx : per_axis[static_cast<size_t>(axis)]) {
      cur[static_cast<size_t>(axis)] = idx;
      rec(axis + 1);
    }
  };
  rec(0);
  std::sort(sp.cells.begin(), sp.cells.end());
  size_t n = sp.cells.size();
  sp.leq.assign(n, std::vector<bool>(n, false));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) sp.leq[a][b] = cell_leq(box, sp.cells[a], sp.cells[b]);
  return sp;
}

SubPoset full_poset(const GridBox& box) {
  SubPoset sp;
  for_each_cell(box, [&](const Cell& c) { sp.cells.push_back(c); });
  std::sort(sp.cells.begin(), sp.cells.end());
  size_t n = sp.cells.size();
  sp.leq.assign(n, std::vector<bool>(n, false));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) sp.leq[a][b] = cell_leq(box, sp.cells[a], sp.cells[b]);
  return sp;
}

GradedDims rhom_bar_on(const GridBox& box, const SubPoset& sp, const BlockComplex& M,
                       const BlockComplex& N) {
  size_t nc = sp.cells.size();
  // chains
  std::vector<std::vector<std::vector<int>>> chains;  // by length-1
  {
    std::vector<std::vector<int>> cur;
    for (size_t i = 0; i < nc; ++i) cur.push_back({static_cast<int>(i)});
    while (!cur.empty()) {
      chains.push_back(cur);
      std::vector<std::vector<int>> next;
      for (const auto& ch : cur)
        for (size_t j = 0; j < nc; ++j)
          if (static_cast<int>(j) != ch.back() && sp.leq[static_cast<size_t>(ch.back())][j]) {
            auto ext = ch;
            ext.push_back(static_cast<int>(j));
            next.push_back(std::move(ext));
          }
      cur = std::move(next);
    }
  }
  // term membership per cell
  auto in_block = [&](const BlockComplex& cx, size_t term, int cell_idx) {
    return cell_in_block(box, sp.cells[static_cast<size_t>(cell_idx)],
                         cx.terms[term].block);
  };
  struct Key {
    int t;        // chain length - 1
    int chain;    // index within chains[t]
    int u, v;     // M term, N term
    bool operator<(const Key& o) const {
      return std::tie(t, chain, u, v) < std::tie(o.t, o.chain, o.u, o.v);
    }
  };
  std::map<int, std::vector<Key>> basis;
  std::map<Key, std::pair<int, Eigen::Index>> where;
  // chain index lookup per length
  std::vector<std::map<std::vector<int>, int>> chain_idx(chains.size());
  for (size_t t = 0; t < chains.size(); ++t)
    for (size_t i = 0; i < chains[t].size(); ++i) chain_idx[t][chains[t][i]] = static_cast<int>(i);
  for (size_t t = 0; t < chains.size(); ++t)
    for (size_t ci = 0; ci < chains[t].size(); ++ci) {
      int c0 = chains[t][ci].front(), ct = chains[t][ci].back();
      for (size_t u = 0; u < M.terms.size(); ++u) {
        if (!in_block(M, u, c0)) continue;
        for (size_t v = 0; v < N.terms.size(); ++v) {
          if (!in_block(N, v, ct)) continue;
          int deg = N.terms[v].deg - M.terms[u].deg + static_cast<int>(t);
          Key key{static_cast<int>(t), static_cast<int>(ci), static_cast<int>(u),
                  static_cast<int>(v)};
          where[key] = {deg, static_cast<Eigen::Index>(basis[deg].size())};
          basis[deg].push_back(key);
        }
      }
    }
  if (basis.empty()) return {};
  int blo = basis.begin()->first, bhi = basis.rbegin()->first;
  GradedComplex g;
  g.lo = blo;
  g.dims.assign(static_cast<size_t>(bhi - blo + 1), 0);
  for (auto& [d, v] : basis) g.dims[static_cast<size_t>(d - blo)] = static_cast<Eigen::Index>(v.size());
  g.d.resize(static_cast<size_t>(std::max(0, bhi - blo)), SparseMat{});
  for (int d = blo; d < bhi; ++d)
    g.d[static_cast<size_t>(d - blo)].init(g.dims[static_cast<size_t>(d - blo + 1)],
                                           g.dims[static_cast<size_t>(d - blo)]);
  auto add_entry = [&](const Key& from, const Key& to, const Rat& coef) {
    auto itf = where.find(from);
    auto itt = where.find(to);
    if (itf == where.end() || itt == where.end()) return;
    if (itt->second.first != itf->second.first + 1) throw std::logic_error("bar degree slip");
    g.d[static_cast<size_t>(itf->second.first - blo)].add(itt->second.second, itf->second.second,
                                                          coef);
  };
  for (auto& [d, keys] : basis) {
    if (d >= bhi) continue;
    for (const Key& key : keys) {
      const auto& ch = chains[static_cast<size_t>(key.t)][static_cast<size_t>(key.chain)];
      // internal d_N (post-composition), sign +1
      for (const auto& m : N.maps) {
        if (m.from != key.v) continue;
        if (!in_block(N, static_cast<size_t>(m.to), ch.back())) continue;
        add_entry(key, Key{key.t, key.chain, key.u, m.to}, m.coef);
      }
      // hom-complex convention: D(phi) = d_N phi - (-1)^n phi D_B, with
      // D_B = d_bar + (-1)^t B(d_M) on the bar resolution of M
      int n = d;
      Rat pre = (n % 2 == 0) ? Rat(-1) : Rat(1);  // -(-1)^n
      int t = key.t;
      Rat twist = (t % 2 == 0) ? Rat(1) : Rat(-1);  // (-1)^t
      for (const auto& m : M.maps) {
        if (m.to != key.u) continue;
        if (!in_block(M, static_cast<size_t>(m.from), ch.front())) continue;
        add_entry(key, Key{key.t, key.chain, m.from, key.v}, pre * twist * m.coef);
      }
      // bar faces, handled from the coface side: extend ch by one element
      for (size_t e = 0; e < nc; ++e)
        for (size_t pos = 0; pos <= ch.size(); ++pos) {
          bool ok = true;
          if (pos > 0)
            ok = ok && sp.leq[static_cast<size_t>(ch[pos - 1])][e] &&
                 static_cast<int>(e) != ch[pos - 1];
          if (pos < ch.size())
            ok = ok && sp.leq[e][static_cast<size_t>(ch[pos])] && static_cast<int>(e) != ch[pos];
          if (!ok) continue;
          auto ext = ch;
          ext.insert(ext.begin() + static_cast<long>(pos), static_cast<int>(e));
          auto it = chain_idx[static_cast<size_t>(t + 1)].find(ext);
          if (it == chain_idx[static_cast<size_t>(t + 1)].end()) continue;
          // face j = pos of the extended chain recovers ch
          Rat sgn = pre * ((pos % 2 == 0) ? Rat(1) : Rat(-1));
          int u2 = key.u, v2 = key.v;
          if (pos == 0) {
            // d_0: needs M-generization from new c_0 = e to old c_0; same term
            if (!in_block(M, static_cast<size_t>(key.u), static_cast<int>(e))) continue;
          } else if (pos == ch.size()) {
            // d_last: needs N-generization from old c_t to new top e; same term
            if (!in_block(N, static_cast<size_t>(key.v), static_cast<int>(e))) continue;
          }
          add_entry(key, Key{t + 1, it->second, u2, v2}, sgn);
        }
    }
  }
  if (!g.check_d2()) throw std::logic_error("bar complex differential broken");
  return cohomology_dims(std::move(g));
}

}  // namespace

// --- resolution engine ------------------------------------------------------

namespace {

// Level-1 kernel generators per interval cell: the difference of the two
// endpoint projectives (Both), or a single endpoint projective when the
// interval lies outside the set next to a closed endpoint.
enum class KerKind { Both, Left, Right };

struct AxisRes {
  std::vector<int> r0;  // generator cells (level 0)
  std::vector<std::pair<int, KerKind>> r1;
};

AxisRes axis_resolution(const GridBox& box, const AxisIval& iv) {
  AxisRes res;
  std::vector<bool> in(static_cast<size_t>(box.axis_cells()), false);
  for (int i = 0; i < box.axis_cells(); ++i) in[static_cast<size_t>(i)] = axis_cell_in(box, i, iv);
  for (int i = 0; i < box.axis_cells(); ++i) {
    if (i % 2 == 1) {
      if (in[static_cast<size_t>(i)]) res.r0.push_back(i);  // points are minimal
      continue;
    }
    bool left = i - 1 >= 0 && in[static_cast<size_t>(i - 1)];
    bool right = i + 1 < box.axis_cells() && in[static_cast<size_t>(i + 1)];
    if (in[static_cast<size_t>(i)]) {
      if (!left && !right) res.r0.push_back(i);
      if (left && right) res.r1.push_back({i, KerKind::Both});
    } else {
      // kernel of the augmentation at an interval outside the set
      if (left) res.r1.push_back({i, KerKind::Left});
      if (right) res.r1.push_back({i, KerKind::Right});
    }
  }
  return res;
}

struct AxisLiftEntry {
  int to;    // target summand position (within r0 or r1 of the target res)
  Rat coef;
};

struct AxisLift {
  // lift of the canonical (coefficient 1) map from Z to Z'
  std::vector<std::vector<AxisLiftEntry>> l0;  // per source r0 position
  std::vector<std::vector<AxisLiftEntry>> l1;  // per source r1 position
};

AxisLift axis_lift(const GridBox& box, const AxisIval& z, const AxisRes& rz, const AxisIval& z2,
                   const AxisRes& rz2) {
  AxisLift lift;
  lift.l0.resize(rz.r0.size());
  lift.l1.resize(rz.r1.size());
  auto r0pos = [&](int cell) {
    for (size_t i = 0; i < rz2.r0.size(); ++i)
      if (rz2.r0[i] == cell) return static_cast<int>(i);
    return -1;
  };
  auto target = [&](int c) {
    return Rat(axis_cell_in(box, c, z) && axis_cell_in(box, c, z2) ? 1 : 0);
  };
  std::vector<Rat> x0(rz.r0.size(), Rat(0));
  for (size_t s = 0; s < rz.r0.size(); ++s) {
    int g = rz.r0[s];
    if (g % 2 == 1) {
      // point generator: only candidate target is the same point
      int tp = r0pos(g);
      Rat want = target(g);
      if (want != Rat(0) && tp < 0)
        throw std::logic_error("axis lift failed: missing point generator");
      // consistency on the adjacent intervals inside star(g)
      for (int up : {g - 1, g + 1}) {
        if (up < 0 || up >= box.axis_cells()) continue;
        if (!axis_cell_in(box, up, z)) continue;
        Rat have = (tp >= 0 && axis_cell_in(box, up, z2)) ? want : Rat(0);
        if (have != target(up)) throw std::logic_error("axis lift failed: no strict lift");
      }
      if (want != Rat(0)) lift.l0[s].push_back({tp, want});
      x0[s] = want;
    } else {
      // interval generator: candidates below it are itself and its endpoints
      Rat want = target(g);
      if (want == Rat(0)) continue;
      int tp = r0pos(g);
      if (tp >= 0) {
        lift.l0[s].push_back({tp, want});
        continue;
      }
      int lp = r0pos(g - 1), rp = (g + 1 < box.axis_cells()) ? r0pos(g + 1) : -1;
      if (lp >= 0) lift.l0[s].push_back({lp, want});
      else if (rp >= 0) lift.l0[s].push_back({rp, want});
      else throw std::logic_error("axis lift failed: interval generator uncovered");
    }
  }
  // level one: solve d' l1 = l0 d at each interval, coefficients on the
  // endpoint projectives
  auto x_at = [&](int pt) {
    for (size_t t = 0; t < rz.r0.size(); ++t)
      if (rz.r0[t] == pt) return x0[t];
    return Rat(0);
  };
  for (size_t s = 0; s < rz.r1.size(); ++s) {
    auto [i, kind] = rz.r1[s];
    Rat want_left(0), want_right(0);
    if (kind == KerKind::Both) {
      want_left = x_at(i - 1);
      want_right = -x_at(i + 1);
    } else if (kind == KerKind::Left) {
      want_left = x_at(i - 1);
    } else {
      want_right = x_at(i + 1);
    }
    // targets at the same interval cell; solve the 2 x m endpoint system
    std::vector<int> ids;
    for (size_t t2 = 0; t2 < rz2.r1.size(); ++t2)
      if (rz2.r1[t2].first == i) ids.push_back(static_cast<int>(t2));
    RatMat sys(2, static_cast<Eigen::Index>(ids.size()));
    for (size_t t2 = 0; t2 < ids.size(); ++t2) {
      KerKind k2 = rz2.r1[static_cast<size_t>(ids[t2])].second;
      sys(0, static_cast<Eigen::Index>(t2)) = (k2 == KerKind::Right) ? Rat(0) : Rat(1);
      sys(1, static_cast<Eigen::Index>(t2)) =
          (k2 == KerKind::Both) ? Rat(-1) : (k2 == KerKind::Right ? Rat(1) : Rat(0));
    }
    RatVec rhs(2), y;
    rhs(0) = want_left;
    rhs(1) = want_right;
    if (!solve_exact(sys, rhs, y))
      throw std::logic_error("axis lift failed: level-1 system unsolvable");
    for (size_t t2 = 0; t2 < ids.size(); ++t2)
      if (y(static_cast<Eigen::Index>(t2)) != Rat(0))
        lift.l1[s].push_back({ids[t2], y(static_cast<Eigen::Index>(t2))});
  }
  return lift;
}

struct Summand {
  int term;
  std::vector<int> axis_pos;    // index into r0 (level 0) or r1 (level 1)
  std::vector<char> level;      // 0 or 1 per axis
  Cell cell;
  int pdeg;                     // term degree minus number of level-1 axes
};

}  // namespace

GradedDims rhom(const GridBox& box, const BlockComplex& M, const BlockComplex& N,
                HomEngine engine) {
  validate_in_box(box, M);
  validate_in_box(box, N);
  if (engine == HomEngine::Bar) {
    return rhom_bar_on(box, full_poset(box), M, N);
  }
  // resolve each M block by products of per-axis resolutions
  std::vector<std::vector<AxisRes>> res(M.terms.size());
  for (size_t u = 0; u < M.terms.size(); ++u) {
    res[u].reserve(static_cast<size_t>(box.N));
    for (int i = 0; i < box.N; ++i)
      res[u].push_back(axis_resolution(box, M.terms[u].block.axes[static_cast<size_t>(i)]));
  }
  std::vector<Summand> summands;
  std::map<std::tuple<int, std::vector<int>, std::vector<char>>, Eigen::Index> sum_idx;
  for (size_t u = 0; u < M.terms.size(); ++u) {
    std::vector<int> pos(static_cast<size_t>(box.N), 0);
    std::vector<char> lvl(static_cast<size_t>(box.N), 0);
    std::function<void(int)> rec = [&](int axis) {
      if (axis == box.N) {
        Summand s;
        s.term = static_cast<int>(u);
        s.axis_pos = pos;
        s.level = lvl;
        s.cell.resize(static_cast<size_t>(box.N));
        int l1 = 0;
        for (int i = 0; i < box.N; ++i) {
          const AxisRes& ar = res[u][static_cast<size_t>(i)];
          s.cell[static_cast<size_t>(i)] =
              lvl[static_cast<size_t>(i)] == 0
                  ? ar.r0[static_cast<size_t>(pos[static_cast<size_t>(i)])]
                  : ar.r1[static_cast<size_t>(pos[static_cast<size_t>(i)])].first;
          l1 += lvl[static_cast<size_t>(i)];
        }
        s.pdeg = M.terms[u].deg - l1;
        sum_idx[{s.term, s.axis_pos, s.level}] = static_cast<Eigen::Index>(summands.size());
        summands.push_back(std::move(s));
        return;
      }
      const AxisRes& ar = res[u][static_cast<size_t>(axis)];
      for (size_t p = 0; p < ar.r0.size(); ++p) {
        pos[static_cast<size_t>(axis)] = static_cast<int>(p);
        lvl[static_cast<size_t>(axis)] = 0;
        rec(axis + 1);
      }
      for (size_t p = 0; p < ar.r1.size(); ++p) {
        pos[static_cast<size_t>(axis)] = static_cast<int>(p);
        lvl[static_cast<size_t>(axis)] = 1;
        rec(axis + 1);
      }
    };
    rec(0);
  }
  // D_P: resolution differential (sign (-1)^{term deg} times Koszul position
  // sign) plus lifted M maps
  SparseMat DP;
  DP.init(static_cast<Eigen::Index>(summands.size()), static_cast<Eigen::Index>(summands.size()));
  for (size_t si = 0; si < summands.size(); ++si) {
    const Summand& s = summands[si];
    int tdeg = M.terms[static_cast<size_t>(s.term)].deg;
    int before = 0;
    for (int axis = 0; axis < box.N; ++axis) {
      if (s.level[static_cast<size_t>(axis)] == 0) continue;
      const AxisRes& ar = res[static_cast<size_t>(s.term)][static_cast<size_t>(axis)];
      auto [icell, kind] =
          ar.r1[static_cast<size_t>(s.axis_pos[static_cast<size_t>(axis)])];
      for (int side : {0, 1}) {
        if (kind == KerKind::Left && side == 1) continue;
        if (kind == KerKind::Right && side == 0) continue;
        int ptcell = side == 0 ? icell - 1 : icell + 1;
        int p0 = -1;
        for (size_t t = 0; t < ar.r0.size(); ++t)
          if (ar.r0[t] == ptcell) p0 = static_cast<int>(t);
        if (p0 < 0) throw std::logic_error("resolution endpoint missing");
        auto pos2 = s.axis_pos;
        auto lvl2 = s.level;
        pos2[static_cast<size_t>(axis)] = p0;
        lvl2[static_cast<size_t>(axis)] = 0;
        auto it = sum_idx.find({s.term, pos2, lvl2});
        if (it == sum_idx.end()) throw std::logic_error("resolution summand missing");
        Rat sgn = (before % 2 == 0) ? Rat(1) : Rat(-1);
        if (side == 1 && kind == KerKind::Both) sgn = -sgn;
        if (tdeg % 2 != 0) sgn = -sgn;
        DP.add(it->second, static_cast<Eigen::Index>(si), sgn);
      }
      ++before;
    }
  }
  // lifted maps
  std::map<std::pair<int, int>, std::vector<AxisLift>> lifts;
  for (const auto& m : M.maps) {
    auto key = std::make_pair(m.from, m.to);
    if (!lifts.count(key)) {
      std::vector<AxisLift> al;
      for (int i = 0; i < box.N; ++i)
        al.push_back(axis_lift(box, M.terms[static_cast<size_t>(m.from)].block.axes[static_cast<size_t>(i)],
                               res[static_cast<size_t>(m.from)][static_cast<size_t>(i)],
                               M.terms[static_cast<size_t>(m.to)].block.axes[static_cast<size_t>(i)],
                               res[static_cast<size_t>(m.to)][static_cast<size_t>(i)]));
      lifts[key] = std::move(al);
    }
  }
  for (size_t si = 0; si < summands.size(); ++si) {
    const Summand& s = summands[si];
    for (const auto& m : M.maps) {
      if (m.from != s.term) continue;
      const auto& al = lifts[{m.from, m.to}];
      // product of per-axis lifts, level-preserving
      std::vector<std::pair<std::vector<int>, Rat>> images{{std::vector<int>{}, m.coef}};
      bool dead = false;
      for (int axis = 0; axis < box.N && !dead; ++axis) {
        const auto& entries = s.level[static_cast<size_t>(axis)] == 0
                                  ? al[static_cast<size_t>(axis)].l0[static_cast<size_t>(
                                        s.axis_pos[static_cast<size_t>(axis)])]
                                  : al[static_cast<size_t>(axis)].l1[static_cast<size_t>(
                                        s.axis_pos[static_cast<size_t>(axis)])];
        if (entries.empty()) { dead = true; break; }
        std::vector<std::pair<std::vector<int>, Rat>> next;
        for (const auto& [prefix, coef] : images)
          for (const auto& e : entries) {
            auto p2 = prefix;
            p2.push_back(e.to);
            next.push_back({p2, coef * e.coef});
          }
        images = std::move(next);
      }
      if (dead) continue;
      for (const auto& [posv, coef] : images) {
        auto it = sum_idx.find({m.to, posv, std::vector<char>(s.level)});
        if (it == sum_idx.end()) throw std::logic_error("lift target summand missing");
        DP.add(it->second, static_cast<Eigen::Index>(si), coef);
      }
    }
  }
  // Hom(P, N): basis (summand, N term containing the summand cell)
  struct HKey {
    int s, v;
    bool operator<(const HKey& o) const { return std::tie(s, v) < std::tie(o.s, o.v); }
  };
  std::map<int, std::vector<HKey>> basis;
  std::map<HKey, std::pair<int, Eigen::Index>> where;
  for (size_t si = 0; si < summands.size(); ++si)
    for (size_t v = 0; v < N.terms.size(); ++v) {
      if (!cell_in_block(box, summands[si].cell, N.terms[v].block)) continue;
      int deg = N.terms[v].deg - summands[si].pdeg;
      HKey key{static_cast<int>(si), static_cast<int>(v)};
      where[key] = {deg, static_cast<Eigen::Index>(basis[deg].size())};
      basis[deg].push_back(key);
    }
  if (basis.empty()) return {};
  int blo = basis.begin()->first, bhi = basis.rbegin()->first;
  GradedComplex g;
  g.lo = blo;
  g.dims.assign(static_cast<size_t>(bhi - blo + 1), 0);
  for (auto& [d, v] : basis) g.dims[static_cast<size_t>(d - blo)] = static_cast<Eigen::Index>(v.size());
  g.d.resize(static_cast<size_t>(std::max(0, bhi - blo)), SparseMat{});
  for (int d = blo; d < bhi; ++d)
    g.d[static_cast<size_t>(d - blo)].init(g.dims[static_cast<size_t>(d - blo + 1)],
                                           g.dims[static_cast<size_t>(d - blo)]);
  for (auto& [d, keys] : basis) {
    if (d >= bhi) continue;
    auto& mtx = g.d[static_cast<size_t>(d - blo)];
    for (size_t bi = 0; bi < keys.size(); ++bi) {
      HKey key = keys[bi];
      const Summand& s = summands[static_cast<size_t>(key.s)];
      // post-compose with d_N
      for (const auto& m : N.maps) {
        if (m.from != key.v) continue;
        if (!cell_in_block(box, s.cell, N.terms[static_cast<size_t>(m.to)].block)) continue;
        auto it = where.find(HKey{key.s, m.to});
        if (it == where.end()) continue;
        mtx.add(it->second.second, static_cast<Eigen::Index>(bi), m.coef);
      }
      // pre-compose with D_P: entries into s
      Rat sgn = (d % 2 == 0) ? Rat(-1) : Rat(1);
      for (Eigen::Index c = 0; c < DP.cols; ++c) {
        // find DP[s][c]
        const auto& colv = DP.col[static_cast<size_t>(c)];
        auto it = std::lower_bound(colv.begin(), colv.end(), static_cast<Eigen::Index>(key.s),
                                   [](const auto& p, Eigen::Index x) { return p.first < x; });
        if (it == colv.end() || it->first != static_cast<Eigen::Index>(key.s)) continue;
        const Summand& s2 = summands[static_cast<size_t>(c)];
        if (!cell_in_block(box, s2.cell, N.terms[static_cast<size_t>(key.v)].block)) continue;
        auto jt = where.find(HKey{static_cast<int>(c), key.v});
        if (jt == where.end()) continue;
        mtx.add(jt->second.second, static_cast<Eigen::Index>(bi), sgn * it->second);
      }
    }
  }
  if (!g.check_d2()) throw std::logic_error("resolution hom differential broken");
  return cohomology_dims(std::move(g));
}

GradedDims hom_sheaf_stalk(const GridBox& box, const BlockComplex& m, const BlockComplex& n,
                           const Cell& cell) {
  validate_in_box(box, m);
  validate_in_box(box, n);
  return rhom_bar_on(box, star_poset(box, cell), m, n);
}

std::optional<Cell> support_mismatch(const GridBox& box, const BlockComplex& cx,
                                     const Block& expected) {
  validate_in_box(box, cx);
  std::optional<Cell> bad;
  for_each_cell(box, [&](const Cell& cell) {
    if (bad) return;
    bool nz = !stalk(box, cx, cell).empty();
    bool exp = cell_in_block(box, cell, expected);
    if (nz != exp) bad = cell;
  });
  return bad;
}

std::vector<Cell> support_cells(const GridBox& box, const BlockComplex& cx) {
  std::vector<Cell> out;
  for_each_cell(box, [&](const Cell& cell) {
    if (!stalk(box, cx, cell).empty()) out.push_back(cell);
  });
  return out;
}

BlockComplex realize_probe(const IndexFamily& fam, Mask i) {
  BlockComplex cx;
  cx.N = fam.N;
  if (!fam.dominates(i)) return cx;
  std::vector<Mask> up;
  for (Mask m : fam.members)
    if ((m & i) == i) up.push_back(m);
  if (fam.has(i)) {
    cx.terms.push_back({0, Block::wedge(i, fam.N), "P" + std::to_string(i)});
    return cx;
  }
  std::vector<std::vector<std::vector<Mask>>> chains;
  {
    std::vector<std::vector<Mask>> cur;
    for (Mask m : up) cur.push_back({m});
    while (!cur.empty()) {
      chains.push_back(cur);
      std::vector<std::vector<Mask>> next;
      for (const auto& ch : cur)
        for (Mask m : up)
          if (m != ch.back() && (ch.back() & m) == ch.back()) {
            auto ext = ch;
            ext.push_back(m);
            next.push_back(std::move(ext));
          }
      cur = std::move(next);
    }
  }
  std::map<std::vector<Mask>, int> index;
  for (size_t d = 0; d < chains.size(); ++d)
    for (const auto& ch : chains[d]) {
      index[ch] = static_cast<int>(cx.terms.size());
      cx.terms.push_back({static_cast<int>(d), Block::wedge(ch.back(), fam.N),
                          "P" + std::to_string(ch.back())});
    }
  for (size_t d = 1; d < chains.size(); ++d)
    for (const auto& ch : chains[d]) {
      int to = index[ch];
      for (size_t j = 0; j < ch.size(); ++j) {
        std::vector<Mask> face;
        for (size_t t = 0; t < ch.size(); ++t)
          if (t != j) face.push_back(ch[t]);
        auto it = index.find(face);
        if (it == index.end()) continue;
        cx.maps.push_back({it->second, to, (j % 2 == 0) ? Rat(1) : Rat(-1)});
      }
    }
  return cx;
}

}  // namespace mw
