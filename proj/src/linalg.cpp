#include "mw/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mw {

Eigen::Index rank_exact(RatMat m) {
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < m.rows(); ++i)
      if (m(i, c) != Rat(0)) { piv = i; break; }
    if (piv < 0) continue;
    m.row(piv).swap(m.row(r));
    for (Eigen::Index i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == Rat(0)) continue;
      Rat f = m(i, c) / m(r, c);
      for (Eigen::Index j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

RatMat kernel_rational(const RatMat& m) {
  RatMat a = m;
  Eigen::Index rows = a.rows(), cols = a.cols();
  std::vector<Eigen::Index> pivot_col;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (a(i, c) != Rat(0)) { piv = i; break; }
    if (piv < 0) continue;
    a.row(piv).swap(a.row(r));
    Rat p = a(r, c);
    for (Eigen::Index j = 0; j < cols; ++j) a(r, j) /= p;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == Rat(0)) continue;
      Rat f = a(i, c);
      for (Eigen::Index j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<Eigen::Index> free_cols;
  {
    size_t pi = 0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (pi < pivot_col.size() && pivot_col[pi] == c) { ++pi; continue; }
      free_cols.push_back(c);
    }
  }
  RatMat k(cols, static_cast<Eigen::Index>(free_cols.size()));
  k.setConstant(Rat(0));
  for (size_t f = 0; f < free_cols.size(); ++f) {
    Eigen::Index fc = free_cols[f];
    k(fc, static_cast<Eigen::Index>(f)) = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i)
      k(pivot_col[i], static_cast<Eigen::Index>(f)) = -a(static_cast<Eigen::Index>(i), fc);
  }
  return k;
}

bool solve_exact(const RatMat& m, const RatVec& b, RatVec& x) {
  Eigen::Index rows = m.rows(), cols = m.cols();
  RatMat a(rows, cols + 1);
  a.leftCols(cols) = m;
  a.col(cols) = b;
  Eigen::Index r = 0;
  std::vector<Eigen::Index> pivot_col;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (a(i, c) != Rat(0)) { piv = i; break; }
    if (piv < 0) continue;
    a.row(piv).swap(a.row(r));
    Rat p = a(r, c);
    for (Eigen::Index j = 0; j <= cols; ++j) a(r, j) /= p;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == Rat(0)) continue;
      Rat f = a(i, c);
      for (Eigen::Index j = 0; j <= cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (Eigen::Index i = r; i < rows; ++i)
    if (a(i, cols) != Rat(0)) return false;
  x = RatVec(cols);
  x.setConstant(Rat(0));
  for (size_t i = 0; i < pivot_col.size(); ++i)
    x(pivot_col[i]) = a(static_cast<Eigen::Index>(i), cols);
  return true;
}

RatVec primitive_integer(const RatVec& v) {
  BigInt lcm = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    lcm = boost::multiprecision::lcm(lcm, v(i).den());
  BigInt g = 0;
  std::vector<BigInt> ints(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    ints[static_cast<size_t>(i)] = v(i).num() * (lcm / v(i).den());
    g = boost::multiprecision::gcd(g, ints[static_cast<size_t>(i)]);
  }
  RatVec out(v.size());
  if (g == 0) {
    out.setConstant(Rat(0));
    return out;
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rat(BigInt(ints[static_cast<size_t>(i)] / g));
  return out;
}

namespace {

// Smith-style reduction tracking right multiplier V; returns rank.
// a is k x n with BigInt entries.
Eigen::Index smith_reduce(std::vector<std::vector<BigInt>>& a,
                          std::vector<std::vector<BigInt>>& v,
                          std::vector<BigInt>* diag) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  size_t t = 0;
  auto col_sub = [&](size_t dst, size_t src, const BigInt& f) {
    for (size_t i = 0; i < rows; ++i) a[i][dst] -= f * a[i][src];
    for (size_t i = 0; i < cols; ++i) v[i][dst] -= f * v[i][src];
  };
  auto col_swap = [&](size_t x, size_t y) {
    for (size_t i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
    for (size_t i = 0; i < cols; ++i) std::swap(v[i][x], v[i][y]);
  };
  auto row_sub = [&](size_t dst, size_t src, const BigInt& f) {
    for (size_t j = 0; j < cols; ++j) a[dst][j] -= f * a[src][j];
  };
  while (t < rows && t < cols) {
    // pivot: smallest nonzero |entry| in the remaining block
    size_t pi = rows, pj = cols;
    BigInt best = 0;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        BigInt m = abs(a[i][j]);
        if (pi == rows || m < best) { best = m; pi = i; pj = j; }
      }
    if (pi == rows) break;
    std::swap(a[pi], a[t]);
    col_swap(pj, t);
    bool again = true;
    while (again) {
      again = false;
      for (size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        row_sub(i, t, q);
        if (a[i][t] != 0) {
          std::swap(a[i], a[t]);
          again = true;
        }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        col_sub(j, t, q);
        if (a[t][j] != 0) {
          col_swap(j, t);
          again = true;
        }
      }
    }
    if (diag) diag->push_back(abs(a[t][t]));
    ++t;
  }
  return static_cast<Eigen::Index>(t);
}

std::vector<std::vector<BigInt>> to_bigint(const RatMat& m) {
  std::vector<std::vector<BigInt>> a(static_cast<size_t>(m.rows()),
                                     std::vector<BigInt>(static_cast<size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_integer())
        throw std::invalid_argument("integer matrix expected");
      a[static_cast<size_t>(i)][static_cast<size_t>(j)] = m(i, j).num();
    }
  return a;
}

}  // namespace

RatMat kernel_lattice(const RatMat& m, bool require_full_rank) {
  auto a = to_bigint(m);
  const size_t n = static_cast<size_t>(m.cols());
  std::vector<std::vector<BigInt>> v(n, std::vector<BigInt>(n, 0));
  for (size_t i = 0; i < n; ++i) v[i][i] = 1;
  Eigen::Index r = smith_reduce(a, v, nullptr);
  if (require_full_rank && r < m.rows())
    throw std::invalid_argument("weights do not span");
  RatMat k(m.cols(), m.cols() - r);
  for (Eigen::Index i = 0; i < m.cols(); ++i)
    for (Eigen::Index j = r; j < m.cols(); ++j)
      k(i, j - r) = Rat(v[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  return k;
}

std::vector<BigInt> smith_diagonal(const RatMat& m) {
  auto a = to_bigint(m);
  const size_t n = static_cast<size_t>(m.cols());
  std::vector<std::vector<BigInt>> v(n, std::vector<BigInt>(n, 0));
  for (size_t i = 0; i < n; ++i) v[i][i] = 1;
  std::vector<BigInt> diag;
  smith_reduce(a, v, &diag);
  return diag;
}

namespace {

// Same reduction with the left multiplier tracked as well.
Eigen::Index smith_reduce_full(std::vector<std::vector<BigInt>>& a,
                               std::vector<std::vector<BigInt>>& u,
                               std::vector<std::vector<BigInt>>& v) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  size_t t = 0;
  auto col_sub = [&](size_t dst, size_t src, const BigInt& f) {
    for (size_t i = 0; i < rows; ++i) a[i][dst] -= f * a[i][src];
    for (size_t i = 0; i < cols; ++i) v[i][dst] -= f * v[i][src];
  };
  auto col_swap = [&](size_t x, size_t y) {
    for (size_t i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
    for (size_t i = 0; i < cols; ++i) std::swap(v[i][x], v[i][y]);
  };
  auto row_sub = [&](size_t dst, size_t src, const BigInt& f) {
    for (size_t j = 0; j < cols; ++j) a[dst][j] -= f * a[src][j];
    for (size_t j = 0; j < rows; ++j) u[dst][j] -= f * u[src][j];
  };
  auto row_swap = [&](size_t x, size_t y) {
    std::swap(a[x], a[y]);
    std::swap(u[x], u[y]);
  };
  while (t < rows && t < cols) {
    size_t pi = rows, pj = cols;
    BigInt best = 0;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        BigInt m2 = abs(a[i][j]);
        if (pi == rows || m2 < best) { best = m2; pi = i; pj = j; }
      }
    if (pi == rows) break;
    row_swap(pi, t);
    col_swap(pj, t);
    bool again = true;
    while (again) {
      again = false;
      for (size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        row_sub(i, t, q);
        if (a[i][t] != 0) { row_swap(i, t); again = true; }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        col_sub(j, t, q);
        if (a[t][j] != 0) { col_swap(j, t); again = true; }
      }
    }
    ++t;
  }
  return static_cast<Eigen::Index>(t);
}

}  // namespace

SmithDecomposition smith_decompose(const RatMat& m) {
  auto a = to_bigint(m);
  const size_t rows = static_cast<size_t>(m.rows());
  const size_t cols = static_cast<size_t>(m.cols());
  std::vector<std::vector<BigInt>> u(rows, std::vector<BigInt>(rows, 0));
  std::vector<std::vector<BigInt>> v(cols, std::vector<BigInt>(cols, 0));
  for (size_t i = 0; i < rows; ++i) u[i][i] = 1;
  for (size_t i = 0; i < cols; ++i) v[i][i] = 1;
  SmithDecomposition out;
  out.rank = smith_reduce_full(a, u, v);
  out.u = RatMat(m.rows(), m.rows());
  out.v = RatMat(m.cols(), m.cols());
  out.s = RatMat(m.rows(), m.cols());
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < rows; ++j) out.u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Rat(u[i][j]);
  for (size_t i = 0; i < cols; ++i)
    for (size_t j = 0; j < cols; ++j) out.v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Rat(v[i][j]);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) out.s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Rat(a[i][j]);
  return out;
}

std::optional<RatVec> solve_integer(const RatMat& m, const RatVec& b) {
  SmithDecomposition sd = smith_decompose(m);
  RatVec ub = sd.u * b;
  RatVec y(m.cols());
  y.setConstant(Rat(0));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Rat d = (i < m.cols()) ? sd.s(i, i) : Rat(0);
    if (d == Rat(0)) {
      if (ub(i) != Rat(0)) return std::nullopt;
      continue;
    }
    Rat q = ub(i) / d;
    if (!q.is_integer()) return std::nullopt;
    y(i) = q;
  }
  return RatVec(sd.v * y);
}

RatMat inverse_exact(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  Eigen::Index n = m.rows();
  RatMat out(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    RatVec e(n);
    e.setConstant(Rat(0));
    e(c) = 1;
    RatVec x;
    if (!solve_exact(m, e, x)) throw std::invalid_argument("matrix not invertible");
    out.col(c) = x;
  }
  return out;
}

void SparseMat::add(Eigen::Index r, Eigen::Index c, const Rat& v) {
  if (v == Rat(0)) return;
  auto& vec = col[static_cast<size_t>(c)];
  auto it = std::lower_bound(vec.begin(), vec.end(), r,
                             [](const auto& p, Eigen::Index x) { return p.first < x; });
  if (it != vec.end() && it->first == r) {
    it->second += v;
    if (it->second == Rat(0)) vec.erase(it);
  } else {
    vec.insert(it, {r, v});
  }
}

RatMat SparseMat::dense() const {
  RatMat m(rows, cols);
  m.setConstant(Rat(0));
  for (Eigen::Index c = 0; c < cols; ++c)
    for (const auto& [r, v] : col[static_cast<size_t>(c)]) m(r, c) = v;
  return m;
}

bool GradedComplex::check_d2() const {
  for (size_t k = 0; k + 1 < d.size(); ++k) {
    const SparseMat& a = d[k];
    const SparseMat& b = d[k + 1];
    for (Eigen::Index c = 0; c < a.cols; ++c) {
      std::map<Eigen::Index, Rat> acc;
      for (const auto& [mid, va] : a.col[static_cast<size_t>(c)])
        for (const auto& [r, vb] : b.col[static_cast<size_t>(mid)]) acc[r] += vb * va;
      for (const auto& [r, v] : acc)
        if (v != Rat(0)) return false;
    }
  }
  return true;
}

Eigen::Index sparse_rank(SparseMat m) {
  // row-major working copy
  std::vector<std::map<Eigen::Index, Rat>> row(static_cast<size_t>(m.rows));
  for (Eigen::Index c = 0; c < m.cols; ++c)
    for (const auto& [r, v] : m.col[static_cast<size_t>(c)]) row[static_cast<size_t>(r)][c] = v;
  Eigen::Index rank = 0;
  std::vector<bool> used(static_cast<size_t>(m.rows), false);
  for (Eigen::Index c = 0; c < m.cols; ++c) {
    Eigen::Index piv = -1;
    size_t best_nnz = 0;
    for (Eigen::Index r = 0; r < m.rows; ++r) {
      if (used[static_cast<size_t>(r)]) continue;
      auto it = row[static_cast<size_t>(r)].find(c);
      if (it == row[static_cast<size_t>(r)].end() || it->second == Rat(0)) continue;
      if (piv < 0 || row[static_cast<size_t>(r)].size() < best_nnz) {
        piv = r;
        best_nnz = row[static_cast<size_t>(r)].size();
      }
    }
    if (piv < 0) continue;
    used[static_cast<size_t>(piv)] = true;
    ++rank;
    Rat pv = row[static_cast<size_t>(piv)][c];
    for (Eigen::Index r = 0; r < m.rows; ++r) {
      if (used[static_cast<size_t>(r)] || r == piv) continue;
      auto it = row[static_cast<size_t>(r)].find(c);
      if (it == row[static_cast<size_t>(r)].end()) continue;
      Rat f = it->second / pv;
      for (const auto& [cc, vv] : row[static_cast<size_t>(piv)]) {
        auto& dst = row[static_cast<size_t>(r)];
        auto jt = dst.find(cc);
        if (jt == dst.end()) {
          Rat nv = -f * vv;
          if (nv != Rat(0)) dst[cc] = nv;
        } else {
          jt->second -= f * vv;
          if (jt->second == Rat(0)) dst.erase(jt);
        }
      }
    }
  }
  return rank;
}

namespace {

// One degree pair of the reduction: cancel unit entries of d : C^k -> C^{k+1}.
// Works on row-major maps; alive flags mark surviving basis elements.
struct WorkMat {
  std::vector<std::map<Eigen::Index, Rat>> by_col;  // col -> (row -> val)
  std::vector<std::map<Eigen::Index, Rat>> by_row;  // row -> (col -> val)

  void set(Eigen::Index r, Eigen::Index c, const Rat& v) {
    if (v == Rat(0)) {
      by_col[static_cast<size_t>(c)].erase(r);
      by_row[static_cast<size_t>(r)].erase(c);
    } else {
      by_col[static_cast<size_t>(c)][r] = v;
      by_row[static_cast<size_t>(r)][c] = v;
    }
  }
  Rat get(Eigen::Index r, Eigen::Index c) const {
    auto it = by_col[static_cast<size_t>(c)].find(r);
    return it == by_col[static_cast<size_t>(c)].end() ? Rat(0) : it->second;
  }
};

}  // namespace

std::map<int, Eigen::Index> cohomology_dims(GradedComplex cx) {
  const int D = static_cast<int>(cx.dims.size());
  // normalize differential list length to D-1
  while (static_cast<int>(cx.d.size()) < D - 1) {
    SparseMat z;
    z.init(cx.dims[cx.d.size() + 1], cx.dims[cx.d.size()]);
    cx.d.push_back(z);
  }
  std::vector<WorkMat> W(static_cast<size_t>(std::max(0, D - 1)));
  std::vector<std::vector<bool>> alive(static_cast<size_t>(D));
  for (int k = 0; k < D; ++k)
    alive[static_cast<size_t>(k)].assign(static_cast<size_t>(cx.dims[static_cast<size_t>(k)]), true);
  for (int k = 0; k < D - 1; ++k) {
    auto& w = W[static_cast<size_t>(k)];
    w.by_col.assign(static_cast<size_t>(cx.dims[static_cast<size_t>(k)]), {});
    w.by_row.assign(static_cast<size_t>(cx.dims[static_cast<size_t>(k + 1)]), {});
    const SparseMat& m = cx.d[static_cast<size_t>(k)];
    for (Eigen::Index c = 0; c < m.cols; ++c)
      for (const auto& [r, v] : m.col[static_cast<size_t>(c)]) w.set(r, c, v);
  }

  // cancel +-1 pivots, preferring low fill
  bool progress = true;
  while (progress) {
    progress = false;
    for (int k = 0; k < D - 1; ++k) {
      auto& w = W[static_cast<size_t>(k)];
      // find a unit entry
      Eigen::Index bx = -1, by = -1;
      size_t best = SIZE_MAX;
      for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(w.by_col.size()); ++c) {
        if (!alive[static_cast<size_t>(k)][static_cast<size_t>(c)]) continue;
        for (const auto& [r, v] : w.by_col[static_cast<size_t>(c)]) {
          if (v != Rat(1) && v != Rat(-1)) continue;
          size_t fill = (w.by_col[static_cast<size_t>(c)].size() - 1) *
                        (w.by_row[static_cast<size_t>(r)].size() - 1);
          if (fill < best) { best = fill; bx = c; by = r; }
          if (best == 0) break;
        }
        if (best == 0) break;
      }
      if (bx < 0) continue;
      progress = true;
      Rat a = w.get(by, bx);
      // d'_k(u) = d(u) - <y,du>/a * d(x) for u != x
      auto dx = w.by_col[static_cast<size_t>(bx)];  // copy
      auto yrow = w.by_row[static_cast<size_t>(by)];  // copy
      for (const auto& [u, cu] : yrow) {
        if (u == bx) continue;
        Rat f = cu / a;
        for (const auto& [r, v] : dx) {
          if (r == by) continue;
          w.set(r, u, w.get(r, u) - f * v);
        }
      }
      // clear row by and column bx
      for (const auto& [u, cu] : yrow) w.set(by, u, Rat(0));
      for (const auto& [r, v] : dx) w.set(r, bx, Rat(0));
      alive[static_cast<size_t>(k)][static_cast<size_t>(bx)] = false;
      alive[static_cast<size_t>(k + 1)][static_cast<size_t>(by)] = false;
      // drop x-components of d_{k-1} (maps into C^k) and by-row of d_{k+1}
      if (k > 0) {
        auto& p = W[static_cast<size_t>(k - 1)];
        auto prow = p.by_row[static_cast<size_t>(bx)];
        for (const auto& [u, v] : prow) p.set(bx, u, Rat(0));
      }
      if (k + 1 < D - 1) {
        auto& nx = W[static_cast<size_t>(k + 1)];
        auto ncol = nx.by_col[static_cast<size_t>(by)];
        for (const auto& [r, v] : ncol) nx.set(r, by, Rat(0));
      }
    }
  }

  // residual ranks by generic sparse elimination
  std::vector<Eigen::Index> n(static_cast<size_t>(D), 0);
  for (int k = 0; k < D; ++k)
    for (bool b : alive[static_cast<size_t>(k)]) n[static_cast<size_t>(k)] += b ? 1 : 0;
  std::vector<Eigen::Index> rk(static_cast<size_t>(std::max(0, D - 1)), 0);
  for (int k = 0; k < D - 1; ++k) {
    // compress alive indices
    std::vector<Eigen::Index> cmap(static_cast<size_t>(cx.dims[static_cast<size_t>(k)]), -1);
    std::vector<Eigen::Index> rmap(static_cast<size_t>(cx.dims[static_cast<size_t>(k + 1)]), -1);
    Eigen::Index cc = 0, rr = 0;
    for (size_t i = 0; i < cmap.size(); ++i)
      if (alive[static_cast<size_t>(k)][i]) cmap[i] = cc++;
    for (size_t i = 0; i < rmap.size(); ++i)
      if (alive[static_cast<size_t>(k + 1)][i]) rmap[i] = rr++;
    SparseMat m;
    m.init(rr, cc);
    auto& w = W[static_cast<size_t>(k)];
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(w.by_col.size()); ++c) {
      if (cmap[static_cast<size_t>(c)] < 0) continue;
      for (const auto& [r, v] : w.by_col[static_cast<size_t>(c)]) {
        if (rmap[static_cast<size_t>(r)] < 0) continue;
        m.add(rmap[static_cast<size_t>(r)], cmap[static_cast<size_t>(c)], v);
      }
    }
    rk[static_cast<size_t>(k)] = sparse_rank(std::move(m));
  }
  std::map<int, Eigen::Index> h;
  for (int k = 0; k < D; ++k) {
    Eigen::Index v = n[static_cast<size_t>(k)];
    if (k < D - 1) v -= rk[static_cast<size_t>(k)];
    if (k > 0) v -= rk[static_cast<size_t>(k - 1)];
    if (v != 0) h[cx.lo + k] = v;
  }
  return h;
}

}  // namespace mw
