#include "mw/poset.hpp"

#include <stdexcept>

namespace mw {

FinitePoset::FinitePoset(int n, std::vector<std::vector<bool>> rel)
    : n_(n), leq_(std::move(rel)) {
  for (int i = 0; i < n_; ++i) {
    if (!leq_[static_cast<size_t>(i)][static_cast<size_t>(i)])
      throw std::invalid_argument("poset relation not reflexive");
    for (int j = 0; j < n_; ++j) {
      if (i != j && leq(i, j) && leq(j, i))
        throw std::invalid_argument("poset relation not antisymmetric");
      for (int k = 0; k < n_; ++k)
        if (leq(i, j) && leq(j, k) && !leq(i, k))
          throw std::invalid_argument("poset relation not transitive");
    }
  }
}

std::vector<std::vector<std::vector<int>>> FinitePoset::order_complex(int maxdim) const {
  if (maxdim < 0) maxdim = n_ - 1;
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> cur;
  for (int i = 0; i < n_; ++i) cur.push_back({i});
  int d = 0;
  while (!cur.empty() && d <= maxdim) {
    out.push_back(cur);
    std::vector<std::vector<int>> next;
    for (const auto& ch : cur)
      for (int j = 0; j < n_; ++j)
        if (lt(ch.back(), j)) {
          auto ext = ch;
          ext.push_back(j);
          next.push_back(std::move(ext));
        }
    cur = std::move(next);
    ++d;
  }
  return out;
}

namespace {

GradedComplex chains_to_complex(const std::vector<std::vector<std::vector<int>>>& chains,
                                const std::vector<bool>& keep_flags_placeholder) {
  (void)keep_flags_placeholder;
  GradedComplex cx;
  cx.lo = 0;
  cx.dims.resize(chains.size());
  for (size_t d = 0; d < chains.size(); ++d)
    cx.dims[d] = static_cast<Eigen::Index>(chains[d].size());
  // index chains per degree
  std::vector<std::map<std::vector<int>, Eigen::Index>> index(chains.size());
  for (size_t d = 0; d < chains.size(); ++d)
    for (size_t i = 0; i < chains[d].size(); ++i)
      index[d][chains[d][i]] = static_cast<Eigen::Index>(i);
  for (size_t d = 0; d + 1 < chains.size(); ++d) {
    SparseMat m;
    m.init(cx.dims[d + 1], cx.dims[d]);
    // coboundary: (d phi)([q]) = sum_j (-1)^j phi(del_j [q])
    for (size_t qi = 0; qi < chains[d + 1].size(); ++qi) {
      const auto& q = chains[d + 1][qi];
      for (size_t j = 0; j < q.size(); ++j) {
        std::vector<int> face;
        for (size_t t = 0; t < q.size(); ++t)
          if (t != j) face.push_back(q[t]);
        auto it = index[d].find(face);
        if (it == index[d].end()) continue;
        m.add(static_cast<Eigen::Index>(qi), it->second, (j % 2 == 0) ? Rat(1) : Rat(-1));
      }
    }
    cx.d.push_back(std::move(m));
  }
  return cx;
}

}  // namespace

GradedComplex poset_cochain_complex(const FinitePoset& p) {
  return chains_to_complex(p.order_complex(), {});
}

GradedComplex relative_hom_complex(const FinitePoset& p, const std::vector<bool>& in_p1,
                                   const std::vector<bool>& in_p2) {
  // chains of Delta(P2) that meet P1
  auto full = p.order_complex();
  std::vector<std::vector<std::vector<int>>> kept(full.size());
  for (size_t d = 0; d < full.size(); ++d)
    for (const auto& ch : full[d]) {
      bool in2 = true, meets1 = false;
      for (int e : ch) {
        in2 = in2 && in_p2[static_cast<size_t>(e)];
        meets1 = meets1 || in_p1[static_cast<size_t>(e)];
      }
      if (in2 && meets1) kept[d].push_back(ch);
    }
  while (!kept.empty() && kept.back().empty()) kept.pop_back();
  return chains_to_complex(kept, {});
}

GradedDims relative_hom(const FinitePoset& p, const std::vector<bool>& in_p1,
                        const std::vector<bool>& in_p2) {
  return cohomology_dims(relative_hom_complex(p, in_p1, in_p2));
}

GradedDims cohomology(GradedComplex cx) {
  if (!cx.check_d2()) throw std::invalid_argument("differential does not square to zero");
  return cohomology_dims(std::move(cx));
}

}  // namespace mw
