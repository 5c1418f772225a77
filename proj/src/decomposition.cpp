#include "lts/decomposition.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace lts {

std::vector<OneSparseTerm> decompose_one_sparse(const HamiltonianTerm& term, int parent) {
  const Index n = term.dim();
  for (const auto& [x, y] : term.pattern()) {
    if (!term.in_pattern(y, x)) {
      throw InvalidInput(fmt::format("pattern is not symmetric at ({}, {})", x, y));
    }
  }

  // Edges {x, y} with x <= y in ascending order; self-loops are edges too.
  std::vector<Entry> edges;
  for (const auto& e : term.pattern()) {
    if (e.first <= e.second) edges.push_back(e);
  }

  std::vector<std::vector<bool>> used(n);
  std::vector<OneSparseTerm> classes;
  auto taken = [&](Index v, std::size_t c) { return c < used[v].size() && used[v][c]; };
  auto mark = [&](Index v, std::size_t c) {
    if (used[v].size() <= c) used[v].resize(c + 1, false);
    used[v][c] = true;
  };

  for (const auto& [x, y] : edges) {
    std::size_t c = 0;
    while (taken(x, c) || taken(y, c)) ++c;
    mark(x, c);
    mark(y, c);
    if (classes.size() <= c) {
      classes.resize(c + 1);
      classes[c].parent = parent;
      classes[c].color = static_cast<int>(c);
    }
    auto& cls = classes[c];
    cls.pairs.emplace_back(x, y);
    cls.entries.emplace_back(x, y);
    if (x != y) cls.entries.emplace_back(y, x);
  }
  for (auto& cls : classes) std::sort(cls.entries.begin(), cls.entries.end());
  return classes;
}

SubspaceRecord classify_subspace(const OneSparseTerm& one_sparse, Index x) {
  SubspaceRecord r;
  r.x = x;
  for (const auto& [m, M] : one_sparse.pairs) {
    if (m == x || M == x) {
      r.xi = true;
      r.m = m;
      r.M = M;
      r.dim_flag = (x == M);
      r.one_dim_flag = (m == M);
      return r;
    }
  }
  return r;
}

CMatrix restrict_to(const OneSparseTerm& one_sparse, const CMatrix& h) {
  CMatrix out = CMatrix::Zero(h.rows(), h.cols());
  for (const auto& [x, y] : one_sparse.entries) out(x, y) = h(x, y);
  return out;
}

int Decomposition::class_count() const {
  int m = 0;
  for (const auto& v : per_term) m += static_cast<int>(v.size());
  return m;
}

Decomposition decompose(const Hamiltonian& h) {
  Decomposition d;
  for (std::size_t i = 0; i < h.terms.size(); ++i) {
    d.per_term.push_back(decompose_one_sparse(h.terms[i], static_cast<int>(i)));
  }
  return d;
}

}  // namespace lts
