#pragma once

#include "lts/hamiltonian.hpp"

#include <vector>

namespace lts {

/// One color class of a term: a symmetric set of entries touching every row
/// and column at most once.
struct OneSparseTerm {
  int parent = 0;
  int color = 0;
  /// Both orientations of every off-diagonal entry, plus diagonal entries.
  std::vector<Entry> entries;
  /// One (m, M) pair per invariant subspace, m <= M.
  std::vector<Entry> pairs;
};

struct SubspaceRecord {
  Index x = 0;
  Index m = 0;
  Index M = 0;
  bool xi = false;
  bool dim_flag = false;
  bool one_dim_flag = false;
};

/// Greedy first-fit edge coloring of the pattern graph (rows ascending).
/// Uses at most 2d - 1 classes.
std::vector<OneSparseTerm> decompose_one_sparse(const HamiltonianTerm& term, int parent = 0);

SubspaceRecord classify_subspace(const OneSparseTerm& one_sparse, Index x);

/// The class restricted matrix: entries of h that belong to the class.
CMatrix restrict_to(const OneSparseTerm& one_sparse, const CMatrix& h);

/// Color classes of every term of a Hamiltonian, in term order.
struct Decomposition {
  std::vector<std::vector<OneSparseTerm>> per_term;

  int class_count() const;
};

Decomposition decompose(const Hamiltonian& h);

}  // namespace lts
