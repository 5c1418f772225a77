#include "helpers.hpp"
#include "lts/decomposition.hpp"

#include <doctest.h>

#include <map>
#include <random>
#include <set>

using namespace lts;
using namespace lts::test;

namespace {

// Random symmetric pattern with at most d entries per row (diagonal allowed).
CMatrix random_pattern(std::mt19937_64& rng, Index n, int d) {
  CMatrix m = CMatrix::Zero(n, n);
  std::vector<int> deg(n, 0);
  std::uniform_int_distribution<Index> pick(0, n - 1);
  std::uniform_real_distribution<double> val(0.5, 1.5);
  for (int tries = 0; tries < 40; ++tries) {
    const Index x = pick(rng), y = pick(rng);
    if (m(x, y) != 0.0) continue;
    if (x == y ? deg[x] + 1 > d : deg[x] + 1 > d || deg[y] + 1 > d) continue;
    const Complex v(val(rng), x == y ? 0.0 : val(rng));
    m(x, y) = v;
    m(y, x) = std::conj(v);
    ++deg[x];
    if (x != y) ++deg[y];
  }
  return m;
}

void check_invariants(const HamiltonianTerm& term, const std::vector<OneSparseTerm>& classes) {
  std::set<Entry> seen;
  for (const auto& c : classes) {
    std::map<Index, int> rows, cols;
    for (const auto& [x, y] : c.entries) {
      ++rows[x];
      ++cols[y];
      CHECK(seen.insert({x, y}).second);
      const bool closed = std::find(c.entries.begin(), c.entries.end(), Entry{y, x}) != c.entries.end();
      CHECK(closed);
    }
    for (const auto& [r, n] : rows) CHECK(n == 1);
    for (const auto& [r, n] : cols) CHECK(n == 1);
  }
  const std::set<Entry> pattern(term.pattern().begin(), term.pattern().end());
  CHECK(seen == pattern);
}

}  // namespace

TEST_CASE("diagonal pattern is one class") {
  CMatrix m = CMatrix::Zero(4, 4);
  m.diagonal() << 1.0, -2.0, 0.5, 3.0;
  const auto term = single(constant(1.0), m, {0, 1});
  const auto classes = decompose_one_sparse(term);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].entries.size() == 4);
  check_invariants(term, classes);
}

TEST_CASE("perfect matching uses one class") {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 1) = m(1, 0) = 1.0;
  m(2, 3) = m(3, 2) = 1.0;
  const auto term = single(constant(1.0), m, {0, 1});
  const auto classes = decompose_one_sparse(term);
  CHECK(classes.size() == 1);
  CHECK(classes.size() <= 6);
  check_invariants(term, classes);
}

TEST_CASE("random d=2 patterns on dim 8") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix m = random_pattern(rng, 8, 2);
    if (m.isZero()) continue;
    const auto term = single(constant(1.0), m, {0, 1});
    const int d = sparsity_degree(term);
    const auto classes = decompose_one_sparse(term);
    CHECK(static_cast<int>(classes.size()) <= 6 * d * d);
    CHECK(static_cast<int>(classes.size()) <= 2 * d - 1);
    check_invariants(term, classes);

    // Reassembly at an arbitrary time.
    CMatrix sum = CMatrix::Zero(8, 8);
    for (const auto& c : classes) sum += restrict_to(c, term.evaluate(0.3));
    CHECK((sum - term.evaluate(0.3)).norm() == 0.0);

    // Deterministic for a fixed pattern.
    const auto again = decompose_one_sparse(term);
    REQUIRE(again.size() == classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) CHECK(again[i].entries == classes[i].entries);
  }
}

TEST_CASE("asymmetric pattern rejected") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  const HamiltonianTerm term(2, {{constant(1.0), m}}, {{0, 1}}, {0, 1});
  CHECK_THROWS_AS(decompose_one_sparse(term), InvalidInput);
}

TEST_CASE("classify_subspace cases") {
  OneSparseTerm c;
  c.pairs = {{3, 3}, {2, 5}};
  c.entries = {{2, 5}, {3, 3}, {5, 2}};

  const auto diag = classify_subspace(c, 3);
  CHECK(diag.xi);
  CHECK(diag.m == 3);
  CHECK(diag.M == 3);
  CHECK(diag.dim_flag);
  CHECK(diag.one_dim_flag);

  const auto upper = classify_subspace(c, 5);
  CHECK(upper.xi);
  CHECK(upper.m == 2);
  CHECK(upper.M == 5);
  CHECK(upper.dim_flag);
  CHECK_FALSE(upper.one_dim_flag);

  const auto lower = classify_subspace(c, 2);
  CHECK(lower.m == upper.m);
  CHECK(lower.M == upper.M);
  CHECK_FALSE(lower.dim_flag);
  CHECK_FALSE(lower.one_dim_flag);

  CHECK_FALSE(classify_subspace(c, 0).xi);
}

TEST_CASE("class derivatives are dominated by the term") {
  CMatrix b = CMatrix::Zero(4, 4);
  b(0, 0) = 1.0;
  b(0, 1) = b(1, 0) = 0.7;
  b(1, 2) = Complex(0.2, 0.4);
  b(2, 1) = Complex(0.2, -0.4);
  b(3, 3) = -0.5;
  const auto term = single(sine(1.3, 2.0, 0.1, 0.2), b, {0, 1});
  const auto classes = decompose_one_sparse(term);
  for (double t : {0.0, 0.25, 0.5, 0.9}) {
    for (int p = 0; p <= 2; ++p) {
      const CMatrix full = term.derivative(p, t);
      for (const auto& c : classes) {
        CHECK(linalg::spectral_norm(restrict_to(c, full)) <= linalg::spectral_norm(full) + 1e-12);
      }
    }
  }
}
