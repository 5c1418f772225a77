#include "helpers.hpp"
#include "lts/catalog.hpp"

#include <doctest.h>

#include <cmath>

using namespace lts;
using namespace lts::test;

TEST_CASE("sparsity_degree") {
  const Interval iv{0, 1};
  std::vector<Entry> diag{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  CHECK(sparsity_degree(HamiltonianTerm(4, {}, diag, iv)) == 1);
  CHECK(sparsity_degree(HamiltonianTerm(2, {}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, iv)) == 2);
  CHECK(sparsity_degree(HamiltonianTerm(4, {}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}, {3, 3}}, iv)) == 2);
  CHECK_THROWS_AS(sparsity_degree(HamiltonianTerm(4, {}, {}, iv)), DegenerateInput);
}

TEST_CASE("term validation") {
  const Interval iv{0, 1};
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(HamiltonianTerm(2, {{constant(1), bad}}, {{0, 1}, {1, 0}}, iv), InvalidInput);
  CHECK_THROWS_AS(HamiltonianTerm(2, {}, {{0, 2}}, iv), IndexError);
  HamiltonianTerm t = single(constant(1), cm(linalg::pauli_x()), iv);
  CHECK_THROWS_AS(t.with_transform(CMatrix::Identity(2, 2) * 2.0), InvalidInput);
  t.with_transform(linalg::rot_y(0.3));
  CHECK_FALSE(t.transform_is_identity());
}

TEST_CASE("pattern inference and evaluation") {
  const Interval iv{0, 2};
  const HamiltonianTerm t = single(linear(1.0), cm(linalg::pauli_x()), iv);
  CHECK(t.pattern().size() == 2);
  CHECK(t.in_pattern(0, 1));
  CHECK_FALSE(t.in_pattern(0, 0));
  CHECK(t.evaluate(1.5)(0, 1) == Complex(1.5, 0));
  CHECK(t.derivative(1, 0.3)(1, 0) == Complex(1.0, 0));
  CHECK(t.derivative_norm(2, 0.3) == 0.0);
}

TEST_CASE("estimate_derivative_norm") {
  const Interval iv{0, 2};
  const HamiltonianTerm c = single(constant(-2.5), CMatrix::Identity(2, 2), iv);
  CHECK(estimate_derivative_norm(c, 0, 1.0, 1e-4) == doctest::Approx(2.5));
  const HamiltonianTerm lin = single(linear(1.0), cm(linalg::pauli_x()), iv);
  CHECK(std::abs(estimate_derivative_norm(lin, 1, 0.7, 1e-4) - 1.0) < 1e-6);
  // Analytic second derivative from the symbolic oracle: -141.04739588693907.
  const auto g = catalog::gaussian_delta(0.2);
  const double d2 = estimate_derivative_norm(g.hamiltonian.terms[0], 2, 1.0, 1e-4);
  CHECK(d2 == doctest::Approx(141.04739588693907).epsilon(1e-4));
  CHECK_THROWS_AS(estimate_derivative_norm(lin, 2, 1e-5, 1e-4), OutOfInterval);
}

TEST_CASE("upsilon_floor") {
  const Interval iv{0, 3};
  const HamiltonianTerm c = single(constant(1.0), cm(linalg::pauli_z()), iv);
  for (int P : {0, 2, 4}) CHECK(upsilon_floor({c}, P, 0.5) == doctest::Approx(1.0));
  const HamiltonianTerm lin = single(linear(1.0), cm(linalg::pauli_x()), iv);
  CHECK(upsilon_floor({lin}, 2, 2.0) == doctest::Approx(2.0));
  // max_p |g^(p)(1)|^(1/(p+1)) for a = 0.1, evaluated symbolically.
  const auto g = catalog::gaussian_delta(0.1);
  CHECK(upsilon_floor(g.hamiltonian.terms, 4, 1.0) == doctest::Approx(14.659571024010614).epsilon(1e-12));
  CHECK(catalog::gaussian_exact_profile(0.1, 2).upsilon(1.0) == doctest::Approx(14.659571024010614).epsilon(1e-12));
}

TEST_CASE("upsilon_floor of the singular entry matches symbolic derivatives") {
  const auto s = catalog::singular();
  CHECK(upsilon_floor(s.hamiltonian.terms, 2, 0.5) == doctest::Approx(1.0677352254629876).epsilon(1e-12));
  CHECK(upsilon_floor(s.hamiltonian.terms, 2, 0.1) == doctest::Approx(0.46274165993368925).epsilon(1e-12));
  CHECK(upsilon_floor(s.hamiltonian.terms, 4, 0.5) == doctest::Approx(1.4582321188985421).epsilon(1e-12));
  CHECK(upsilon_floor(s.hamiltonian.terms, 4, 0.1) == doctest::Approx(3.8555146924423651).epsilon(1e-12));
}

TEST_CASE("upsilon_floor is nondecreasing in P on catalog entries") {
  for (const auto& e : {catalog::gaussian_delta(0.3), catalog::singular(), catalog::noncommuting_pair(),
                        catalog::random_sparse(5)}) {
    const Interval iv = e.hamiltonian.interval;
    for (int i = 1; i < 20; ++i) {
      const double t = iv.begin + iv.length() * i / 20.0;
      double prev = 0.0;
      for (int P = 0; P <= 5; ++P) {
        const double u = upsilon_floor(e.hamiltonian.terms, P, t);
        CHECK(u >= prev);
        prev = u;
      }
    }
  }
}

TEST_CASE("upsilon_floor matches the Gaussian closed form") {
  const double a = 0.3;
  const auto g = catalog::gaussian_delta(a);
  for (int P : {2, 4}) {
    for (double t : {0.2, 0.8, 1.0, 1.5}) {
      CHECK(upsilon_floor(g.hamiltonian.terms, P, t) ==
            doctest::Approx(catalog::gaussian_shape(P, (t - 1.0) / a) / a).epsilon(1e-12));
    }
  }
}

TEST_CASE("check_upsilon_derivative_bound") {
  SmoothnessProfile flat;
  flat.upsilon = [](double) { return 2.0; };
  auto r = check_upsilon_derivative_bound(flat, {}, {0, 1}, 50);
  CHECK(r.violations.empty());
  CHECK(r.tightest_K == doctest::Approx(0.0));

  SmoothnessProfile blow;
  blow.upsilon = [](double t) { return 1.0 / (1.0 - t); };
  blow.growth_constant = 1.0;
  r = check_upsilon_derivative_bound(blow, {}, {0, 0.9}, 100);
  CHECK(r.violations.empty());
  CHECK(r.tightest_K == doctest::Approx(1.0).epsilon(1e-4));
  blow.growth_constant = 0.5;
  CHECK_FALSE(check_upsilon_derivative_bound(blow, {}, {0, 0.9}, 100).violations.empty());
}

TEST_CASE("Gaussian envelope is certified and above the floor") {
  for (double a : {0.05, 0.3, 1.0}) {
    const auto e = catalog::gaussian_delta(a);
    for (int k : {1, 2}) {
      const auto p = e.profile(k);
      const auto r = check_upsilon_derivative_bound(p, e.hamiltonian.terms, e.hamiltonian.interval, 400);
      CHECK(r.violations.empty());
      CHECK(r.below_floor.empty());
    }
  }
}

TEST_CASE("step_max modes") {
  SmoothnessProfile p;
  p.upsilon = [](double t) { return 1.0 / (1.0 - t); };
  p.growth_constant = 1.0;
  // Growth bound: Ups(lo) / (1 - K^2 Ups(lo) (hi - lo)) is exact for this profile.
  CHECK(p.step_max(0.0, 0.5) == doctest::Approx(2.0));
  CHECK(std::isinf(p.step_max(0.0, 1.0)));
  p.certificate = SmoothnessProfile::Certificate::SampledMax;
  CHECK(p.step_max(0.0, 0.5) == doctest::Approx(2.0));
}
