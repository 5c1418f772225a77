#include "helpers.hpp"
#include "lts/cost.hpp"
#include "lts/onesparse.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace lts;
using namespace lts::test;

namespace {

constexpr double kPi = std::numbers::pi;

OracleConfig mesh_config() { return OracleConfig{4, 30, 2.0, 0.0, 1.0}; }

Eigen::Matrix2cd exact_block(double rho, double phi, double dt) {
  Eigen::Matrix2cd h;
  h << 0.0, std::polar(rho, phi), std::polar(rho, -phi), 0.0;
  return linalg::expm_hermitian(CMatrix(h), dt);
}

// Random one-sparse Hermitian matrix on dim 8 with both 1D and 2D blocks.
CMatrix random_one_sparse(std::mt19937_64& rng) {
  std::vector<Index> perm{0, 1, 2, 3, 4, 5, 6, 7};
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix h = CMatrix::Zero(8, 8);
  for (int i = 0; i < 3; ++i) {
    const Complex v(u(rng), u(rng));
    h(perm[2 * i], perm[2 * i + 1]) = v;
    h(perm[2 * i + 1], perm[2 * i]) = std::conj(v);
  }
  h(perm[6], perm[6]) = u(rng);
  h(perm[7], perm[7]) = u(rng);
  return h;
}

}  // namespace

TEST_CASE("rotation_angles") {
  CHECK(rotation_angles(0.0, 0.3, 1.0).alpha == 0.0);
  CHECK(rotation_angles(1.0, 0.0, kPi / 2).alpha == doctest::Approx(kPi));
  CHECK(rotation_angles(1.0, 0.0, -0.2).alpha < 0.0);
  CHECK(rotation_angles(0.5, 1.1, 1.0).phi == 1.1);
  CHECK_THROWS_AS(rotation_angles(-1.0, 0.0, 1.0), DomainError);
  CHECK(two_dim_rotation(0.0, 0.7, 3.0).isApprox(Eigen::Matrix2cd::Identity(), 1e-15));
}

TEST_CASE("five-rotation product equals the 2x2 exponential") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rho(0.0, 3.0), phi(-kPi, kPi), dt(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double r = rho(rng), p = phi(rng), d = dt(rng);
    CHECK(linalg::spectral_norm(CMatrix(two_dim_rotation(r, p, d) - exact_block(r, p, d))) < 1e-12);
  }
}

TEST_CASE("one-dimensional phase") {
  CHECK(std::abs(one_dim_phase(1.0, 0.0, kPi) - Complex(-1.0, 0.0)) < 1e-15);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> h(-2.0, 2.0), dt(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double v = h(rng), d = dt(rng);
    const double phi = v < 0 ? kPi : 0.0;
    CHECK(std::abs(one_dim_phase(std::abs(v), phi, d) - std::exp(Complex(0.0, -v * d))) < 1e-13);
  }
  // The literal sequence loses the sign of negative diagonal elements.
  const Complex lit = one_dim_phase_unsigned(1.0, kPi, 0.5);
  CHECK(std::abs(lit - std::exp(Complex(0.0, -0.5))) < 1e-13);
  CHECK(std::abs(lit - std::exp(Complex(0.0, 0.5))) > 0.1);
}

TEST_CASE("off-diagonal X block acting on (1, 0)") {
  CMatrix h = CMatrix::Zero(2, 2);
  h(0, 1) = h(1, 0) = 1.0;
  const auto term = single(constant(1.0), h, {0, 1});
  const auto classes = decompose_one_sparse(term);
  REQUIRE(classes.size() == 1);
  const OracleConfig cfg = mesh_config();
  for (double dt : {0.1, 0.7, -0.4}) {
    CMatrix state = CMatrix::Zero(2, 1);
    state(0, 0) = 1.0;
    QueryLedger ledger;
    apply_one_sparse_exponential(state, term, classes[0], mesh_time(3, cfg), dt, ElementMode::Exact, cfg, ledger);
    CHECK(std::abs(state(0, 0) - std::cos(dt)) < 1e-14);
    CHECK(std::abs(state(1, 0) - Complex(0.0, -std::sin(dt))) < 1e-14);
  }
}

TEST_CASE("random one-sparse matrices against the dense exponential") {
  std::mt19937_64 rng(5);
  const OracleConfig cfg = mesh_config();
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix h = random_one_sparse(rng);
    const auto term = single(constant(1.0), h, {0, 1});
    const auto classes = decompose_one_sparse(term);
    REQUIRE(classes.size() == 1);
    const double dt = 0.9;
    CMatrix state = CMatrix::Identity(8, 8);
    QueryLedger ledger;
    apply_one_sparse_exponential(state, term, classes[0], 0.5, dt, ElementMode::Exact, cfg, ledger);
    const CMatrix expected = linalg::expm(CMatrix(Complex(0.0, -dt) * h));
    CHECK(linalg::spectral_norm(state - expected) < 1e-10);
    CHECK(linalg::is_unitary(state, 1e-10));
  }
}

TEST_CASE("untouched rows are left alone") {
  CMatrix h = CMatrix::Zero(4, 4);
  h(0, 1) = h(1, 0) = 0.8;
  const auto term = single(constant(1.0), h, {0, 1});
  const auto classes = decompose_one_sparse(term);
  CMatrix state = CMatrix::Identity(4, 4);
  QueryLedger ledger;
  apply_one_sparse_exponential(state, term, classes[0], 0.5, 0.3, ElementMode::Exact, mesh_config(), ledger);
  CHECK(state(2, 2) == Complex(1.0, 0.0));
  CHECK(state(3, 3) == Complex(1.0, 0.0));
}

TEST_CASE("query charge per exponential") {
  std::mt19937_64 rng(9);
  const CMatrix h = random_one_sparse(rng);
  const auto term = single(constant(1.0), h, {0, 1});
  const auto classes = decompose_one_sparse(term);
  OracleConfig cfg = mesh_config();
  for (int nv : {2, 16, 30, 52}) {
    cfg.value_qubits = nv;
    CMatrix state = CMatrix::Identity(8, 8);
    QueryLedger ledger;
    apply_one_sparse_exponential(state, term, classes[0], mesh_time(1, cfg), 0.2, ElementMode::Discretized, cfg,
                                 ledger);
    CHECK(ledger.value_bit_queries == 3u * static_cast<std::uint64_t>(nv));
    CHECK(ledger.column_bit_queries == column_charge(3));
    CHECK(ledger.column_bit_queries == 4u * 3u * static_cast<std::uint64_t>(z_chain(3) + 2));
    CHECK(ledger.exponentials == 1);
  }
}

TEST_CASE("discretized elements and mesh times") {
  std::mt19937_64 rng(13);
  const CMatrix h = random_one_sparse(rng);
  const auto term = single(constant(1.0), h, {0, 1});
  const auto classes = decompose_one_sparse(term);
  const OracleConfig cfg = mesh_config();
  CMatrix exact = CMatrix::Identity(8, 8), disc = CMatrix::Identity(8, 8);
  QueryLedger ledger;
  const double t = mesh_time(5, cfg);
  apply_one_sparse_exponential(exact, term, classes[0], t, 0.5, ElementMode::Exact, cfg, ledger);
  apply_one_sparse_exponential(disc, term, classes[0], t, 0.5, ElementMode::Discretized, cfg, ledger);
  const double diff = linalg::spectral_norm(exact - disc);
  CHECK(diff > 0.0);
  // 15 phase bits: phase error 2 pi / 2^15 on elements of size <= 1.4.
  CHECK(diff < 2.0 * kPi / 32768.0 * 1.5 * 0.5 * 2);
  CHECK(linalg::is_unitary(disc, 1e-10));
  CHECK_THROWS_AS(apply_one_sparse_exponential(disc, term, classes[0], t + 0.01, 0.5, ElementMode::Discretized, cfg,
                                               ledger),
                  ContractViolation);
  CHECK_THROWS_AS(apply_one_sparse_exponential(disc, term, classes[0], t, std::numeric_limits<double>::infinity(),
                                               ElementMode::Exact, cfg, ledger),
                  DomainError);
}

TEST_CASE("color classes compose to the term evolution at first order") {
  CMatrix b = CMatrix::Zero(4, 4);
  b(0, 1) = b(1, 0) = 1.0;
  b(1, 2) = Complex(0.0, 0.5);
  b(2, 1) = Complex(0.0, -0.5);
  b(2, 3) = b(3, 2) = 0.7;
  b(0, 0) = 0.3;
  const auto term = single(constant(1.0), b, {0, 1});
  const auto classes = decompose_one_sparse(term);
  REQUIRE(classes.size() >= 2);
  std::vector<double> errs;
  for (double dt : {0.02, 0.01}) {
    CMatrix u = CMatrix::Identity(4, 4);
    QueryLedger ledger;
    for (const auto& c : classes) {
      apply_one_sparse_exponential(u, term, c, 0.5, dt, ElementMode::Exact, mesh_config(), ledger);
    }
    errs.push_back(linalg::spectral_norm(u - linalg::expm_hermitian(b, dt)));
  }
  // Local error of a first-order product is O(dt^2).
  CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("parallel and serial pair kernels agree") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Index n = 1 << 10;
  CMatrix block(n, 64);
  for (Eigen::Index i = 0; i < block.size(); ++i) block.data()[i] = Complex(u(rng), u(rng));
  std::vector<PairOp> ops;
  for (Index m = 0; m < n; m += 2) {
    ops.push_back({m, static_cast<Index>(m + 1), two_dim_rotation(std::abs(u(rng)), u(rng), u(rng))});
  }
  CMatrix a = block, b = block;
  apply_pairs(a, ops);
  apply_pairs_serial(b, ops);
  CHECK((a - b).norm() == 0.0);
}
