#include "helpers.hpp"
#include "lts/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace lts;
using namespace lts::test;

TEST_CASE("precision_requirements") {
  const auto a = precision_requirements(1, 1, 1, 1.0, 0.01, 1.0, 1.0);
  CHECK(a.time_bits == 12);  // ceil(log2 3200)
  CHECK(a.value_qubits == 30);
  // 32*2*(5/3)*10*4/1e-4 and 32*2*(5/3)*2/1e-4, evaluated independently.
  const auto b = precision_requirements(2, 1, 1, 2.0, 1e-4, 10.0, 1.0);
  CHECK(b.time_bits == 26);
  CHECK(b.value_qubits == 50);
  // Halving eps across a power of two adds exactly one time bit.
  const auto c = precision_requirements(1, 1, 1, 1.0, 32.0 / 1024.0, 1.0, 1.0);
  const auto d = precision_requirements(1, 1, 1, 1.0, 16.0 / 1024.0, 1.0, 1.0);
  CHECK(d.time_bits == c.time_bits + 1);
  CHECK_THROWS_AS(precision_requirements(1, 1, 1, 1.0, 0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(precision_requirements(1, 1, 1, 1.0, -1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("mesh_time") {
  OracleConfig c{1, 8, 1.0, 0.0, 1.0};
  CHECK(mesh_time(1, c) == 0.25);
  c = {5, 8, 1.0, 2.0, 3.0};
  CHECK(mesh_time(32, c) == doctest::Approx(2.0 + 3.0 * (1 - std::ldexp(1.0, -6))));
  CHECK_THROWS_AS(mesh_time(0, c), IndexError);
  CHECK_THROWS_AS(mesh_time(33, c), IndexError);
}

TEST_CASE("round_time") {
  const OracleConfig c{4, 8, 1.0, 0.0, 1.0};  // sigma = 1/16
  // On a mesh point.
  CHECK(round_time(mesh_time(5, c), {0.0, 1.0}, c) == 5);
  // Just past b: nearest global point is outside, so the largest in-range q.
  const Interval sub{0.25, 0.40};
  const std::int64_t q = round_time(0.41, sub, c);
  CHECK(mesh_time(q, c) <= 0.40);
  CHECK(mesh_time(q + 1, c) > 0.40);
  CHECK_THROWS_AS(round_time(0.3, {0.3, 0.3 + 1.0 / 32}, c), ContractViolation);
  CHECK_THROWS_AS(round_time(0.3, {0.3, 1.5}, c), OutOfInterval);
}

TEST_CASE("round_time distance is below sigma, exhaustive") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int bits = 1; bits <= 10; ++bits) {
    const OracleConfig c{bits, 8, 1.0, -0.5, 2.0};
    const double sigma = c.spacing();
    for (int trial = 0; trial < 200; ++trial) {
      const double len = sigma + (2.0 - sigma) * u(rng) * u(rng);
      const double a = -0.5 + (2.0 - len) * u(rng);
      const Interval sub{a, a + len};
      const double tau = a + len * u(rng);
      const std::int64_t q = round_time(tau, sub, c);
      const double got = std::abs(mesh_time(q, c) - tau);
      CHECK(got < sigma);
      CHECK(sub.contains(mesh_time(q, c)));
      // Exhaustive: no in-window mesh point is strictly closer.
      for (std::int64_t j = 1; j <= c.mesh_size(); ++j) {
        const double m = mesh_time(j, c);
        if (sub.contains(m)) CHECK(std::abs(m - tau) >= got);
      }
    }
  }
}

TEST_CASE("polar encoding") {
  PolarValue z = encode_polar(Complex(0, 0), 8, 1.0);
  CHECK(z.modulus == 0.0);
  CHECK(z.phase == 0.0);
  CHECK(z.modulus_bits == 0);
  PolarValue half = encode_polar(Complex(0.5, 0), 8, 1.0);
  CHECK(half.modulus_bits == 0b1000);
  CHECK(half.phase_bits == 0);
  CHECK(half.modulus == 0.5);
  // Negative reals land at phase pi exactly.
  PolarValue neg = encode_polar(Complex(-0.25, 0), 8, 1.0);
  CHECK(neg.phase == doctest::Approx(std::numbers::pi));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 8; n <= 32; n += 2) {
    for (int trial = 0; trial < 50; ++trial) {
      const Complex v(u(rng), u(rng));
      const double hmax = 1.5;
      const PolarValue p = encode_polar(v, n, hmax);
      const double step = std::ldexp(1.0, -n / 2);
      CHECK(std::abs(p.modulus - std::abs(v)) <= hmax * step);
      double phi = std::arg(v);
      if (phi < 0) phi += 2 * std::numbers::pi;
      CHECK(std::abs(p.phase - phi) <= 2 * std::numbers::pi * step);
      // Element truncation bound eps_rho + eps_phi h_max.
      CHECK(std::abs(std::polar(p.modulus, p.phase) - v) <= hmax * step + 2 * std::numbers::pi * step * hmax);
    }
  }
}

TEST_CASE("matrix_value_polar charges and zeros") {
  const Interval iv{0, 1};
  const HamiltonianTerm t = single(linear(1.0, 0.5), cm(linalg::pauli_x()), iv);
  const OracleConfig c{3, 10, 2.0, 0.0, 1.0};
  QueryLedger l;
  const PolarValue v = matrix_value_polar(t, 0, 1, 4, c, l);
  CHECK(l.value_bit_queries == 20);
  CHECK(std::abs(v.modulus - (0.5 + mesh_time(4, c))) <= 2.0 * std::ldexp(1.0, -5));
  const PolarValue off = matrix_value_polar(t, 0, 0, 4, c, l, false);
  CHECK(off.modulus == 0.0);
  CHECK(l.value_bit_queries == 30);
}

TEST_CASE("column_index_bit") {
  const Interval iv{0, 1};
  // Row 2 has one entry, at column 5.
  const HamiltonianTerm t(8, {}, {{2, 5}, {5, 2}, {0, 0}, {0, 1}, {1, 0}}, iv);
  QueryLedger l;
  CHECK(column_index_bit(t, 2, 0, 0, l) == 1);
  CHECK(column_index_bit(t, 2, 0, 1, l) == 0);
  CHECK(column_index_bit(t, 2, 0, 2, l) == 1);
  CHECK(l.column_bit_queries == 3);
  // Padding repeats the row index: row 2, slot 1 reads back 2.
  QueryLedger l2;
  Index col = 0;
  for (int p = 0; p < 3; ++p) col |= static_cast<Index>(column_index_bit(t, 2, 1, p, l2)) << p;
  CHECK(col == 2);
  CHECK(l2.column_bit_queries == 3);
}
