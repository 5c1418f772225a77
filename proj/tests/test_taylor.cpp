#include "lts/taylor.hpp"

#include <doctest.h>

#include <cmath>

using namespace lts;

TEST_CASE("variable and polynomial derivatives") {
  const Taylor t = Taylor::variable(6, 2.0);
  const Taylor p = pow_int(t, 5);
  CHECK(p.derivative(0) == doctest::Approx(32.0));
  CHECK(p.derivative(1) == doctest::Approx(80.0));
  CHECK(p.derivative(2) == doctest::Approx(160.0));
  CHECK(p.derivative(5) == doctest::Approx(120.0));
  CHECK(p.derivative(6) == doctest::Approx(0.0));
}

TEST_CASE("exp(sin t) derivatives against closed form") {
  const double t0 = 0.4;
  const Taylor f = exp(sin(Taylor::variable(3, t0)));
  const double s = std::sin(t0), c = std::cos(t0), e = std::exp(s);
  CHECK(f.derivative(0) == doctest::Approx(e));
  CHECK(f.derivative(1) == doctest::Approx(c * e));
  CHECK(f.derivative(2) == doctest::Approx((c * c - s) * e));
  CHECK(f.derivative(3) == doctest::Approx((c * c * c - 3 * s * c - c) * e));
}

TEST_CASE("reciprocal and cos") {
  const Taylor t = Taylor::variable(4, 0.5);
  const Taylor r = reciprocal(t);
  CHECK(r.derivative(1) == doctest::Approx(-4.0));
  CHECK(r.derivative(3) == doctest::Approx(-6.0 / std::pow(0.5, 4)));
  const Taylor c = cos(2.0 * t);
  CHECK(c.derivative(2) == doctest::Approx(-4.0 * std::cos(1.0)));
  CHECK_THROWS_AS(r.derivative(5), std::out_of_range);
}

TEST_CASE("arithmetic") {
  const Taylor t = Taylor::variable(2, 1.0);
  const Taylor f = 3.0 - t * t + 2.0;
  CHECK(f.value() == doctest::Approx(4.0));
  CHECK(f.derivative(1) == doctest::Approx(-2.0));
  CHECK(f.derivative(2) == doctest::Approx(-2.0));
}
