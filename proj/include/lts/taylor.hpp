#pragma once

#include <boost/container/small_vector.hpp>

#include <cstddef>

namespace lts {

/// Truncated Taylor series of a scalar function about a point, coefficients
/// c[j] = f^(j)(t) / j!. Arithmetic propagates all orders up to order().
///
/// Used for analytic derivatives of catalog coefficient functions; every
/// operation is exact in the truncated algebra, so derivative(p) is exact up
/// to floating-point rounding.
class Taylor {
 public:
  Taylor() = default;
  Taylor(std::size_t order, double value);

  /// The independent variable t evaluated at t0: (t0, 1, 0, ...).
  static Taylor variable(std::size_t order, double t0);

  std::size_t order() const { return c_.size() - 1; }
  double value() const { return c_[0]; }
  double coefficient(std::size_t j) const { return j < c_.size() ? c_[j] : 0.0; }
  double& operator[](std::size_t j) { return c_[j]; }
  double operator[](std::size_t j) const { return c_[j]; }

  /// p-th derivative: c[p] * p!. Zero past the truncation order is NOT
  /// implied; callers must request order >= p.
  double derivative(std::size_t p) const;

  Taylor& operator+=(const Taylor& o);
  Taylor& operator-=(const Taylor& o);
  Taylor& operator*=(double s);

  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend Taylor operator*(Taylor a, double s) { return a *= s; }
  friend Taylor operator*(double s, Taylor a) { return a *= s; }
  friend Taylor operator+(Taylor a, double s);
  friend Taylor operator+(double s, Taylor a) { return a + s; }
  friend Taylor operator-(Taylor a, double s);
  friend Taylor operator-(double s, const Taylor& a) { return (a * -1.0) + s; }
  friend Taylor operator-(const Taylor& a) { return a * -1.0; }
  friend Taylor operator*(const Taylor& a, const Taylor& b);

  friend Taylor exp(const Taylor& f);
  friend Taylor sin(const Taylor& f);
  friend Taylor cos(const Taylor& f);
  friend Taylor reciprocal(const Taylor& f);
  friend Taylor pow_int(const Taylor& f, int n);

 private:
  // Orders used in practice stay below 16, so arithmetic never allocates.
  boost::container::small_vector<double, 16> c_{0.0};
};

Taylor exp(const Taylor& f);
Taylor sin(const Taylor& f);
Taylor cos(const Taylor& f);
Taylor reciprocal(const Taylor& f);
Taylor pow_int(const Taylor& f, int n);

}  // namespace lts
