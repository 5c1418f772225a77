#include "lts/taylor.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace lts {

Taylor operator+(Taylor a, double s) {
  a.c_[0] += s;
  return a;
}

Taylor operator-(Taylor a, double s) {
  a.c_[0] -= s;
  return a;
}

namespace {

void require_same_order(const Taylor& a, const Taylor& b) {
  if (a.order() != b.order()) throw std::invalid_argument("Taylor: order mismatch");
}

// Simultaneous sin/cos of a series: s' = f' c, c' = -f' s.
std::pair<Taylor, Taylor> sincos(const Taylor& f) {
  const std::size_t n = f.order();
  Taylor s(n, std::sin(f.value()));
  Taylor c(n, std::cos(f.value()));
  for (std::size_t k = 1; k <= n; ++k) {
    double sk = 0.0;
    double ck = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      sk += static_cast<double>(j) * f[j] * c[k - j];
      ck -= static_cast<double>(j) * f[j] * s[k - j];
    }
    s[k] = sk / static_cast<double>(k);
    c[k] = ck / static_cast<double>(k);
  }
  return {s, c};
}

}  // namespace

Taylor::Taylor(std::size_t order, double value) : c_(order + 1, 0.0) { c_[0] = value; }

Taylor Taylor::variable(std::size_t order, double t0) {
  Taylor t(order, t0);
  if (order >= 1) t.c_[1] = 1.0;
  return t;
}

double Taylor::derivative(std::size_t p) const {
  if (p >= c_.size()) throw std::out_of_range("Taylor: derivative order exceeds truncation");
  double fact = 1.0;
  for (std::size_t j = 2; j <= p; ++j) fact *= static_cast<double>(j);
  return c_[p] * fact;
}

Taylor& Taylor::operator+=(const Taylor& o) {
  require_same_order(*this, o);
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
  return *this;
}

Taylor& Taylor::operator-=(const Taylor& o) {
  require_same_order(*this, o);
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
  return *this;
}

Taylor& Taylor::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Taylor operator*(const Taylor& a, const Taylor& b) {
  require_same_order(a, b);
  const std::size_t n = a.order();
  Taylor r(n, 0.0);
  for (std::size_t k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= k; ++j) acc += a.c_[j] * b.c_[k - j];
    r.c_[k] = acc;
  }
  return r;
}

Taylor exp(const Taylor& f) {
  const std::size_t n = f.order();
  Taylor g(n, std::exp(f.value()));
  for (std::size_t k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * f[j] * g[k - j];
    g[k] = acc / static_cast<double>(k);
  }
  return g;
}

Taylor sin(const Taylor& f) { return sincos(f).first; }

Taylor cos(const Taylor& f) { return sincos(f).second; }

Taylor reciprocal(const Taylor& f) {
  const std::size_t n = f.order();
  const double f0 = f.value();
  Taylor g(n, 1.0 / f0);
  for (std::size_t k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += f[j] * g[k - j];
    g[k] = -acc / f0;
  }
  return g;
}

Taylor pow_int(const Taylor& f, int n) {
  if (n < 0) return reciprocal(pow_int(f, -n));
  Taylor result(f.order(), 1.0);
  Taylor base = f;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

}  // namespace lts
