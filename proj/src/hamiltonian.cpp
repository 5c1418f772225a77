#include "lts/hamiltonian.hpp"

#include "lts/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace lts {

double ScalarFunction::operator()(double t) const {
  if (value) return value(t);
  return jet(Taylor(0, t)).value();
}

std::vector<double> ScalarFunction::derivatives(double t, std::size_t order) const {
  const Taylor r = jet(Taylor::variable(order, t));
  std::vector<double> out(order + 1);
  for (std::size_t p = 0; p <= order; ++p) out[p] = r.derivative(p);
  return out;
}

HamiltonianTerm::HamiltonianTerm(Index dim, std::vector<Component> components,
                                 std::vector<Entry> pattern, Interval domain)
    : dim_(dim),
      components_(std::move(components)),
      pattern_(std::move(pattern)),
      rows_(dim),
      transform_(CMatrix::Identity(dim, dim)),
      domain_(domain) {
  if (dim == 0) throw DegenerateInput("term dimension must be positive");
  std::sort(pattern_.begin(), pattern_.end());
  pattern_.erase(std::unique(pattern_.begin(), pattern_.end()), pattern_.end());
  for (const auto& [x, y] : pattern_) {
    if (x >= dim || y >= dim) throw IndexError(fmt::format("pattern entry ({}, {}) out of range", x, y));
    rows_[x].push_back(y);
  }
  for (const auto& c : components_) {
    if (c.matrix.rows() != dim || c.matrix.cols() != dim) {
      throw InvalidInput("component matrix has wrong dimension");
    }
    if (!linalg::is_hermitian(c.matrix)) throw InvalidInput("component matrix is not Hermitian");
    component_norms_.push_back(linalg::spectral_norm(c.matrix));
  }
}

HamiltonianTerm HamiltonianTerm::from_components(Index dim, std::vector<Component> components,
                                                 Interval domain) {
  std::vector<Entry> pattern;
  for (Index x = 0; x < dim; ++x) {
    for (Index y = 0; y < dim; ++y) {
      for (const auto& c : components) {
        if (c.matrix(x, y) != Complex(0.0, 0.0)) {
          pattern.emplace_back(x, y);
          break;
        }
      }
    }
  }
  return HamiltonianTerm(dim, std::move(components), std::move(pattern), domain);
}

HamiltonianTerm& HamiltonianTerm::with_transform(CMatrix t) {
  if (t.rows() != dim_ || t.cols() != dim_ || !linalg::is_unitary(t)) {
    throw InvalidInput("transform must be a unitary of the term dimension");
  }
  transform_identity_ = linalg::is_identity(t);
  transform_ = std::move(t);
  return *this;
}

HamiltonianTerm& HamiltonianTerm::with_derivative_bound(DerivativeBound bound) {
  bound_ = std::move(bound);
  return *this;
}

CMatrix HamiltonianTerm::evaluate(double t) const {
  CMatrix h = CMatrix::Zero(dim_, dim_);
  for (const auto& c : components_) h += c.f(t) * c.matrix;
  return h;
}

CMatrix HamiltonianTerm::derivative(int p, double t) const {
  if (p < 0) throw DomainError("derivative order must be nonnegative");
  CMatrix h = CMatrix::Zero(dim_, dim_);
  for (const auto& c : components_) {
    if (!c.f.jet) throw InsufficientSmoothness("component has no analytic derivatives");
    h += c.f.derivatives(t, static_cast<std::size_t>(p))[p] * c.matrix;
  }
  return h;
}

double HamiltonianTerm::derivative_norm(int p, double t) const {
  if (bound_) return (*bound_)(p, t);
  const CMatrix h = derivative(p, t);
  if (!h.allFinite()) return std::numeric_limits<double>::infinity();
  return linalg::spectral_norm(h);
}

std::vector<double> HamiltonianTerm::derivative_norms(int P, double t) const {
  if (P < 0) throw DomainError("derivative order must be nonnegative");
  std::vector<double> out(P + 1);
  if (bound_) {
    for (int p = 0; p <= P; ++p) out[p] = (*bound_)(p, t);
    return out;
  }
  std::vector<std::vector<double>> jets;
  for (const auto& c : components_) {
    if (!c.f.jet) throw InsufficientSmoothness("component has no analytic derivatives");
    jets.push_back(c.f.derivatives(t, static_cast<std::size_t>(P)));
  }
  for (int p = 0; p <= P; ++p) {
    if (components_.size() == 1) {
      // ||f^(p) B|| = |f^(p)| ||B||, no decomposition needed.
      const double v = std::abs(jets[0][p]) * component_norms_[0];
      out[p] = std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
      continue;
    }
    CMatrix h = CMatrix::Zero(dim_, dim_);
    for (std::size_t i = 0; i < components_.size(); ++i) h += jets[i][p] * components_[i].matrix;
    out[p] = h.allFinite() ? linalg::spectral_norm(h) : std::numeric_limits<double>::infinity();
  }
  return out;
}

bool HamiltonianTerm::in_pattern(Index x, Index y) const {
  if (x >= dim_) return false;
  const auto& r = rows_[x];
  return std::binary_search(r.begin(), r.end(), y);
}

CMatrix Hamiltonian::assembled(double t) const {
  const Index n = dim();
  CMatrix h = CMatrix::Zero(n, n);
  for (const auto& term : terms) {
    if (term.transform_is_identity()) {
      h += term.evaluate(t);
    } else {
      h += term.transform().adjoint() * term.evaluate(t) * term.transform();
    }
  }
  return h;
}

int Hamiltonian::max_sparsity() const {
  int d = 0;
  for (const auto& term : terms) d = std::max(d, sparsity_degree(term));
  return d;
}

double SmoothnessProfile::step_max(double a, double b) const {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (certificate == Certificate::GrowthBound) {
    const double u = upsilon(lo);
    const double denom = 1.0 - growth_constant * growth_constant * u * (hi - lo);
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    return u / denom;
  }
  const int n = std::max(2, max_samples);
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    m = std::max(m, upsilon(t));
  }
  return m;
}

int sparsity_degree(const HamiltonianTerm& term) {
  if (term.pattern().empty()) throw DegenerateInput("empty sparsity pattern");
  std::size_t d = 0;
  for (Index x = 0; x < term.dim(); ++x) d = std::max(d, term.row(x).size());
  return static_cast<int>(d);
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

CMatrix central_difference(const HamiltonianTerm& term, int p, double t, double h) {
  CMatrix acc = CMatrix::Zero(term.dim(), term.dim());
  for (int j = 0; j <= p; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    const double tj = t + (0.5 * p - j) * h;
    acc += sign * binomial(p, j) * term.evaluate(tj);
  }
  return acc / std::pow(h, p);
}

}  // namespace

double estimate_derivative_norm(const HamiltonianTerm& term, int p, double t, double h) {
  if (p < 0) throw DomainError("derivative order must be nonnegative");
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  if (!term.domain().contains(t - p * h) || !term.domain().contains(t + p * h)) {
    throw OutOfInterval(fmt::format("stencil t={} +- {}*{} leaves the domain", t, p, h));
  }
  if (p == 0) return linalg::spectral_norm(term.evaluate(t));
  const CMatrix coarse = central_difference(term, p, t, h);
  const CMatrix fine = central_difference(term, p, t, 0.5 * h);
  return linalg::spectral_norm((4.0 * fine - coarse) / 3.0);
}

double upsilon_floor(const std::vector<HamiltonianTerm>& terms, int P, double t) {
  if (P < 0) throw DomainError("smoothness order must be nonnegative");
  std::vector<double> sums(P + 1, 0.0);
  for (const auto& term : terms) {
    const bool analytic = term.derivative_bound().has_value() ||
                          std::all_of(term.components().begin(), term.components().end(),
                                      [](const Component& c) { return bool(c.f.jet); });
    if (analytic) {
      const auto norms = term.derivative_norms(P, t);
      for (int p = 0; p <= P; ++p) sums[p] += norms[p];
      continue;
    }
    for (int p = 0; p <= P; ++p) {
      try {
        sums[p] += estimate_derivative_norm(term, p, t, 1e-4 * term.domain().length());
      } catch (const OutOfInterval&) {
        throw InsufficientSmoothness(fmt::format("no derivative data of order {} at t={}", p, t));
      }
    }
  }
  double best = 0.0;
  for (int p = 0; p <= P; ++p) best = std::max(best, std::pow(sums[p], 1.0 / (p + 1)));
  return best;
}

UpsilonReport check_upsilon_derivative_bound(const SmoothnessProfile& profile,
                                             const std::vector<HamiltonianTerm>& terms,
                                             Interval interval, int samples) {
  if (samples < 2) throw DomainError("need at least two samples");
  UpsilonReport report;
  const double span = interval.length();
  const double h = 1e-4 * span;
  const double K2 = profile.growth_constant * profile.growth_constant;
  const auto& u = profile.upsilon;

  // Richardson-refined first derivative; one-sided at the ends.
  auto slope = [&](double t, double step) {
    if (t - step < interval.begin) return (-3.0 * u(t) + 4.0 * u(t + step) - u(t + 2 * step)) / (2 * step);
    if (t + step > interval.end) return (3.0 * u(t) - 4.0 * u(t - step) + u(t - 2 * step)) / (2 * step);
    return (u(t + step) - u(t - step)) / (2 * step);
  };

  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = interval.begin + span * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double d = (4.0 * slope(t, 0.5 * h) - slope(t, h)) / 3.0;
    const double v = u(t);
    const double allowed = K2 * v * v;
    if (std::abs(d) > allowed * (1.0 + 1e-6) + 1e-12) report.violations.push_back({t, d, allowed});
    if (v > 0.0) worst = std::max(worst, std::abs(d) / (v * v));
    if (!terms.empty() && v < upsilon_floor(terms, 2 * profile.k, t) * (1.0 - 1e-12)) {
      report.below_floor.push_back(t);
    }
  }
  report.tightest_K = std::sqrt(worst);
  return report;
}

}  // namespace lts
