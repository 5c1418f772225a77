#pragma once

#include "lts/taylor.hpp"
#include "lts/types.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lts {

using Entry = std::pair<Index, Index>;

/// Scalar time dependence f(t), evaluated on a Taylor jet so derivatives of
/// any order come for free. `value` is an optional fast path for order zero.
struct ScalarFunction {
  std::function<Taylor(const Taylor&)> jet;
  std::function<double(double)> value;

  double operator()(double t) const;
  /// f^(p)(t) for p = 0..order.
  std::vector<double> derivatives(double t, std::size_t order) const;
};

/// One summand f(t) * B with a constant Hermitian matrix B.
struct Component {
  ScalarFunction f;
  CMatrix matrix;
};

/// H_alpha(t) = sum_i f_i(t) B_i on a fixed union-over-time sparsity pattern,
/// conjugated by a constant unitary T_alpha.
class HamiltonianTerm {
 public:
  using DerivativeBound = std::function<double(int p, double t)>;

  HamiltonianTerm(Index dim, std::vector<Component> components, std::vector<Entry> pattern,
                  Interval domain);

  /// Pattern is inferred from the nonzero structure of the component matrices.
  static HamiltonianTerm from_components(Index dim, std::vector<Component> components,
                                         Interval domain);

  HamiltonianTerm& with_transform(CMatrix t);
  HamiltonianTerm& with_derivative_bound(DerivativeBound bound);

  Index dim() const { return dim_; }
  const std::vector<Entry>& pattern() const { return pattern_; }
  const std::vector<Component>& components() const { return components_; }
  const CMatrix& transform() const { return transform_; }
  bool transform_is_identity() const { return transform_identity_; }
  const Interval& domain() const { return domain_; }
  const std::optional<DerivativeBound>& derivative_bound() const { return bound_; }

  /// H_alpha(t), untransformed.
  CMatrix evaluate(double t) const;
  /// d^p/dt^p H_alpha(t) from the analytic jets.
  CMatrix derivative(int p, double t) const;
  /// ||H_alpha^(p)(t)||: the declared bound if present, else the exact
  /// spectral norm of the analytic derivative.
  double derivative_norm(int p, double t) const;
  /// derivative_norm for every p in 0..P from one jet per component.
  std::vector<double> derivative_norms(int P, double t) const;
  /// Columns of row x in the pattern, ascending.
  const std::vector<Index>& row(Index x) const { return rows_.at(x); }
  bool in_pattern(Index x, Index y) const;

 private:
  Index dim_;
  std::vector<Component> components_;
  std::vector<double> component_norms_;
  std::vector<Entry> pattern_;
  std::vector<std::vector<Index>> rows_;
  CMatrix transform_;
  bool transform_identity_ = true;
  Interval domain_;
  std::optional<DerivativeBound> bound_;
};

struct Hamiltonian {
  std::string name;
  std::vector<HamiltonianTerm> terms;
  Interval interval;
  /// Interior jump times, ascending.
  std::vector<double> discontinuities;

  Index dim() const { return terms.empty() ? 0 : terms.front().dim(); }
  /// sum_alpha T^dagger H_alpha(t) T.
  CMatrix assembled(double t) const;
  /// max over terms of sparsity_degree.
  int max_sparsity() const;
};

/// Lambda, Upsilon and K for one smoothness order P = 2k.
struct SmoothnessProfile {
  enum class Certificate {
    // Bound the step maximum from Upsilon(t_p) and K alone.
    GrowthBound,
    // Bound the step maximum by sampling Upsilon across the step.
    SampledMax,
  };

  int k = 1;
  double lambda_bound = 0.0;
  std::function<double(double)> upsilon;
  double growth_constant = 0.0;
  Certificate certificate = Certificate::GrowthBound;
  int max_samples = 33;

  /// Upper bound on max Upsilon over [a, b] per the certificate mode.
  double step_max(double a, double b) const;
};

int sparsity_degree(const HamiltonianTerm& term);

/// Spectral norm of the p-th central difference at t, one Richardson step.
double estimate_derivative_norm(const HamiltonianTerm& term, int p, double t, double h);

/// max_{p<=P} (sum_j ||H_j^(p)(t)||)^(1/(p+1)).
double upsilon_floor(const std::vector<HamiltonianTerm>& terms, int P, double t);

struct UpsilonViolation {
  double t;
  double derivative;
  double allowed;
};

struct UpsilonReport {
  std::vector<UpsilonViolation> violations;
  double tightest_K = 0.0;
  /// Sample points where the declared Upsilon fell below upsilon_floor.
  std::vector<double> below_floor;
};

UpsilonReport check_upsilon_derivative_bound(const SmoothnessProfile& profile,
                                             const std::vector<HamiltonianTerm>& terms,
                                             Interval interval, int samples);

}  // namespace lts
