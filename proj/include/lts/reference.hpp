#pragma once

#include "lts/catalog.hpp"
#include "lts/types.hpp"

#include <functional>
#include <vector>

namespace lts {

using MatrixFunction = std::function<CMatrix(double)>;

struct PropagatorStats {
  int accepted_steps = 0;
  int rejected_steps = 0;
  double error_estimate = 0.0;
};

/// U(tb, ta) for U' = -i H(t) U by classical RK4 with step doubling and one
/// Richardson extrapolation. Jump times in `breaks` are integrated as
/// separate smooth pieces; H is sampled strictly inside each piece.
CMatrix exact_propagator(const MatrixFunction& H, double ta, double tb, double tol = 1e-12,
                         const std::vector<double>& breaks = {},
                         PropagatorStats* stats = nullptr);

/// Convenience overload on an assembled Hamiltonian.
CMatrix exact_propagator(const Hamiltonian& h, double ta, double tb, double tol = 1e-12,
                         PropagatorStats* stats = nullptr);

/// ||A - B||_2 by singular values.
double operator_error(const CMatrix& exact, const CMatrix& approx);

struct OrderProbe {
  std::vector<double> dts;
  std::vector<double> errors;
  /// Points kept for the fit (error above the round-off floor).
  std::vector<double> used_dts;
  std::vector<double> used_errors;
  double slope = 0.0;
  bool exact = false;
};

/// Per-segment error of U_k on [t0, t0 + dt] for each dt, and the
/// least-squares slope of log error against log dt.
OrderProbe order_scaling_probe(const Hamiltonian& h, int k, const std::vector<double>& dts,
                               double t0, double floor = 1e-14);

}  // namespace lts
