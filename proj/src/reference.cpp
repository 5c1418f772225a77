#include "lts/reference.hpp"

#include "lts/decomposition.hpp"
#include "lts/integrator.hpp"
#include "lts/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace lts {

namespace {

constexpr int kMaxSteps = 5'000'000;

CMatrix rk4_step(const MatrixFunction& H, double t, double h, const CMatrix& U) {
  const Complex mi(0.0, -1.0);
  const CMatrix Hm = H(t + 0.5 * h);
  const CMatrix k1 = mi * (H(t) * U);
  const CMatrix k2 = mi * (Hm * (U + 0.5 * h * k1));
  const CMatrix k3 = mi * (Hm * (U + 0.5 * h * k2));
  const CMatrix k4 = mi * (H(t + h) * (U + h * k3));
  return U + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

CMatrix integrate_piece(const MatrixFunction& H, double a, double b, double tol, double span,
                        CMatrix U, PropagatorStats& stats) {
  // Keep samples inside [a, b) so a jump at b is never seen from the left piece.
  const double below_b = std::nextafter(b, a);
  const MatrixFunction Hp = [&](double t) { return H(std::clamp(t, a, below_b)); };

  double t = a;
  double h = std::min(b - a, 0.01 * span);
  while (t < b) {
    if (stats.accepted_steps + stats.rejected_steps > kMaxSteps) {
      throw ToleranceUnreachable(fmt::format("reference integration stalled at t={}", t),
                                 stats.error_estimate);
    }
    h = std::min(h, b - t);
    const CMatrix full = rk4_step(Hp, t, h, U);
    const CMatrix half = rk4_step(Hp, t + 0.5 * h, 0.5 * h, rk4_step(Hp, t, 0.5 * h, U));
    const double err = (half - full).cwiseAbs().maxCoeff() / 15.0;
    const double allowed = tol * h / span;
    // Below ~1e-16 per step the estimate is pure rounding; accept it.
    if (err > allowed && err >= 4e-16 && h < 1e-13 * span) {
      throw ToleranceUnreachable(fmt::format("step size underflow at t={}", t), err);
    }
    if (err <= allowed || err < 4e-16) {
      U = half + (half - full) / 15.0;
      t = (b - t <= h) ? b : t + h;
      stats.accepted_steps++;
      stats.error_estimate += err;
    } else {
      stats.rejected_steps++;
    }
    const double factor = err > 0.0 ? 0.9 * std::pow(allowed / err, 0.2) : 4.0;
    h *= std::clamp(factor, 0.2, 4.0);
  }
  return U;
}

}  // namespace

CMatrix exact_propagator(const MatrixFunction& H, double ta, double tb, double tol,
                         const std::vector<double>& breaks, PropagatorStats* stats) {
  if (!(tb > ta)) throw DomainError("propagator needs tb > ta");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  PropagatorStats local;
  PropagatorStats& st = stats ? *stats : local;
  const Eigen::Index n = H(ta).rows();
  CMatrix U = CMatrix::Identity(n, n);

  std::vector<double> cuts{ta};
  for (double b : breaks) {
    if (b > ta && b < tb) cuts.push_back(b);
  }
  cuts.push_back(tb);
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    U = integrate_piece(H, cuts[i], cuts[i + 1], tol, tb - ta, std::move(U), st);
  }
  return U;
}

CMatrix exact_propagator(const Hamiltonian& h, double ta, double tb, double tol,
                         PropagatorStats* stats) {
  return exact_propagator([&h](double t) { return h.assembled(t); }, ta, tb, tol,
                          h.discontinuities, stats);
}

double operator_error(const CMatrix& exact, const CMatrix& approx) {
  if (exact.rows() != approx.rows() || exact.cols() != approx.cols()) {
    throw InvalidInput("operator_error needs equal shapes");
  }
  return linalg::spectral_norm(exact - approx);
}

OrderProbe order_scaling_probe(const Hamiltonian& h, int k, const std::vector<double>& dts,
                               double t0, double floor) {
  const Decomposition d = decompose(h);
  const ClassOrder order = ClassOrder::from(h, d);
  const Index n = h.dim();
  OrderProbe probe;
  for (double dt : dts) {
    const ExponentialPlan plan = build_segment_plan({t0, t0 + dt, k}, order);
    CMatrix U = CMatrix::Identity(n, n);
    QueryLedger ledger;
    execute_plan(plan, h, d, U, {}, ledger);
    const CMatrix ref = exact_propagator(h, t0, t0 + dt, std::max(1e-14, 1e-3 * floor));
    const double e = operator_error(ref, U);
    probe.dts.push_back(dt);
    probe.errors.push_back(e);
    if (e >= floor) {
      probe.used_dts.push_back(dt);
      probe.used_errors.push_back(e);
    }
  }
  if (probe.used_dts.empty()) {
    probe.exact = true;
    return probe;
  }
  if (probe.used_dts.size() < 3) throw InsufficientData("fewer than 3 usable points for the fit");
  // Least squares on (log dt, log err).
  const std::size_t m = probe.used_dts.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(probe.used_dts[i]);
    const double y = std::log(probe.used_errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  probe.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return probe;
}

}  // namespace lts
