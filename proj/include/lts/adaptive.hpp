#pragma once

#include "lts/catalog.hpp"
#include "lts/oracle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lts {

struct GuessR {
  double A;
  std::int64_t r_g;
  double Y;
};

/// A = [24 d^2 k (5/3)^{k-1} UpsDt]^{1+1/2k} / eps^{1/2k},
/// r_g = ceil(A + 3 K^2 UpsDt + 1), Y = 24 d^2 k (5/3)^{k-1} / (eps/r_g)^{1/(2k+1)}.
GuessR guess_r(int k, int d, double upsilon_dt, double eps, double K, double dt);

/// Integral of Upsilon over the interval (adaptive Gauss-Kronrod).
double integrate_upsilon(const SmoothnessProfile& profile, Interval interval);

struct AdaptiveSchedule {
  std::vector<double> times;
  std::int64_t r_g = 0;
  double Y = 0.0;
  /// Certified upper bound on max Upsilon over each step.
  std::vector<double> certificates;
  /// Per-step bound the certificates were checked against: max Ups * dt <= bound.
  double step_bound = 0.0;
  int rounds = 0;
  bool converged = true;

  std::int64_t r() const { return times.empty() ? 0 : static_cast<std::int64_t>(times.size()) - 1; }
  std::string serialize() const;
};

/// Steps from t_{p+1} = t_p + 1/(Upsilon(t_p)(Y + K^2)); the last step is
/// cut at the interval end. Throws InvariantViolation when r > r_g or a
/// step fails its certificate.
AdaptiveSchedule build_schedule(const SmoothnessProfile& profile, Interval interval, int k, int d,
                                double eps);

/// Fixed point of r -> (number of steps of width (eps/r)^{1/(2k+1)} /
/// (24 d^2 k (5/3)^{k-1} max Upsilon)), starting at r_g. At most 50 rounds.
AdaptiveSchedule refine_r_iteratively(const SmoothnessProfile& profile, Interval interval, int k,
                                      int d, double eps);

/// Step widths for a given certified per-step bound w: each step satisfies
/// step_max * width <= w.
std::vector<double> steps_for_bound(const SmoothnessProfile& profile, Interval interval, double w,
                                    std::vector<double>* certificates = nullptr,
                                    std::int64_t limit = -1);

struct DiscontinuitySplit {
  double delta = 0.0;
  std::vector<Interval> pieces;
  std::vector<double> budgets;
  /// Bound on the error from skipping the excised windows.
  double omitted_error = 0.0;
};

/// Excise delta-neighborhoods around each jump (and trim the ends), with
/// delta = min(0.5 [min gap - sigma], ln(1 + (eps/6)/(L + 2)) / (2 H_max)).
DiscontinuitySplit split_discontinuities(Interval interval, const std::vector<double>& jumps,
                                         double H_max, double eps, int L,
                                         const OracleConfig& config);

struct KOptimization {
  double t_split = 0.0;
  std::uint64_t n_exp = 0;
  std::vector<double> scan_t;
  std::vector<std::uint64_t> scan_n_exp;
  std::uint64_t single_k1 = 0;
  std::uint64_t single_k2 = 0;
  bool warning = false;
  /// False when a single-k run (t' at an end) beat every interior split.
  bool interior = false;
  int evaluations = 0;
};

/// N_exp of refined schedules on [a, t'] with k = 1 and [t', b] with k = 2,
/// eps split in proportion to length (each piece keeps integrator error
/// below half its share).
std::uint64_t two_interval_cost(const catalog::Entry& entry, Interval interval, double t_split,
                                double eps);

/// Minimize two_interval_cost over t' by a log scan then golden section;
/// the single-k ends are returned when no interior split is cheaper.
KOptimization optimize_adaptive_k(const catalog::Entry& entry, Interval interval, double eps,
                                  double bracket_lo = 0.0, double bracket_hi = 0.0);

/// Exponentials in an adaptive run: 2 m 5^{k-1} r.
std::uint64_t schedule_exponentials(std::int64_t r, int k, int m);

}  // namespace lts
