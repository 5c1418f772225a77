#pragma once

#include "lts/decomposition.hpp"
#include "lts/onesparse.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lts {

enum class StepKind { Transform, InverseTransform, Exponential };

struct PlanStep {
  StepKind kind;
  int term;
  int color;
  double eval_time;
  double duration;
  /// Index of the first-order block the step belongs to.
  int window;
};

struct ExponentialPlan {
  int k = 1;
  std::vector<PlanStep> steps;
  std::vector<double> segment_boundaries;
  /// Sub-segment of every first-order block, as (start, end); end < start
  /// for backward blocks.
  std::vector<Interval> windows;
  /// Disjoint time intervals the plan covers (one unless pieces were
  /// excised). Discretized evaluation times are rounded within these.
  std::vector<Interval> domains;

  std::size_t exponential_count() const;
  std::size_t transform_count() const;
  /// One line per step: kind term color eval_time duration.
  std::string serialize() const;
};

struct Segment {
  double t_start;
  double t_end;
  int k;
};

/// Color classes in execution order, plus whether each term needs transforms.
struct ClassOrder {
  struct Ref {
    int term;
    int color;
  };
  std::vector<Ref> classes;
  std::vector<bool> identity_transform;

  static ClassOrder from(const Hamiltonian& h, const Decomposition& d);
};

/// s_l = 1 / (4 - 4^{1/(2l - 1)}), l >= 2.
double suzuki_fraction(int l);

/// Append U_k over one segment to `plan`.
void append_segment(ExponentialPlan& plan, const Segment& segment, const ClassOrder& order);

ExponentialPlan build_segment_plan(const Segment& segment, const ClassOrder& order);

/// U_k over consecutive segments [b_0, b_1], [b_1, b_2], ...
ExponentialPlan build_plan(const std::vector<double>& boundaries, int k, const ClassOrder& order);

/// r = ceil(2 eps^{-1/2k} (2k (5/3)^{k-1} Lambda dt)^{1 + 1/2k}).
std::int64_t constant_step_count(int k, double lambda, double dt, double eps);

struct ExecutionOptions {
  ElementMode mode = ElementMode::Exact;
  OracleConfig config;
};

/// Apply `plan` to the columns of `state` (pass the identity for the full
/// operator). Ledger counts every query made.
void execute_plan(const ExponentialPlan& plan, const Hamiltonian& h, const Decomposition& d,
                  CMatrix& state, const ExecutionOptions& options, QueryLedger& ledger);

/// Query totals execute_plan would record, without running it.
QueryLedger tally_plan(const ExponentialPlan& plan, int qubits, int value_qubits);

}  // namespace lts
