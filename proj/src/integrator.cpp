#include "lts/integrator.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace lts {

std::size_t ExponentialPlan::exponential_count() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.kind == StepKind::Exponential;
  return n;
}

std::size_t ExponentialPlan::transform_count() const { return steps.size() - exponential_count(); }

std::string ExponentialPlan::serialize() const {
  std::string out = fmt::format("k {}\n", k);
  for (double b : segment_boundaries) out += fmt::format("boundary {:.17g}\n", b);
  for (const auto& s : steps) {
    const char* kind = s.kind == StepKind::Exponential ? "exp"
                       : s.kind == StepKind::Transform ? "T"
                                                        : "Tinv";
    out += fmt::format("{} {} {} {:.17g} {:.17g}\n", kind, s.term, s.color, s.eval_time, s.duration);
  }
  return out;
}

ClassOrder ClassOrder::from(const Hamiltonian& h, const Decomposition& d) {
  ClassOrder o;
  for (std::size_t a = 0; a < d.per_term.size(); ++a) {
    for (const auto& c : d.per_term[a]) o.classes.push_back({static_cast<int>(a), c.color});
    o.identity_transform.push_back(h.terms[a].transform_is_identity());
  }
  return o;
}

double suzuki_fraction(int l) {
  if (l < 2) throw DomainError("Suzuki fraction needs l >= 2");
  return 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * l - 1.0)));
}

namespace {

// Symmetric first-order block over [a, b]: classes forward then backward, all
// at the midpoint with half durations. Transforms bracket each run of
// classes from one term; T T^dagger pairs inside a run are never emitted.
void emit_first_order(ExponentialPlan& plan, double a, double b, const ClassOrder& order) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int window = static_cast<int>(plan.windows.size());
  plan.windows.push_back({a, b});
  const auto& cls = order.classes;
  const int m = static_cast<int>(cls.size());

  auto emit = [&](int i, int prev, int next) {
    const int term = cls[i].term;
    const bool needs = !order.identity_transform[term];
    if (needs && (prev < 0 || prev >= m || cls[prev].term != term)) {
      plan.steps.push_back({StepKind::Transform, term, -1, mid, 0.0, window});
    }
    plan.steps.push_back({StepKind::Exponential, term, cls[i].color, mid, half, window});
    if (needs && (next < 0 || next >= m || cls[next].term != term)) {
      plan.steps.push_back({StepKind::InverseTransform, term, -1, mid, 0.0, window});
    }
  };
  for (int i = 0; i < m; ++i) emit(i, i - 1, i + 1);
  for (int i = m - 1; i >= 0; --i) emit(i, i + 1, i - 1);
}

void emit_recursive(ExponentialPlan& plan, double a, double b, int l, const ClassOrder& order) {
  if (l == 1) {
    emit_first_order(plan, a, b, order);
    return;
  }
  const double s = suzuki_fraction(l);
  const double tau = b - a;
  const double cuts[6] = {0.0, s, 2 * s, 1 - 2 * s, 1 - s, 1.0};
  for (int i = 0; i < 5; ++i) {
    emit_recursive(plan, a + cuts[i] * tau, i == 4 ? b : a + cuts[i + 1] * tau, l - 1, order);
  }
}

}  // namespace

void append_segment(ExponentialPlan& plan, const Segment& segment, const ClassOrder& order) {
  if (segment.k < 1) throw DomainError("integrator order k must be >= 1");
  if (!(segment.t_end > segment.t_start)) throw DomainError("segment must have positive length");
  // After an excised window the next segment starts past the last boundary.
  if (plan.segment_boundaries.empty() || plan.segment_boundaries.back() != segment.t_start) {
    plan.segment_boundaries.push_back(segment.t_start);
    plan.domains.push_back({segment.t_start, segment.t_end});
  } else {
    plan.domains.back().end = segment.t_end;
  }
  if (order.classes.empty()) {
    plan.segment_boundaries.push_back(segment.t_end);
    return;
  }
  emit_recursive(plan, segment.t_start, segment.t_end, segment.k, order);
  plan.segment_boundaries.push_back(segment.t_end);
}

ExponentialPlan build_segment_plan(const Segment& segment, const ClassOrder& order) {
  ExponentialPlan plan;
  plan.k = segment.k;
  append_segment(plan, segment, order);
  return plan;
}

ExponentialPlan build_plan(const std::vector<double>& boundaries, int k, const ClassOrder& order) {
  ExponentialPlan plan;
  plan.k = k;
  for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
    append_segment(plan, {boundaries[i], boundaries[i + 1], k}, order);
  }
  return plan;
}

std::int64_t constant_step_count(int k, double lambda, double dt, double eps) {
  if (k < 1) throw DomainError("k must be >= 1");
  if (!(eps > 0.0)) throw DomainError("epsilon must be positive");
  if (lambda < 0.0 || dt < 0.0) throw DomainError("Lambda and dt must be nonnegative");
  const double ld = lambda * dt;
  if (ld == 0.0) return 1;
  const double e = 1.0 / (2.0 * k);
  const double r = std::ceil(2.0 * std::pow(eps, -e) * std::pow(2.0 * k * std::pow(5.0 / 3.0, k - 1) * ld, 1.0 + e));
  if (!(r < static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2))) {
    throw DomainError("step count overflows");
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(r));
}

namespace {

Interval domain_of(const ExponentialPlan& plan, double t) {
  for (const auto& dom : plan.domains) {
    if (dom.contains(t)) return dom;
  }
  throw OutOfInterval(fmt::format("evaluation time {} lies outside every plan domain", t));
}

}  // namespace

void execute_plan(const ExponentialPlan& plan, const Hamiltonian& h, const Decomposition& d,
                  CMatrix& state, const ExecutionOptions& options, QueryLedger& ledger) {
  const bool discrete = options.mode == ElementMode::Discretized;
  if (discrete) options.config.validate();
  const int qubits = qubit_count(h.dim());

  // Steps of one block share an evaluation time, so keep the last term matrix.
  int cached_term = -1;
  double cached_time = std::numeric_limits<double>::quiet_NaN();
  CMatrix cached;
  int cached_window = -1;
  double rounded = 0.0;

  for (const auto& s : plan.steps) {
    const auto& term = h.terms.at(static_cast<std::size_t>(s.term));
    if (s.kind == StepKind::Transform) {
      state = term.transform() * state;
      ledger.transform_calls += 1;
      continue;
    }
    if (s.kind == StepKind::InverseTransform) {
      state = term.transform().adjoint() * state;
      ledger.transform_calls += 1;
      continue;
    }
    double t = s.eval_time;
    if (discrete) {
      if (s.window != cached_window) {
        rounded = mesh_time(round_time(s.eval_time, domain_of(plan, s.eval_time), options.config),
                            options.config);
        cached_window = s.window;
      }
      t = rounded;
    }
    if (s.term != cached_term || t != cached_time) {
      cached = term.evaluate(t);
      cached_term = s.term;
      cached_time = t;
    }
    const auto& cls = d.per_term.at(s.term).at(s.color);
    apply_class_exponential(state, cached, cls, s.duration, qubits, options.mode, options.config,
                            ledger);
  }
}

QueryLedger tally_plan(const ExponentialPlan& plan, int qubits, int value_qubits) {
  QueryLedger l;
  l.exponentials = plan.exponential_count();
  l.transform_calls = plan.transform_count();
  l.value_bit_queries = l.exponentials * 3ull * static_cast<std::uint64_t>(value_qubits);
  l.column_bit_queries = l.exponentials * column_charge(qubits);
  return l;
}

}  // namespace lts
