#include "lts/adaptive.hpp"

#include "lts/decomposition.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace lts {

namespace {

double lts_constant(int k, int d) { return 24.0 * d * d * k * std::pow(5.0 / 3.0, k - 1); }

constexpr std::int64_t kStepGuard = 200'000'000;

}  // namespace

GuessR guess_r(int k, int d, double upsilon_dt, double eps, double K, double dt) {
  if (k < 1 || d < 1) throw DomainError("k and d must be positive");
  if (!(eps > 0.0) || eps > 1.0) throw DomainError("epsilon must be in (0, 1]");
  if (!(upsilon_dt > 0.0) || !(dt > 0.0) || K < 0.0) throw DomainError("guess_r inputs must be positive");
  const double c = lts_constant(k, d);
  const double e = 1.0 / (2.0 * k);
  GuessR g{};
  g.A = std::pow(c * upsilon_dt, 1.0 + e) / std::pow(eps, e);
  g.r_g = static_cast<std::int64_t>(std::ceil(g.A + 3.0 * K * K * upsilon_dt + 1.0));
  g.Y = c / std::pow(eps / static_cast<double>(g.r_g), 1.0 / (2.0 * k + 1.0));
  return g;
}

double integrate_upsilon(const SmoothnessProfile& profile, Interval interval) {
  using boost::math::quadrature::gauss_kronrod;
  const auto& f = profile.upsilon;
  // Split at the midpoint so a kink there (e.g. a symmetric peak) is a node.
  const double mid = interval.midpoint();
  return gauss_kronrod<double, 31>::integrate(f, interval.begin, mid, 15, 1e-10) +
         gauss_kronrod<double, 31>::integrate(f, mid, interval.end, 15, 1e-10);
}

std::string AdaptiveSchedule::serialize() const {
  std::string out = fmt::format("r {}\nr_g {}\nY {:.17g}\n", r(), r_g, Y);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double c = i < certificates.size() ? certificates[i] : 0.0;
    out += fmt::format("{:.17g} {:.17g}\n", times[i], c);
  }
  return out;
}

std::vector<double> steps_for_bound(const SmoothnessProfile& profile, Interval interval, double w,
                                    std::vector<double>* certificates, std::int64_t limit) {
  if (!(w > 0.0)) throw DomainError("step bound must be positive");
  const double a = interval.begin;
  const double b = interval.end;
  const double span = b - a;
  const double K2 = profile.growth_constant * profile.growth_constant;
  const bool growth = profile.certificate == SmoothnessProfile::Certificate::GrowthBound;
  std::vector<double> times{a};
  if (certificates) certificates->clear();

  double t = a;
  double prev = 0.0;
  while (t < b) {
    if (limit >= 0 && static_cast<std::int64_t>(times.size()) - 1 >= limit) break;
    if (static_cast<std::int64_t>(times.size()) > kStepGuard) {
      throw InvariantViolation("adaptive step count exceeds the safety guard");
    }
    const double u = profile.upsilon(t);
    if (!std::isfinite(u)) {
      throw InsufficientSmoothness(fmt::format("Upsilon is not finite at t={}", t));
    }
    double delta = u > 0.0 ? w / (growth ? u * (1.0 + K2 * w) : u) : b - t;
    // Sampled steps grow by at most 2x per step so the shrink loop below
    // rarely runs more than once.
    if (!growth && prev > 0.0) delta = std::min(delta, 2.0 * prev);
    delta = std::min(delta, b - t);
    double cert = profile.step_max(t, t + delta);
    // A trial step from a flat stretch can reach a peak far ahead; jumping
    // straight to w/cert would size the step by that distant peak, so shrink
    // geometrically instead and stop at the first step that passes.
    while (!growth && cert * delta > w * (1.0 + 1e-12) && delta > 1e-15 * span) {
      delta = std::min(std::max(w / cert, 0.5 * delta), delta * (1.0 - 1e-9));
      cert = profile.step_max(t, t + delta);
    }
    if (!(delta > 1e-15 * span)) {
      throw InsufficientSmoothness(fmt::format("adaptive step collapsed at t={}", t));
    }
    prev = delta;
    const double next = (b - (t + delta) <= 1e-14 * span) ? b : t + delta;
    times.push_back(next);
    if (certificates) certificates->push_back(cert);
    t = next;
  }
  return times;
}

AdaptiveSchedule build_schedule(const SmoothnessProfile& profile, Interval interval, int k, int d,
                                double eps) {
  if (!(interval.length() > 0.0)) throw DomainError("interval must have positive length");
  const double ups_dt = integrate_upsilon(profile, interval);
  const GuessR g = guess_r(k, d, ups_dt, eps, profile.growth_constant, interval.length());
  AdaptiveSchedule s;
  s.r_g = g.r_g;
  s.Y = g.Y;
  s.step_bound = 1.0 / g.Y;
  // One step past r_g is enough to detect the violation.
  s.times = steps_for_bound(profile, interval, s.step_bound, &s.certificates, g.r_g + 1);
  if (s.times.back() < interval.end || s.r() > s.r_g) {
    throw InvariantViolation(
        fmt::format("adaptive schedule needs more than r_g = {} steps; check Upsilon and K", s.r_g));
  }
  for (std::size_t p = 0; p < s.certificates.size(); ++p) {
    const double width = s.times[p + 1] - s.times[p];
    if (s.certificates[p] * width > s.step_bound * (1.0 + 1e-9)) {
      throw InvariantViolation(fmt::format("step {} fails its certificate", p));
    }
  }
  return s;
}

AdaptiveSchedule refine_r_iteratively(const SmoothnessProfile& profile, Interval interval, int k,
                                      int d, double eps) {
  if (!(interval.length() > 0.0)) throw DomainError("interval must have positive length");
  const double ups_dt = integrate_upsilon(profile, interval);
  const GuessR g = guess_r(k, d, ups_dt, eps, profile.growth_constant, interval.length());
  const double c = lts_constant(k, d);

  AdaptiveSchedule s;
  s.r_g = g.r_g;
  s.Y = g.Y;
  s.converged = false;
  std::int64_t r = g.r_g;
  for (int round = 1; round <= 50; ++round) {
    const double w = std::pow(eps / static_cast<double>(r), 1.0 / (2.0 * k + 1.0)) / c;
    s.times = steps_for_bound(profile, interval, w, &s.certificates);
    s.step_bound = w;
    s.rounds = round;
    const std::int64_t count = s.r();
    if (count == r) {
      s.converged = true;
      break;
    }
    r = count;
  }
  return s;
}

DiscontinuitySplit split_discontinuities(Interval interval, const std::vector<double>& jumps,
                                         double H_max, double eps, int L,
                                         const OracleConfig& config) {
  if (static_cast<int>(jumps.size()) != L) throw InvalidInput("L must equal the number of jumps");
  if (!(H_max > 0.0) || !(eps > 0.0)) throw DomainError("H_max and epsilon must be positive");
  std::vector<double> pts{interval.begin};
  for (double j : jumps) {
    if (!(j > pts.back()) || !(j < interval.end)) throw InvalidInput("jumps must be interior and ascending");
    pts.push_back(j);
  }
  pts.push_back(interval.end);

  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) gap = std::min(gap, pts[i + 1] - pts[i]);
  const double sigma = config.spacing();
  if (!(sigma < gap)) {
    throw ContractViolation(
        fmt::format("mesh spacing {} is not below the smallest gap {} between jumps", sigma, gap));
  }

  DiscontinuitySplit out;
  out.delta = std::min(0.5 * (gap - sigma), std::log1p((eps / 6.0) / (L + 2)) / (2.0 * H_max));
  const double dt = interval.length();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Interval piece{pts[i] + out.delta, pts[i + 1] - out.delta};
    out.pieces.push_back(piece);
    out.budgets.push_back(eps * piece.length() / (3.0 * dt));
  }
  out.omitted_error = (L + 2) * std::expm1(2.0 * H_max * out.delta);
  return out;
}

std::uint64_t schedule_exponentials(std::int64_t r, int k, int m) {
  std::uint64_t fives = 1;
  for (int i = 1; i < k; ++i) fives *= 5;
  return 2ull * static_cast<std::uint64_t>(m) * fives * static_cast<std::uint64_t>(r);
}

namespace {

struct TwoIntervalModel {
  SmoothnessProfile low;
  SmoothnessProfile high;
  int d;
  int m;
};

TwoIntervalModel make_model(const catalog::Entry& entry) {
  const Decomposition dec = decompose(entry.hamiltonian);
  return {entry.profile(1), entry.profile(2), entry.hamiltonian.max_sparsity(), dec.class_count()};
}

std::uint64_t model_cost(const TwoIntervalModel& model, Interval iv, double t_split, double eps) {
  const double span = iv.length();
  std::uint64_t total = 0;
  if (t_split > iv.begin) {
    const double e = eps * (t_split - iv.begin) / span;
    const auto s = refine_r_iteratively(model.low, {iv.begin, t_split}, 1, model.d, e);
    total += schedule_exponentials(s.r(), 1, model.m);
  }
  if (t_split < iv.end) {
    const double e = eps * (iv.end - t_split) / span;
    const auto s = refine_r_iteratively(model.high, {t_split, iv.end}, 2, model.d, e);
    total += schedule_exponentials(s.r(), 2, model.m);
  }
  return total;
}

}  // namespace

std::uint64_t two_interval_cost(const catalog::Entry& entry, Interval interval, double t_split,
                                double eps) {
  return model_cost(make_model(entry), interval, t_split, eps);
}

KOptimization optimize_adaptive_k(const catalog::Entry& entry, Interval interval, double eps,
                                  double bracket_lo, double bracket_hi) {
  const TwoIntervalModel model = make_model(entry);
  const double span = interval.length();
  KOptimization out;
  auto cost = [&](double t) {
    ++out.evaluations;
    return model_cost(model, interval, t, eps);
  };

  out.single_k1 = cost(interval.end);
  // A vanishing k = 1 piece stands in for k = 2 on the whole interval, whose
  // Upsilon_4 is unbounded at the singular endpoint.
  out.single_k2 = cost(interval.begin + 1e-6 * span);

  const double lo = bracket_lo > 0.0 ? bracket_lo : interval.begin + 1e-3 * span;
  const double hi = bracket_hi > 0.0 ? bracket_hi : interval.end - 1e-3 * span;
  constexpr int kScan = 25;
  for (int i = 0; i < kScan; ++i) {
    const double f = static_cast<double>(i) / (kScan - 1);
    const double t = interval.begin + (lo - interval.begin) * std::pow((hi - interval.begin) / (lo - interval.begin), f);
    out.scan_t.push_back(t);
    out.scan_n_exp.push_back(cost(t));
  }

  // Local minima that stand out by more than 1% flag a multimodal curve.
  int minima = 0;
  for (int i = 0; i < kScan; ++i) {
    const double v = static_cast<double>(out.scan_n_exp[i]);
    const bool left = i == 0 || v < 0.99 * static_cast<double>(out.scan_n_exp[i - 1]);
    const bool right = i == kScan - 1 || v < 0.99 * static_cast<double>(out.scan_n_exp[i + 1]);
    minima += left && right;
  }
  out.warning = minima > 1;

  const auto best = std::min_element(out.scan_n_exp.begin(), out.scan_n_exp.end()) - out.scan_n_exp.begin();
  out.t_split = out.scan_t[best];
  out.n_exp = out.scan_n_exp[best];

  // Golden section inside the neighbors of the best scan point.
  double a = out.scan_t[std::max<std::ptrdiff_t>(0, best - 1)];
  double b = out.scan_t[std::min<std::ptrdiff_t>(kScan - 1, best + 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  std::uint64_t f1 = cost(x1);
  std::uint64_t f2 = cost(x2);
  auto note = [&](double t, std::uint64_t v) {
    if (v < out.n_exp) {
      out.n_exp = v;
      out.t_split = t;
    }
  };
  note(x1, f1);
  note(x2, f2);
  while (b - a > 1e-3 * span) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = cost(x1);
      note(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = cost(x2);
      note(x2, f2);
    }
  }
  out.interior = true;
  // The degenerate splits are valid candidates too.
  if (out.single_k1 < out.n_exp) {
    out.n_exp = out.single_k1;
    out.t_split = interval.end;
    out.interior = false;
  }
  if (out.single_k2 < out.n_exp) {
    out.n_exp = out.single_k2;
    out.t_split = interval.begin;
    out.interior = false;
  }
  return out;
}

}  // namespace lts
