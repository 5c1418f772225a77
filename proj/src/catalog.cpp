#include "lts/catalog.hpp"

#include "lts/linalg.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>

#include <fmt/format.h>

namespace lts::catalog {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

CMatrix identity2() { return CMatrix::Identity(2, 2); }
CMatrix sigma_x() { return linalg::pauli_x(); }
CMatrix sigma_z() { return linalg::pauli_z(); }

// Hermite polynomials H_0..H_P at u (physicists' convention).
void hermite(int P, double u, double* out) {
  out[0] = 1.0;
  if (P >= 1) out[1] = 2.0 * u;
  for (int n = 1; n < P; ++n) out[n + 1] = 2.0 * u * out[n] - 2.0 * n * out[n - 1];
}

SmoothnessProfile constant_profile(int k, double lambda) {
  SmoothnessProfile p;
  p.k = k;
  p.lambda_bound = lambda;
  p.upsilon = [lambda](double) { return lambda; };
  p.growth_constant = 0.0;
  return p;
}

double param(const Params& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

double gaussian_derivative(double a, int p, double t) {
  std::array<double, 32> h{};
  if (p < 0 || p >= static_cast<int>(h.size())) throw DomainError("derivative order out of range");
  const double u = (t - 1.0) / a;
  hermite(p, u, h.data());
  const double sign = (p % 2 == 0) ? 1.0 : -1.0;
  return sign * h[p] * std::exp(-u * u) / (kSqrtPi * std::pow(a, p + 1));
}

double gaussian_shape(int P, double u) {
  std::array<double, 32> h{};
  if (P < 0 || P >= static_cast<int>(h.size())) throw DomainError("smoothness order out of range");
  hermite(P, u, h.data());
  const double g = std::exp(-u * u) / kSqrtPi;
  double best = 0.0;
  for (int p = 0; p <= P; ++p) best = std::max(best, std::pow(std::abs(h[p]) * g, 1.0 / (p + 1)));
  return best;
}

double gaussian_upsilon_slope(double a, int P, double t) {
  int active = 0;
  double best = -1.0;
  for (int p = 0; p <= P; ++p) {
    const double v = std::pow(std::abs(gaussian_derivative(a, p, t)), 1.0 / (p + 1));
    if (v > best) {
      best = v;
      active = p;
    }
  }
  const double fp = gaussian_derivative(a, active, t);
  const double fq = gaussian_derivative(a, active + 1, t);
  const double e = 1.0 / (active + 1);
  return e * std::pow(std::abs(fp), e - 1.0) * std::copysign(1.0, fp) * fq;
}

GaussianEnvelope gaussian_envelope(int P) {
  static std::mutex mu;
  static std::map<int, GaussianEnvelope> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(P); it != cache.end()) return it->second;

  // F_P is even in u. Take the peak with 5% headroom, then the largest slope
  // keeping a/c + beta|u| below 1/F_P, with a 10% safety factor.
  constexpr double du = 1e-4;
  constexpr double umax = 12.0;
  double fmax = 0.0;
  for (double u = 0.0; u <= umax; u += du) fmax = std::max(fmax, gaussian_shape(P, u));
  const double c = 1.05 * fmax;
  double slope = std::numeric_limits<double>::infinity();
  for (double u = du; u <= umax; u += du) {
    slope = std::min(slope, (1.0 / gaussian_shape(P, u) - 1.0 / c) / u);
  }
  GaussianEnvelope env{c, 0.9 * slope};
  cache.emplace(P, env);
  return env;
}

SmoothnessProfile gaussian_exact_profile(double a, int k) {
  SmoothnessProfile p;
  p.k = k;
  const int P = 2 * k;
  p.lambda_bound = gaussian_envelope(P).c / 1.05 / a;
  p.upsilon = [a, P](double t) { return gaussian_shape(P, (t - 1.0) / a) / a; };
  // The exact floor decays like a Gaussian in the tails, so no finite K
  // holds uniformly in a; steps are certified by sampling instead.
  p.growth_constant = 0.0;
  p.certificate = SmoothnessProfile::Certificate::SampledMax;
  return p;
}

SmoothnessProfile gaussian_envelope_profile(double a, int k) {
  const GaussianEnvelope env = gaussian_envelope(2 * k);
  SmoothnessProfile p;
  p.k = k;
  p.lambda_bound = env.c / a;
  p.upsilon = [a, env](double t) { return 1.0 / (a / env.c + env.beta * std::abs(t - 1.0)); };
  p.growth_constant = std::sqrt(env.beta);
  p.certificate = SmoothnessProfile::Certificate::GrowthBound;
  return p;
}

Entry gaussian_delta(double a) {
  if (!(a > 0.0)) throw DomainError("gaussian width must be positive");
  ScalarFunction f;
  f.jet = [a](const Taylor& t) {
    const Taylor u = (t - 1.0) * (1.0 / a);
    return exp(-(u * u)) * (1.0 / (a * kSqrtPi));
  };
  f.value = [a](double t) {
    const double u = (t - 1.0) / a;
    return std::exp(-u * u) / (a * kSqrtPi);
  };
  const Interval iv{0.0, 2.0};
  Entry e;
  e.hamiltonian.name = "gaussian";
  e.hamiltonian.interval = iv;
  e.hamiltonian.terms.push_back(HamiltonianTerm::from_components(2, {{f, identity2()}}, iv));
  e.lambda = [a](int k) { return gaussian_envelope(2 * k).c / 1.05 / a; };
  e.profile = [a](int k) { return gaussian_envelope_profile(a, k); };
  e.h_max = 1.0 / (a * kSqrtPi);
  // max |f'| = sqrt(2/e) / (a^2 sqrt(pi)) at u = 1/sqrt(2).
  e.max_dH = std::sqrt(2.0 / std::exp(1.0)) / (a * a * kSqrtPi);
  e.H_max = e.h_max;
  return e;
}

Entry singular(double T) {
  if (!(T > 0.0)) throw DomainError("singular interval length must be positive");
  ScalarFunction f;
  f.jet = [](const Taylor& t) {
    if (t.value() == 0.0) {
      // Limits at the singular point: h^(p)(0) = 0 for p <= 2, unbounded beyond.
      Taylor r(t.order(), 0.0);
      for (std::size_t p = 3; p <= t.order(); ++p) r[p] = std::numeric_limits<double>::infinity();
      return r;
    }
    return pow_int(t, 5) * sin(reciprocal(t)) * exp(-t);
  };
  f.value = [](double t) { return t == 0.0 ? 0.0 : std::pow(t, 5) * std::sin(1.0 / t) * std::exp(-t); };
  const Interval iv{0.0, T};
  Entry e;
  e.hamiltonian.name = "singular";
  e.hamiltonian.interval = iv;
  e.hamiltonian.terms.push_back(HamiltonianTerm::from_components(2, {{f, identity2()}}, iv));
  auto term = e.hamiltonian.terms.front();
  e.profile = [term, T](int k) {
    SmoothnessProfile p;
    p.k = k;
    const int P = 2 * k;
    p.upsilon = [terms = std::vector<HamiltonianTerm>{term}, P](double t) { return upsilon_floor(terms, P, t); };
    p.certificate = SmoothnessProfile::Certificate::SampledMax;
    p.max_samples = 9;
    p.lambda_bound = 0.0;
    for (int i = 0; i <= 400; ++i) p.lambda_bound = std::max(p.lambda_bound, p.upsilon(T * i / 400.0));
    p.lambda_bound *= 1.05;
    return p;
  };
  e.lambda = [profile = e.profile](int k) { return profile(k).lambda_bound; };
  // |h| <= t^5, |h'| <= 5t^4 + t^3 + t^5 on [0, T].
  e.h_max = std::pow(T, 5);
  e.max_dH = 5 * std::pow(T, 4) + std::pow(T, 3) + std::pow(T, 5);
  e.H_max = e.h_max;
  return e;
}

Entry noncommuting_pair() {
  ScalarFunction f1;
  f1.jet = [](const Taylor& t) { return 1.0 + 0.5 * sin(t); };
  f1.value = [](double t) { return 1.0 + 0.5 * std::sin(t); };
  ScalarFunction f2;
  f2.jet = [](const Taylor& t) { return 0.8 + 0.3 * cos(2.0 * t); };
  f2.value = [](double t) { return 0.8 + 0.3 * std::cos(2.0 * t); };
  const Interval iv{0.0, 1.0};
  Entry e;
  e.hamiltonian.name = "pair";
  e.hamiltonian.interval = iv;
  e.hamiltonian.terms.push_back(HamiltonianTerm::from_components(2, {{f1, sigma_x()}}, iv));
  e.hamiltonian.terms.push_back(HamiltonianTerm::from_components(2, {{f2, sigma_z()}}, iv));
  // p = 0 dominates: 1.5 + 1.1; higher orders give (0.5 + 0.3*2^p)^{1/(p+1)} < 2.6.
  e.lambda = [](int k) {
    double best = 0.0;
    for (int p = 0; p <= 2 * k; ++p) {
      const double s = p == 0 ? 2.6 : 0.5 + 0.3 * std::pow(2.0, p);
      best = std::max(best, std::pow(s, 1.0 / (p + 1)));
    }
    return best;
  };
  e.profile = [lam = e.lambda](int k) { return constant_profile(k, lam(k)); };
  e.h_max = 1.5;
  e.max_dH = 0.6;
  e.H_max = std::hypot(1.5, 1.1);
  return e;
}

Entry piecewise() {
  static constexpr std::array<double, 3> levels{0.6, 1.0, 0.4};
  auto level = [](double t) { return t < 1.0 / 3.0 ? levels[0] : (t < 2.0 / 3.0 ? levels[1] : levels[2]); };
  ScalarFunction f1;
  f1.jet = [level](const Taylor& t) { return level(t.value()) + 0.3 * sin(t); };
  f1.value = [level](double t) { return level(t) + 0.3 * std::sin(t); };
  ScalarFunction f2;
  f2.jet = [](const Taylor& t) { return Taylor(t.order(), 0.5); };
  f2.value = [](double) { return 0.5; };
  const Interval iv{0.0, 1.0};
  Entry e;
  e.hamiltonian.name = "piecewise";
  e.hamiltonian.interval = iv;
  e.hamiltonian.discontinuities = {1.0 / 3.0, 2.0 / 3.0};
  e.hamiltonian.terms.push_back(
      HamiltonianTerm::from_components(2, {{f1, sigma_x()}, {f2, sigma_z()}}, iv));
  // ||H|| <= 1.3 + 0.5; derivatives only see 0.3 sin t.
  e.lambda = [](int) { return 1.8; };
  e.profile = [](int k) { return constant_profile(k, 1.8); };
  e.h_max = 1.3;
  e.max_dH = 0.3;
  e.H_max = std::hypot(1.3, 0.5);
  return e;
}

Entry random_sparse(std::uint64_t seed, int qubits, double dt) {
  if (qubits < 1 || qubits > 6) throw DomainError("random catalog supports 1..6 qubits");
  if (!(dt > 0.0)) throw DomainError("interval length must be positive");
  const Index n = Index{1} << qubits;
  boost::random::mt19937_64 rng(seed);
  boost::random::uniform_real_distribution<double> unit(-1.0, 1.0);
  boost::random::uniform_int_distribution<int> coin(0, 1);

  // Pattern: diagonal plus the matching x <-> x^1, or a ring x <-> x+-1.
  // Both are 2-sparse in every row.
  std::vector<lts::Entry> pattern;
  const bool ring = qubits >= 2 && coin(rng) == 1;
  for (Index x = 0; x < n; ++x) {
    if (ring) {
      pattern.emplace_back(x, (x + 1) % n);
      pattern.emplace_back(x, (x + n - 1) % n);
    } else {
      pattern.emplace_back(x, x);
      pattern.emplace_back(x, x ^ 1u);
    }
  }

  auto random_hermitian = [&]() {
    CMatrix b = CMatrix::Zero(n, n);
    for (const auto& [x, y] : pattern) {
      if (x > y) continue;
      if (x == y) {
        b(x, x) = unit(rng);
      } else {
        const Complex v(unit(rng), unit(rng));
        b(x, y) = v;
        b(y, x) = std::conj(v);
      }
    }
    return CMatrix(b / linalg::spectral_norm(b));
  };

  struct Coeff {
    double c0, c1, w, phi;
  };
  std::vector<Coeff> coeffs;
  std::vector<Component> components;
  for (int i = 0; i < 2; ++i) {
    Coeff c{unit(rng), 0.5 * unit(rng), 1.25 + 0.75 * unit(rng), M_PI * unit(rng)};
    coeffs.push_back(c);
    ScalarFunction f;
    f.jet = [c](const Taylor& t) { return c.c0 + c.c1 * sin(c.w * t + c.phi); };
    f.value = [c](double t) { return c.c0 + c.c1 * std::sin(c.w * t + c.phi); };
    components.push_back({f, random_hermitian()});
  }

  const Interval iv{0.0, dt};
  Entry e;
  e.hamiltonian.name = "random";
  e.hamiltonian.interval = iv;
  e.hamiltonian.terms.emplace_back(n, std::move(components), pattern, iv);
  e.lambda = [coeffs](int k) {
    double best = 0.0;
    for (int p = 0; p <= 2 * k; ++p) {
      double s = 0.0;
      for (const auto& c : coeffs) s += std::abs(c.c1) * std::pow(c.w, p) + (p == 0 ? std::abs(c.c0) : 0.0);
      best = std::max(best, std::pow(s, 1.0 / (p + 1)));
    }
    return best;
  };
  e.profile = [lam = e.lambda](int k) { return constant_profile(k, lam(k)); };
  double hmax = 0.0;
  double dmax = 0.0;
  for (const auto& c : coeffs) {
    hmax += std::abs(c.c0) + std::abs(c.c1);
    dmax += std::abs(c.c1) * c.w;
  }
  e.h_max = hmax;
  e.max_dH = dmax;
  e.H_max = hmax;
  return e;
}

Entry make(const std::string& name, const Params& params, std::uint64_t seed) {
  if (name == "gaussian") return gaussian_delta(param(params, "a", 0.1));
  if (name == "singular") return singular(param(params, "T", 1.0));
  if (name == "pair") return noncommuting_pair();
  if (name == "piecewise") return piecewise();
  if (name == "random") {
    return random_sparse(seed, static_cast<int>(param(params, "qubits", 2)), param(params, "dt", 1.0));
  }
  throw InvalidInput(fmt::format("unknown catalog entry '{}'", name));
}

}  // namespace lts::catalog
