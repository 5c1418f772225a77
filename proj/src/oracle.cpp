#include "lts/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace lts {

void OracleConfig::validate() const {
  if (time_bits < 1 || time_bits > 52) throw DomainError("time_bits must be in [1, 52]");
  if (value_qubits < 2 || value_qubits % 2 != 0 || value_qubits > 104) {
    throw DomainError("value_qubits must be even and in [2, 104]");
  }
  if (!(h_max > 0.0)) throw DomainError("h_max must be positive");
  if (!(total_span > 0.0)) throw DomainError("mesh span must be positive");
}

double OracleConfig::spacing() const { return std::ldexp(total_span, -time_bits); }

QueryLedger& QueryLedger::operator+=(const QueryLedger& o) {
  column_bit_queries += o.column_bit_queries;
  value_bit_queries += o.value_bit_queries;
  transform_calls += o.transform_calls;
  exponentials += o.exponentials;
  return *this;
}

PrecisionRequirements precision_requirements(int k, int M, int d, double dt, double eps,
                                             double max_dH, double h_max) {
  if (!(eps > 0.0)) throw DomainError("epsilon must be positive");
  if (eps > 1.0) throw DomainError("epsilon must be at most 1");
  if (k < 1 || M < 1 || d < 1 || !(dt > 0.0) || !(max_dH > 0.0) || !(h_max > 0.0)) {
    throw DomainError("precision_requirements arguments must be positive");
  }
  const double base = 32.0 * k * M * d * d * std::pow(5.0 / 3.0, k - 1);
  const double time_arg = max_dH * base * dt * dt / eps;
  const double value_arg = base * h_max * dt / eps;
  const int n1 = static_cast<int>(std::ceil(std::log2(time_arg)));
  const int n2 = static_cast<int>(std::ceil(std::log2(value_arg)));
  return {std::max(1, n1), 2 * std::max(0, n2) + 6};
}

double mesh_time(std::int64_t q, const OracleConfig& config) {
  if (q < 1 || q > config.mesh_size()) {
    throw IndexError(fmt::format("mesh index {} outside [1, {}]", q, config.mesh_size()));
  }
  return config.t0 + (static_cast<double>(q) - 0.5) * config.spacing();
}

std::int64_t round_time(double tau, Interval sub, const OracleConfig& config) {
  const double sigma = config.spacing();
  const double a = std::min(sub.begin, sub.end);
  const double b = std::max(sub.begin, sub.end);
  const double slack = 1e-12 * config.total_span;
  if (a < config.t0 - slack || b > config.t0 + config.total_span + slack) {
    throw OutOfInterval("rounding window leaves the mesh span");
  }
  if (b - a < sigma * (1.0 - 1e-12)) {
    throw ContractViolation(
        fmt::format("window of length {} is shorter than the mesh spacing {}", b - a, sigma));
  }
  const std::int64_t last = config.mesh_size();
  auto clampq = [last](std::int64_t q) { return std::clamp<std::int64_t>(q, 1, last); };

  // Floating-point guesses, then fix up against the exact mesh_time values.
  std::int64_t lo = clampq(static_cast<std::int64_t>(std::ceil((a - config.t0) / sigma + 0.5)));
  while (lo > 1 && mesh_time(lo - 1, config) >= a) --lo;
  while (lo < last && mesh_time(lo, config) < a) ++lo;
  std::int64_t hi = clampq(static_cast<std::int64_t>(std::floor((b - config.t0) / sigma + 0.5)));
  while (hi < last && mesh_time(hi + 1, config) <= b) ++hi;
  while (hi > 1 && mesh_time(hi, config) > b) --hi;
  if (lo > hi) throw ContractViolation("no mesh point inside the rounding window");

  std::int64_t q = std::clamp<std::int64_t>(std::llround((tau - config.t0) / sigma + 0.5), lo, hi);
  for (std::int64_t c : {q - 1, q + 1}) {
    if (c >= lo && c <= hi &&
        std::abs(mesh_time(c, config) - tau) < std::abs(mesh_time(q, config) - tau)) {
      q = c;
    }
  }
  return q;
}

PolarValue encode_polar(Complex value, int value_qubits, double h_max) {
  const int b = value_qubits / 2;
  const double scale = std::ldexp(1.0, b);
  const auto top = static_cast<std::uint64_t>(scale) - 1;
  const double rho = std::abs(value);
  double phi = std::arg(value);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;

  auto quantize = [&](double x) {
    const double f = std::floor(x * scale);
    if (!(f > 0.0)) return std::uint64_t{0};
    return std::min(top, static_cast<std::uint64_t>(f));
  };
  PolarValue out{};
  out.modulus_bits = quantize(rho / h_max);
  out.phase_bits = out.modulus_bits == 0 ? 0 : quantize(phi / (2.0 * std::numbers::pi));
  out.modulus = h_max * static_cast<double>(out.modulus_bits) / scale;
  out.phase = 2.0 * std::numbers::pi * static_cast<double>(out.phase_bits) / scale;
  return out;
}

PolarValue matrix_value_polar(const HamiltonianTerm& term, Index x, Index y, std::int64_t q,
                              const OracleConfig& config, QueryLedger& ledger, bool uncompute) {
  const double t = mesh_time(q, config);
  const auto charge = static_cast<std::uint64_t>(config.value_qubits);
  ledger.value_bit_queries += uncompute ? 2 * charge : charge;
  if (x >= term.dim() || y >= term.dim()) throw IndexError("matrix index out of range");
  if (!term.in_pattern(x, y)) return PolarValue{0.0, 0.0, 0, 0};
  return encode_polar(term.evaluate(t)(x, y), config.value_qubits, config.h_max);
}

int column_index_bit(const HamiltonianTerm& term, Index x, int i, int p, QueryLedger& ledger) {
  if (x >= term.dim()) throw IndexError("row out of range");
  if (i < 0 || i >= sparsity_degree(term)) throw IndexError("column slot exceeds sparsity");
  if (p < 0 || p >= 32) throw IndexError("bit position out of range");
  ledger.column_bit_queries += 1;
  const auto& cols = term.row(x);
  const Index col = static_cast<std::size_t>(i) < cols.size() ? cols[i] : x;
  return static_cast<int>((col >> p) & 1u);
}

}  // namespace lts
