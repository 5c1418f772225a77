#include "lts/cost.hpp"

#include "lts/types.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace lts {

namespace {

// Smallest c with 2^c >= z^2, i.e. ceil(2 log2 z) without rounding trouble.
std::uint64_t ceil_two_log2(std::uint64_t z) {
  const unsigned __int128 sq = static_cast<unsigned __int128>(z) * z;
  std::uint64_t c = 0;
  while ((static_cast<unsigned __int128>(1) << c) < sq) ++c;
  return c;
}

}  // namespace

int z_chain(std::uint64_t n) {
  if (n < 1) throw DomainError("z_chain needs n >= 1");
  int count = 0;
  while (n > 6) {
    n = ceil_two_log2(n);
    ++count;
  }
  return count;
}

std::uint64_t one_sparse_query_cost(int n, int value_qubits) {
  if (n < 1) throw DomainError("qubit count must be positive");
  if (value_qubits < 0 || value_qubits % 2 != 0) throw DomainError("value_qubits must be even");
  const auto un = static_cast<std::uint64_t>(n);
  return 4 * un * static_cast<std::uint64_t>(z_chain(un) + 2) + 3 * static_cast<std::uint64_t>(value_qubits);
}

double clamp_epsilon(int k, int d, double lambda, double dt, double eps) {
  return std::min(eps, 18.0 * std::pow(5.0 / 3.0, k - 1) * d * d * lambda * dt);
}

double constant_step_oracle_bound(int k, int M, int d, double lambda, double dt, double eps,
                                  double C) {
  const double et = clamp_epsilon(k, d, lambda, dt, eps);
  const double d2 = static_cast<double>(d) * d;
  const double inner = 24.0 * k * d2 * lambda * dt * std::pow(5.0 / 3.0, k) *
                       std::pow(6.0 * d2 * lambda * dt / (et / 2.0), 1.0 / (2 * k));
  return 12.0 * C * M * d2 * std::pow(5.0, k - 1) * std::ceil(inner);
}

double piecewise_oracle_bound(int k, int M, int d, double lambda, double dt, double eps,
                              double C, int L) {
  const double d2 = static_cast<double>(d) * d;
  const double inner = 24.0 * k * d2 * lambda * dt * std::pow(5.0 / 3.0, k) *
                       std::pow(6.0 * d2 * lambda * dt / (eps / 3.0), 1.0 / (2 * k));
  return 12.0 * C * M * d2 * std::pow(5.0, k - 1) * ((L + 1) + inner);
}

double adaptive_oracle_bound(int k, int M, int d, double upsilon_dt, double eps, double K,
                             double C) {
  const double d2 = static_cast<double>(d) * d;
  const double base = 24.0 * d2 * k * std::pow(5.0 / 3.0, k - 1) * upsilon_dt;
  const double inner = std::pow(base, 1.0 + 1.0 / (2 * k)) / std::pow(eps / 4.0, 1.0 / (2 * k)) +
                       3.0 * K * K * upsilon_dt + 1.0;
  return 12.0 * C * M * d2 * std::pow(5.0, k - 1) * std::ceil(inner);
}

int near_linear_k(int d, double upsilon_dt, double eps) {
  const double arg = static_cast<double>(d) * d * upsilon_dt / eps;
  if (!(arg > 1.0)) return 1;
  const double v = std::sqrt(0.5 * std::log(arg) / std::log(25.0 / 3.0));
  return std::max(1, static_cast<int>(std::ceil(v)));
}

int log_star(double n) {
  int count = 0;
  while (n > 1.0) {
    n = std::log2(n);
    ++count;
  }
  return count;
}

double space_estimate(int n) {
  const double ls = log_star(static_cast<double>(n));
  return n * ls * ls;
}

std::string CostReport::csv_header() {
  return "k,M,d,m_paper,m_actual,r,r_g,n_time_bits,n_value_qubits,C,N_exp_formula,N_exp_actual,"
         "N_oracle_formula,N_oracle_measured,N_T_formula,N_T_measured,k_star,space_estimate";
}

std::string CostReport::csv_row() const {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{:.17g},{},{:.17g},{},{:.17g},{},{},{:.17g}", k, M,
                     d, m_paper, m_actual, r, r_g, time_bits, value_qubits, C, N_exp_formula,
                     N_exp_actual, N_oracle_formula, N_oracle_measured, N_T_formula,
                     N_T_measured, k_star, space);
}

}  // namespace lts
