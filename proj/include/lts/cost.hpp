#pragma once

#include <cstdint>
#include <string>

namespace lts {

/// Iterations of z -> ceil(2 log2 z) from n until the value is at most 6.
int z_chain(std::uint64_t n);

/// Oracle queries per one-sparse exponential: 4n(z_n + 2) + 3n''.
std::uint64_t one_sparse_query_cost(int n, int value_qubits);

/// eps~ = min(eps, 18 (5/3)^{k-1} d^2 Lambda dt).
double clamp_epsilon(int k, int d, double lambda, double dt, double eps);

/// 12 C M d^2 5^{k-1} ceil(24 k d^2 Lambda dt (5/3)^k (6 d^2 Lambda dt / (eps~/2))^{1/2k}).
double constant_step_oracle_bound(int k, int M, int d, double lambda, double dt, double eps,
                                  double C);

/// 12 C M d^2 5^{k-1} [(L + 1) + 24 k d^2 Lambda dt (5/3)^k (6 d^2 Lambda dt / (eps/3))^{1/2k}].
double piecewise_oracle_bound(int k, int M, int d, double lambda, double dt, double eps,
                              double C, int L);

/// 12 C M d^2 5^{k-1} ceil([24 d^2 k (5/3)^{k-1} UpsDt]^{1+1/2k} / (eps/4)^{1/2k}
///                          + 3 K^2 UpsDt + 1).
double adaptive_oracle_bound(int k, int M, int d, double upsilon_dt, double eps, double K,
                             double C);

/// ceil(sqrt(log_{25/3}(d^2 UpsDt / eps) / 2)), or 1 when the argument is <= 1.
int near_linear_k(int d, double upsilon_dt, double eps);

/// Iterated base-2 logarithm.
int log_star(double n);

/// n (log* n)^2, informational only.
double space_estimate(int n);

struct CostReport {
  int k = 1;
  int M = 1;
  int d = 1;
  std::int64_t m_paper = 0;
  std::int64_t m_actual = 0;
  std::int64_t r = 0;
  std::int64_t r_g = 0;
  int time_bits = 0;
  int value_qubits = 0;
  std::uint64_t C = 0;
  double N_exp_formula = 0.0;
  std::uint64_t N_exp_actual = 0;
  double N_oracle_formula = 0.0;
  std::uint64_t N_oracle_measured = 0;
  double N_T_formula = 0.0;
  std::uint64_t N_T_measured = 0;
  int k_star = 1;
  double space = 0.0;

  static std::string csv_header();
  std::string csv_row() const;
};

}  // namespace lts
