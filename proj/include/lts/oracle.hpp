#pragma once

#include "lts/hamiltonian.hpp"

#include <cstdint>
#include <utility>

namespace lts {

struct OracleConfig {
  int time_bits = 1;    // n'
  int value_qubits = 2; // n'', even
  double h_max = 1.0;
  double t0 = 0.0;
  double total_span = 1.0;

  void validate() const;
  /// Mesh spacing sigma = span / 2^n'.
  double spacing() const;
  std::int64_t mesh_size() const { return std::int64_t{1} << time_bits; }
};

/// Bit-query counters for one simulation run.
struct QueryLedger {
  std::uint64_t column_bit_queries = 0;
  std::uint64_t value_bit_queries = 0;
  std::uint64_t transform_calls = 0;
  std::uint64_t exponentials = 0;

  std::uint64_t oracle_total() const { return column_bit_queries + value_bit_queries; }
  QueryLedger& operator+=(const QueryLedger& o);
  bool operator==(const QueryLedger& o) const = default;
};

struct PrecisionRequirements {
  int time_bits;
  int value_qubits;
};

/// Time and value precision sufficient for round-off error <= eps/2.
PrecisionRequirements precision_requirements(int k, int M, int d, double dt, double eps,
                                             double max_dH, double h_max);

/// t0 + (q - 1/2) span / 2^n', q in [1, 2^n'].
double mesh_time(std::int64_t q, const OracleConfig& config);

/// Mesh index nearest to tau among mesh points inside [a, b].
std::int64_t round_time(double tau, Interval sub, const OracleConfig& config);

struct PolarValue {
  double modulus;
  double phase;
  std::uint64_t modulus_bits;
  std::uint64_t phase_bits;
};

/// Truncate rho e^{i phi} to n''/2 modulus bits (scaled by h_max) and n''/2
/// phase bits over [0, 2 pi).
PolarValue encode_polar(Complex value, int value_qubits, double h_max);

/// Query the value oracle for H_alpha(t_q)_{xy}. Charges n'' bits for the read
/// and n'' more when `uncompute` is set.
PolarValue matrix_value_polar(const HamiltonianTerm& term, Index x, Index y, std::int64_t q,
                              const OracleConfig& config, QueryLedger& ledger,
                              bool uncompute = true);

/// Bit p of the i-th column index in row x. Short rows are padded with x.
int column_index_bit(const HamiltonianTerm& term, Index x, int i, int p, QueryLedger& ledger);

}  // namespace lts
