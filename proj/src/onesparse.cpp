#include "lts/onesparse.hpp"

#include "lts/cost.hpp"
#include "lts/linalg.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace lts {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Below this many amplitude updates the thread fork costs more than it saves.
constexpr std::size_t kParallelThreshold = 1 << 14;

inline void rotate(CMatrix& block, const PairOp& op) {
  const Eigen::Index cols = block.cols();
  if (op.m == op.M) {
    const Complex ph = op.u(1, 1);
    for (Eigen::Index c = 0; c < cols; ++c) block(op.m, c) *= ph;
    return;
  }
  for (Eigen::Index c = 0; c < cols; ++c) {
    const Complex a = block(op.m, c);
    const Complex b = block(op.M, c);
    block(op.m, c) = op.u(0, 0) * a + op.u(0, 1) * b;
    block(op.M, c) = op.u(1, 0) * a + op.u(1, 1) * b;
  }
}

}  // namespace

RotationAngles rotation_angles(double rho, double phi, double dt) {
  if (rho < 0.0) throw DomainError("modulus must be nonnegative");
  return {2.0 * rho * dt, phi};
}

Eigen::Matrix2cd two_dim_rotation(double rho, double phi, double dt) {
  const RotationAngles r = rotation_angles(rho, phi, dt);
  using namespace linalg;
  return rot_z(-kHalfPi) * rot_z(-r.phi) * rot_y(r.alpha) * rot_z(r.phi) * rot_z(kHalfPi);
}

Complex one_dim_phase(double rho, double phi, double dt) {
  using namespace linalg;
  const double alpha = 2.0 * rho * std::cos(phi) * dt;
  const Eigen::Matrix2cd u = rot_z(-phi) * rot_x(-kHalfPi) * rot_y(alpha) * rot_x(kHalfPi) * rot_z(phi);
  return u(1, 1);
}

Complex one_dim_phase_unsigned(double rho, double phi, double dt) {
  using namespace linalg;
  const RotationAngles r = rotation_angles(rho, phi, dt);
  const Eigen::Matrix2cd u =
      rot_z(-r.phi) * rot_x(-kHalfPi) * rot_y(r.alpha) * rot_x(kHalfPi) * rot_z(r.phi);
  return u(1, 1);
}

void apply_pairs_serial(CMatrix& block, const std::vector<PairOp>& ops) {
  for (const auto& op : ops) rotate(block, op);
}

void apply_pairs(CMatrix& block, const std::vector<PairOp>& ops) {
  const std::size_t work = ops.size() * static_cast<std::size_t>(block.cols());
  const auto n = static_cast<std::ptrdiff_t>(ops.size());
#pragma omp parallel for schedule(static) if (work >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) rotate(block, ops[static_cast<std::size_t>(i)]);
}

std::vector<PairOp> build_pair_ops(const OneSparseTerm& one_sparse, const CMatrix& h, double dt,
                                   ElementMode mode, const OracleConfig& config) {
  std::vector<PairOp> ops;
  ops.reserve(one_sparse.pairs.size());
  for (const auto& [m, M] : one_sparse.pairs) {
    const Complex v = h(m, M);
    double rho = std::abs(v);
    double phi = std::arg(v);
    if (mode == ElementMode::Discretized) {
      const PolarValue p = encode_polar(v, config.value_qubits, config.h_max);
      rho = p.modulus;
      phi = p.phase;
    }
    PairOp op{m, M, Eigen::Matrix2cd::Identity()};
    if (m == M) {
      op.u(1, 1) = one_dim_phase(rho, phi, dt);
    } else {
      op.u = two_dim_rotation(rho, phi, dt);
    }
    ops.push_back(op);
  }
  return ops;
}

std::uint64_t column_charge(int qubits) {
  return 4ull * static_cast<std::uint64_t>(qubits) * static_cast<std::uint64_t>(z_chain(qubits) + 2);
}

int qubit_count(Index dim) {
  int n = 0;
  while ((Index{1} << n) < dim) ++n;
  if ((Index{1} << n) != dim) throw InvalidInput(fmt::format("dimension {} is not a power of two", dim));
  return n;
}

void apply_one_sparse_exponential(CMatrix& state, const HamiltonianTerm& term,
                                  const OneSparseTerm& one_sparse, double t, double dt,
                                  ElementMode mode, const OracleConfig& config,
                                  QueryLedger& ledger) {
  if (!std::isfinite(dt)) throw DomainError("duration must be finite");
  if (state.rows() != term.dim()) throw InvalidInput("state dimension does not match the term");
  if (mode == ElementMode::Discretized) {
    const double pos = (t - config.t0) / config.spacing() + 0.5;
    if (std::abs(pos - std::round(pos)) > 1e-6 || pos < 0.5 || pos > config.mesh_size() + 0.5) {
      throw ContractViolation(fmt::format("evaluation time {} is not a mesh time", t));
    }
  }
  apply_class_exponential(state, term.evaluate(t), one_sparse, dt, qubit_count(term.dim()), mode,
                          config, ledger);
}

void apply_class_exponential(CMatrix& state, const CMatrix& h, const OneSparseTerm& one_sparse,
                             double dt, int qubits, ElementMode mode, const OracleConfig& config,
                             QueryLedger& ledger) {
  apply_pairs(state, build_pair_ops(one_sparse, h, dt, mode, config));
  ledger.value_bit_queries += 3ull * static_cast<std::uint64_t>(config.value_qubits);
  ledger.column_bit_queries += column_charge(qubits);
  ledger.exponentials += 1;
}

}  // namespace lts
