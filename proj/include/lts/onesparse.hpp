#pragma once

#include "lts/decomposition.hpp"
#include "lts/oracle.hpp"

#include <vector>

namespace lts {

/// How matrix elements reach the rotations.
enum class ElementMode {
  Exact,        // undiscretized H(t) at the requested time
  Discretized,  // time rounded to the mesh, elements truncated to n'' bits
};

struct RotationAngles {
  double alpha;
  double phi;
};

/// alpha = 2 rho dt (sign of dt kept), phi passed through.
RotationAngles rotation_angles(double rho, double phi, double dt);

/// exp(-i [[0, h], [h*, 0]] dt) built from the rotation sequence
/// R_z(-pi/2) R_z(-phi) R_y(alpha) R_z(phi) R_z(pi/2), h = rho e^{i phi}.
Eigen::Matrix2cd two_dim_rotation(double rho, double phi, double dt);

/// Phase exp(-i h dt) on a diagonal element h = rho e^{i phi} (phi in {0, pi}
/// for Hermitian input), from R_z(-phi) R_x(-pi/2) R_y(2 rho cos(phi) dt)
/// R_x(pi/2) R_z(phi) acting on |1>.
Complex one_dim_phase(double rho, double phi, double dt);

/// The same sequence with the rotation angle 2 rho dt, literally as drawn in
/// the circuit. Loses the sign of negative diagonal elements; kept for tests.
Complex one_dim_phase_unsigned(double rho, double phi, double dt);

/// A 2x2 unitary on rows (m, M), or a phase on row m when m == M.
struct PairOp {
  Index m;
  Index M;
  Eigen::Matrix2cd u;
};

/// Apply every op to every column of `block`. Ops touch disjoint rows, so
/// they run in parallel.
void apply_pairs(CMatrix& block, const std::vector<PairOp>& ops);
/// Sequential reference of apply_pairs.
void apply_pairs_serial(CMatrix& block, const std::vector<PairOp>& ops);

/// Rotation ops of one color class for elements of `h` (the term's matrix at
/// the evaluation time), truncated through the polar encoding if requested.
std::vector<PairOp> build_pair_ops(const OneSparseTerm& one_sparse, const CMatrix& h, double dt,
                                   ElementMode mode, const OracleConfig& config);

/// Column-index queries charged per one-sparse exponential: 4n(z_n + 2).
std::uint64_t column_charge(int qubits);

/// exp(-i H_{alpha,j}(t) dt) on `state` (one column per state; the identity
/// gives the operator). In discretized mode t must be a mesh time.
void apply_one_sparse_exponential(CMatrix& state, const HamiltonianTerm& term,
                                  const OneSparseTerm& one_sparse, double t, double dt,
                                  ElementMode mode, const OracleConfig& config,
                                  QueryLedger& ledger);

/// Same, with the term matrix at the (already rounded) time supplied.
void apply_class_exponential(CMatrix& state, const CMatrix& h, const OneSparseTerm& one_sparse,
                             double dt, int qubits, ElementMode mode, const OracleConfig& config,
                             QueryLedger& ledger);

/// log2 of a power-of-two dimension.
int qubit_count(Index dim);

}  // namespace lts
