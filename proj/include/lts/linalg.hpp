#pragma once

#include "lts/types.hpp"

namespace lts::linalg {

/// Largest singular value, via Jacobi SVD.
double spectral_norm(const CMatrix& a);

/// Largest singular value through sqrt(lambda_max(A^dagger A)) with a
/// self-adjoint eigensolver. Kept as an independent route for cross-checks.
double spectral_norm_via_eigen(const CMatrix& a);

/// ||A - A^dagger|| <= tol * max(1, ||A||).
bool is_hermitian(const CMatrix& a, double tol = 1e-12);

/// ||U^dagger U - I|| <= tol.
bool is_unitary(const CMatrix& u, double tol = 1e-12);

bool is_identity(const CMatrix& u, double tol = 0.0);

/// exp(-i H t) for Hermitian H via the eigendecomposition of H.
CMatrix expm_hermitian(const CMatrix& h, double t);

/// Dense exp(A) by scaling and squaring with a Pade approximant.
CMatrix expm(const CMatrix& a);

// Single-qubit rotations R_a(theta) = exp(-i theta sigma_a / 2).
Eigen::Matrix2cd rot_x(double theta);
Eigen::Matrix2cd rot_y(double theta);
Eigen::Matrix2cd rot_z(double theta);

Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();

}  // namespace lts::linalg
