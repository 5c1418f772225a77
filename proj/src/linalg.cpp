#include "lts/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace lts::linalg {

double spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

double spectral_norm_via_eigen(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  const CMatrix gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

bool is_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, spectral_norm(a));
  return spectral_norm(a - a.adjoint()) <= tol * scale;
}

bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const CMatrix residual = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return spectral_norm(residual) <= tol;
}

bool is_identity(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

CMatrix expm_hermitian(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto& vecs = es.eigenvectors();
  CVector phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    phases(i) = std::exp(Complex(0.0, -t * es.eigenvalues()(i)));
  }
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

CMatrix expm(const CMatrix& a) { return a.exp(); }

Eigen::Matrix2cd rot_x(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Eigen::Matrix2cd r;
  r << c, Complex(0.0, -s), Complex(0.0, -s), c;
  return r;
}

Eigen::Matrix2cd rot_y(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Eigen::Matrix2cd r;
  r << c, -s, s, c;
  return r;
}

Eigen::Matrix2cd rot_z(double theta) {
  Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
  r(0, 0) = std::exp(Complex(0.0, -0.5 * theta));
  r(1, 1) = std::exp(Complex(0.0, 0.5 * theta));
  return r;
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace lts::linalg
