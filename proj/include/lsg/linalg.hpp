#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "lsg/error.hpp"

namespace lsg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Normalized Hilbert-Schmidt norm sqrt(tr(M* M) / d).
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real hs_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw ValidationError("hs_norm: matrix is not square");
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.rows() == 0) return Real(0);
  return m.norm() / std::sqrt(static_cast<Real>(m.rows()));
}

/// ||A - B|| in the normalized Hilbert-Schmidt norm.
template <typename A, typename B>
auto hs_distance(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return hs_norm((a - b).eval());
}

/// ||M - I||.
template <typename Derived>
auto identity_defect(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  return hs_norm((m - Plain::Identity(m.rows(), m.cols())).eval());
}

/// ||M* M - I||.
template <typename Derived>
auto unitarity_defect(const Eigen::MatrixBase<Derived>& m) {
  return identity_defect((m.adjoint() * m).eval());
}

/// ||M^2 - I||.
template <typename Derived>
auto involution_defect(const Eigen::MatrixBase<Derived>& m) {
  return identity_defect((m * m).eval());
}

/// ||AB - BA||.
template <typename A, typename B>
auto commutator_norm(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return hs_norm((a * b - b * a).eval());
}

template <typename Derived>
bool is_diagonal(const Eigen::MatrixBase<Derived>& m, double tol = 0.0) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && std::abs(m(i, j)) > tol) return false;
    }
  }
  return true;
}

/// sgn x = 1 for x >= 0, -1 otherwise.
inline double sgn(double x) { return x >= 0.0 ? 1.0 : -1.0; }

/// D_ii = sgn Re X_ii, for diagonal X.
template <typename Derived>
typename Derived::PlainObject round_to_involution(const Eigen::MatrixBase<Derived>& x) {
  if (x.rows() != x.cols()) throw ValidationError("round_to_involution: matrix is not square");
  if (!is_diagonal(x)) throw ValidationError("round_to_involution: matrix is not diagonal");
  typename Derived::PlainObject d = Derived::PlainObject::Zero(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) d(i, i) = sgn(std::real(x(i, i)));
  return d;
}

/// Orthonormal eigenvectors of a Hermitian matrix with eigenvalues in ascending order.
struct HermitianEigen {
  Eigen::VectorXd values;
  CMatrix vectors;
};

HermitianEigen hermitian_eigen(const CMatrix& h);

/// The involution closest to a unitary X: sign of the eigenvalues' real parts in
/// an eigenbasis of X (the diagonal rounding applied in that basis).
CMatrix nearest_involution(const CMatrix& x);

/// Projects onto the nearest unitary (polar factor).
CMatrix nearest_unitary(const CMatrix& x);

/// Kronecker product.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Block diagonal a (+) b.
CMatrix block_diag(const CMatrix& a, const CMatrix& b);

/// [[0, upper], [lower, 0]].
CMatrix antidiag(const CMatrix& upper, const CMatrix& lower);

/// [[0, I], [I, 0]] of size 2d.
CMatrix swap_matrix(Eigen::Index d);

/// Orthonormal bases of joint eigenspaces of commuting Hermitian involutions,
/// found by successive block refinement. Each block holds the columns of one
/// joint eigenspace.
std::vector<CMatrix> joint_eigenspaces(const std::vector<CMatrix>& involutions, Eigen::Index dim);

}  // namespace lsg
