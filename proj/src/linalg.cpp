#include "lsg/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace lsg {

HermitianEigen hermitian_eigen(const CMatrix& h) {
  if (h.rows() != h.cols()) throw ValidationError("hermitian_eigen: matrix is not square");
  const CMatrix sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  if (es.info() != Eigen::Success) throw ValidationError("hermitian_eigen: eigensolver failed");
  return HermitianEigen{es.eigenvalues(), es.eigenvectors()};
}

CMatrix nearest_involution(const CMatrix& x) {
  const auto eig = hermitian_eigen((x + x.adjoint()) / 2.0);
  Eigen::VectorXcd signs(eig.values.size());
  for (Eigen::Index i = 0; i < signs.size(); ++i) signs(i) = sgn(eig.values(i));
  return eig.vectors * signs.asDiagonal() * eig.vectors.adjoint();
}

CMatrix nearest_unitary(const CMatrix& x) {
  Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

CMatrix block_diag(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMatrix antidiag(const CMatrix& upper, const CMatrix& lower) {
  if (upper.rows() != lower.cols() || upper.cols() != lower.rows()) {
    throw ValidationError("antidiag: block shapes do not fit");
  }
  CMatrix out = CMatrix::Zero(upper.rows() + lower.rows(), upper.cols() + lower.cols());
  out.topRightCorner(upper.rows(), upper.cols()) = upper;
  out.bottomLeftCorner(lower.rows(), lower.cols()) = lower;
  return out;
}

CMatrix swap_matrix(Eigen::Index d) {
  const CMatrix id = CMatrix::Identity(d, d);
  return antidiag(id, id);
}

std::vector<CMatrix> joint_eigenspaces(const std::vector<CMatrix>& involutions, Eigen::Index dim) {
  std::vector<CMatrix> blocks{CMatrix::Identity(dim, dim)};
  for (const auto& x : involutions) {
    if (x.rows() != dim || x.cols() != dim) throw ValidationError("joint_eigenspaces: dimension mismatch");
    std::vector<CMatrix> refined;
    for (const auto& q : blocks) {
      const auto eig = hermitian_eigen(q.adjoint() * x * q);
      // Eigenvalues of an involution sit near -1 and +1, ascending.
      Eigen::Index split = 0;
      while (split < eig.values.size() && eig.values(split) < 0.0) ++split;
      const auto k = eig.values.size();
      if (split > 0) refined.push_back(q * eig.vectors.leftCols(split));
      if (split < k) refined.push_back(q * eig.vectors.rightCols(k - split));
    }
    blocks = std::move(refined);
  }
  return blocks;
}

}  // namespace lsg
