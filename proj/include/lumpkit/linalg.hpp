#pragma once

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "lumpkit/types.hpp"

namespace lumpkit {

/// Max-row-sum norm that also accepts complex expressions.
template <typename Derived>
double inf_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Largest entry magnitude.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

template <typename Scalar>
struct GeneralizedInverse {
  MatrixX<Scalar> Qbar;  // n x nhat, QQbar = I
  double residual = 0.0; // ||Q Qbar - I||_inf
};

/// Minimum-norm right inverse Q^*(QQ^*)^-1 of a full-row-rank matrix,
/// computed through the SVD. Throws RankDeficient when rank(Q) < rows(Q).
template <typename Scalar>
GeneralizedInverse<Scalar> generalized_inverse(const MatrixX<Scalar>& Q,
                                               const Tolerances& tol = {}) {
  const Index nhat = Q.rows();
  if (nhat == 0 || Q.cols() < nhat)
    throw DomainError(ErrorCode::RankDeficient, "matrix has fewer columns than rows");

  Eigen::JacobiSVD<MatrixX<Scalar>> svd(Q, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.rank_rel * sv(0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  if (rank < nhat)
    throw DomainError(ErrorCode::RankDeficient,
                      "rank " + std::to_string(rank) + " < " + std::to_string(nhat));

  VectorX<Scalar> inv_sv(nhat);
  for (Index i = 0; i < nhat; ++i) inv_sv(i) = Scalar(1.0 / sv(i));
  GeneralizedInverse<Scalar> result;
  result.Qbar = svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().adjoint();
  result.residual =
      inf_norm((Q * result.Qbar - MatrixX<Scalar>::Identity(nhat, nhat)).eval());
  return result;
}

template <typename Scalar>
struct RankNullspace {
  Index rank = 0;
  MatrixX<Scalar> nullspace;  // orthonormal columns spanning ker(M)
};

/// SVD-based rank and kernel. rank counts singular values above
/// rank_rel * sigma_max.
template <typename Scalar>
RankNullspace<Scalar> rank_and_nullspace(const MatrixX<Scalar>& M,
                                         double rank_rel = 1e-12) {
  RankNullspace<Scalar> result;
  if (M.size() == 0) {
    result.rank = 0;
    result.nullspace = MatrixX<Scalar>::Identity(M.cols(), M.cols());
    return result;
  }
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? rank_rel * sv(0) : 0.0;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  result.rank = rank;
  result.nullspace = svd.matrixV().rightCols(M.cols() - rank);
  return result;
}

template <typename Scalar>
Index rank_of(const MatrixX<Scalar>& M, double rank_rel = 1e-12) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(M);
  const auto& sv = svd.singularValues();
  const double cutoff = rank_rel * sv(0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

/// Dense matrix exponential (scaling-and-squaring). Defined in linalg.cpp for
/// the two scalar types used by the library.
Matrix expm(const Matrix& A);
CMatrix expm(const CMatrix& A);

/// x(t) = exp(A t) x0. Throws Overflow when the result is not finite.
template <typename Scalar>
VectorX<Scalar> expm_action(const MatrixX<Scalar>& A, const VectorX<Scalar>& x0,
                            double t) {
  if (A.rows() != A.cols() || A.rows() != x0.size())
    throw DomainError(ErrorCode::DimensionMismatch, "expm_action: size mismatch");
  if (t < 0) throw DomainError(ErrorCode::InvalidArgument, "expm_action: t < 0");
  MatrixX<Scalar> E = expm(MatrixX<Scalar>(A * t));
  if (!E.allFinite())
    throw DomainError(ErrorCode::Overflow, "matrix exponential overflowed");
  return E * x0;
}

}  // namespace lumpkit
