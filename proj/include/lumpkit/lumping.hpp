#pragma once

#include <optional>
#include <vector>

#include "lumpkit/eigensystem.hpp"
#include "lumpkit/linalg.hpp"
#include "lumpkit/model.hpp"

namespace lumpkit {

/// Full-row-rank aggregation matrix together with its provenance.
template <typename Scalar>
struct LumpingMatrixT {
  MatrixX<Scalar> Q;
  std::vector<int> selection;                     // eigenvector indices, if built from one
  std::optional<MatrixX<Scalar>> basis_transform; // P, if transform_basis was applied

  Index nhat() const { return Q.rows(); }
  Index n() const { return Q.cols(); }
};

using LumpingMatrix = LumpingMatrixT<Real>;
using LumpingMatrixC = LumpingMatrixT<Complex>;

/// Stacks the selected left eigenvectors as rows, in selection order.
/// Requires |selection| < n and linearly independent vectors
/// (DependentSelection otherwise).
LumpingMatrixC build_Q(const EigenSystem& es, const std::vector<int>& selection,
                       const Tolerances& tol = {});

/// Drops imaginary dust from an eigenvector-built Q; throws InvalidArgument if
/// any entry's imaginary part exceeds imag_tol.
LumpingMatrix realify(const LumpingMatrixC& Q, double imag_tol = 1e-12);

/// Exact-lumpability test for the linear system c' = Ac: true iff every row of
/// QA lies in the row space of Q, i.e. rank([Q; QA]) = rank(Q). Independent of
/// any generalized-inverse choice.
template <typename Scalar>
bool is_exactly_lumpable(const Matrix& A, const MatrixX<Scalar>& Q,
                         double rank_rel = 1e-12) {
  if (A.rows() != A.cols() || Q.cols() != A.rows())
    throw DomainError(ErrorCode::DimensionMismatch, "is_exactly_lumpable: size mismatch");
  MatrixX<Scalar> QA = Q * A.template cast<Scalar>();
  MatrixX<Scalar> stacked(2 * Q.rows(), Q.cols());
  stacked << Q, QA;
  return rank_of<Scalar>(stacked, rank_rel) == rank_of<Scalar>(Q, rank_rel);
}

template <typename Scalar>
struct LumpedModelT {
  MatrixX<Scalar> A_hat;
  VectorX<Scalar> b_hat;
  GeneralizedInverse<Scalar> Qbar;
  double exactness_residual = 0.0;  // ||QA - A_hat Q||_inf
  KineticReport kinetic;
};

using LumpedModel = LumpedModelT<Real>;
using LumpedModelC = LumpedModelT<Complex>;

namespace detail {
inline KineticReport lumped_kinetic(const Matrix& A_hat, const Vector& b_hat,
                                    double tol) {
  return validate_kinetic(A_hat, b_hat, tol);
}
inline KineticReport lumped_kinetic(const CMatrix& A_hat, const CVector& b_hat,
                                    double tol) {
  return validate_kinetic(A_hat, b_hat, tol, tol);
}
}  // namespace detail

/// A_hat = Q A Qbar with the canonical minimum-norm right inverse, b_hat = Qb.
/// Requires exact lumpability (NotLumpable otherwise); the result is
/// independent of the right-inverse choice on the invariant subspace, which
/// the exactness residual certifies.
template <typename Scalar>
LumpedModelT<Scalar> lump(const CompartmentalModel& model, const MatrixX<Scalar>& Q,
                          const Tolerances& tol = {}) {
  if (Q.cols() != model.size())
    throw DomainError(ErrorCode::DimensionMismatch, "lump: Q columns != model size");
  if (!is_exactly_lumpable<Scalar>(model.A, Q, tol.rank_rel))
    throw DomainError(ErrorCode::NotLumpable,
                      "rows of QA leave the row space of Q; no exact lumped system");
  LumpedModelT<Scalar> out;
  out.Qbar = generalized_inverse<Scalar>(Q, tol);
  MatrixX<Scalar> QA = Q * model.A.template cast<Scalar>();
  out.A_hat = QA * out.Qbar.Qbar;
  out.b_hat = Q * model.b.template cast<Scalar>();
  out.exactness_residual = inf_norm((QA - out.A_hat * Q).eval());
  out.kinetic = detail::lumped_kinetic(out.A_hat, out.b_hat, tol.residual);
  return out;
}

template <typename Scalar>
LumpedModelT<Scalar> lump(const CompartmentalModel& model, const LumpingMatrixT<Scalar>& Q,
                          const Tolerances& tol = {}) {
  return lump<Scalar>(model, Q.Q, tol);
}

/// PQ is again a lumping matrix for any nonsingular P; records P in the
/// provenance. Throws SingularP when |det P| is below tolerance.
template <typename Scalar>
LumpingMatrixT<Scalar> transform_basis(const LumpingMatrixT<Scalar>& Q,
                                       const MatrixX<Scalar>& P,
                                       const Tolerances& tol = {}) {
  if (P.rows() != P.cols() || P.rows() != Q.nhat())
    throw DomainError(ErrorCode::DimensionMismatch, "transform_basis: P must be nhat x nhat");
  if (std::abs(P.determinant()) <= tol.rank_rel * std::max(1.0, max_abs(P)))
    throw DomainError(ErrorCode::SingularP, "basis transform is singular");
  LumpingMatrixT<Scalar> out = Q;
  out.Q = P * Q.Q;
  out.basis_transform = P;
  return out;
}

struct FarkasResult {
  bool has_nonneg_geninverse = true;
  std::optional<Index> witness_row;  // row whose positive columns are all shared
};

/// Row criterion for a nonnegative matrix: no nonnegative generalized inverse
/// exists iff some row has, in the column of each of its positive entries,
/// another positive entry. Throws NegativeEntries when Q has a negative entry.
FarkasResult farkas_row_test(const Matrix& Q);

/// lump followed by validate_kinetic on the lumped pair.
KineticReport kinetic_after_lumping(const CompartmentalModel& model, const Matrix& Q,
                                    const Tolerances& tol = {});
KineticReport kinetic_after_lumping(const CompartmentalModel& model, const CMatrix& Q,
                                    const Tolerances& tol = {});

}  // namespace lumpkit
