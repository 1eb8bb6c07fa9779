#include "lumpkit/lumping.hpp"

namespace lumpkit {

LumpingMatrixC build_Q(const EigenSystem& es, const std::vector<int>& selection,
                       const Tolerances& tol) {
  const Index n = es.dimension();
  if (selection.empty())
    throw DomainError(ErrorCode::InvalidArgument, "build_Q: empty selection");
  if (static_cast<Index>(selection.size()) >= n)
    throw DomainError(ErrorCode::InvalidArgument,
                      "build_Q: a lumping matrix needs fewer rows than the dimension");
  CMatrix Q(static_cast<Index>(selection.size()), n);
  for (size_t r = 0; r < selection.size(); ++r) {
    const int idx = selection[r];
    if (idx < 0 || idx >= static_cast<int>(es.pairs.size()))
      throw DomainError(ErrorCode::InvalidArgument, "build_Q: selection index out of range");
    Q.row(static_cast<Index>(r)) = es.pairs[static_cast<size_t>(idx)].vector.transpose();
  }
  if (rank_of<Complex>(Q, tol.rank_rel) < Q.rows())
    throw DomainError(ErrorCode::DependentSelection,
                      "selected eigenvectors are linearly dependent");
  LumpingMatrixC out;
  out.Q = std::move(Q);
  out.selection = selection;
  return out;
}

LumpingMatrix realify(const LumpingMatrixC& Q, double imag_tol) {
  if (max_abs(Q.Q.imag()) > imag_tol)
    throw DomainError(ErrorCode::InvalidArgument,
                      "lumping matrix has genuinely complex entries");
  LumpingMatrix out;
  out.Q = Q.Q.real();
  out.selection = Q.selection;
  if (Q.basis_transform) out.basis_transform = Q.basis_transform->real();
  return out;
}

FarkasResult farkas_row_test(const Matrix& Q) {
  for (Index i = 0; i < Q.rows(); ++i)
    for (Index j = 0; j < Q.cols(); ++j)
      if (Q(i, j) < 0.0)
        throw DomainError(ErrorCode::NegativeEntries,
                          "row criterion applies to nonnegative matrices only");

  for (Index r = 0; r < Q.rows(); ++r) {
    bool witness = true;  // vacuously for all-zero rows
    for (Index j = 0; j < Q.cols() && witness; ++j) {
      if (!(Q(r, j) > 0.0)) continue;
      bool shared = false;
      for (Index i = 0; i < Q.rows() && !shared; ++i)
        shared = (i != r && Q(i, j) > 0.0);
      witness = shared;
    }
    if (witness) return {false, r};
  }
  return {true, std::nullopt};
}

KineticReport kinetic_after_lumping(const CompartmentalModel& model, const Matrix& Q,
                                    const Tolerances& tol) {
  return lump<Real>(model, Q, tol).kinetic;
}

KineticReport kinetic_after_lumping(const CompartmentalModel& model, const CMatrix& Q,
                                    const Tolerances& tol) {
  return lump<Complex>(model, Q, tol).kinetic;
}

}  // namespace lumpkit
