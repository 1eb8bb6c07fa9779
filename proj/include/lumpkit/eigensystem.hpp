#pragma once

#include <vector>

#include "lumpkit/types.hpp"

namespace lumpkit {

struct CompartmentalModel;

enum class EigenSource { ClosedForm, Numeric };

struct EigenPair {
  Complex value;
  CVector vector;        // left eigenvector of A, i.e. eigenvector of A^T
  int multiplicity = 1;  // algebraic multiplicity of `value` in the system
};

/// Left eigen-system of a coefficient matrix: pairs (lambda, v) with
/// A^T v = lambda v.
struct EigenSystem {
  std::vector<EigenPair> pairs;
  EigenSource source = EigenSource::Numeric;

  Index dimension() const { return pairs.empty() ? 0 : pairs.front().vector.size(); }

  /// Eigenvectors stacked as rows, in pair order.
  CMatrix stacked() const;

  std::vector<Complex> values() const;
};

/// Relative residual ||A^T v - lambda v||_inf / (||A^T||_inf ||v||_inf) of one
/// pair; 0 when both numerator and denominator vanish.
double relative_residual(const Matrix& A, const EigenPair& pair);

struct ResidualReport {
  double max_residual = 0.0;
  bool ok = true;
  std::vector<double> per_pair;
};

/// Checks every pair of `es` against the model's coefficient matrix and flags
/// failure above `tol`. Throws DimensionMismatch on incompatible sizes.
ResidualReport verify_eigensystem(const CompartmentalModel& model, const EigenSystem& es,
                                  double tol);

/// Groups eigenvalues within gap_tol * max|lambda| and stamps each pair with
/// its cluster's algebraic multiplicity.
void assign_multiplicities(EigenSystem& es, double gap_tol = 1e-9);

/// Complete numeric left eigen-system of A (eigenvectors of A^T), sorted by
/// (Re, Im) ascending. Throws ConvergenceFailure if the QR iteration fails.
EigenSystem eig_transpose(const Matrix& A);

/// Multiset comparison of eigenvalues up to `tol` (greedy matching).
bool same_eigenvalue_multiset(const std::vector<Complex>& a, const std::vector<Complex>& b,
                              double tol);

}  // namespace lumpkit
