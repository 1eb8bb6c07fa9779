#include "lumpkit/eigensystem.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "lumpkit/linalg.hpp"
#include "lumpkit/model.hpp"

namespace lumpkit {

CMatrix EigenSystem::stacked() const {
  CMatrix m(static_cast<Index>(pairs.size()), dimension());
  for (Index i = 0; i < m.rows(); ++i) m.row(i) = pairs[static_cast<size_t>(i)].vector.transpose();
  return m;
}

std::vector<Complex> EigenSystem::values() const {
  std::vector<Complex> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.value);
  return out;
}

double relative_residual(const Matrix& A, const EigenPair& pair) {
  CMatrix At = A.transpose().cast<Complex>();
  double num = max_abs((At * pair.vector - pair.value * pair.vector).eval());
  double den = inf_norm(At) * max_abs(pair.vector);
  if (den > 0.0) return num / den;
  return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

ResidualReport verify_eigensystem(const CompartmentalModel& model, const EigenSystem& es,
                                  double tol) {
  if (!es.pairs.empty() && es.dimension() != model.size())
    throw DomainError(ErrorCode::DimensionMismatch,
                      "eigen-system dimension does not match the model");
  ResidualReport report;
  for (const auto& pair : es.pairs) {
    if (pair.vector.size() != model.size())
      throw DomainError(ErrorCode::DimensionMismatch, "eigenvector size mismatch");
    double r = relative_residual(model.A, pair);
    report.per_pair.push_back(r);
    report.max_residual = std::max(report.max_residual, r);
  }
  report.ok = report.max_residual <= tol;
  return report;
}

void assign_multiplicities(EigenSystem& es, double gap_tol) {
  double scale = 0.0;
  for (const auto& p : es.pairs) scale = std::max(scale, std::abs(p.value));
  const double gap = gap_tol * std::max(scale, 1.0);
  for (auto& p : es.pairs) {
    int count = 0;
    for (const auto& q : es.pairs)
      if (std::abs(p.value - q.value) <= gap) ++count;
    p.multiplicity = count;
  }
}

EigenSystem eig_transpose(const Matrix& A) {
  if (A.rows() != A.cols())
    throw DomainError(ErrorCode::DimensionMismatch, "eig_transpose: matrix not square");
  if (!A.allFinite())
    throw DomainError(ErrorCode::InvalidArgument, "eig_transpose: non-finite entries");

  Eigen::ComplexEigenSolver<CMatrix> solver(A.transpose().cast<Complex>());
  if (solver.info() != Eigen::Success)
    throw DomainError(ErrorCode::ConvergenceFailure, "QR iteration did not converge");

  EigenSystem es;
  es.source = EigenSource::Numeric;
  const Index n = A.rows();
  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const Complex la = solver.eigenvalues()(a);
    const Complex lb = solver.eigenvalues()(b);
    if (la.real() != lb.real()) return la.real() < lb.real();
    return la.imag() < lb.imag();
  });
  for (Index i : order)
    es.pairs.push_back({solver.eigenvalues()(i), solver.eigenvectors().col(i), 1});
  assign_multiplicities(es);
  return es;
}

bool same_eigenvalue_multiset(const std::vector<Complex>& a, const std::vector<Complex>& b,
                              double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const Complex& va : a) {
    double best = std::numeric_limits<double>::infinity();
    size_t best_j = b.size();
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(va - b[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    if (best_j == b.size() || best > tol) return false;
    used[best_j] = true;
  }
  return true;
}

}  // namespace lumpkit
