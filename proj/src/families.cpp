#include "lumpkit/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lumpkit {

namespace {

void require_distinct(const std::vector<double>& values, double gap_tol,
                      const char* what) {
  double scale = 1.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  for (size_t i = 0; i < values.size(); ++i)
    for (size_t j = i + 1; j < values.size(); ++j)
      if (std::abs(values[i] - values[j]) < gap_tol * scale)
        throw DomainError(ErrorCode::NonRobustParameters, what);
}

void require_positive(const Vector& v, const char* what) {
  for (Index i = 0; i < v.size(); ++i)
    if (!(v(i) > 0.0)) throw DomainError(ErrorCode::InvalidArgument, what);
}

CVector unit(Index n, Index i) {
  CVector v = CVector::Zero(n);
  v(i) = 1.0;
  return v;
}

}  // namespace

FamilyResult catenary_irreversible(const Vector& k, const Vector& mu,
                                   const Tolerances& tol) {
  const Index M = mu.size();
  if (M < 1 || k.size() != M - 1)
    throw DomainError(ErrorCode::InvalidArgument, "catenary: need |mu| = M, |k| = M-1");
  require_positive(k, "catenary: transfer rates must be positive");
  for (Index i = 0; i < M; ++i)
    if (mu(i) < 0.0)
      throw DomainError(ErrorCode::InvalidArgument, "catenary: outflow rates must be >= 0");

  std::vector<double> eigenvalues;
  for (Index i = 0; i + 1 < M; ++i) eigenvalues.push_back(-k(i) - mu(i));
  eigenvalues.push_back(-mu(M - 1));
  require_distinct(eigenvalues, tol.robust_gap, "catenary: coincident eigenvalues");

  Matrix A = Matrix::Zero(M, M);
  for (Index i = 0; i + 1 < M; ++i) {
    A(i, i) = -k(i) - mu(i);
    A(i + 1, i) = k(i);
  }
  A(M - 1, M - 1) = -mu(M - 1);

  EigenSystem es;
  es.source = EigenSource::ClosedForm;
  const bool flowed = (mu.cwiseAbs().maxCoeff() > 0.0);
  if (!flowed) {
    // Leading-1 rows: entry j of row i is prod_{l<j} (k_l - k_i)/k_l, zero past i.
    for (Index i = 0; i + 1 < M; ++i) {
      CVector v = CVector::Zero(M);
      double prod = 1.0;
      v(0) = 1.0;
      for (Index j = 1; j <= i; ++j) {
        prod *= (k(j - 1) - k(i)) / k(j - 1);
        v(j) = prod;
      }
      es.pairs.push_back({Complex(eigenvalues[static_cast<size_t>(i)], 0.0), v, 1});
    }
    es.pairs.push_back({Complex(0.0, 0.0), CVector::Ones(M), 1});
  } else {
    // Trailing-1 rows: entry j of row i is prod_{l=j..i-1} k_l/(k_l - k_i + mu_l - mu_i).
    for (Index i = 0; i + 1 < M; ++i) {
      CVector v = CVector::Zero(M);
      v(i) = 1.0;
      for (Index j = i - 1; j >= 0; --j)
        v(j) = v(j + 1) * k(j) / (k(j) - k(i) + mu(j) - mu(i));
      es.pairs.push_back({Complex(eigenvalues[static_cast<size_t>(i)], 0.0), v, 1});
    }
    CVector v = CVector::Zero(M);
    v(M - 1) = 1.0;
    for (Index j = M - 2; j >= 0; --j)
      v(j) = v(j + 1) * k(j) / (k(j) + mu(j) - mu(M - 1));
    es.pairs.push_back({Complex(-mu(M - 1), 0.0), v, 1});
  }
  return {CompartmentalModel::from_matrix(std::move(A)), std::move(es)};
}

FamilyResult mamillary_inward(const Vector& k, const Tolerances& tol) {
  const Index M = k.size();
  if (M < 1) throw DomainError(ErrorCode::InvalidArgument, "mamillary: need M >= 1");
  require_positive(k, "mamillary: rates must be positive");
  std::vector<double> kv(k.begin(), k.end());
  require_distinct(kv, tol.robust_gap, "mamillary: coincident rates");

  Matrix A = Matrix::Zero(M + 1, M + 1);
  for (Index i = 0; i < M; ++i) {
    A(i, i) = -k(i);
    A(M, i) = k(i);
  }

  EigenSystem es;
  es.source = EigenSource::ClosedForm;
  for (Index i = 0; i < M; ++i)
    es.pairs.push_back({Complex(-k(i), 0.0), unit(M + 1, i), 1});
  es.pairs.push_back({Complex(0.0, 0.0), CVector::Ones(M + 1), 1});
  return {CompartmentalModel::from_matrix(std::move(A)), std::move(es)};
}

FamilyResult mamillary_outward(const Vector& k) {
  const Index M = k.size();
  if (M < 1) throw DomainError(ErrorCode::InvalidArgument, "mamillary: need M >= 1");
  require_positive(k, "mamillary: rates must be positive");
  double K = 0.0;  // sequential, matching the column-sum order
  for (Index i = 0; i < M; ++i) K += k(i);

  Matrix A = Matrix::Zero(M + 1, M + 1);
  for (Index i = 0; i < M; ++i) A(i, M) = k(i);
  A(M, M) = -K;

  EigenSystem es;
  es.source = EigenSource::ClosedForm;
  es.pairs.push_back({Complex(-K, 0.0), unit(M + 1, M), 1});
  for (Index i = 0; i + 1 < M; ++i) {
    CVector v = CVector::Zero(M + 1);
    v(i) = 1.0;
    v(M - 1) = -k(i) / k(M - 1);
    es.pairs.push_back({Complex(0.0, 0.0), v, static_cast<int>(M)});
  }
  CVector v = CVector::Zero(M + 1);
  v(M - 1) = K / k(M - 1);
  v(M) = 1.0;
  es.pairs.push_back({Complex(0.0, 0.0), v, static_cast<int>(M)});
  return {CompartmentalModel::from_matrix(std::move(A)), std::move(es)};
}

FamilyResult mamillary_mixed_example(const Vector& k, const Tolerances& tol) {
  if (k.size() != 5)
    throw DomainError(ErrorCode::InvalidArgument, "mixed-flow example takes 5 rates");
  require_positive(k, "mamillary: rates must be positive");
  require_distinct({k(0), k(1)}, tol.robust_gap, "mixed-flow example: k1 = k2");
  const double K = k(2) + k(3) + k(4);

  Matrix A = Matrix::Zero(6, 6);
  A(0, 0) = -k(0);
  A(1, 1) = -k(1);
  A(2, 5) = k(2);
  A(3, 5) = k(3);
  A(4, 5) = k(4);
  A(5, 5) = -K;

  EigenSystem es;
  es.source = EigenSource::ClosedForm;
  es.pairs.push_back({Complex(-k(0), 0.0), unit(6, 0), 1});
  es.pairs.push_back({Complex(-k(1), 0.0), unit(6, 1), 1});
  es.pairs.push_back({Complex(-K, 0.0), unit(6, 5), 1});
  CVector v4 = CVector::Zero(6);
  v4(2) = 1.0;
  v4(5) = k(2) / K;
  CVector v5 = CVector::Zero(6);
  v5(2) = 1.0;
  v5(4) = -k(2) / k(4);
  CVector v6 = CVector::Zero(6);
  v6(2) = 1.0;
  v6(3) = -k(2) / k(3);
  es.pairs.push_back({Complex(0.0, 0.0), v4, 3});
  es.pairs.push_back({Complex(0.0, 0.0), v5, 3});
  es.pairs.push_back({Complex(0.0, 0.0), v6, 3});
  return {CompartmentalModel::from_matrix(std::move(A)), std::move(es)};
}

FamilyResult circulant_simplicial(const Vector& c, double d, const Tolerances& tol) {
  const Index M = c.size() + 1;
  if (M < 2) throw DomainError(ErrorCode::InvalidArgument, "circulant: need M >= 2");
  for (Index i = 0; i < c.size(); ++i)
    if (c(i) < 0.0)
      throw DomainError(ErrorCode::InvalidArgument, "circulant: rates must be >= 0");
  if (d < 0.0) throw DomainError(ErrorCode::InvalidArgument, "circulant: outflow must be >= 0");

  Vector row(M);  // first row (c0, c1, ..., c_{M-1}) of the circulant A^T
  double total = d;
  for (Index i = 0; i < c.size(); ++i) total += c(i);
  row(0) = -total;
  row.tail(M - 1) = c;

  Matrix At(M, M);
  for (Index i = 0; i < M; ++i)
    for (Index j = 0; j < M; ++j) At(i, j) = row((j - i + M) % M);
  Matrix A = At.transpose();

  EigenSystem es;
  es.source = EigenSource::ClosedForm;
  if (M == 3 && std::abs(c(0) - c(1)) <=
                    tol.robust_gap * std::max(1.0, std::max(c(0), c(1)))) {
    const double lam0 = row(0) + c(0) + c(1);
    const double lam1 = row(0) - c(0);
    es.pairs.push_back({Complex(lam0, 0.0), CVector::Ones(3), 1});
    CVector u(3), w(3);
    u << -1.0, 0.0, 1.0;
    w << -1.0, 1.0, 0.0;
    es.pairs.push_back({Complex(lam1, 0.0), u, 1});
    es.pairs.push_back({Complex(lam1, 0.0), w, 1});
    assign_multiplicities(es, tol.robust_gap);
    return {CompartmentalModel::from_matrix(std::move(A)), std::move(es)};
  }
  for (Index kidx = 0; kidx < M; ++kidx) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(kidx) / static_cast<double>(M);
    const Complex eps = std::polar(1.0, angle);
    Complex lambda(0.0, 0.0);
    CVector v(M);
    Complex power(1.0, 0.0);
    for (Index m = 0; m < M; ++m) {
      lambda += row(m) * power;
      v(m) = power;
      power *= eps;
    }
    es.pairs.push_back({lambda, v, 1});
  }
  assign_multiplicities(es, tol.robust_gap);
  return {CompartmentalModel::from_matrix(std::move(A)), std::move(es)};
}

CompartmentalModel cycle(const Vector& k, bool reversible) {
  const Index M = k.size();
  if (M < 2) throw DomainError(ErrorCode::InvalidArgument, "cycle: need M >= 2");
  require_positive(k, "cycle: rates must be positive");

  if (!reversible) {
    Matrix A = Matrix::Zero(M, M);
    for (Index i = 0; i < M; ++i) {
      A(i, i) = -k(i);
      A((i + 1) % M, i) = k(i);
    }
    return CompartmentalModel::from_matrix(std::move(A));
  }
  const double rate = k(0);
  for (Index i = 1; i < M; ++i)
    if (k(i) != rate)
      throw DomainError(ErrorCode::InvalidArgument,
                        "reversible cycles are generated only with uniform rates; "
                        "build non-uniform ones from a raw coefficient matrix");
  Matrix A = Matrix::Zero(M, M);
  for (Index i = 0; i < M; ++i) {
    A(i, i) = -2.0 * rate;
    A(i, (i + 1) % M) += rate;
    A(i, (i + M - 1) % M) += rate;
  }
  return CompartmentalModel::from_matrix(std::move(A));
}

double cycle3_discriminant(double k1, double k2, double k3) {
  return k1 * k1 + (k2 - k3) * (k2 - k3) - 2.0 * k1 * (k2 + k3);
}

EigenSystem cycle_eigensystem(const Vector& k, bool reversible, const Tolerances& tol) {
  const Index M = k.size();
  if (!reversible) {
    if (M != 3)
      throw DomainError(ErrorCode::InvalidArgument,
                        "closed forms cover only the irreversible 3-cycle; use the "
                        "numeric eigen path otherwise");
    require_positive(k, "cycle: rates must be positive");
    const double k1 = k(0), k2 = k(1), k3 = k(2);
    const Complex R = std::sqrt(Complex(cycle3_discriminant(k1, k2, k3), 0.0));
    const double S = k1 + k2 + k3;

    EigenSystem es;
    es.source = EigenSource::ClosedForm;
    es.pairs.push_back({Complex(0.0, 0.0), CVector::Ones(3), 1});
    CVector v2(3), v3(3);
    v2 << -(k1 + k2 - k3 + R) / (2.0 * k3), k2 * (-k1 + k2 - k3 + R) / (2.0 * k1 * k3),
        Complex(1.0, 0.0);
    v3 << (-k1 - k2 + k3 + R) / (2.0 * k3), -k2 * (k1 - k2 + k3 + R) / (2.0 * k1 * k3),
        Complex(1.0, 0.0);
    es.pairs.push_back({(-S - R) / 2.0, v2, 1});
    es.pairs.push_back({(-S + R) / 2.0, v3, 1});
    assign_multiplicities(es, tol.robust_gap);
    return es;
  }

  require_positive(k, "cycle: rates must be positive");
  const double rate = k(0);
  for (Index i = 1; i < M; ++i)
    if (k(i) != rate)
      throw DomainError(ErrorCode::InvalidArgument, "reversible closed forms need uniform rates");
  if (M == 5) {
    const double s5 = std::sqrt(5.0);
    const double phi = (s5 + 1.0) / 2.0;
    const double psi = (s5 - 1.0) / 2.0;
    const Complex slow((-5.0 + s5) / 2.0 * rate, 0.0);
    const Complex fast((-5.0 - s5) / 2.0 * rate, 0.0);
    CVector v1(5), v2(5), v3(5), v4(5);
    v1 << psi, -psi, -1.0, 0.0, 1.0;
    v2 << -1.0, -psi, psi, 1.0, 0.0;
    v3 << -phi, phi, -1.0, 0.0, 1.0;
    v4 << -1.0, phi, -phi, 1.0, 0.0;
    EigenSystem es;
    es.source = EigenSource::ClosedForm;
    es.pairs.push_back({slow, v1, 2});
    es.pairs.push_back({slow, v2, 2});
    es.pairs.push_back({fast, v3, 2});
    es.pairs.push_back({fast, v4, 2});
    es.pairs.push_back({Complex(0.0, 0.0), CVector::Ones(5), 1});
    return es;
  }
  // Uniform ring: A^T is the circulant with c_1 = c_{M-1} = rate.
  Vector c = Vector::Zero(M - 1);
  c(0) = rate;
  c(M - 2) = rate;
  return circulant_simplicial(c, 0.0, tol).eigensystem;
}

}  // namespace lumpkit
