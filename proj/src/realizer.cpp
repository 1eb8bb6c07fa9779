#include "lumpkit/realizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "lumpkit/linalg.hpp"

namespace lumpkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngularEps = 1e-9;
constexpr double kFeasEps = 1e-12;

using Vec2 = Eigen::Vector2d;

double snap(double x, double tol) { return std::abs(x) <= tol ? 0.0 : x; }

Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

int sign_case(double a, double b) {
  const int sa = a > 0 ? 1 : (a < 0 ? -1 : 0);
  const int sb = b > 0 ? 1 : (b < 0 ? -1 : 0);
  if (sa == 0 && sb == 0) return 1;
  if (sa == 0 && sb < 0) return 2;
  if (sa > 0 && sb < 0) return 3;
  if (sa > 0 && sb == 0) return 4;
  if (sa > 0 && sb > 0) return 5;
  if (sa == 0 && sb > 0) return 6;
  if (sa < 0 && sb > 0) return 7;
  if (sa < 0 && sb == 0) return 8;
  return 9;
}

std::vector<Vec2> constraint_normals(const Matrix& Q, double sign_tol) {
  std::vector<Vec2> normals;
  for (Index j = 0; j < Q.cols(); ++j) {
    Vec2 c(snap(Q(0, j), sign_tol), snap(Q(1, j), sign_tol));
    if (c.x() == 0.0 && c.y() == 0.0) continue;
    normals.push_back(c.normalized());
  }
  return normals;
}

double min_dot(const std::vector<Vec2>& normals, const Vec2& d) {
  double m = std::numeric_limits<double>::infinity();
  for (const Vec2& n : normals) m = std::min(m, n.dot(d));
  return m;
}

const std::array<std::set<int>, 9> kUnconditionalTriples = {{
    {2, 4, 7}, {2, 5, 7}, {2, 5, 8}, {3, 5, 8}, {3, 6, 8},
    {3, 6, 9}, {4, 6, 9}, {4, 7, 9}, {5, 6, 9},
}};

const std::array<std::set<int>, 8> kConditionalTriples = {{
    {2, 5, 9}, {3, 4, 7}, {3, 5, 7}, {3, 5, 9},
    {3, 6, 7}, {3, 7, 8}, {3, 7, 9}, {4, 5, 9},
}};

InfeasibilityReason infeasibility_reason(const Matrix& Q, double sign_tol) {
  const std::vector<int> cases = classify_columns(Q, sign_tol);
  std::set<int> present(cases.begin(), cases.end());
  present.erase(1);

  // Antipodal column directions exclude P outright (type pairs 26, 48, and
  // exactly-negated 37 / 59 columns).
  const std::vector<Vec2> normals = constraint_normals(Q, sign_tol);
  for (size_t i = 0; i < normals.size(); ++i)
    for (size_t j = i + 1; j < normals.size(); ++j)
      if (std::abs(cross2(normals[i], normals[j])) <= kFeasEps &&
          normals[i].dot(normals[j]) < 0.0)
        return InfeasibilityReason::PairRule;

  auto contains = [&](const std::set<int>& pattern) {
    return std::all_of(pattern.begin(), pattern.end(),
                       [&](int c) { return present.count(c) > 0; });
  };
  for (const auto& t : kUnconditionalTriples)
    if (contains(t)) return InfeasibilityReason::TripleRule;
  if (contains({2, 3, 5, 8})) return InfeasibilityReason::Quadruple2358;
  for (const auto& t : kConditionalTriples)
    if (contains(t)) return InfeasibilityReason::SlopeRule;
  return InfeasibilityReason::DegenerateCone;
}

}  // namespace

const char* to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::EmptyOrOrigin: return "empty-or-origin";
    case ConeKind::Ray: return "ray";
    case ConeKind::Sector: return "sector-with-interior";
    case ConeKind::HalfPlane: return "halfplane";
    case ConeKind::Full: return "full";
  }
  return "unknown";
}

const char* to_string(InfeasibilityReason reason) {
  switch (reason) {
    case InfeasibilityReason::PairRule: return "pair-rule";
    case InfeasibilityReason::TripleRule: return "triple-rule";
    case InfeasibilityReason::Quadruple2358: return "quadruple-2358";
    case InfeasibilityReason::SlopeRule: return "slope-rule";
    case InfeasibilityReason::DegenerateCone: return "degenerate-cone";
    case InfeasibilityReason::DeterminedSystem: return "determined-system";
    case InfeasibilityReason::InsufficientIndependence: return "insufficient-independence";
  }
  return "unknown";
}

std::vector<int> classify_columns(const Matrix& Q, double sign_tol) {
  if (Q.rows() != 2)
    throw DomainError(ErrorCode::DimensionMismatch, "column taxonomy expects 2 rows");
  if (!Q.allFinite())
    throw DomainError(ErrorCode::InvalidArgument, "non-finite entries");
  std::vector<int> cases;
  cases.reserve(static_cast<size_t>(Q.cols()));
  for (Index j = 0; j < Q.cols(); ++j)
    cases.push_back(sign_case(snap(Q(0, j), sign_tol), snap(Q(1, j), sign_tol)));
  return cases;
}

ConeRegion feasible_cone(const Matrix& Q, double sign_tol) {
  if (Q.rows() != 2)
    throw DomainError(ErrorCode::DimensionMismatch, "feasible_cone expects 2 rows");
  const std::vector<Vec2> normals = constraint_normals(Q, sign_tol);
  if (normals.empty()) return {ConeKind::Full, -kPi, kPi};

  // The sector's extreme rays are boundary directions of tight constraints;
  // collect them together with the normals themselves as interior candidates.
  std::vector<Vec2> candidates;
  for (const Vec2& n : normals) {
    candidates.emplace_back(-n.y(), n.x());
    candidates.emplace_back(n.y(), -n.x());
    candidates.push_back(n);
  }
  std::vector<Vec2> feasible;
  Vec2 u0 = Vec2::Zero();
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec2& d : candidates) {
    const double m = min_dot(normals, d);
    if (m < -kFeasEps) continue;
    feasible.push_back(d);
    if (m > best) {
      best = m;
      u0 = d;
    }
  }
  if (feasible.empty()) return {ConeKind::EmptyOrOrigin, 0.0, 0.0};

  double phi_min = 0.0, phi_max = 0.0;
  for (const Vec2& d : feasible) {
    const double phi = std::atan2(cross2(u0, d), u0.dot(d));
    phi_min = std::min(phi_min, phi);
    phi_max = std::max(phi_max, phi);
  }
  const double theta0 = std::atan2(u0.y(), u0.x());
  double width = phi_max - phi_min;

  if (width <= kAngularEps)
    return {ConeKind::Ray, theta0 + phi_min, theta0 + phi_min};

  // A feasible arc is connected; an infeasible bisector means the "arc" is
  // really two antipodal rays (a line through the origin).
  const Vec2 bisector = rotate(u0, 0.5 * (phi_min + phi_max));
  if (min_dot(normals, bisector) < -kFeasEps)
    return {ConeKind::Ray, theta0, theta0};

  if (width >= kPi - kAngularEps)
    return {ConeKind::HalfPlane, theta0 + phi_min, theta0 + phi_min + kPi};
  return {ConeKind::Sector, theta0 + phi_min, theta0 + phi_max};
}

Certificate<Real> exists_nonneg_P(const Matrix& Q, const Tolerances& tol) {
  if (Q.rows() < 1 || Q.rows() > 2)
    throw DomainError(ErrorCode::InvalidArgument,
                      "decision procedure covers 1- and 2-row matrices");
  if (rank_of<Real>(Q, tol.rank_rel) < Q.rows())
    throw DomainError(ErrorCode::RankDeficient, "Q must have full row rank");

  Certificate<Real> cert;
  if (Q.rows() == 1) {
    bool any_pos = false, any_neg = false;
    for (Index j = 0; j < Q.cols(); ++j) {
      const double v = snap(Q(0, j), tol.sign_zero);
      any_pos = any_pos || v > 0.0;
      any_neg = any_neg || v < 0.0;
    }
    if (any_pos && any_neg) {
      cert.feasible = false;
      cert.reason = InfeasibilityReason::PairRule;
    } else {
      cert.feasible = true;
      Matrix P(1, 1);
      P(0, 0) = any_neg ? -1.0 : 1.0;
      cert.witness_P = P;
    }
    return cert;
  }

  const ConeRegion cone = feasible_cone(Q, tol.sign_zero);
  if (!cone.has_interior()) {
    cert.feasible = false;
    cert.reason = infeasibility_reason(Q, tol.sign_zero);
    return cert;
  }
  const double width = cone.kind == ConeKind::Full ? 2.0 * kPi : cone.width();
  const double mid = 0.5 * (cone.theta_lo + cone.theta_hi);
  const double second = mid + width / 3.0;
  Matrix P(2, 2);
  P.row(0) << std::cos(mid), std::sin(mid);
  P.row(1) << std::cos(second), std::sin(second);
  cert.feasible = true;
  cert.witness_P = P;
  return cert;
}

Matrix build_real_coefficient_matrix(const CMatrix& Qc) {
  if (!Qc.allFinite())
    throw DomainError(ErrorCode::InvalidArgument, "non-finite entries");
  const Index nhat = Qc.rows(), n = Qc.cols();
  Matrix B(n, 2 * nhat);
  for (Index kcol = 0; kcol < n; ++kcol)
    for (Index j = 0; j < nhat; ++j) {
      B(kcol, j) = Qc(j, kcol).imag();
      B(kcol, nhat + j) = Qc(j, kcol).real();
    }
  return B;
}

Certificate<Complex> exists_real_P(const CMatrix& Qc, std::uint64_t seed,
                                   const Tolerances& tol) {
  const Index nhat = Qc.rows(), n = Qc.cols();
  if (nhat < 1 || n < nhat)
    throw DomainError(ErrorCode::RankDeficient, "Q must have at least as many columns as rows");
  if (rank_of<Complex>(Qc, tol.rank_rel) < nhat)
    throw DomainError(ErrorCode::RankDeficient, "Q must have full row rank");

  Certificate<Complex> cert;
  const double scale = std::max(1.0, max_abs(Qc));

  auto accept = [&](const CMatrix& P) -> bool {
    if (std::abs(P.determinant()) <= 1e-9) return false;
    if (max_abs((P * Qc).imag()) > tol.residual * scale * scale) return false;
    cert.feasible = true;
    cert.witness_P = P;
    return true;
  };

  if (nhat == n) {
    const Matrix Q1 = Qc.real(), Q2 = Qc.imag();
    if (rank_of<Real>(Q1, tol.rank_rel) == n && rank_of<Real>(Q2, tol.rank_rel) == n &&
        inf_norm((Q1.transpose() * Q2 - Q2.transpose() * Q1).eval()) <=
            tol.residual * scale * scale) {
      CMatrix P = Q1.transpose().cast<Complex>() -
                  Complex(0.0, 1.0) * Q2.transpose().cast<Complex>();
      for (Index r = 0; r < P.rows(); ++r) {
        const double m = max_abs(P.row(r));
        if (m > 0.0) P.row(r) /= m;
      }
      if (accept(P)) return cert;
    }
  }

  const Matrix B = build_real_coefficient_matrix(Qc);
  const RankNullspace<Real> kernel = rank_and_nullspace<Real>(B, tol.rank_rel);
  const Index m = kernel.nullspace.cols();
  if (m == 0) {
    cert.feasible = false;
    cert.reason = InfeasibilityReason::DeterminedSystem;
    return cert;
  }

  // Complex images of the kernel basis: candidate P-rows are their real
  // combinations.
  CMatrix Z(m, nhat);
  for (Index v = 0; v < m; ++v)
    Z.row(v) = (kernel.nullspace.col(v).head(nhat) +
                Complex(0.0, 1.0) * kernel.nullspace.col(v).tail(nhat))
                   .transpose();
  if (rank_of<Complex>(Z, tol.rank_rel) < nhat) {
    cert.feasible = false;
    cert.reason = InfeasibilityReason::InsufficientIndependence;
    return cert;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix T(nhat, m);
    if (attempt == 0 && m >= nhat) {
      T.setZero();
      for (Index r = 0; r < nhat; ++r) T(r, r) = 1.0;
    } else {
      for (Index r = 0; r < nhat; ++r)
        for (Index c = 0; c < m; ++c) T(r, c) = dist(rng);
    }
    CMatrix P = T.cast<Complex>() * Z;
    bool degenerate = false;
    for (Index r = 0; r < nhat; ++r) {
      const double rowmax = max_abs(P.row(r));
      if (rowmax == 0.0) {
        degenerate = true;
        break;
      }
      P.row(r) /= rowmax;
    }
    if (!degenerate && accept(P)) return cert;
  }
  cert.feasible = false;
  cert.reason = InfeasibilityReason::InsufficientIndependence;
  return cert;
}

}  // namespace lumpkit
