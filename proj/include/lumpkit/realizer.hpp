#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lumpkit/types.hpp"

namespace lumpkit {

/// Column sign taxonomy for 2-row matrices:
///   1=(0,0) 2=(0,-) 3=(+,-) 4=(+,0) 5=(+,+) 6=(0,+) 7=(-,+) 8=(-,0) 9=(-,-)
std::vector<int> classify_columns(const Matrix& Q, double sign_tol = 1e-12);

enum class ConeKind { EmptyOrOrigin, Ray, Sector, HalfPlane, Full };

const char* to_string(ConeKind kind);

/// Intersection of the half-planes {p : q_j . p >= 0} over the columns q_j of
/// a 2 x n matrix, represented as an angular sector. Zero columns impose no
/// constraint. A feasible set that is a full line (two antipodal rays) is
/// reported as Ray: it likewise contains no two independent directions.
struct ConeRegion {
  ConeKind kind = ConeKind::Full;
  double theta_lo = 0.0;
  double theta_hi = 0.0;

  double width() const { return theta_hi - theta_lo; }
  bool has_interior() const {
    return kind == ConeKind::Sector || kind == ConeKind::HalfPlane || kind == ConeKind::Full;
  }
};

ConeRegion feasible_cone(const Matrix& Q, double sign_tol = 1e-12);

enum class InfeasibilityReason {
  PairRule,          // antipodal column pair (26, 48, or exact-negation 37/59)
  TripleRule,        // unconditional triple pattern
  Quadruple2358,     // the four-type pattern {2,3,5,8}
  SlopeRule,         // conditional triple pattern, slopes exclude
  DegenerateCone,    // cone empty/ray with no taxonomy pattern
  DeterminedSystem,  // real-P problem: full-rank coefficient matrix
  InsufficientIndependence,  // real-P problem: kernel too small for a nonsingular P
};

const char* to_string(InfeasibilityReason reason);

template <typename Scalar>
struct Certificate {
  bool feasible = false;
  std::optional<MatrixX<Scalar>> witness_P;
  std::optional<InfeasibilityReason> reason;
};

/// Decides whether a nonsingular P exists with PQ >= 0 for a full-rank real Q
/// with 1 or 2 rows. Decision: the feasible cone has interior. Witness rows:
/// the sector bisector and the direction one third of the sector width past
/// it. Infeasible instances carry the matching structural rule as the reason.
Certificate<Real> exists_nonneg_P(const Matrix& Q, const Tolerances& tol = {});

/// Row k of the returned n x 2*nhat matrix is (b_1k .. b_nhat,k  a_1k ..
/// a_nhat,k) for Qc = (a_jk) + i (b_jk); a vector (p, q) lies in its kernel
/// iff the P-row p + iq makes the corresponding row of PQ real.
Matrix build_real_coefficient_matrix(const CMatrix& Qc);

/// Decides whether a nonsingular (complex) P exists with PQ real, for a
/// full-rank complex Q. P-rows are drawn from the kernel of the coefficient
/// matrix; complex-linear independence is searched with a seeded generator
/// (at most 64 draws). Fast path for square Q with Q1, Q2 nonsingular and
/// Q1^T Q2 symmetric: P = Q1^T - i Q2^T.
Certificate<Complex> exists_real_P(const CMatrix& Qc, std::uint64_t seed = 0,
                                   const Tolerances& tol = {});

}  // namespace lumpkit
