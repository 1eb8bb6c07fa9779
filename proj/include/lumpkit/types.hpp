#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lumpkit {

using Real = double;
using Complex = std::complex<double>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<Real>;
using Vector = VectorX<Real>;
using CMatrix = MatrixX<Complex>;
using CVector = VectorX<Complex>;
using Index = Eigen::Index;

enum class ErrorCode {
  NotKinetic,
  NotCompartmentalShape,
  NonRobustParameters,
  RankDeficient,
  DependentSelection,
  NotLumpable,
  SingularP,
  NegativeEntries,
  DimensionMismatch,
  ConvergenceFailure,
  GridTooCoarse,
  Overflow,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

/// Domain-rule violation carrying a stable machine-readable code.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Numerical knobs shared across the library. `residual` is the absolute
/// tolerance on residual contracts, `rank_rel` scales sigma_max for rank
/// decisions, `sign_zero` classifies entries as zero, and `robust_gap` is the
/// relative eigenvalue gap below which closed-form parameters count as
/// coincident.
struct Tolerances {
  double residual = 1e-10;
  double rank_rel = 1e-12;
  double sign_zero = 1e-12;
  double robust_gap = 1e-9;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotKinetic: return "NotKinetic";
    case ErrorCode::NotCompartmentalShape: return "NotCompartmentalShape";
    case ErrorCode::NonRobustParameters: return "NonRobustParameters";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::DependentSelection: return "DependentSelection";
    case ErrorCode::NotLumpable: return "NotLumpable";
    case ErrorCode::SingularP: return "SingularP";
    case ErrorCode::NegativeEntries: return "NegativeEntries";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace lumpkit
