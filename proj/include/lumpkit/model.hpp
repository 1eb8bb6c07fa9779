#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lumpkit/types.hpp"

namespace lumpkit {

/// Linear(izable) system c' = A c + b where coordinate m enters through the
/// monomial c_m^{y_m}. y defaults to all ones (the compartmental case); when
/// any y_m > 1, the entries of y must be pairwise distinct.
struct CompartmentalModel {
  std::vector<std::string> species;
  Matrix A;
  Vector b;
  Eigen::VectorXi y;

  Index size() const { return A.rows(); }

  /// Validating constructor; throws InvalidArgument on malformed input.
  static CompartmentalModel make(std::vector<std::string> species, Matrix A, Vector b,
                                 Eigen::VectorXi y);
  static CompartmentalModel make(std::vector<std::string> species, Matrix A, Vector b);
  /// b = 0, y = 1, species auto-labeled X1..Xn.
  static CompartmentalModel from_matrix(Matrix A);
  static CompartmentalModel from_matrix(Matrix A, Vector b);
};

struct Violation {
  std::string condition;  // "offdiag-negative" | "inflow-negative" | "column-dominance" | "complex-valued"
  Index row = -1;         // -1 when not applicable
  Index col = -1;
  double value = 0.0;
};

struct KineticReport {
  bool is_kinetic = false;
  bool is_compartmental = false;
  std::vector<Violation> violations;
};

/// is_kinetic: off-diagonal A >= 0 and b >= 0. is_compartmental additionally
/// requires -a_mm >= sum_{p != m} a_pm per column. Always returns a report.
/// zero_tol > 0 forgives sign violations within rounding dust (used for
/// numerically lumped coefficients; the default is exact).
KineticReport validate_kinetic(const CompartmentalModel& model);
KineticReport validate_kinetic(const Matrix& A, const Vector& b, double zero_tol = 0.0);

/// Variant for (possibly) complex lumped coefficients: entries with imaginary
/// part above imag_tol produce "complex-valued" violations and is_kinetic =
/// false; otherwise the real parts are validated as usual.
KineticReport validate_kinetic(const CMatrix& A, const CVector& b, double imag_tol,
                               double zero_tol = 0.0);

/// One side of a reaction step: either the empty complex or y * species.
struct ReactionComplex {
  static constexpr Index kEmpty = -1;
  Index species = kEmpty;
  int coefficient = 0;

  bool is_empty() const { return species == kEmpty; }
  static ReactionComplex empty() { return {}; }
  static ReactionComplex of(Index species, int coefficient = 1) {
    return {species, coefficient};
  }
  friend bool operator==(const ReactionComplex&, const ReactionComplex&) = default;
};

struct ReactionStep {
  ReactionComplex reactant;
  ReactionComplex product;
  double rate = 0.0;
};

enum class Openness { Closed, StrictlyHalfOpen, StrictlyOpen };

const char* to_string(Openness o);

/// Generalized compartmental reaction network: every complex holds a single
/// species and every species belongs to a single complex.
struct ReactionNetwork {
  std::vector<std::string> species;
  std::vector<ReactionStep> steps;
  Openness classification = Openness::Closed;

  Index size() const { return static_cast<Index>(species.size()); }

  /// Validates the mechanism conditions (no step with equal complexes, no
  /// duplicate steps, every species present, all rates > 0), derives the
  /// classification, and rejects networks that are not generalized
  /// compartmental (a species used with two different coefficients).
  static ReactionNetwork make(std::vector<std::string> species,
                              std::vector<ReactionStep> steps);
};

/// Builds the inducing generalized compartmental network of the model:
/// transfer steps y_p X_p -> y_m X_m with rate a_mp / y_m (a_mp > 0, m != p),
/// outflows y_m X_m -> 0 with rate d_m = -sum_p a_pm / y_p when d_m > 0, and
/// inflows 0 -> y_m X_m with rate b_m / y_m when b_m > 0. Throws NotKinetic
/// when any required rate would be negative.
ReactionNetwork induce_reaction_network(const CompartmentalModel& model);

/// Induced kinetic differential equation of a generalized compartmental
/// network; inverts induce_reaction_network exactly. Throws
/// NotCompartmentalShape when a species appears with inconsistent complex
/// coefficients.
CompartmentalModel derive_ode(const ReactionNetwork& network);

/// A generalized compartmental system is mass-conserving iff it is closed.
bool is_mass_conserving(const ReactionNetwork& network);

}  // namespace lumpkit
