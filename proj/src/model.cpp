#include "lumpkit/model.hpp"

#include <algorithm>
#include <set>

namespace lumpkit {

namespace {

std::vector<std::string> default_labels(Index n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) labels.push_back("X" + std::to_string(i + 1));
  return labels;
}

}  // namespace

CompartmentalModel CompartmentalModel::make(std::vector<std::string> species, Matrix A,
                                            Vector b, Eigen::VectorXi y) {
  const Index n = A.rows();
  if (A.cols() != n)
    throw DomainError(ErrorCode::InvalidArgument, "A must be square");
  if (static_cast<Index>(species.size()) != n || b.size() != n || y.size() != n)
    throw DomainError(ErrorCode::InvalidArgument,
                      "species, b and y must match the dimension of A");
  if (!A.allFinite() || !b.allFinite())
    throw DomainError(ErrorCode::InvalidArgument, "non-finite entries");
  bool any_above_one = false;
  for (Index i = 0; i < n; ++i) {
    if (y(i) < 1) throw DomainError(ErrorCode::InvalidArgument, "complex lengths must be >= 1");
    any_above_one = any_above_one || y(i) > 1;
  }
  if (any_above_one) {
    std::set<int> distinct(y.begin(), y.end());
    if (static_cast<Index>(distinct.size()) != n)
      throw DomainError(ErrorCode::InvalidArgument,
                        "complex lengths must be pairwise distinct when any exceeds 1");
  }
  return {std::move(species), std::move(A), std::move(b), std::move(y)};
}

CompartmentalModel CompartmentalModel::make(std::vector<std::string> species, Matrix A,
                                            Vector b) {
  Eigen::VectorXi ones = Eigen::VectorXi::Ones(A.rows());
  return make(std::move(species), std::move(A), std::move(b), std::move(ones));
}

CompartmentalModel CompartmentalModel::from_matrix(Matrix A) {
  Vector zero = Vector::Zero(A.rows());
  return from_matrix(std::move(A), std::move(zero));
}

CompartmentalModel CompartmentalModel::from_matrix(Matrix A, Vector b) {
  std::vector<std::string> labels = default_labels(A.rows());
  return make(std::move(labels), std::move(A), std::move(b));
}

KineticReport validate_kinetic(const CompartmentalModel& model) {
  return validate_kinetic(model.A, model.b);
}

KineticReport validate_kinetic(const Matrix& A, const Vector& b, double zero_tol) {
  KineticReport report;
  const Index n = A.rows();
  for (Index m = 0; m < n; ++m)
    for (Index p = 0; p < n; ++p)
      if (m != p && A(m, p) < -zero_tol)
        report.violations.push_back({"offdiag-negative", m, p, A(m, p)});
  for (Index m = 0; m < b.size(); ++m)
    if (b(m) < -zero_tol) report.violations.push_back({"inflow-negative", m, -1, b(m)});
  report.is_kinetic = report.violations.empty();
  for (Index m = 0; m < n; ++m) {
    double column_sum = 0.0;  // sequential: keeps generator-side cancellation exact
    for (Index p = 0; p < n; ++p) column_sum += A(p, m);
    if (column_sum > zero_tol)
      report.violations.push_back({"column-dominance", -1, m, column_sum});
  }
  report.is_compartmental = report.violations.empty();
  return report;
}

KineticReport validate_kinetic(const CMatrix& A, const CVector& b, double imag_tol,
                               double zero_tol) {
  KineticReport report;
  for (Index m = 0; m < A.rows(); ++m)
    for (Index p = 0; p < A.cols(); ++p)
      if (std::abs(A(m, p).imag()) > imag_tol)
        report.violations.push_back({"complex-valued", m, p, A(m, p).imag()});
  for (Index m = 0; m < b.size(); ++m)
    if (std::abs(b(m).imag()) > imag_tol)
      report.violations.push_back({"complex-valued", m, -1, b(m).imag()});
  if (!report.violations.empty()) {
    report.is_kinetic = false;
    report.is_compartmental = false;
    return report;
  }
  return validate_kinetic(Matrix(A.real()), Vector(b.real()), zero_tol);
}

const char* to_string(Openness o) {
  switch (o) {
    case Openness::Closed: return "closed";
    case Openness::StrictlyHalfOpen: return "strictly-half-open";
    case Openness::StrictlyOpen: return "strictly-open";
  }
  return "unknown";
}

ReactionNetwork ReactionNetwork::make(std::vector<std::string> species,
                                      std::vector<ReactionStep> steps) {
  const Index n = static_cast<Index>(species.size());
  std::vector<bool> seen(static_cast<size_t>(n), false);
  bool has_inflow = false;
  bool has_outflow = false;

  auto check_complex = [&](const ReactionComplex& c) {
    if (c.is_empty()) return;
    if (c.species < 0 || c.species >= n)
      throw DomainError(ErrorCode::InvalidArgument, "complex references unknown species");
    if (c.coefficient < 1)
      throw DomainError(ErrorCode::InvalidArgument, "complex coefficient must be >= 1");
    seen[static_cast<size_t>(c.species)] = true;
  };

  for (size_t i = 0; i < steps.size(); ++i) {
    const ReactionStep& s = steps[i];
    if (s.reactant == s.product)
      throw DomainError(ErrorCode::InvalidArgument,
                        "reactant and product complexes must differ");
    if (!(s.rate > 0.0))
      throw DomainError(ErrorCode::InvalidArgument,
                        "step rates must be positive; zero-rate steps are omitted");
    check_complex(s.reactant);
    check_complex(s.product);
    if (s.reactant.is_empty()) has_inflow = true;
    if (s.product.is_empty()) has_outflow = true;
    for (size_t j = 0; j < i; ++j)
      if (steps[j].reactant == s.reactant && steps[j].product == s.product)
        throw DomainError(ErrorCode::InvalidArgument, "duplicate reaction step");
  }
  for (Index m = 0; m < n; ++m)
    if (!seen[static_cast<size_t>(m)])
      throw DomainError(ErrorCode::InvalidArgument,
                        "species " + species[static_cast<size_t>(m)] +
                            " appears in no reaction step");

  ReactionNetwork network;
  network.species = std::move(species);
  network.steps = std::move(steps);
  network.classification = has_inflow    ? Openness::StrictlyOpen
                           : has_outflow ? Openness::StrictlyHalfOpen
                                         : Openness::Closed;
  return network;
}

ReactionNetwork induce_reaction_network(const CompartmentalModel& model) {
  const Index n = model.size();
  std::vector<ReactionStep> steps;

  for (Index m = 0; m < n; ++m)
    for (Index p = 0; p < n; ++p) {
      if (m == p) continue;
      const double a = model.A(m, p);
      if (a < 0.0)
        throw DomainError(ErrorCode::NotKinetic,
                          "negative off-diagonal coefficient: no inducing system");
      if (a > 0.0)
        steps.push_back({ReactionComplex::of(p, model.y(p)), ReactionComplex::of(m, model.y(m)),
                         a / model.y(m)});
    }
  for (Index m = 0; m < n; ++m) {
    // Outflow coefficient that makes the induced equation reproduce column m.
    double d = 0.0;
    for (Index p = 0; p < n; ++p) d -= model.A(p, m) / model.y(p);
    if (d < 0.0)
      throw DomainError(ErrorCode::NotKinetic,
                        "column " + std::to_string(m + 1) +
                            " would need a negative outflow rate");
    if (d > 0.0)
      steps.push_back({ReactionComplex::of(m, model.y(m)), ReactionComplex::empty(), d});
  }
  for (Index m = 0; m < n; ++m) {
    const double bm = model.b(m);
    if (bm < 0.0)
      throw DomainError(ErrorCode::NotKinetic, "negative inflow rate");
    if (bm > 0.0)
      steps.push_back({ReactionComplex::empty(), ReactionComplex::of(m, model.y(m)),
                       bm / model.y(m)});
  }
  return ReactionNetwork::make(model.species, std::move(steps));
}

namespace {

/// Complex length per species; throws unless each species always appears with
/// one and the same coefficient.
Eigen::VectorXi network_complex_lengths(const ReactionNetwork& network) {
  Eigen::VectorXi y = Eigen::VectorXi::Zero(network.size());
  auto absorb = [&](const ReactionComplex& c) {
    if (c.is_empty()) return;
    int& slot = y(c.species);
    if (slot == 0)
      slot = c.coefficient;
    else if (slot != c.coefficient)
      throw DomainError(ErrorCode::NotCompartmentalShape,
                        "species appears in complexes of different length");
  };
  for (const auto& s : network.steps) {
    absorb(s.reactant);
    absorb(s.product);
  }
  for (Index m = 0; m < y.size(); ++m)
    if (y(m) == 0) y(m) = 1;  // unreachable for validated networks
  return y;
}

}  // namespace

CompartmentalModel derive_ode(const ReactionNetwork& network) {
  const Index n = network.size();
  if (n == 0) throw DomainError(ErrorCode::InvalidArgument, "empty network");
  Eigen::VectorXi y = network_complex_lengths(network);

  Matrix A = Matrix::Zero(n, n);
  Vector b = Vector::Zero(n);
  for (const auto& s : network.steps) {
    if (s.reactant.is_empty()) {
      b(s.product.species) += s.product.coefficient * s.rate;
    } else if (s.product.is_empty()) {
      A(s.reactant.species, s.reactant.species) -= s.reactant.coefficient * s.rate;
    } else {
      A(s.product.species, s.reactant.species) += s.product.coefficient * s.rate;
      A(s.reactant.species, s.reactant.species) -= s.reactant.coefficient * s.rate;
    }
  }
  return CompartmentalModel::make(network.species, std::move(A), std::move(b), std::move(y));
}

bool is_mass_conserving(const ReactionNetwork& network) {
  network_complex_lengths(network);  // enforce generalized compartmental shape
  return network.classification == Openness::Closed;
}

}  // namespace lumpkit
