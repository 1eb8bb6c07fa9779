#include <doctest.h>

#include "lumpkit/model.hpp"
#include "test_helpers.hpp"

using namespace lumpkit;

namespace {

Matrix mat2(double a11, double a12, double a21, double a22) {
  Matrix m(2, 2);
  m << a11, a12, a21, a22;
  return m;
}

const ReactionStep* find_step(const ReactionNetwork& net, ReactionComplex r,
                              ReactionComplex p) {
  for (const auto& s : net.steps)
    if (s.reactant == r && s.product == p) return &s;
  return nullptr;
}

}  // namespace

TEST_CASE("validate_kinetic on the growth equation") {
  Matrix A(1, 1);
  A << 1.0;
  auto report = validate_kinetic(CompartmentalModel::from_matrix(A));
  CHECK(report.is_kinetic);
  CHECK_FALSE(report.is_compartmental);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].condition == "column-dominance");
  CHECK(report.violations[0].value == doctest::Approx(1.0));
}

TEST_CASE("validate_kinetic catches a dominance failure only") {
  auto model = CompartmentalModel::from_matrix(mat2(-0.5, 1, 1, -1));
  auto report = validate_kinetic(model);
  CHECK(report.is_kinetic);
  CHECK_FALSE(report.is_compartmental);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].col == 0);
  CHECK(report.violations[0].value == doctest::Approx(0.5));
}

TEST_CASE("validate_kinetic accepts a two-compartment chain") {
  auto report = validate_kinetic(CompartmentalModel::from_matrix(mat2(-1, 0, 1, 0)));
  CHECK(report.is_kinetic);
  CHECK(report.is_compartmental);
  CHECK(report.violations.empty());
}

TEST_CASE("validate_kinetic flags negative off-diagonals and inflows") {
  auto report = validate_kinetic(mat2(-1, -0.25, 1, 0), Vector::Zero(2));
  CHECK_FALSE(report.is_kinetic);
  REQUIRE(report.violations.size() >= 1);
  CHECK(report.violations[0].condition == "offdiag-negative");

  Vector b(2);
  b << -1.0, 0.0;
  auto report2 = validate_kinetic(mat2(-1, 0, 1, 0), b);
  CHECK_FALSE(report2.is_kinetic);
}

TEST_CASE("complex coefficients report a complex-valued violation") {
  CMatrix A(1, 1);
  A << Complex(0.0, 0.5);
  auto report = validate_kinetic(A, CVector::Zero(1), 1e-10);
  CHECK_FALSE(report.is_kinetic);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].condition == "complex-valued");

  CMatrix B(1, 1);
  B << Complex(-1.0, 1e-14);
  auto report2 = validate_kinetic(B, CVector::Zero(1), 1e-10);
  CHECK(report2.is_kinetic);
  CHECK(report2.is_compartmental);
}

TEST_CASE("induce_reaction_network on the closed two-chain") {
  auto net = induce_reaction_network(CompartmentalModel::from_matrix(mat2(-1, 0, 1, 0)));
  CHECK(net.classification == Openness::Closed);
  REQUIRE(net.steps.size() == 1);
  const auto* step = find_step(net, ReactionComplex::of(0), ReactionComplex::of(1));
  REQUIRE(step != nullptr);
  CHECK(step->rate == 1.0);
}

TEST_CASE("induce_reaction_network adds the outflow step") {
  auto net = induce_reaction_network(CompartmentalModel::from_matrix(mat2(-2, 0, 1, 0)));
  CHECK(net.classification == Openness::StrictlyHalfOpen);
  REQUIRE(net.steps.size() == 2);
  const auto* out = find_step(net, ReactionComplex::of(0), ReactionComplex::empty());
  REQUIRE(out != nullptr);
  CHECK(out->rate == 1.0);
  // re-derive and compare
  auto model = derive_ode(net);
  CHECK(model.A == mat2(-2, 0, 1, 0));
}

TEST_CASE("induce_reaction_network adds the inflow step") {
  Vector b(2);
  b << 1.0, 0.0;
  auto net =
      induce_reaction_network(CompartmentalModel::from_matrix(mat2(-1, 0, 1, 0), b));
  CHECK(net.classification == Openness::StrictlyOpen);
  const auto* in = find_step(net, ReactionComplex::empty(), ReactionComplex::of(0));
  REQUIRE(in != nullptr);
  CHECK(in->rate == 1.0);
}

TEST_CASE("induce_reaction_network rejects non-kinetic input") {
  Matrix A(1, 1);
  A << 1.0;  // growth: outflow rate would be -1
  CHECK_THROWS_WITH_AS(induce_reaction_network(CompartmentalModel::from_matrix(A)),
                       doctest::Contains("negative outflow"), DomainError);
  CHECK_THROWS_AS(induce_reaction_network(
                      CompartmentalModel::from_matrix(mat2(-1, -0.5, 1, 0))),
                  DomainError);
  Vector b(2);
  b << -1.0, 0.0;
  CHECK_THROWS_AS(
      induce_reaction_network(CompartmentalModel::from_matrix(mat2(-1, 0, 1, 0), b)),
      DomainError);
}

TEST_CASE("derive_ode inverts the two-chain network") {
  auto net = ReactionNetwork::make(
      {"X1", "X2"}, {{ReactionComplex::of(0), ReactionComplex::of(1), 1.0}});
  auto model = derive_ode(net);
  CHECK(model.A == mat2(-1, 0, 1, 0));
  CHECK(model.b.isZero(0.0));
}

TEST_CASE("derive_ode handles longer complexes") {
  const double k = 0.75;
  auto net = ReactionNetwork::make(
      {"X1", "X2"}, {{ReactionComplex::of(0, 2), ReactionComplex::of(1, 3), k}});
  auto model = derive_ode(net);
  CHECK(model.A(0, 0) == -2.0 * k);
  CHECK(model.A(1, 0) == 3.0 * k);
  CHECK(model.A(0, 1) == 0.0);
  CHECK(model.y(0) == 2);
  CHECK(model.y(1) == 3);
}

TEST_CASE("network construction enforces the mechanism conditions") {
  CHECK_THROWS_AS(ReactionNetwork::make({"X1"}, {}), DomainError);  // X1 unused
  CHECK_THROWS_AS(
      ReactionNetwork::make({"X1"}, {{ReactionComplex::of(0), ReactionComplex::of(0), 1.0}}),
      DomainError);  // reactant == product
  CHECK_THROWS_AS(
      ReactionNetwork::make({"X1", "X2"},
                            {{ReactionComplex::of(0), ReactionComplex::of(1), 1.0},
                             {ReactionComplex::of(0), ReactionComplex::of(1), 2.0}}),
      DomainError);  // duplicate step
  CHECK_THROWS_AS(
      ReactionNetwork::make({"X1", "X2"},
                            {{ReactionComplex::of(0), ReactionComplex::of(1), 0.0}}),
      DomainError);  // zero rate
}

TEST_CASE("is_mass_conserving equals closedness") {
  auto closed = induce_reaction_network(CompartmentalModel::from_matrix(mat2(-1, 0, 1, 0)));
  CHECK(is_mass_conserving(closed));
  auto half_open =
      induce_reaction_network(CompartmentalModel::from_matrix(mat2(-2, 0, 1, 0)));
  CHECK_FALSE(is_mass_conserving(half_open));
  Vector b(2);
  b << 1.0, 0.0;
  auto open =
      induce_reaction_network(CompartmentalModel::from_matrix(mat2(-1, 0, 1, 0), b));
  CHECK_FALSE(is_mass_conserving(open));
}

TEST_CASE("shape check rejects species with two complex lengths") {
  auto net = ReactionNetwork::make(
      {"X1", "X2", "X3"}, {{ReactionComplex::of(0, 1), ReactionComplex::of(1, 2), 1.0},
                           {ReactionComplex::of(0, 3), ReactionComplex::of(2, 4), 1.0}});
  CHECK_THROWS_AS(is_mass_conserving(net), DomainError);
  CHECK_THROWS_AS(derive_ode(net), DomainError);
}

TEST_CASE("model invariants") {
  Eigen::VectorXi y(2);
  y << 2, 2;  // repeated lengths above 1
  CHECK_THROWS_AS(
      CompartmentalModel::make({"a", "b"}, mat2(-1, 0, 1, 0), Vector::Zero(2), y),
      DomainError);
  Eigen::VectorXi y0(2);
  y0 << 1, 0;
  CHECK_THROWS_AS(
      CompartmentalModel::make({"a", "b"}, mat2(-1, 0, 1, 0), Vector::Zero(2), y0),
      DomainError);
}

TEST_CASE("round trip is bit-exact on dyadic compartmental models") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Index n = 2 + static_cast<Index>(trial % 5);
    auto model =
        CompartmentalModel::from_matrix(testing::random_dyadic_compartmental(rng, n));
    REQUIRE(validate_kinetic(model).is_compartmental);
    auto net = induce_reaction_network(model);
    auto back = derive_ode(net);
    CHECK(back.A == model.A);
    CHECK(back.b == model.b);
    CHECK(back.y == model.y);

    // trichotomy and rate positivity
    for (const auto& s : net.steps) CHECK(s.rate > 0.0);
    if (net.classification == Openness::Closed) {
      for (Index j = 0; j < n; ++j) CHECK(back.A.col(j).sum() == 0.0);
    }
  }
}

TEST_CASE("round trip with distinct complex lengths") {
  Matrix A = mat2(-1.5, 0.25, 0.5, -0.5);
  Eigen::VectorXi y(2);
  y << 1, 2;
  auto model = CompartmentalModel::make({"u", "v"}, A, Vector::Zero(2), y);
  auto back = derive_ode(induce_reaction_network(model));
  CHECK(back.A == model.A);  // dyadic arithmetic stays exact
  CHECK(back.y == model.y);

  Eigen::VectorXi y3(2);
  y3 << 1, 3;
  auto model3 = CompartmentalModel::make({"u", "v"}, mat2(-0.9, 0.3, 0.7, -1.2),
                                         Vector::Zero(2), y3);
  auto back3 = derive_ode(induce_reaction_network(model3));
  CHECK((back3.A - model3.A).cwiseAbs().maxCoeff() <=
        1e-12 * model3.A.cwiseAbs().maxCoeff());
}

TEST_CASE("every compartmental model induces a network deriving back to it") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto model = CompartmentalModel::from_matrix(testing::random_compartmental(rng, 4));
    auto report = validate_kinetic(model);
    REQUIRE(report.is_compartmental);
    auto back = derive_ode(induce_reaction_network(model));
    CHECK((back.A - model.A).cwiseAbs().maxCoeff() <=
          1e-12 * std::max(1.0, model.A.cwiseAbs().maxCoeff()));
  }
}
