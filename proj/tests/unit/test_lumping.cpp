#include <doctest.h>

#include "lumpkit/dynamics.hpp"
#include "lumpkit/families.hpp"
#include "lumpkit/fixtures.hpp"
#include "lumpkit/lumping.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace lumpkit;
using oracles::nonneg_right_inverse_exists_bruteforce;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("build_Q stacks selected eigenvectors in order") {
  auto fam = mamillary_inward(vec({1, 2, 3}));
  auto Q = build_Q(fam.eigensystem, {2, 0, 3});
  Matrix expected(3, 4);
  expected << 0, 0, 1, 0,
              1, 0, 0, 0,
              1, 1, 1, 1;
  CHECK(max_abs((Q.Q - expected.cast<Complex>()).eval()) == 0.0);
  CHECK(Q.selection == std::vector<int>{2, 0, 3});
}

TEST_CASE("build_Q rejects full selections and dependent rows") {
  auto fam = mamillary_inward(vec({1, 2, 3}));
  CHECK_THROWS_AS(build_Q(fam.eigensystem, {0, 1, 2, 3}), DomainError);
  CHECK_THROWS_WITH_AS(build_Q(fam.eigensystem, {0, 0}),
                       doctest::Contains("dependent"), DomainError);
}

TEST_CASE("eigenvector-built lumping matrices are exactly lumpable") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    auto fam = catenary_irreversible(testing::random_distinct_positive(rng, 4),
                                     testing::random_positive(rng, 5, 0.0, 0.5));
    auto Q = build_Q(fam.eigensystem, {1, 3});
    CHECK(is_exactly_lumpable<Complex>(fam.model.A, Q.Q));
  }
}

TEST_CASE("parallel-route aggregation is lumpable only on the symmetric slice") {
  Matrix Q = fixtures::branched_intermediates_Q();
  for (double k2 = 0.5; k2 <= 2.5; k2 += 0.5)
    for (double k4 = 0.5; k4 <= 2.5; k4 += 0.5) {
      auto model = fixtures::branched_intermediates(1.0, k2, 0.7, k4);
      CHECK(is_exactly_lumpable<Real>(model.A, Q) == (k2 == k4));
    }
}

TEST_CASE("random aggregations of a generic system are not lumpable") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix A = testing::random_compartmental(rng, 5);
  int lumpable = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Matrix Q(2, 5);
    for (Index i = 0; i < 2; ++i)
      for (Index j = 0; j < 5; ++j) Q(i, j) = dist(rng);
    if (is_exactly_lumpable<Real>(A, Q)) ++lumpable;
  }
  CHECK(lumpable == 0);
}

TEST_CASE("lump reproduces the reversible-chain reduction") {
  auto model = fixtures::reversible_chain5();
  Matrix V = fixtures::reversible_chain5_eigvec_rows();
  Matrix Q(2, 5);
  Q.row(0) = V.row(0);
  Q.row(1) = V.row(2);
  Tolerances tol;
  tol.rank_rel = 1e-5;  // the tabulated rows carry six printed decimals
  auto lumped = lump<Real>(model, Q, tol);
  CHECK(std::abs(lumped.A_hat(0, 0) - (-10.898979)) < 1e-5);
  CHECK(std::abs(lumped.A_hat(1, 1) - (-2.0)) < 1e-5);
  CHECK(std::abs(lumped.A_hat(0, 1)) < 1e-5);
  CHECK(std::abs(lumped.A_hat(1, 0)) < 1e-5);
  CHECK(lumped.exactness_residual < 1e-4);  // printed rows carry 6-digit rounding
  CHECK(lumped.b_hat.isZero(0.0));
}

TEST_CASE("lump of the flowed catenary gives the diagonal pair") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    Vector k = testing::random_distinct_positive(rng, 4);
    Vector mu = testing::random_positive(rng, 5, 0.0, 0.4);
    auto fam = catenary_irreversible(k, mu);
    auto Q = realify(build_Q(fam.eigensystem, {1, 3}));
    auto lumped = lump<Real>(fam.model, Q.Q);
    CHECK(std::abs(lumped.A_hat(0, 0) - (-k(1) - mu(1))) <= 1e-10);
    CHECK(std::abs(lumped.A_hat(1, 1) - (-k(3) - mu(3))) <= 1e-10);
    CHECK(std::abs(lumped.A_hat(0, 1)) <= 1e-10);
    CHECK(std::abs(lumped.A_hat(1, 0)) <= 1e-10);
    CHECK(lumped.exactness_residual <= 1e-10);
  }
}

TEST_CASE("lump keeps a decoupled leading block") {
  Matrix A = Matrix::Zero(4, 4);
  Matrix block(3, 3);
  block << -2, 1, 0,
            1, -3, 2,
            1, 2, -2;
  A.topLeftCorner(3, 3) = block;
  Matrix Q(3, 4);
  Q << Matrix::Identity(3, 3), Vector::Zero(3);
  auto lumped = lump<Real>(CompartmentalModel::from_matrix(A), Q);
  CHECK(max_abs((lumped.A_hat - block).eval()) < 1e-12);
}

TEST_CASE("lump refuses inexact aggregations") {
  auto model = fixtures::branched_intermediates(1.0, 2.0, 0.7, 0.5);
  CHECK_THROWS_AS(lump<Real>(model, fixtures::branched_intermediates_Q()), DomainError);
}

TEST_CASE("complex lumping of the 3-cycle") {
  auto model = cycle(vec({1, 2, 3}), false);
  auto es = cycle_eigensystem(vec({1, 2, 3}), false);
  auto Q = build_Q(es, {0, 1});
  auto lumped = lump<Complex>(model, Q.Q);
  CHECK(std::abs(lumped.A_hat(0, 0)) <= 1e-10);
  CHECK(std::abs(lumped.A_hat(1, 1) - Complex(-3.0, -std::sqrt(2.0))) <= 1e-10);
  CHECK(std::abs(lumped.A_hat(0, 1)) <= 1e-10);
  CHECK(std::abs(lumped.A_hat(1, 0)) <= 1e-10);
  CHECK_FALSE(lumped.kinetic.is_kinetic);
  bool complex_violation = false;
  for (const auto& v : lumped.kinetic.violations)
    complex_violation = complex_violation || v.condition == "complex-valued";
  CHECK(complex_violation);
}

TEST_CASE("transform_basis applies P and preserves lumpability") {
  auto fam = mamillary_inward(vec({1, 2, 3}));
  auto Qc = build_Q(fam.eigensystem, {2, 0, 3});
  auto Q = realify(Qc);

  auto same = transform_basis<Real>(Q, Matrix::Identity(3, 3));
  CHECK(same.Q == Q.Q);

  Matrix perm = Matrix::Zero(3, 3);
  perm(0, 2) = perm(1, 0) = perm(2, 1) = 1.0;
  auto permuted = transform_basis<Real>(Q, perm);
  CHECK(is_exactly_lumpable<Real>(fam.model.A, permuted.Q));
  REQUIRE(permuted.basis_transform.has_value());

  CHECK_THROWS_AS(transform_basis<Real>(Q, Matrix::Zero(3, 3)), DomainError);
}

TEST_CASE("transform_basis reproduces the worked nonnegative product") {
  LumpingMatrix Q{fixtures::sign_rule_feasible_Q(), {}, std::nullopt};
  auto PQ = transform_basis<Real>(Q, fixtures::sign_rule_feasible_P());
  Matrix expected(2, 4);
  expected << 15, 2, 13, 2,
              10.5, 1, 5, 2.5;
  CHECK(max_abs((PQ.Q - expected).eval()) <= 1e-12);
  CHECK(fixtures::sign_rule_feasible_P().determinant() == doctest::Approx(-1.5));
}

TEST_CASE("row criterion examples") {
  Matrix Q1(2, 3);
  Q1 << 1, 0, 0,
        1, 1, 1;
  auto r1 = farkas_row_test(Q1);
  CHECK_FALSE(r1.has_nonneg_geninverse);
  CHECK(r1.witness_row == Index{0});

  auto r2 = farkas_row_test(Matrix::Identity(2, 2));
  CHECK(r2.has_nonneg_geninverse);

  Matrix Q3(2, 3);
  Q3 << 1, 1, 0,
        0, 0, 1;
  CHECK(farkas_row_test(Q3).has_nonneg_geninverse);
  Matrix Qbar(3, 2);
  Qbar << 1, 0,
          0, 0,
          0, 1;
  CHECK(max_abs((Q3 * Qbar - Matrix::Identity(2, 2)).eval()) == 0.0);

  Matrix neg(1, 2);
  neg << 1, -1;
  CHECK_THROWS_AS(farkas_row_test(neg), DomainError);
}

TEST_CASE("row criterion matches the brute-force feasibility oracle") {
  std::mt19937_64 rng(44);
  std::uniform_int_distribution<int> dim_n(2, 6), dim_nhat(1, 3);
  std::uniform_real_distribution<double> entry(0.0, 1.0);
  std::bernoulli_distribution sparse(0.45);
  int done = 0;
  while (done < 100) {
    Index n = dim_n(rng), nhat = dim_nhat(rng);
    if (nhat > n) continue;
    Matrix Q(nhat, n);
    for (Index i = 0; i < nhat; ++i)
      for (Index j = 0; j < n; ++j) Q(i, j) = sparse(rng) ? 0.0 : entry(rng);
    if (rank_of<Real>(Q) < nhat) continue;
    CHECK(farkas_row_test(Q).has_nonneg_geninverse ==
          nonneg_right_inverse_exists_bruteforce(Q));
    ++done;
  }
}

TEST_CASE("kinetic_after_lumping on the nonuniform chain") {
  const double k1 = 1.0, k2 = 2.0, k3 = 3.0, k4 = 4.0;
  auto model = fixtures::nonuniform_chain(k1, k2, k3, k4);

  auto first = lump<Real>(model, fixtures::nonuniform_chain_Q_permutation());
  Matrix expected = Vector(vec({-k4, -k2 - k3, -k1})).asDiagonal();
  CHECK(max_abs((first.A_hat - expected).eval()) <= 1e-10);
  CHECK(first.kinetic.is_compartmental);

  // The mixed eigenvector aggregation: rows are exact left eigenvectors for
  // eigenvalues -k1, -(k2+k3), 0, so the lumped matrix is that diagonal and
  // the exactness residual vanishes for every right-inverse choice.
  auto second = lump<Real>(model, fixtures::nonuniform_chain_Q_mixed(k2, k3));
  Matrix expected2 = Vector(vec({-k1, -(k2 + k3), 0.0})).asDiagonal();
  CHECK(max_abs((second.A_hat - expected2).eval()) <= 1e-10);
  CHECK(second.exactness_residual <= 1e-10);
  CHECK(second.kinetic.is_kinetic);

  // identity aggregation as a diagnostic: A_hat = A
  auto identity = lump<Real>(model, Matrix(Matrix::Identity(5, 5)));
  CHECK(max_abs((identity.A_hat - model.A).eval()) <= 1e-12);
  CHECK(identity.kinetic.is_compartmental);
}

TEST_CASE("row criterion agrees with the worked nonuniform-chain aggregations") {
  // permutation rows: no shared positive columns -> nonnegative right inverse
  CHECK(farkas_row_test(fixtures::nonuniform_chain_Q_permutation()).has_nonneg_geninverse);
  // mixed rows share their positive columns with the third row
  auto result = farkas_row_test(fixtures::nonuniform_chain_Q_mixed(2.0, 3.0));
  CHECK_FALSE(result.has_nonneg_geninverse);
}

TEST_CASE("lumped dynamics are independent of the right-inverse choice") {
  auto model = fixtures::reversible_chain5();
  Matrix V = fixtures::reversible_chain5_eigvec_rows();
  Matrix Q(2, 5);
  Q.row(0) = V.row(4);  // exact eigenvectors: ones and the lambda=-2 row
  Q.row(1) = V.row(2);

  auto gi = generalized_inverse<Real>(Q);
  auto kernel = rank_and_nullspace<Real>(Q).nullspace;
  Matrix C(kernel.cols(), 2);
  C.setConstant(0.7);
  Matrix Qbar2 = gi.Qbar + kernel * C;
  CHECK(max_abs((Q * Qbar2 - Matrix::Identity(2, 2)).eval()) < 1e-12);

  Matrix A_hat1 = Q * model.A * gi.Qbar;
  Matrix A_hat2 = Q * model.A * Qbar2;
  Vector times = uniform_times(0.0, 10.0, 201);
  Vector x0 = Vector::Unit(5, 0);
  Vector xhat0 = Q * x0;
  Matrix traj1 = evolve<Real>(A_hat1, Vector::Zero(2), xhat0, times);
  Matrix traj2 = evolve<Real>(A_hat2, Vector::Zero(2), xhat0, times);
  CHECK(max_abs((traj1 - traj2).eval()) <= 1e-8);
}

TEST_CASE("basis covariance of the lumped matrix") {
  std::mt19937_64 rng(45);
  auto fam = mamillary_mixed_example(testing::random_distinct_positive(rng, 5));
  auto Q = realify(build_Q(fam.eigensystem, {3, 5, 0}));
  Matrix P(3, 3);
  P << 2, 1, 0,
       0, 1, 1,
       1, 0, 3;
  auto direct = lump<Real>(fam.model, transform_basis<Real>(Q, P).Q);
  auto base = lump<Real>(fam.model, Q.Q);
  Matrix expected = P * base.A_hat * P.inverse();
  CHECK(max_abs((direct.A_hat - expected).eval()) <= 1e-9);
}
