#include <doctest.h>

#include "lumpkit/dynamics.hpp"
#include "lumpkit/families.hpp"
#include "lumpkit/fixtures.hpp"
#include "lumpkit/lumping.hpp"
#include "test_helpers.hpp"

using namespace lumpkit;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("simulate conserves mass on closed models") {
  std::mt19937_64 rng(61);
  Matrix A = testing::random_compartmental(rng, 4);
  for (Index j = 0; j < 4; ++j) A(j, j) -= A.col(j).sum();
  auto model = CompartmentalModel::from_matrix(A);
  Vector x0 = testing::random_positive(rng, 4);
  auto traj = simulate(model, x0, uniform_times(0.0, 10.0, 101));
  for (Index t = 0; t < traj.times.size(); ++t) {
    CHECK(std::abs(traj.states.row(t).sum() - x0.sum()) <= 1e-10 * x0.sum());
    CHECK(traj.states.row(t).minCoeff() >= -1e-10);
  }
}

TEST_CASE("simulate the two-chain analytically") {
  auto model = CompartmentalModel::from_matrix(
      (Matrix(2, 2) << -1, 0, 1, 0).finished());
  auto traj = simulate(model, vec({1, 0}), uniform_times(0.0, 5.0, 51));
  for (Index t = 0; t < traj.times.size(); ++t)
    CHECK(traj.states(t, 0) ==
          doctest::Approx(std::exp(-traj.times(t))).epsilon(1e-10));
}

TEST_CASE("simulate honors the inflow term") {
  // single compartment with inflow: x(t) = b/k + (x0 - b/k) e^{-kt}
  const double k = 2.0, b = 3.0;
  auto model = CompartmentalModel::from_matrix((Matrix(1, 1) << -k).finished(),
                                               (Vector(1) << b).finished());
  auto traj = simulate(model, vec({0.5}), uniform_times(0.0, 4.0, 41));
  for (Index t = 0; t < traj.times.size(); ++t) {
    const double expected = b / k + (0.5 - b / k) * std::exp(-k * traj.times(t));
    CHECK(traj.states(t, 0) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("long-run state lies in the kernel of A") {
  auto model = fixtures::reversible_chain5();
  Vector x0 = Vector::Unit(5, 0);
  Vector late = expm_action<Real>(model.A, x0, 200.0);
  // kernel direction from the SVD, scaled to the conserved total
  auto kernel = rank_and_nullspace<Real>(model.A).nullspace;
  REQUIRE(kernel.cols() == 1);
  Vector equilibrium = kernel.col(0) / kernel.col(0).sum();
  CHECK(max_abs((late - equilibrium).eval()) <= 1e-9);
}

TEST_CASE("commuting diagram for the chain reduction") {
  auto model = fixtures::reversible_chain5();
  auto es = eig_transpose(model.A);
  CMatrix Q(2, 5);
  Q.row(0) = es.pairs[0].vector.transpose();  // lambda = -10.898...
  Q.row(1) = es.pairs[2].vector.transpose();  // lambda = -2
  double dev = verify_commutation(model, Q, Vector::Unit(5, 0),
                                  uniform_times(0.0, 10.0, 401));
  CHECK(dev <= 1e-8);
}

TEST_CASE("identity aggregation commutes to solver accuracy") {
  auto model = fixtures::nonuniform_chain(1.0, 2.0, 3.0, 4.0);
  double dev = verify_commutation(model, Matrix(Matrix::Identity(5, 5)),
                                  vec({1, 0, 0, 0.5, 0}), uniform_times(0.0, 8.0, 201));
  CHECK(dev <= 1e-10);
}

TEST_CASE("non-lumpable aggregation: error by default, diagnostic on request") {
  auto model = fixtures::branched_intermediates(1.0, 2.0, 0.7, 0.5);
  Matrix Q = fixtures::branched_intermediates_Q();
  Vector times = uniform_times(0.0, 10.0, 201);
  Vector x0 = vec({1, 0, 0, 0});
  CHECK_THROWS_AS(verify_commutation(model, Q, x0, times), DomainError);
  double dev = verify_commutation(model, Q, x0, times, {}, false);
  CHECK(dev > 1e-3);  // the aggregated system genuinely diverges

  auto symmetric = fixtures::branched_intermediates(1.0, 2.0, 0.7, 2.0);
  CHECK(verify_commutation(symmetric, Q, x0, times) <= 1e-8);
}

TEST_CASE("extrema counting on decay and chain humps") {
  auto decay = CompartmentalModel::from_matrix((Matrix(1, 1) << -1.0).finished());
  auto traj = simulate(decay, vec({1}), uniform_times(0.0, 10.0, 2001));
  CHECK(count_local_extrema(traj, 0) == 0);

  // X1 -> X2 -> X3: the intermediate rises then falls
  Matrix A = Matrix::Zero(3, 3);
  A(0, 0) = -1.0;
  A(1, 0) = 1.0;
  A(1, 1) = -2.0;
  A(2, 1) = 2.0;
  auto chain = CompartmentalModel::from_matrix(A);
  auto traj3 = simulate(chain, vec({1, 0, 0}), uniform_times(0.0, 10.0, 4001));
  CHECK(count_local_extrema(traj3, 0) == 0);
  CHECK(count_local_extrema(traj3, 1) == 1);
  CHECK(count_local_extrema(traj3, 2) == 0);
}

TEST_CASE("extrema counting rejects coarse grids") {
  auto decay = CompartmentalModel::from_matrix((Matrix(1, 1) << -10.0).finished());
  auto traj = simulate(decay, vec({1}), uniform_times(0.0, 10.0, 11));
  CHECK_THROWS_AS(count_local_extrema(traj, 0), DomainError);
}

TEST_CASE("trajectory extrema respect the real-spectrum bound") {
  // lumped systems with real eigenvalues: every coordinate shows at most
  // nhat - 2 local extrema
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 5; ++trial) {
    Vector k = testing::random_distinct_positive(rng, 4);
    Vector mu = testing::random_positive(rng, 5, 0.0, 0.5);
    auto fam = catenary_irreversible(k, mu);
    auto Q = realify(build_Q(fam.eigensystem, {1, 3}));
    auto lumped = lump<Real>(fam.model, Q.Q);
    auto reduced = CompartmentalModel::from_matrix(lumped.A_hat);

    Vector x0 = Q.Q * testing::random_positive(rng, 5);
    const double radius = 4.0;  // |eigenvalues| stay below k+mu bounds
    auto traj = simulate(reduced, x0, uniform_times(0.0, 10.0, 8001));
    (void)radius;
    for (Index coord = 0; coord < 2; ++coord)
      CHECK(count_local_extrema(traj, coord) <= 0);  // nhat - 2 = 0
  }
}

TEST_CASE("region scan labels by the discriminant sign") {
  auto cells = region_scan(1.0, {0.0, 20.0}, {0.0, 20.0}, 21);
  REQUIRE(cells.size() == 441);
  for (const auto& cell : cells) {
    CHECK(cell.D ==
          doctest::Approx(cycle3_discriminant(1.0, cell.k2, cell.k3)).epsilon(1e-15));
    CHECK(cell.real == (cell.D >= 0.0));
  }
  // corner cell: k2 = k3 = 0 has D = 1 > 0
  CHECK(cells.front().k2 == 0.0);
  CHECK(cells.front().real);
}

TEST_CASE("region scan agrees with the lumped matrix's imaginary part") {
  auto cells = region_scan(1.0, {0.4, 20.0}, {0.4, 20.0}, 11);
  for (const auto& cell : cells) {
    if (std::abs(cell.D) < 1e-9) continue;  // boundary band
    Vector k = vec({1.0, cell.k2, cell.k3});
    auto model = cycle(k, false);
    auto Q = build_Q(cycle_eigensystem(k, false), {0, 1});
    auto lumped = lump<Complex>(model, Q.Q);
    const bool real_Ahat = max_abs(lumped.A_hat.imag()) <= 1e-10;
    CHECK(real_Ahat == cell.real);
  }
}

TEST_CASE("printed scan anchors") {
  CHECK(cycle3_discriminant(1.0, 2.0, 3.0) == doctest::Approx(-8.0));
  auto es = cycle_eigensystem(vec({1.0, 0.5, 5.0 / 128.0}), false);
  for (const auto& p : es.pairs) CHECK(p.value.imag() == 0.0);
}

TEST_CASE("default time grid scales with the spectrum") {
  auto grid = default_time_grid(fixtures::reversible_chain5());
  CHECK(grid.size() == 1001);
  CHECK(grid(0) == 0.0);
  CHECK(grid(1000) == doctest::Approx(10.0 / 10.898979485566358).epsilon(1e-9));

  auto flat = default_time_grid(CompartmentalModel::from_matrix(Matrix::Zero(2, 2)));
  CHECK(flat(1000) == doctest::Approx(10.0));
}
