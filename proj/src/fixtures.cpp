#include "lumpkit/fixtures.hpp"

namespace lumpkit::fixtures {

CompartmentalModel reversible_chain5() {
  Matrix A(5, 5);
  A << -1, 1, 0, 0, 0,
        1, -5, 4, 0, 0,
        0, 4, -6, 5, 0,
        0, 0, 2, -6, 2,
        0, 0, 0, 1, -2;
  return CompartmentalModel::from_matrix(std::move(A));
}

Matrix reversible_chain5_eigvec_rows() {
  Matrix V(5, 5);
  V << 0.289897, -2.869693, 4.159591, -4.449489, 1,
      -0.2, 1, -0.2, -2, 1,
       0.2, -0.2, -0.2, 0, 1,
      -0.689897, 0.069693, 0.240408, 0.449489, 1,
       1, 1, 1, 1, 1;
  return V;
}

CompartmentalModel reversible_mamillary(double k, double K) {
  Matrix A = Matrix::Zero(5, 5);
  for (Index i = 0; i < 4; ++i) {
    A(i, i) = -k;
    A(i, 4) = K;
    A(4, i) = k;
  }
  A(4, 4) = -4.0 * K;
  return CompartmentalModel::from_matrix(std::move(A));
}

Matrix reversible_mamillary_Q(double k, double K) {
  Matrix Q(3, 5);
  Q << -1, 0, 0, 1, 0,
      -k / (4 * K), -k / (4 * K), -k / (4 * K), -k / (4 * K), 1,
      -1, 1, 0, 0, 0;
  return Q;
}

CompartmentalModel nonuniform_chain(double k1, double k2, double k3, double k4) {
  Matrix A = Matrix::Zero(5, 5);
  A(0, 0) = -k1;
  A(1, 0) = k1;
  A(1, 2) = k2;
  A(2, 2) = -k2 - k3;
  A(3, 2) = k3;
  A(3, 4) = k4;
  A(4, 4) = -k4;
  return CompartmentalModel::from_matrix(std::move(A));
}

Matrix nonuniform_chain_Q_permutation() {
  Matrix Q = Matrix::Zero(3, 5);
  Q(0, 4) = 1;
  Q(1, 2) = 1;
  Q(2, 0) = 1;
  return Q;
}

Matrix nonuniform_chain_Q_mixed(double k2, double k3) {
  Matrix Q = Matrix::Zero(3, 5);
  Q(0, 0) = 1;
  Q(1, 2) = 1;
  Q(2, 0) = (k2 + k3) / k2;
  Q(2, 1) = (k2 + k3) / k2;
  Q(2, 2) = 1;
  return Q;
}

CompartmentalModel branched_intermediates(double k1, double k2, double k3, double k4) {
  Matrix A = Matrix::Zero(4, 4);
  A(0, 0) = -k1 - k3;
  A(1, 0) = k1;
  A(1, 1) = -k2;
  A(2, 0) = k3;
  A(2, 2) = -k4;
  A(3, 1) = k2;
  A(3, 2) = k4;
  return CompartmentalModel::make({"S", "I1", "I2", "P"}, std::move(A), Vector::Zero(4));
}

Matrix branched_intermediates_Q() {
  Matrix Q = Matrix::Zero(3, 4);
  Q(0, 0) = 1;
  Q(1, 1) = 1;
  Q(1, 2) = 1;
  Q(2, 3) = 1;
  return Q;
}

Matrix sign_rule_infeasible_Q() {
  Matrix Q(2, 4);
  Q << 5, 2, 2, -3,
      -2, 0, 1, -1;
  return Q;
}

Matrix sign_rule_feasible_Q() {
  Matrix Q(2, 4);
  Q << 5, 2, 18, -3,
      -2, 0, 1, -1;
  return Q;
}

Matrix sign_rule_feasible_P() {
  Matrix P(2, 2);
  P << 1, -5,
       0.5, -4;
  return P;
}

CMatrix complex_realizable_Q() {
  CMatrix Q(2, 4);
  Q << Complex(1, 1), Complex(2, 1), Complex(4, 2), Complex(2, 2),
      Complex(-1, 0), Complex(0, 2), Complex(0, 4), Complex(-2, 0);
  return Q;
}

}  // namespace lumpkit::fixtures
