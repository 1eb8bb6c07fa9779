#pragma once

#include "lumpkit/model.hpp"

namespace lumpkit::fixtures {

/// Reversible 5-species chain with rates (1,1), (4,4), (2,5), (1,2).
CompartmentalModel reversible_chain5();

/// The five left eigenvectors of reversible_chain5(), trailing-1 scaled,
/// stacked as rows in eigenvalue order (-10.898979.., -6, -2, -1.101020.., 0).
Matrix reversible_chain5_eigvec_rows();

/// Reversible mamillary system: mother X5 feeds X1..X4 at rate K, each
/// peripheral returns at rate k.
CompartmentalModel reversible_mamillary(double k, double K);

/// Its printed 3-row lumping matrix (rows for eigenvalues -k, -(4K+k), -k).
Matrix reversible_mamillary_Q(double k, double K);

/// Chain with nonuniform arrow directions: X1 -> X2 <- X3 -> X4 <- X5.
CompartmentalModel nonuniform_chain(double k1, double k2, double k3, double k4);

/// Permutation-row lumping of the nonuniform chain (eigenvalues -k4, -(k2+k3), -k1).
Matrix nonuniform_chain_Q_permutation();

/// Eigenvector lumping [e1; e3; ((k2+k3)/k2, (k2+k3)/k2, 1, 0, 0)].
Matrix nonuniform_chain_Q_mixed(double k2, double k3);

/// Two parallel routes S -> I1 -> P, S -> I2 -> P; exactly lumpable under
/// I = I1 + I2 iff k2 = k4.
CompartmentalModel branched_intermediates(double k1, double k2, double k3, double k4);

/// The aggregation (S, I1+I2, P) for branched_intermediates.
Matrix branched_intermediates_Q();

/// 2x4 sign-rule fixtures for the nonnegative-PQ problem: the infeasible
/// instance and its feasible variant with entry (1,3) = 18.
Matrix sign_rule_infeasible_Q();
Matrix sign_rule_feasible_Q();

/// The 2x2 basis transform (rows (1,-5) and (1/2,-4)) feasible for
/// sign_rule_feasible_Q.
Matrix sign_rule_feasible_P();

/// 2x4 complex matrix admitting a nonsingular P with PQ real.
CMatrix complex_realizable_Q();

}  // namespace lumpkit::fixtures
