#pragma once

#include "lumpkit/eigensystem.hpp"
#include "lumpkit/model.hpp"

namespace lumpkit {

struct FamilyResult {
  CompartmentalModel model;
  EigenSystem eigensystem;
};

/// Unidirectional chain X1 -> X2 -> ... -> XM with transfer rates k (size M-1)
/// and per-compartment outflow rates mu (size M, may be zero). Eigenvalues are
/// -k_i - mu_i (i < M) and -mu_M. Eigenvector scaling: leading-1 rows when mu
/// is identically zero, trailing-1 rows otherwise. Throws NonRobustParameters
/// when two eigenvalues coincide (closed forms divide by their gaps).
FamilyResult catenary_irreversible(const Vector& k, const Vector& mu,
                                   const Tolerances& tol = {});

/// M peripheral compartments feeding one central compartment X_{M+1} with
/// rates k. Eigenvalues {-k_1..-k_M, 0}; eigenvectors e_1..e_M and all-ones.
FamilyResult mamillary_inward(const Vector& k, const Tolerances& tol = {});

/// Central compartment X_{M+1} feeding M peripheral ones with rates k.
/// Single eigenvalue -K = -sum(k) with eigenvector e_{M+1}; eigenvalue 0 of
/// multiplicity M with eigenvectors e_i - (k_i/k_M) e_M (i < M) and
/// (K/k_M) e_M + e_{M+1}.
FamilyResult mamillary_outward(const Vector& k);

/// The 6-compartment mixed-flow example: X1, X2 drain with rates k1, k2, and
/// the central X6 feeds X3, X4, X5 with rates k3, k4, k5 (K = k3+k4+k5).
/// Requires k1 != k2 (robust case).
FamilyResult mamillary_mixed_example(const Vector& k, const Tolerances& tol = {});

/// Simplicial system: A^T is the circulant with first row (c0, c1..c_{M-1}),
/// c0 = -(sum c + d), d the uniform outflow rate. Eigenvalues are
/// lambda_k = sum_m c_m eps_k^m over the M-th roots of unity eps_k, with
/// eigenvectors (1, eps_k, ..., eps_k^{M-1}). For M = 3 with c1 = c2 the
/// degenerate pair is replaced by the real basis (-1,0,1), (-1,1,0).
FamilyResult circulant_simplicial(const Vector& c, double d, const Tolerances& tol = {});

/// Circular system X1 -> X2 -> ... -> XM -> X1 (irreversible) or the uniform
/// bidirectional ring (reversible; requires all rates equal). Closed-form
/// eigen-systems exist only for the irreversible 3-cycle and the uniform
/// reversible ring; other cycles take the numeric eigen path.
CompartmentalModel cycle(const Vector& k, bool reversible);

/// Closed forms for cycle models: the irreversible 3-cycle (square-root pair)
/// and the uniform reversible 5-ring (golden-ratio vectors); other uniform
/// reversible rings fall back to the circulant roots-of-unity system. Throws
/// InvalidArgument where no closed form exists.
EigenSystem cycle_eigensystem(const Vector& k, bool reversible,
                              const Tolerances& tol = {});

/// Discriminant of the 3-cycle eigenvalue pair; the pair (and the lumped
/// 2-compartment system built from it) is real iff D >= 0.
double cycle3_discriminant(double k1, double k2, double k3);

}  // namespace lumpkit
