#pragma once

#include <utility>
#include <vector>

#include "lumpkit/linalg.hpp"
#include "lumpkit/model.hpp"

namespace lumpkit {

struct Trajectory {
  Vector times;
  Matrix states;  // row t holds x(times[t])
  CompartmentalModel model;
};

Vector uniform_times(double t0, double t1, int steps);

/// 1001 uniform points on [0, 10 / max|lambda|] (plain [0, 10] for A = 0).
Vector default_time_grid(const CompartmentalModel& model);

/// Exact linear evolution x(t) = e^{At} x0 + int_0^t e^{A(t-s)} b ds via the
/// augmented-matrix exponential.
Trajectory simulate(const CompartmentalModel& model, const Vector& x0, const Vector& times);

/// Complex-capable core used for lumped dynamics.
template <typename Scalar>
MatrixX<Scalar> evolve(const MatrixX<Scalar>& A, const VectorX<Scalar>& b,
                       const VectorX<Scalar>& x0, const Vector& times);

/// max_t ||Q x(t) - xhat(t)||_inf where xhat evolves under the lumped system
/// from xhat(0) = Q x0. Throws NotLumpable when Q is not an exact lumping,
/// unless require_exact is false, in which case the deviation of the
/// (inexact) aggregation A_hat = Q A Qbar is reported as a diagnostic.
double verify_commutation(const CompartmentalModel& model, const CMatrix& Q,
                          const Vector& x0, const Vector& times,
                          const Tolerances& tol = {}, bool require_exact = true);
double verify_commutation(const CompartmentalModel& model, const Matrix& Q,
                          const Vector& x0, const Vector& times,
                          const Tolerances& tol = {}, bool require_exact = true);

/// Strict sign changes of the discrete derivative of one coordinate, with
/// plateau tolerance. Requires a grid with step <= 0.01 / max|lambda|
/// (GridTooCoarse otherwise).
int count_local_extrema(const Trajectory& trajectory, Index coordinate,
                        double plateau_tol = 1e-12);

struct RegionCell {
  double k2 = 0.0;
  double k3 = 0.0;
  double D = 0.0;
  bool real = false;  // D >= 0: the lumped 3-cycle pair is real
};

/// Labels a (k2, k3) grid by the sign of the 3-cycle discriminant
/// D = k1^2 + (k2-k3)^2 - 2 k1 (k2+k3). Cells in row-major order (k2 outer).
std::vector<RegionCell> region_scan(double k1, std::pair<double, double> k2_range,
                                    std::pair<double, double> k3_range, int grid_steps);

}  // namespace lumpkit
