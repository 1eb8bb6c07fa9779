#include "lumpkit/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "lumpkit/eigensystem.hpp"
#include "lumpkit/families.hpp"
#include "lumpkit/lumping.hpp"

namespace lumpkit {

Vector uniform_times(double t0, double t1, int steps) {
  if (steps < 2 || !(t1 > t0))
    throw DomainError(ErrorCode::InvalidArgument, "need t1 > t0 and at least 2 steps");
  Vector t(steps);
  for (int i = 0; i < steps; ++i)
    t(i) = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(steps - 1);
  return t;
}

namespace {

double spectral_radius(const Matrix& A) {
  double r = 0.0;
  for (const auto& pair : eig_transpose(A).pairs) r = std::max(r, std::abs(pair.value));
  return r;
}

}  // namespace

Vector default_time_grid(const CompartmentalModel& model) {
  const double r = spectral_radius(model.A);
  return uniform_times(0.0, r > 0.0 ? 10.0 / r : 10.0, 1001);
}

template <typename Scalar>
MatrixX<Scalar> evolve(const MatrixX<Scalar>& A, const VectorX<Scalar>& b,
                       const VectorX<Scalar>& x0, const Vector& times) {
  const Index n = A.rows();
  if (A.cols() != n || b.size() != n || x0.size() != n)
    throw DomainError(ErrorCode::DimensionMismatch, "evolve: size mismatch");
  for (Index i = 1; i < times.size(); ++i)
    if (!(times(i) > times(i - 1)))
      throw DomainError(ErrorCode::InvalidArgument, "times must be strictly increasing");

  // Augmented generator: exp([[A, b], [0, 0]] t) carries the inhomogeneous
  // term exactly.
  MatrixX<Scalar> G = MatrixX<Scalar>::Zero(n + 1, n + 1);
  G.topLeftCorner(n, n) = A;
  G.topRightCorner(n, 1) = b;
  VectorX<Scalar> aug(n + 1);
  aug.head(n) = x0;
  aug(n) = Scalar(1.0);

  MatrixX<Scalar> states(times.size(), n);
  for (Index t = 0; t < times.size(); ++t) {
    VectorX<Scalar> xt = expm_action<Scalar>(G, aug, times(t));
    states.row(t) = xt.head(n).transpose();
  }
  return states;
}

template Matrix evolve<Real>(const Matrix&, const Vector&, const Vector&, const Vector&);
template CMatrix evolve<Complex>(const CMatrix&, const CVector&, const CVector&, const Vector&);

Trajectory simulate(const CompartmentalModel& model, const Vector& x0, const Vector& times) {
  if (x0.size() != model.size())
    throw DomainError(ErrorCode::DimensionMismatch, "simulate: x0 size mismatch");
  Trajectory out;
  out.times = times;
  out.states = evolve<Real>(model.A, model.b, x0, times);
  out.model = model;
  return out;
}

double verify_commutation(const CompartmentalModel& model, const CMatrix& Q,
                          const Vector& x0, const Vector& times, const Tolerances& tol,
                          bool require_exact) {
  CMatrix A_hat;
  CVector b_hat;
  if (require_exact) {
    LumpedModelC lumped = lump<Complex>(model, Q, tol);  // throws NotLumpable
    A_hat = lumped.A_hat;
    b_hat = lumped.b_hat;
  } else {
    GeneralizedInverse<Complex> gi = generalized_inverse<Complex>(Q, tol);
    A_hat = Q * model.A.cast<Complex>() * gi.Qbar;
    b_hat = Q * model.b.cast<Complex>();
  }
  Matrix full = evolve<Real>(model.A, model.b, x0, times);
  CVector xhat0 = Q * x0.cast<Complex>();
  CMatrix reduced = evolve<Complex>(A_hat, b_hat, xhat0, times);

  double deviation = 0.0;
  for (Index t = 0; t < times.size(); ++t) {
    CVector projected = Q * full.row(t).transpose().cast<Complex>();
    deviation = std::max(deviation,
                         max_abs((projected - reduced.row(t).transpose()).eval()));
  }
  return deviation;
}

double verify_commutation(const CompartmentalModel& model, const Matrix& Q,
                          const Vector& x0, const Vector& times, const Tolerances& tol,
                          bool require_exact) {
  return verify_commutation(model, CMatrix(Q.cast<Complex>()), x0, times, tol,
                            require_exact);
}

int count_local_extrema(const Trajectory& trajectory, Index coordinate,
                        double plateau_tol) {
  const Index T = trajectory.times.size();
  if (coordinate < 0 || coordinate >= trajectory.states.cols())
    throw DomainError(ErrorCode::DimensionMismatch, "coordinate out of range");
  if (T < 3) throw DomainError(ErrorCode::GridTooCoarse, "need at least 3 samples");

  const double radius = spectral_radius(trajectory.model.A);
  if (radius > 0.0) {
    double max_step = 0.0;
    for (Index t = 1; t < T; ++t)
      max_step = std::max(max_step, trajectory.times(t) - trajectory.times(t - 1));
    if (max_step > 0.01 / radius)
      throw DomainError(ErrorCode::GridTooCoarse,
                        "time step exceeds 0.01 / max|lambda|");
  }

  const auto x = trajectory.states.col(coordinate);
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  int count = 0;
  int last_sign = 0;
  for (Index t = 1; t < T; ++t) {
    const double d = x(t) - x(t - 1);
    int s = 0;
    if (std::abs(d) > plateau_tol * scale) s = d > 0.0 ? 1 : -1;
    if (s != 0) {
      if (last_sign != 0 && s != last_sign) ++count;
      last_sign = s;
    }
  }
  return count;
}

std::vector<RegionCell> region_scan(double k1, std::pair<double, double> k2_range,
                                    std::pair<double, double> k3_range, int grid_steps) {
  if (grid_steps < 2 || !(k2_range.second > k2_range.first) ||
      !(k3_range.second > k3_range.first) || !(k1 > 0.0))
    throw DomainError(ErrorCode::InvalidArgument, "region_scan: bad grid");

  std::vector<RegionCell> cells;
  cells.reserve(static_cast<size_t>(grid_steps) * static_cast<size_t>(grid_steps));
  auto coord = [&](const std::pair<double, double>& r, int i) {
    return r.first + (r.second - r.first) * static_cast<double>(i) /
                         static_cast<double>(grid_steps - 1);
  };
  for (int i = 0; i < grid_steps; ++i)
    for (int j = 0; j < grid_steps; ++j) {
      RegionCell cell;
      cell.k2 = coord(k2_range, i);
      cell.k3 = coord(k3_range, j);
      cell.D = cycle3_discriminant(k1, cell.k2, cell.k3);
      cell.real = cell.D >= 0.0;
      cells.push_back(cell);
    }
  return cells;
}

}  // namespace lumpkit
