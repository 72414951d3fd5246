#pragma once

// Small dense solvers shared by the geometry modules.

#include <Eigen/Core>

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace thurston::numerics {

using Vector = Eigen::VectorXd;
using Residual = std::function<Vector(const Vector&)>;

struct SolverReport {
  bool converged = false;
  int iterations = 0;
  double residual_norm = std::numeric_limits<double>::infinity();
  int history_length = 0;
  bool singular = false;  // line search could not reduce the residual
};

struct NewtonOptions {
  double tol = 1e-12;
  int max_iterations = 200;
  double fd_step = 1e-6;  // scaled per variable by (1 + |x_i|)
  int max_halvings = 40;
};

struct NewtonResult {
  Vector solution;
  SolverReport report;
  /// Undamped Newton step at the returned iterate (used to extrapolate when
  /// the zero lies outside the residual's domain).
  Vector last_full_step;
};

/// Central-difference Jacobian with h_i = rel_step * (1 + |x_i|).
Eigen::MatrixXd jacobian_fd(const Residual& f, const Vector& x, double rel_step = 1e-6);

/// Damped Newton with halving line search on ||F||. Works for square and
/// underdetermined systems (minimum-norm steps). Non-finite trial residuals
/// are treated as failed trials.
NewtonResult newton_solve(const Residual& f, const Vector& start, const NewtonOptions& options = {});

struct PolylineMinimum {
  double parameter = 0.0;
  double value = 0.0;
  std::size_t index = 0;           // coarse argmin sample
  std::vector<std::size_t> ties;   // samples within tie_tol of the minimum
};

/// Coarse argmin over samples, then golden-section refinement between the
/// neighbouring samples using `refine` (may be empty to skip refinement).
PolylineMinimum minimize_on_polyline(std::span<const double> parameters,
                                     std::span<const double> values,
                                     const std::function<double(double)>& refine,
                                     double tie_tol = 1e-9);

using CurveFunction = std::function<Eigen::Vector2d(const Eigen::Vector3d&)>;

struct ContinuationOptions {
  double initial_step = 1e-2;
  double min_step = 1e-7;
  double max_step = 0.1;
  double tol = 1e-10;
  int max_corrector_iterations = 8;
  int max_points = 20000;
  /// Domain test; points failing it end the trace in that direction.
  std::function<bool(const Eigen::Vector3d&)> inside;
};

struct TracedCurve {
  std::vector<Eigen::Vector3d> points;
  bool closed = false;
  bool truncated = false;
  SolverReport seed_report;
};

/// Minimum-norm Newton projection of x onto {f = 0}.
Eigen::Vector3d project_to_curve(const CurveFunction& f, const Eigen::Vector3d& x, double tol,
                                 int max_iterations, SolverReport& report);

/// Unit tangent of {f = 0} at x (cross product of the two gradients).
Eigen::Vector3d curve_tangent(const CurveFunction& f, const Eigen::Vector3d& x);

/// Predictor-corrector continuation of {f1 = f2 = 0} through `seed`.
TracedCurve trace_curve(const CurveFunction& f, const Eigen::Vector3d& seed,
                        const ContinuationOptions& options);

/// Composite Simpson rule on [a, b]; odd n is rounded up.
double simpson(const std::function<double(double)>& f, double a, double b, int n);

}  // namespace thurston::numerics
