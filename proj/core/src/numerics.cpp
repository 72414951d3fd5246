#include "thurston/numerics.hpp"

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>

namespace thurston::numerics {

Eigen::MatrixXd jacobian_fd(const Residual& f, const Vector& x, double rel_step) {
  const Vector f0 = f(x);
  Eigen::MatrixXd jac(f0.size(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double h = rel_step * (1.0 + std::abs(x[j]));
    Vector xp = x;
    Vector xm = x;
    xp[j] += h;
    xm[j] -= h;
    const Vector fp = f(xp);
    const Vector fm = f(xm);
    if (fp.allFinite() && fm.allFinite()) {
      jac.col(j) = (fp - fm) / (2.0 * h);
    } else if (fp.allFinite()) {
      jac.col(j) = (fp - f0) / h;
    } else if (fm.allFinite()) {
      jac.col(j) = (f0 - fm) / h;
    } else {
      jac.col(j).setConstant(std::nan(""));
    }
  }
  return jac;
}

NewtonResult newton_solve(const Residual& f, const Vector& start, const NewtonOptions& options) {
  NewtonResult out;
  out.solution = start;
  out.last_full_step = Vector::Zero(start.size());
  Vector fx = f(start);
  if (!fx.allFinite()) return out;

  auto full_step = [&](const Vector& x, const Vector& fval) -> Vector {
    const Eigen::MatrixXd jac = jacobian_fd(f, x, options.fd_step);
    if (!jac.allFinite()) return Vector::Constant(x.size(), std::nan(""));
    return jac.completeOrthogonalDecomposition().solve(-fval);
  };

  Vector& x = out.solution;
  SolverReport& report = out.report;
  for (int it = 0; it < options.max_iterations; ++it) {
    const double norm = fx.norm();
    report.residual_norm = norm;
    report.iterations = it;
    if (norm <= options.tol) {
      report.converged = true;
      out.last_full_step.setZero();
      return out;
    }
    const Vector step = full_step(x, fx);
    out.last_full_step = step;
    if (!step.allFinite() || step.norm() == 0.0) {
      report.singular = true;
      return out;
    }
    double alpha = 1.0;
    bool accepted = false;
    for (int h = 0; h <= options.max_halvings; ++h, alpha *= 0.5) {
      const Vector trial = x + alpha * step;
      const Vector ft = f(trial);
      if (ft.allFinite() && ft.norm() < norm) {
        x = trial;
        fx = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      report.singular = true;
      return out;
    }
    ++report.history_length;
  }
  report.iterations = options.max_iterations;
  report.residual_norm = fx.norm();
  report.converged = report.residual_norm <= options.tol;
  if (!report.converged) out.last_full_step = full_step(x, fx);
  return out;
}

PolylineMinimum minimize_on_polyline(std::span<const double> parameters,
                                     std::span<const double> values,
                                     const std::function<double(double)>& refine,
                                     double tie_tol) {
  const std::size_t n = values.size();
  PolylineMinimum out;
  if (n == 0 || parameters.size() != n) return out;

  std::size_t k = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (values[i] < values[k]) k = i;
  }
  const double coarse_min = values[k];
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] <= coarse_min + tie_tol) out.ties.push_back(i);
  }
  out.index = k;
  out.parameter = parameters[k];
  out.value = coarse_min;
  if (!refine || n < 3) return out;

  auto consider = [&](double s, double fs) {
    if (std::isfinite(fs) && fs < out.value) {
      out.parameter = s;
      out.value = fs;
    }
  };

  const std::size_t lo_i = k == 0 ? 0 : k - 1;
  const std::size_t hi_i = k + 1 >= n ? n - 1 : k + 1;

  // Parabolic vertex through the bracketing samples.
  if (lo_i < k && k < hi_i) {
    const double a = parameters[lo_i], b = parameters[k], c = parameters[hi_i];
    const double fa = values[lo_i], fb = values[k], fc = values[hi_i];
    const double num = (b - a) * (b - a) * (fb - fc) - (b - c) * (b - c) * (fb - fa);
    const double den = (b - a) * (fb - fc) - (b - c) * (fb - fa);
    if (den != 0.0) {
      const double s = b - 0.5 * num / den;
      if (s > a && s < c) consider(s, refine(s));
    }
  }

  constexpr double kInvPhi = 0.6180339887498949;
  double a = parameters[lo_i];
  double b = parameters[hi_i];
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = refine(c);
  double fd = refine(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = refine(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = refine(d);
    }
  }
  consider(c, fc);
  consider(d, fd);
  return out;
}

namespace {

Eigen::Matrix<double, 2, 3> curve_jacobian(const CurveFunction& f, const Eigen::Vector3d& x) {
  Eigen::Matrix<double, 2, 3> jac;
  for (int j = 0; j < 3; ++j) {
    const double h = 1e-7 * (1.0 + std::abs(x[j]));
    Eigen::Vector3d xp = x;
    Eigen::Vector3d xm = x;
    xp[j] += h;
    xm[j] -= h;
    jac.col(j) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return jac;
}

}  // namespace

Eigen::Vector3d project_to_curve(const CurveFunction& f, const Eigen::Vector3d& x, double tol,
                                 int max_iterations, SolverReport& report) {
  report = {};
  Eigen::Vector3d y = x;
  for (int it = 0; it <= max_iterations; ++it) {
    const Eigen::Vector2d fy = f(y);
    report.iterations = it;
    report.residual_norm = fy.norm();
    if (!fy.allFinite()) return y;
    if (report.residual_norm <= tol) {
      report.converged = true;
      return y;
    }
    if (it == max_iterations) break;
    const Eigen::Matrix<double, 2, 3> jac = curve_jacobian(f, y);
    const Eigen::Matrix2d gram = jac * jac.transpose();
    if (!gram.allFinite() || std::abs(gram.determinant()) < 1e-300) {
      report.singular = true;
      return y;
    }
    y -= jac.transpose() * gram.ldlt().solve(fy);
    ++report.history_length;
  }
  return y;
}

Eigen::Vector3d curve_tangent(const CurveFunction& f, const Eigen::Vector3d& x) {
  const Eigen::Matrix<double, 2, 3> jac = curve_jacobian(f, x);
  const Eigen::Vector3d t = Eigen::Vector3d(jac.row(0)).cross(Eigen::Vector3d(jac.row(1)));
  const double n = t.norm();
  return n > 0.0 ? Eigen::Vector3d(t / n) : Eigen::Vector3d::Zero();
}

TracedCurve trace_curve(const CurveFunction& f, const Eigen::Vector3d& seed,
                        const ContinuationOptions& options) {
  TracedCurve out;
  auto inside = [&](const Eigen::Vector3d& p) { return !options.inside || options.inside(p); };

  const Eigen::Vector3d start = project_to_curve(f, seed, options.tol, 50, out.seed_report);
  if (!out.seed_report.converged || !inside(start)) return out;
  const Eigen::Vector3d t0 = curve_tangent(f, start);
  if (t0.isZero()) {
    out.points.push_back(start);
    out.truncated = true;
    return out;
  }

  // Returns the points after `start` in direction `dir`.
  auto march = [&](const Eigen::Vector3d& dir, bool& closed, bool& truncated) {
    std::vector<Eigen::Vector3d> pts;
    Eigen::Vector3d x = start;
    Eigen::Vector3d t = dir;
    double h = options.initial_step;
    double travelled = 0.0;
    while (static_cast<int>(pts.size()) < options.max_points) {
      const Eigen::Vector3d pred = x + h * t;
      SolverReport rep;
      Eigen::Vector3d next = pred;
      bool ok = inside(pred);
      if (ok) {
        next = project_to_curve(f, pred, options.tol, options.max_corrector_iterations, rep);
        ok = rep.converged && inside(next) && (next - pred).norm() < 0.5 * h;
      }
      Eigen::Vector3d tn;
      if (ok) {
        tn = curve_tangent(f, next);
        if (tn.dot(t) < 0.0) tn = -tn;
        ok = !tn.isZero() && tn.dot(t) > 0.9;
      }
      if (!ok) {
        h *= 0.5;
        if (h < options.min_step) {
          truncated = true;
          break;
        }
        continue;
      }
      const double stepped = (next - x).norm();
      travelled += stepped;
      if (travelled > 3.0 * stepped && (next - start).norm() < std::max(h, stepped)) {
        closed = true;
        break;
      }
      pts.push_back(next);
      x = next;
      t = tn;
      if (rep.iterations <= 3) h = std::min(1.5 * h, options.max_step);
    }
    if (static_cast<int>(pts.size()) >= options.max_points) truncated = true;
    return pts;
  };

  bool closed = false;
  bool truncated_fwd = false;
  const std::vector<Eigen::Vector3d> forward = march(t0, closed, truncated_fwd);
  if (closed) {
    out.points.push_back(start);
    out.points.insert(out.points.end(), forward.begin(), forward.end());
    out.closed = true;
    return out;
  }
  bool closed_back = false;
  bool truncated_back = false;
  const std::vector<Eigen::Vector3d> backward = march(-t0, closed_back, truncated_back);
  out.points.assign(backward.rbegin(), backward.rend());
  out.points.push_back(start);
  out.points.insert(out.points.end(), forward.begin(), forward.end());
  out.truncated = truncated_fwd || truncated_back;
  return out;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n < 2) n = 2;
  if (n % 2 == 1) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

}  // namespace thurston::numerics
