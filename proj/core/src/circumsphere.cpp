#include "thurston/circumsphere.hpp"

#include "thurston/geodesic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace thurston {

namespace {

constexpr double kConeTol = 1e-9;

struct Start {
  std::string label;
  Eigen::Vector3d point;
};

std::vector<Start> starts(const Tetrahedron& t) {
  std::vector<Start> out;
  std::array<Eigen::Vector3d, 4> a;
  for (int i = 0; i < 4; ++i) a[i] = t.vertices[i].vec();

  Eigen::Matrix3d m;
  Eigen::Vector3d rhs;
  for (int i = 1; i < 4; ++i) {
    m.row(i - 1) = 2.0 * (a[i] - a[0]).transpose();
    rhs[i - 1] = a[i].squaredNorm() - a[0].squaredNorm();
  }
  const Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
  if (lu.isInvertible()) out.push_back({"euclidean_circumcenter", lu.solve(rhs)});

  const Eigen::Vector3d centroid = (a[0] + a[1] + a[2] + a[3]) / 4.0;
  out.push_back({"centroid", centroid});
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector3d face = (4.0 * centroid - a[i]) / 3.0;
    out.push_back({"face_midpoint_" + std::to_string(i), 0.5 * (a[i] + face)});
  }
  return out;
}

double spread(GeometryKind g, const Tetrahedron& t, const Point& c) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Point& a : t.vertices) {
    const double d = distance(g, a, c);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi - lo;
}

}  // namespace

void validate(GeometryKind g, const Tetrahedron& t) {
  for (const Point& p : t.vertices) {
    if (!is_valid(g, p)) {
      require_valid(g, p, "tetrahedron vertex");
    }
  }
  std::array<std::array<double, 4>, 4> d{};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      d[i][j] = d[j][i] = distance(g, t.vertices[i], t.vertices[j]);
      if (d[i][j] <= 1e-9) {
        throw GeometryError(ErrorCode::Degenerate, "tetrahedron has coincident vertices");
      }
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      for (int k = j + 1; k < 4; ++k) {
        const double defect = std::min({d[i][j] + d[j][k] - d[i][k], d[i][j] + d[i][k] - d[j][k],
                                        d[i][k] + d[j][k] - d[i][j]});
        if (defect <= 1e-9) {
          throw GeometryError(ErrorCode::Degenerate, "three tetrahedron vertices lie on one geodesic");
        }
      }
    }
  }
}

std::string_view to_string(CenterClass c) {
  switch (c) {
    case CenterClass::ProperSphere: return "proper_sphere";
    case CenterClass::S2rRadiusExceedsPi: return "s2r_radius_exceeds_pi";
    case CenterClass::H2rOuterCenter: return "h2r_outer_center";
    case CenterClass::H2rIdealCenter: return "h2r_ideal_center";
  }
  return "unknown";
}

CenterClass classify_center(GeometryKind g, const Point& center, std::optional<double> radius) {
  if (g == GeometryKind::SphereProduct) {
    return radius && *radius > std::numbers::pi ? CenterClass::S2rRadiusExceedsPi
                                                : CenterClass::ProperSphere;
  }
  const double q = center.x * center.x - center.y * center.y - center.z * center.z;
  const double rel = q / std::max(center.vec().squaredNorm(), std::numeric_limits<double>::min());
  if (rel > kConeTol && center.x > 0.0) return CenterClass::ProperSphere;
  if (std::abs(rel) <= kConeTol) return CenterClass::H2rIdealCenter;
  return CenterClass::H2rOuterCenter;
}

numerics::Vector circumsphere_residual(GeometryKind g, const Tetrahedron& t,
                                       const numerics::Vector& c) {
  const Point p{c[0], c[1], c[2]};
  numerics::Vector f(3);
  if (!is_valid(g, p)) {
    f.setConstant(std::nan(""));
    return f;
  }
  const double d0 = distance(g, t.vertices[0], p);
  for (int i = 1; i < 4; ++i) {
    const double di = distance(g, t.vertices[i], p);
    f[i - 1] = d0 * d0 - di * di;
  }
  return f;
}

CircumsphereResult circumscribed_sphere(GeometryKind g, const Tetrahedron& t,
                                        const CircumsphereOptions& options) {
  validate(g, t);
  const numerics::Residual f = [&](const numerics::Vector& c) {
    return circumsphere_residual(g, t, c);
  };

  struct Candidate {
    CircumsphereResult result;
    bool proper = false;
  };
  std::vector<Candidate> converged;
  numerics::NewtonResult best;
  best.report.residual_norm = std::numeric_limits<double>::infinity();
  std::string best_label;

  for (const Start& s : starts(t)) {
    if (!is_valid(g, Point::from(s.point))) continue;
    const numerics::NewtonResult r = numerics::newton_solve(f, s.point, options.newton);
    if (!r.report.converged) {
      if (r.report.residual_norm < best.report.residual_norm) {
        best = r;
        best_label = s.label;
      }
      continue;
    }
    const Point c = Point::from(r.solution);
    bool duplicate = false;
    for (const Candidate& other : converged) {
      duplicate = duplicate ||
                  (other.result.center.vec() - c.vec()).norm() <= options.distinct_tol;
    }
    if (duplicate) continue;
    Candidate cand;
    cand.result.center = c;
    cand.result.radius = distance(g, t.vertices[0], c);
    cand.result.classification = classify_center(g, c, cand.result.radius);
    cand.result.residual = spread(g, t, c);
    cand.result.report = r.report;
    cand.result.start_label = s.label;
    cand.proper = cand.result.classification == CenterClass::ProperSphere;
    converged.push_back(std::move(cand));
  }

  if (!converged.empty()) {
    auto chosen = std::find_if(converged.begin(), converged.end(),
                               [](const Candidate& c) { return c.proper; });
    if (chosen == converged.end()) chosen = converged.begin();
    CircumsphereResult out = chosen->result;
    for (const Candidate& c : converged) {
      if (&c != &*chosen) out.alternatives.push_back(c.result.center);
    }
    return out;
  }

  if (g == GeometryKind::HyperbolicProduct && best.solution.size() == 3 &&
      best.last_full_step.allFinite()) {
    const Point extrapolated = Point::from(best.solution + best.last_full_step);
    const CenterClass cls = classify_center(g, extrapolated, std::nullopt);
    if (cls != CenterClass::ProperSphere) {
      CircumsphereResult out;
      out.center = extrapolated;
      out.classification = cls;
      out.residual = std::numeric_limits<double>::infinity();
      out.report = best.report;
      out.start_label = best_label;
      return out;
    }
  }

  std::ostringstream os;
  os.precision(6);
  os << "circumcenter solver did not converge from any start; best residual "
     << best.report.residual_norm;
  throw GeometryError(ErrorCode::NonConvergence, os.str());
}

}  // namespace thurston
