#include "thurston/triangle_surface.hpp"

#include "thurston/geodesic.hpp"
#include "thurston/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace thurston {

namespace {

constexpr double kPi = std::numbers::pi;

// Arc-length neighbourhood of sample k on a traced polyline: the point at
// signed offset s from x_k along the chords to its neighbours.
struct LocalChart {
  Eigen::Vector3d prev, mid, next;
  double len_prev = 0.0;
  double len_next = 0.0;

  Eigen::Vector3d at(double s) const {
    if (s < 0.0) return mid + (-s / len_prev) * (prev - mid);
    if (s > 0.0) return mid + (s / len_next) * (next - mid);
    return mid;
  }
};

struct Minimum {
  Point point;
  double value = std::numeric_limits<double>::infinity();
  bool at_boundary = false;
};

struct Component {
  std::vector<Eigen::Vector3d> points;
  bool closed = false;
  bool truncated = false;
};

// Critical point of d^2(a0, .) on the curve: both residuals zero and the
// three gradients linearly dependent. Sharpens the golden-section estimate
// beyond the square-root-of-epsilon limit of value comparisons.
Eigen::Vector3d polish_minimizer(GeometryKind g, const Point& a0, const ApolloniusSpec& s1,
                                 const ApolloniusSpec& s2, const Eigen::Vector3d& x,
                                 numerics::SolverReport& report) {
  const double n1 = 1.0 / (1.0 + s1.lambda * s1.lambda);
  const double n2 = 1.0 / (1.0 + s2.lambda * s2.lambda);
  const numerics::Residual f = [&](const numerics::Vector& v) {
    numerics::Vector out(3);
    const Point q{v[0], v[1], v[2]};
    if (!is_valid(g, q)) {
      out.setConstant(std::nan(""));
      return out;
    }
    const Eigen::Vector3d gd = distance_squared_gradient(g, a0, q);
    const Eigen::Vector3d g1 = apollonius_gradient(s1, q);
    const Eigen::Vector3d g2 = apollonius_gradient(s2, q);
    out[0] = n1 * apollonius_residual(s1, q);
    out[1] = n2 * apollonius_residual(s2, q);
    out[2] = gd.normalized().dot(g1.normalized().cross(g2.normalized()));
    return out;
  };
  numerics::NewtonOptions opt;
  opt.tol = 1e-12;
  opt.max_iterations = 30;
  const numerics::NewtonResult r = numerics::newton_solve(f, x, opt);
  report = r.report;
  return r.solution;
}

}  // namespace

std::string_view to_string(TriangleKind k) {
  return k == TriangleKind::Fibre ? "fibre" : "general";
}

std::string_view to_string(SurfaceStatus s) {
  switch (s) {
    case SurfaceStatus::Ok: return "ok";
    case SurfaceStatus::Endpoint: return "endpoint";
    case SurfaceStatus::EmptyCurve: return "empty_curve";
    case SurfaceStatus::Failed: return "failed";
  }
  return "unknown";
}

std::string_view to_string(ProjectionStatus s) {
  switch (s) {
    case ProjectionStatus::Ok: return "ok";
    case ProjectionStatus::Missed: return "missed";
    case ProjectionStatus::SurfaceFailed: return "surface_failed";
  }
  return "unknown";
}

GeodesicTriangle classify_triangle(GeometryKind g, const Point& a0, const Point& a1,
                                   const Point& a2) {
  GeodesicTriangle tri{g, {a0, a1, a2}, TriangleKind::General};
  for (const Point& p : tri.v) require_valid(g, p, "triangle vertex");
  const double d01 = distance(g, a0, a1);
  const double d12 = distance(g, a1, a2);
  const double d02 = distance(g, a0, a2);
  if (std::min({d01, d12, d02}) <= 1e-9) {
    throw GeometryError(ErrorCode::Degenerate, "triangle has coincident vertices");
  }
  if (std::min({d01 + d12 - d02, d01 + d02 - d12, d02 + d12 - d01}) <= 1e-9) {
    throw GeometryError(ErrorCode::Degenerate, "triangle vertices lie on one geodesic");
  }
  Eigen::Matrix3d m;
  m << a0.vec().transpose(), a1.vec().transpose(), a2.vec().transpose();
  const double scale = a0.vec().norm() * a1.vec().norm() * a2.vec().norm();
  tri.kind = std::abs(m.determinant()) <= 1e-9 * scale ? TriangleKind::Fibre : TriangleKind::General;
  return tri;
}

ApolloniusSpec first_surface(const GeodesicTriangle& tri, double lambda1) {
  return {tri.geometry, tri.a0(), tri.a1(), lambda1};
}

ApolloniusSpec second_surface(const GeodesicTriangle& tri, double lambda2) {
  return {tri.geometry, tri.a2(), tri.a0(), lambda2};
}

Box triangle_box(const GeodesicTriangle& tri, double scale) {
  double r = 0.0;
  for (const Point& p : tri.v) r = std::max(r, p.vec().norm());
  return {Eigen::Vector3d::Constant(-scale * r), Eigen::Vector3d::Constant(scale * r)};
}

double RatioCheck::max() const {
  return std::max({std::abs(ratio1), std::abs(ratio2), std::abs(composition)});
}

RatioCheck check_ratios(const GeodesicTriangle& tri, double lambda1, double lambda2,
                        const Point& p) {
  const GeometryKind g = tri.geometry;
  const double d0 = distance(g, tri.a0(), p);
  const double d1 = distance(g, p, tri.a1());
  const double d2 = distance(g, tri.a2(), p);
  return {d0 / d1 - lambda1, d2 / d0 - lambda2, d2 / d1 - lambda1 * lambda2};
}

SurfacePoint surface_point(const GeodesicTriangle& tri, double lambda1, double lambda2,
                           const SurfaceOptions& options, const std::vector<Point>& hints) {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0) || !std::isfinite(lambda1) ||
      !std::isfinite(lambda2)) {
    throw GeometryError(ErrorCode::InvalidArgument, "surface parameters must be finite and >= 0");
  }
  if (lambda1 == 0.0 && lambda2 == 0.0) {
    throw GeometryError(ErrorCode::InvalidArgument, "surface parameters are both zero");
  }
  const GeometryKind g = tri.geometry;
  SurfacePoint out;
  if (lambda1 == 0.0 || lambda2 == 0.0) {
    out.status = SurfaceStatus::Endpoint;
    out.point = lambda1 == 0.0 ? tri.a0() : tri.a2();
    out.distance_to_a0 = distance(g, tri.a0(), out.point);
    out.candidates = {out.point};
    out.components = 1;
    return out;
  }

  const ApolloniusSpec s1 = first_surface(tri, lambda1);
  const ApolloniusSpec s2 = second_surface(tri, lambda2);
  const Box box = triangle_box(tri, options.box_scale);
  const double diag = box.diagonal();
  const numerics::CurveFunction f = intersection_function(s1, s2);
  auto inside = [&](const Eigen::Vector3d& p) {
    return box.contains(p) && is_valid(g, Point::from(p));
  };

  std::vector<Eigen::Vector3d> seeds;
  for (const Point& h : hints) seeds.push_back(h.vec());
  {
    const Point y1 = geodesic_interpolate(g, tri.a0(), tri.a1(), lambda1 / (1.0 + lambda1));
    const Point y2 = geodesic_interpolate(g, tri.a2(), tri.a0(), lambda2 / (1.0 + lambda2));
    seeds.push_back(y1.vec());
    seeds.push_back(y2.vec());
    seeds.push_back(0.5 * (y1.vec() + y2.vec()));
    seeds.push_back((tri.a0().vec() + tri.a1().vec() + tri.a2().vec()) / 3.0);
  }

  std::vector<Component> components;
  const double near_tol = 2.5e-2 * diag;
  auto on_known_component = [&](const Eigen::Vector3d& p) {
    for (const Component& c : components) {
      for (const auto& q : c.points) {
        if ((q - p).norm() <= near_tol) return true;
      }
    }
    return false;
  };
  auto try_seed = [&](const Eigen::Vector3d& seed) {
    if (static_cast<int>(components.size()) >= options.max_components) return;
    if (!seed.allFinite() || !inside(seed)) return;
    numerics::SolverReport rep;
    const Eigen::Vector3d p = numerics::project_to_curve(f, seed, options.tol, 50, rep);
    if (!rep.converged || !inside(p) || on_known_component(p)) return;
    TraceOptions topt;
    topt.box = box;
    topt.tol = options.tol;
    topt.max_points = options.max_points;
    const IntersectionCurve curve = trace_intersection_curve(s1, s2, Point::from(p), topt);
    Component c;
    for (const Point& q : curve.points) c.points.push_back(q.vec());
    c.closed = curve.closed;
    c.truncated = curve.truncated;
    if (!c.points.empty()) components.push_back(std::move(c));
  };

  for (const auto& s : seeds) try_seed(s);
  if (options.grid_seeds || components.empty()) {
    for (const Point& s : find_curve_seeds(s1, s2, box, options.seed_cells, options.tol)) {
      try_seed(s.vec());
    }
  }

  out.components = static_cast<int>(components.size());
  if (components.empty()) {
    out.status = SurfaceStatus::EmptyCurve;
    out.message = "no point of both Apollonius surfaces found in the search box";
    return out;
  }

  auto dist0 = [&](const Eigen::Vector3d& p) { return distance(g, tri.a0(), Point::from(p)); };

  std::vector<Minimum> minima;
  for (const Component& c : components) {
    out.truncated = out.truncated || c.truncated;
    const std::size_t n = c.points.size();
    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) values[k] = dist0(c.points[k]);
    if (n < 3) {
      const std::size_t k = std::min_element(values.begin(), values.end()) - values.begin();
      minima.push_back({Point::from(c.points[k]), values[k], !c.closed});
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const bool first = k == 0;
      const bool last = k + 1 == n;
      std::size_t ip = first ? n - 1 : k - 1;
      std::size_t in = last ? 0 : k + 1;
      if (!c.closed && (first || last)) {
        // Open end: a local minimum only if it beats its single neighbour.
        const std::size_t nb = first ? 1 : n - 2;
        if (values[k] > values[nb]) continue;
      } else if (values[k] > values[ip] || values[k] > values[in]) {
        continue;
      }
      bool boundary = false;
      if (!c.closed && first) {
        ip = 0;
        in = 2;
        boundary = true;
      } else if (!c.closed && last) {
        ip = n - 3;
        in = n - 1;
        boundary = true;
      }
      const std::size_t centre = boundary ? (first ? 1 : n - 2) : k;
      LocalChart chart{c.points[ip], c.points[centre], c.points[in],
                       (c.points[ip] - c.points[centre]).norm(),
                       (c.points[in] - c.points[centre]).norm()};
      if (chart.len_prev == 0.0 || chart.len_next == 0.0) continue;
      auto project = [&](double s, numerics::SolverReport& rep) {
        return numerics::project_to_curve(f, chart.at(s), options.tol, 20, rep);
      };
      auto refine = [&](double s) {
        numerics::SolverReport rep;
        const Eigen::Vector3d p = project(s, rep);
        return rep.converged && inside(p) ? dist0(p) : std::numeric_limits<double>::infinity();
      };
      const double params[3] = {-chart.len_prev, 0.0, chart.len_next};
      const double vals[3] = {values[ip], values[centre], values[in]};
      const numerics::PolylineMinimum m = numerics::minimize_on_polyline(params, vals, refine, 0.0);
      numerics::SolverReport rep;
      Eigen::Vector3d best = project(m.parameter, rep);
      double value = rep.converged ? dist0(best) : m.value;
      numerics::SolverReport polish_rep;
      const Eigen::Vector3d polished = polish_minimizer(g, tri.a0(), s1, s2, best, polish_rep);
      if (polish_rep.converged && inside(polished) && (polished - best).norm() <= 1e-3 * diag) {
        const double pv = dist0(polished);
        if (pv <= value + 1e-10) {
          best = polished;
          value = pv;
        }
      }
      const bool end_hit = boundary && ((first && m.index == 0 && m.parameter == params[0]) ||
                                        (last && m.index == 2 && m.parameter == params[2]));
      minima.push_back({Point::from(best), value, end_hit});
    }
  }

  std::sort(minima.begin(), minima.end(),
            [](const Minimum& a, const Minimum& b) { return a.value < b.value; });
  const Minimum& best = minima.front();
  out.status = SurfaceStatus::Ok;
  out.point = best.point;
  out.distance_to_a0 = best.value;
  out.at_boundary = best.at_boundary;
  for (const Minimum& m : minima) {
    if (m.value > best.value + options.tie_tol) break;
    bool duplicate = false;
    for (const Point& c : out.candidates) {
      duplicate = duplicate || (c.vec() - m.point.vec()).norm() <= 1e-6 * (1.0 + diag);
    }
    if (!duplicate) out.candidates.push_back(m.point);
  }
  return out;
}

double grid_lambda(double s) { return std::tan(s * kPi / 2.0); }

bool TriangleSurfaceSample::usable(int i, int j) const {
  const SurfaceStatus s = at(i, j).result.status;
  return s == SurfaceStatus::Ok || s == SurfaceStatus::Endpoint;
}

TriangleSurfaceSample sample_triangle_surface(const GeodesicTriangle& tri, int n,
                                              const SurfaceOptions& options) {
  if (n < 2) throw GeometryError(ErrorCode::InvalidArgument, "surface grid needs n >= 2");
  TriangleSurfaceSample out;
  out.triangle = tri;
  out.n = n;
  out.cells.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      SampleCell& cell = out.cells[static_cast<std::size_t>(i * n + j)];
      cell.i = i;
      cell.j = j;
      cell.lambda1 = grid_lambda(static_cast<double>(i) / n);
      cell.lambda2 = grid_lambda(static_cast<double>(j) / n);
      if (i == 0) {
        cell.result.status = SurfaceStatus::Endpoint;
        cell.result.point = tri.a0();
        cell.result.candidates = {tri.a0()};
        cell.result.components = 1;
        continue;
      }
      std::vector<Point> hints;
      if (i > 1 && out.usable(i - 1, j)) hints.push_back(out.at(i - 1, j).result.point);
      if (j > 0 && out.usable(i, j - 1)) hints.push_back(out.at(i, j - 1).result.point);
      try {
        cell.result = surface_point(tri, cell.lambda1, cell.lambda2, options, hints);
      } catch (const GeometryError& e) {
        cell.result.status = SurfaceStatus::Failed;
        cell.result.message = e.what();
      }
      if (cell.result.status == SurfaceStatus::Ok) {
        cell.check = check_ratios(tri, cell.lambda1, cell.lambda2, cell.result.point);
      }
    }
  }
  return out;
}

SurfaceMesh sample_mesh(const TriangleSurfaceSample& sample) {
  SurfaceMesh mesh;
  const int n = sample.n;
  std::vector<int> id(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!sample.usable(i, j)) continue;
      id[static_cast<std::size_t>(i * n + j)] = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(sample.at(i, j).result.point);
      mesh.residuals.push_back(sample.at(i, j).check.max());
    }
  }
  auto emit = [&](int a, int b, int c) {
    const Eigen::Vector3d pa = mesh.vertices[a].vec();
    const Eigen::Vector3d n = (mesh.vertices[b].vec() - pa).cross(mesh.vertices[c].vec() - pa);
    if (n.squaredNorm() > 0.0) mesh.triangles.push_back({a, b, c});
  };
  for (int i = 0; i + 1 < n; ++i) {
    for (int j = 0; j + 1 < n; ++j) {
      const int v00 = id[static_cast<std::size_t>(i * n + j)];
      const int v10 = id[static_cast<std::size_t>((i + 1) * n + j)];
      const int v01 = id[static_cast<std::size_t>(i * n + j + 1)];
      const int v11 = id[static_cast<std::size_t>((i + 1) * n + j + 1)];
      if (v00 < 0 || v10 < 0 || v01 < 0 || v11 < 0) continue;
      emit(v00, v10, v11);
      emit(v00, v11, v01);
    }
  }
  return mesh;
}

PlaneFit fit_plane_through_origin(const TriangleSurfaceSample& sample) {
  std::vector<Eigen::Vector3d> pts;
  for (const SampleCell& c : sample.cells) {
    if (sample.usable(c.i, c.j)) pts.push_back(c.result.point.vec());
  }
  PlaneFit fit;
  if (pts.size() < 2) return fit;
  Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) scatter += p * p.transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(scatter);
  fit.normal = eig.eigenvectors().col(0);
  for (const auto& p : pts) fit.max_deviation = std::max(fit.max_deviation, std::abs(fit.normal.dot(p)));
  return fit;
}

namespace {

struct RayHit {
  bool hit = false;
  double s1 = 0.0;  // grid coordinates (i + alpha) / n
  double s2 = 0.0;
  double ray_scale = 0.0;
  Eigen::Vector3d point;
};

RayHit intersect_ray(const TriangleSurfaceSample& sample, const Eigen::Vector3d& dir) {
  RayHit best;
  double best_score = std::numeric_limits<double>::infinity();
  const int n = sample.n;
  for (int i = 0; i + 1 < n; ++i) {
    for (int j = 0; j + 1 < n; ++j) {
      if (!sample.usable(i, j) || !sample.usable(i + 1, j) || !sample.usable(i, j + 1) ||
          !sample.usable(i + 1, j + 1)) {
        continue;
      }
      const Eigen::Vector3d p00 = sample.at(i, j).result.point.vec();
      const Eigen::Vector3d p10 = sample.at(i + 1, j).result.point.vec();
      const Eigen::Vector3d p01 = sample.at(i, j + 1).result.point.vec();
      const Eigen::Vector3d p11 = sample.at(i + 1, j + 1).result.point.vec();
      auto patch = [&](double a, double b) {
        return ((1 - a) * (1 - b)) * p00 + (a * (1 - b)) * p10 + ((1 - a) * b) * p01 + (a * b) * p11;
      };
      const double scale = 1.0 + p00.norm() + p11.norm();
      Eigen::Vector3d x(patch(0.5, 0.5).dot(dir) / dir.squaredNorm(), 0.5, 0.5);
      bool converged = false;
      for (int it = 0; it < 30; ++it) {
        const Eigen::Vector3d f = x[0] * dir - patch(x[1], x[2]);
        if (f.norm() <= 1e-13 * scale) {
          converged = true;
          break;
        }
        Eigen::Matrix3d jac;
        jac.col(0) = dir;
        jac.col(1) = -((1 - x[2]) * (p10 - p00) + x[2] * (p11 - p01));
        jac.col(2) = -((1 - x[1]) * (p01 - p00) + x[1] * (p11 - p10));
        const Eigen::FullPivLU<Eigen::Matrix3d> lu(jac);
        if (!lu.isInvertible()) break;
        x -= lu.solve(f);
        if (!x.allFinite()) break;
      }
      constexpr double kEdge = 1e-9;
      if (!converged || x[0] <= 0.0 || x[1] < -kEdge || x[1] > 1 + kEdge || x[2] < -kEdge ||
          x[2] > 1 + kEdge) {
        continue;
      }
      const double score = std::abs(x[0] - 1.0);
      if (score < best_score) {
        best_score = score;
        best.hit = true;
        best.s1 = (i + std::clamp(x[1], 0.0, 1.0)) / n;
        best.s2 = (j + std::clamp(x[2], 0.0, 1.0)) / n;
        best.ray_scale = x[0];
        best.point = x[0] * dir;
      }
    }
  }
  return best;
}

}  // namespace

ProjectedCurve project_curve_to_surface(const TriangleSurfaceSample& sample, const Point& p1,
                                        const Point& p2, int samples, const SurfaceOptions& options) {
  const GeodesicTriangle& tri = sample.triangle;
  const GeometryKind g = tri.geometry;
  require_valid(g, p1, "curve start");
  require_valid(g, p2, "curve end");
  if (samples < 2) throw GeometryError(ErrorCode::InvalidArgument, "curve needs >= 2 samples");
  ProjectedCurve out;
  if (tri.kind == TriangleKind::Fibre) {
    out.fibre = true;
    for (int k = 0; k <= samples; ++k) {
      ProjectedPoint pp;
      pp.status = ProjectionStatus::Ok;
      pp.point = geodesic_interpolate(g, p1, p2, static_cast<double>(k) / samples);
      out.points.push_back(pp);
    }
    return out;
  }

  const bool single = distance(g, p1, p2) <= 1e-12;
  const int count = single ? 1 : samples + 1;
  for (int k = 0; k < count; ++k) {
    const Point q = single ? p1 : geodesic_interpolate(g, p1, p2, static_cast<double>(k) / samples);
    ProjectedPoint pp;
    const RayHit hit = intersect_ray(sample, q.vec());
    if (!hit.hit) {
      pp.status = ProjectionStatus::Missed;
      pp.point = q;
      out.points.push_back(pp);
      continue;
    }
    pp.lambda1 = grid_lambda(hit.s1);
    pp.lambda2 = grid_lambda(hit.s2);
    if (pp.lambda1 == 0.0 || pp.lambda2 == 0.0) {
      pp.status = ProjectionStatus::Ok;
      pp.point = pp.lambda1 == 0.0 ? tri.a0() : tri.a2();
    } else {
      const SurfacePoint sp =
          surface_point(tri, pp.lambda1, pp.lambda2, options, {Point::from(hit.point)});
      if (sp.status != SurfaceStatus::Ok) {
        pp.status = ProjectionStatus::SurfaceFailed;
        pp.point = Point::from(hit.point);
        out.points.push_back(pp);
        continue;
      }
      pp.status = ProjectionStatus::Ok;
      pp.point = sp.point;
      pp.check = check_ratios(tri, pp.lambda1, pp.lambda2, sp.point);
    }
    const Eigen::Vector3d dir = q.vec().normalized();
    const Eigen::Vector3d p = pp.point.vec();
    pp.ray_deviation = (p - p.dot(dir) * dir).norm();
    out.points.push_back(pp);
  }
  return out;
}

SegmentDistance segment_min_distance(GeometryKind g, const Segment& seg1, const Segment& seg2,
                                     int grid) {
  if (grid < 1) throw GeometryError(ErrorCode::InvalidArgument, "segment grid must be >= 1");
  const bool deg1 = distance(g, seg1.a, seg1.b) == 0.0;
  const bool deg2 = distance(g, seg2.a, seg2.b) == 0.0;
  auto point1 = [&](double s) { return deg1 ? seg1.a : geodesic_interpolate(g, seg1.a, seg1.b, s); };
  auto point2 = [&](double t) { return deg2 ? seg2.a : geodesic_interpolate(g, seg2.a, seg2.b, t); };
  std::vector<Point> p1(grid + 1), p2(grid + 1);
  for (int k = 0; k <= grid; ++k) {
    p1[k] = point1(static_cast<double>(k) / grid);
    p2[k] = point2(static_cast<double>(k) / grid);
  }
  SegmentDistance best;
  best.distance = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= grid; ++a) {
    for (int b = 0; b <= grid; ++b) {
      const double d = distance(g, p1[a], p2[b]);
      if (d < best.distance) best = {d, static_cast<double>(a) / grid, static_cast<double>(b) / grid};
    }
  }
  auto eval = [&](double s, double t) { return distance(g, point1(s), point2(t)); };
  double h = 1.0 / grid;
  while (h > 1e-13) {
    bool moved = false;
    const double ds[4][2] = {{h, 0}, {-h, 0}, {0, h}, {0, -h}};
    for (const auto& d : ds) {
      const double s = std::clamp(best.s + d[0], 0.0, 1.0);
      const double t = std::clamp(best.t + d[1], 0.0, 1.0);
      const double v = eval(s, t);
      if (v < best.distance) {
        best = {v, s, t};
        moved = true;
      }
    }
    if (!moved) h *= 0.5;
  }
  return best;
}

std::array<double, 3> side_deviation(const TriangleSurfaceSample& sample, int per_side) {
  const GeodesicTriangle& tri = sample.triangle;
  const GeometryKind g = tri.geometry;
  std::array<double, 3> out{};
  for (int side = 0; side < 3; ++side) {
    const Point& a = tri.v[side];
    const Point& b = tri.v[(side + 1) % 3];
    for (int k = 0; k <= per_side; ++k) {
      const Point q = geodesic_interpolate(g, a, b, static_cast<double>(k) / per_side);
      double nearest = std::numeric_limits<double>::infinity();
      for (const SampleCell& c : sample.cells) {
        if (sample.usable(c.i, c.j)) nearest = std::min(nearest, distance(g, q, c.result.point));
      }
      out[side] = std::max(out[side], nearest);
    }
  }
  return out;
}

}  // namespace thurston
