#include "thurston/apollonius.hpp"

#include "thurston/geodesic.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <thread>
#include <unordered_map>

namespace thurston {

namespace {

double squared_term(GeometryKind g, const Eigen::Vector3d& focus, const Eigen::Vector3d& q,
                    double nq2) {
  const double nf2 = bilinear(g, focus, focus);
  const double w = omega(g, bilinear(g, focus, q) / (std::sqrt(nf2) * std::sqrt(nq2)));
  const double l = std::log(nf2 / nq2);
  return 4.0 * w * w + l * l;
}

Eigen::Vector3d lerp(const Eigen::Vector3d& a, const Eigen::Vector3d& b, double s) {
  return a + s * (b - a);
}

// Kuhn split of the unit cube along the 0-7 diagonal; corner = i + 2j + 4k.
constexpr int kTets[6][4] = {{0, 1, 3, 7}, {0, 3, 2, 7}, {0, 2, 6, 7},
                             {0, 6, 4, 7}, {0, 4, 5, 7}, {0, 5, 1, 7}};

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

void validate(const ApolloniusSpec& spec) {
  require_valid(spec.geometry, spec.p1, "focus p1");
  require_valid(spec.geometry, spec.p2, "focus p2");
  if (!std::isfinite(spec.lambda) || spec.lambda < 0.0) {
    throw GeometryError(ErrorCode::InvalidArgument,
                        "Apollonius ratio must be finite and non-negative; use reciprocal() for "
                        "an infinite ratio");
  }
  if ((spec.p1.vec() - spec.p2.vec()).norm() <= 1e-12 * (1.0 + spec.p1.vec().norm())) {
    throw GeometryError(ErrorCode::Coincident, "Apollonius foci coincide");
  }
}

double apollonius_residual(const ApolloniusSpec& spec, const Point& q) {
  const GeometryKind g = spec.geometry;
  require_valid(g, q, "surface point");
  if (!std::isfinite(spec.lambda)) {
    throw GeometryError(ErrorCode::InvalidArgument, "Apollonius ratio must be finite");
  }
  const Eigen::Vector3d x = q.vec();
  const double nq2 = bilinear(g, x, x);
  const double lhs = squared_term(g, spec.p1.vec(), x, nq2);
  const double rhs = squared_term(g, spec.p2.vec(), x, nq2);
  return lhs - spec.lambda * spec.lambda * rhs;
}

Eigen::Vector3d apollonius_gradient(const ApolloniusSpec& spec, const Point& q) {
  return 4.0 * (distance_squared_gradient(spec.geometry, spec.p1, q) -
                spec.lambda * spec.lambda * distance_squared_gradient(spec.geometry, spec.p2, q));
}

double apollonius_residual_via_inversion(const ApolloniusSpec& spec, const Point& q) {
  const double d1 = distance_via_inversion(spec.geometry, q, spec.p1);
  const double d2 = distance_via_inversion(spec.geometry, q, spec.p2);
  return 4.0 * (d1 * d1 - spec.lambda * spec.lambda * d2 * d2);
}

double distance_defect(const ApolloniusSpec& spec, const Point& q) {
  return distance(spec.geometry, spec.p1, q) - spec.lambda * distance(spec.geometry, q, spec.p2);
}

MeshResult extract_isosurface(const ApolloniusSpec& spec, const Box& box,
                              const Resolution& resolution, const MeshOptions& options) {
  validate(spec);
  if (resolution.nx < 8 || resolution.ny < 8 || resolution.nz < 8) {
    throw GeometryError(ErrorCode::InvalidArgument, "mesh resolution must be >= 8 per axis");
  }
  const GeometryKind g = spec.geometry;
  const int sx = resolution.nx + 1;
  const int sy = resolution.ny + 1;
  const int sz = resolution.nz + 1;
  const Eigen::Vector3d step((box.hi - box.lo).array() /
                             Eigen::Array3d(resolution.nx, resolution.ny, resolution.nz));
  auto sample_pos = [&](int i, int j, int k) {
    return Eigen::Vector3d(box.lo + Eigen::Vector3d(i * step.x(), j * step.y(), k * step.z()));
  };
  auto index = [&](int i, int j, int k) {
    return static_cast<std::int64_t>(i) + static_cast<std::int64_t>(sx) * (j + static_cast<std::int64_t>(sy) * k);
  };
  auto field_at = [&](const Eigen::Vector3d& p) {
    const Point q = Point::from(p);
    if (!is_valid(g, q)) return std::nan("");
    return apollonius_residual(spec, q);
  };

  // Residual field, filled slab by slab; each thread owns disjoint k-slabs.
  std::vector<double> field(static_cast<std::size_t>(sx) * sy * sz);
  const unsigned threads = std::min<unsigned>(resolve_threads(options.threads), sz);
  auto fill = [&](unsigned tid) {
    for (int k = static_cast<int>(tid); k < sz; k += static_cast<int>(threads)) {
      for (int j = 0; j < sy; ++j) {
        for (int i = 0; i < sx; ++i) field[index(i, j, k)] = field_at(sample_pos(i, j, k));
      }
    }
  };
  if (threads <= 1) {
    fill(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(fill, t);
    for (auto& th : pool) th.join();
  }

  MeshResult out;
  out.tolerance = 10.0 * box.diagonal() / resolution.max();
  SurfaceMesh& mesh = out.mesh;
  std::unordered_map<std::int64_t, int> edge_vertex;
  const std::int64_t total = index(sx - 1, sy - 1, sz - 1) + 1;

  auto vertex_on_edge = [&](std::int64_t ia, const Eigen::Vector3d& pa, double fa,
                            std::int64_t ib, const Eigen::Vector3d& pb, double fb) {
    const bool swapped = ia > ib;
    const std::int64_t key = swapped ? ib * total + ia : ia * total + ib;
    if (auto it = edge_vertex.find(key); it != edge_vertex.end()) return it->second;
    const Eigen::Vector3d lo = swapped ? pb : pa;
    const Eigen::Vector3d hi = swapped ? pa : pb;
    double flo = swapped ? fb : fa;
    double fhi = swapped ? fa : fb;
    // Illinois regula falsi on the residual along the edge.
    double a = 0.0;
    double b = 1.0;
    double s = flo / (flo - fhi);
    int side = 0;
    for (int it = 0; it < options.edge_refine_iterations && flo != fhi; ++it) {
      s = (a * fhi - b * flo) / (fhi - flo);
      const double fs = apollonius_residual(spec, Point::from(lerp(lo, hi, s)));
      if (fs == 0.0 || std::abs(b - a) < 1e-15) break;
      if ((fs > 0.0) == (fhi > 0.0)) {
        b = s;
        fhi = fs;
        if (side == -1) flo *= 0.5;
        side = -1;
      } else {
        a = s;
        flo = fs;
        if (side == 1) fhi *= 0.5;
        side = 1;
      }
    }
    const Point p = Point::from(lerp(lo, hi, s));
    const int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(p);
    mesh.residuals.push_back(apollonius_residual(spec, p));
    edge_vertex.emplace(key, id);
    return id;
  };

  for (int k = 0; k < resolution.nz; ++k) {
    for (int j = 0; j < resolution.ny; ++j) {
      for (int i = 0; i < resolution.nx; ++i) {
        std::array<std::int64_t, 8> ids;
        std::array<Eigen::Vector3d, 8> pos;
        std::array<double, 8> val;
        bool valid = true;
        for (int c = 0; c < 8; ++c) {
          const int di = c & 1, dj = (c >> 1) & 1, dk = (c >> 2) & 1;
          ids[c] = index(i + di, j + dj, k + dk);
          pos[c] = sample_pos(i + di, j + dj, k + dk);
          val[c] = field[ids[c]];
          valid = valid && std::isfinite(val[c]);
        }
        if (!valid) {
          ++out.skipped_cells;
          continue;
        }
        for (const auto& tet : kTets) {
          std::array<int, 4> inside{};
          std::array<int, 4> outside{};
          int ni = 0, no = 0;
          for (int c : tet) {
            if (val[c] > 0.0) inside[ni++] = c;
            else outside[no++] = c;
          }
          if (ni == 0 || no == 0) continue;

          Eigen::Vector3d pos_centroid = Eigen::Vector3d::Zero();
          Eigen::Vector3d neg_centroid = Eigen::Vector3d::Zero();
          for (int a = 0; a < ni; ++a) pos_centroid += pos[inside[a]] / ni;
          for (int a = 0; a < no; ++a) neg_centroid += pos[outside[a]] / no;
          const Eigen::Vector3d outward = pos_centroid - neg_centroid;

          auto vert = [&](int a, int b) {
            return vertex_on_edge(ids[a], pos[a], val[a], ids[b], pos[b], val[b]);
          };
          auto emit = [&](int v0, int v1, int v2) {
            if (v0 == v1 || v1 == v2 || v0 == v2) return;
            const Eigen::Vector3d a = mesh.vertices[v0].vec();
            const Eigen::Vector3d n = (mesh.vertices[v1].vec() - a).cross(mesh.vertices[v2].vec() - a);
            if (n.squaredNorm() == 0.0) return;
            if (n.dot(outward) < 0.0) std::swap(v1, v2);
            mesh.triangles.push_back({v0, v1, v2});
          };

          if (ni == 1 || no == 1) {
            const bool single_inside = ni == 1;
            const int apex = single_inside ? inside[0] : outside[0];
            const auto& others = single_inside ? outside : inside;
            emit(vert(apex, others[0]), vert(apex, others[1]), vert(apex, others[2]));
          } else {
            const int a0 = inside[0], a1 = inside[1], b0 = outside[0], b1 = outside[1];
            const int v00 = vert(a0, b0), v01 = vert(a0, b1), v11 = vert(a1, b1), v10 = vert(a1, b0);
            emit(v00, v01, v11);
            emit(v00, v11, v10);
          }
        }
      }
    }
  }

  for (const Point& v : mesh.vertices) {
    out.max_distance_defect = std::max(out.max_distance_defect, std::abs(distance_defect(spec, v)));
  }
  out.outcome = mesh.triangles.empty() ? MeshOutcome::Empty : MeshOutcome::Ok;
  return out;
}

void write_obj(std::ostream& os, const SurfaceMesh& mesh) {
  const auto old_precision = os.precision(12);
  for (const Point& v : mesh.vertices) os << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
  for (const auto& t : mesh.triangles) {
    os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
  os.precision(old_precision);
}

double bisector_symmetry_defect(const ApolloniusSpec& spec, const SurfaceMesh& mesh) {
  const Point mid = geodesic_midpoint(spec.geometry, spec.p1, spec.p2);
  double worst = 0.0;
  for (const Point& v : mesh.vertices) {
    const Point image = point_reflection(spec.geometry, mid, v);
    worst = std::max(worst, std::abs(distance_defect(spec, image)));
  }
  return worst;
}

numerics::CurveFunction intersection_function(const ApolloniusSpec& spec1,
                                              const ApolloniusSpec& spec2) {
  const double s1 = 1.0 / (1.0 + spec1.lambda * spec1.lambda);
  const double s2 = 1.0 / (1.0 + spec2.lambda * spec2.lambda);
  return [spec1, spec2, s1, s2](const Eigen::Vector3d& x) -> Eigen::Vector2d {
    const Point q = Point::from(x);
    if (!is_valid(spec1.geometry, q)) return Eigen::Vector2d::Constant(std::nan(""));
    return {s1 * apollonius_residual(spec1, q), s2 * apollonius_residual(spec2, q)};
  };
}

namespace {

void check_vertex_pattern(const ApolloniusSpec& spec1, const ApolloniusSpec& spec2) {
  validate(spec1);
  validate(spec2);
  if (spec1.geometry != spec2.geometry) {
    throw GeometryError(ErrorCode::InvalidArgument, "surfaces live in different geometries");
  }
  if ((spec1.p1.vec() - spec2.p2.vec()).norm() > 1e-12 * (1.0 + spec1.p1.vec().norm())) {
    throw GeometryError(ErrorCode::InvalidArgument,
                        "intersection curve needs AS(A0,A1) and AS(A2,A0) sharing A0");
  }
}

}  // namespace

IntersectionCurve trace_intersection_curve(const ApolloniusSpec& spec1,
                                           const ApolloniusSpec& spec2, const Point& seed,
                                           const TraceOptions& options) {
  check_vertex_pattern(spec1, spec2);
  IntersectionCurve out;
  if (spec1.lambda == 0.0 || spec2.lambda == 0.0) {
    out.points.push_back(spec1.lambda == 0.0 ? spec1.p1 : spec2.p1);
    out.degenerate_point = true;
    out.closed = true;
    out.seed_report.converged = true;
    out.seed_report.residual_norm = 0.0;
    return out;
  }
  const GeometryKind g = spec1.geometry;
  const double diag = options.box.diagonal();
  numerics::ContinuationOptions copt;
  copt.initial_step = 1e-2 * diag;
  copt.max_step = 2.5e-2 * diag;
  copt.min_step = 1e-10 * diag;
  copt.tol = options.tol;
  copt.max_points = options.max_points;
  copt.inside = [&](const Eigen::Vector3d& p) {
    return options.box.contains(p) && is_valid(g, Point::from(p));
  };
  const numerics::TracedCurve traced =
      numerics::trace_curve(intersection_function(spec1, spec2), seed.vec(), copt);
  out.seed_report = traced.seed_report;
  out.closed = traced.closed;
  out.truncated = traced.truncated;
  out.points.reserve(traced.points.size());
  for (const auto& p : traced.points) out.points.push_back(Point::from(p));
  if (!out.seed_report.converged) {
    throw GeometryError(ErrorCode::EmptyCurve, "seed could not be projected onto both surfaces");
  }
  return out;
}

std::vector<Point> find_curve_seeds(const ApolloniusSpec& spec1, const ApolloniusSpec& spec2,
                                    const Box& box, int cells_per_axis, double tol) {
  check_vertex_pattern(spec1, spec2);
  const GeometryKind g = spec1.geometry;
  const auto f = intersection_function(spec1, spec2);
  const int n = cells_per_axis;
  const int s = n + 1;
  const Eigen::Vector3d step = (box.hi - box.lo) / n;
  std::vector<Eigen::Vector2d> values(static_cast<std::size_t>(s) * s * s);
  auto idx = [&](int i, int j, int k) { return static_cast<std::size_t>(i + s * (j + s * k)); };
  for (int k = 0; k < s; ++k)
    for (int j = 0; j < s; ++j)
      for (int i = 0; i < s; ++i)
        values[idx(i, j, k)] = f(box.lo + Eigen::Vector3d(i * step.x(), j * step.y(), k * step.z()));

  std::vector<Point> seeds;
  const double dedupe = 1e-8 * (1.0 + box.diagonal());
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        bool pos1 = false, neg1 = false, pos2 = false, neg2 = false, finite = true;
        for (int c = 0; c < 8; ++c) {
          const Eigen::Vector2d& v = values[idx(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1))];
          finite = finite && v.allFinite();
          pos1 |= v[0] > 0.0;
          neg1 |= v[0] <= 0.0;
          pos2 |= v[1] > 0.0;
          neg2 |= v[1] <= 0.0;
        }
        if (!finite || !(pos1 && neg1 && pos2 && neg2)) continue;
        const Eigen::Vector3d center =
            box.lo + Eigen::Vector3d((i + 0.5) * step.x(), (j + 0.5) * step.y(), (k + 0.5) * step.z());
        numerics::SolverReport rep;
        const Eigen::Vector3d p = numerics::project_to_curve(f, center, tol, 30, rep);
        if (!rep.converged || !box.contains(p) || !is_valid(g, Point::from(p))) continue;
        bool duplicate = false;
        for (const Point& q : seeds) duplicate = duplicate || (q.vec() - p).norm() < dedupe;
        if (!duplicate) seeds.push_back(Point::from(p));
      }
    }
  }
  return seeds;
}

}  // namespace thurston
