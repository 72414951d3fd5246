#include "thurston/theorems.hpp"

#include "thurston/base_plane.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <numbers>
#include <optional>

namespace thurston {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSemicircleMargin = 0.1;
constexpr int kMaxAttempts = 10000;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Eigen::Vector3d gaussian3(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double x = n(rng);
  const double y = n(rng);
  const double z = n(rng);
  return {x, y, z};
}

// Normalizes v to a base point; empty when v is not proper.
std::optional<Eigen::Vector3d> to_base(GeometryKind g, const Eigen::Vector3d& v) {
  const double q = bilinear(g, v, v);
  if (!(q > 1e-12) || (g == GeometryKind::HyperbolicProduct && v.x() <= 0.0)) return std::nullopt;
  return Eigen::Vector3d(v / std::sqrt(q));
}

// Arc-length chart of the base line through a towards b: a point of the line
// is C(psi) a + S(psi) e.
struct SideFrame {
  GeometryKind g;
  Eigen::Vector3d a;
  Eigen::Vector3d e;
  double psi_b = 0.0;

  SideFrame(GeometryKind geometry, const Eigen::Vector3d& base_a, const Eigen::Vector3d& base_b)
      : g(geometry), a(base_a) {
    e = base_b - bilinear(g, base_a, base_b) * base_a;
    e /= std::sqrt(std::abs(bilinear(g, e, e)));
    psi_b = psi(base_b);
  }

  double psi(const Eigen::Vector3d& q) const {
    if (g == GeometryKind::SphereProduct) return std::atan2(q.dot(e), q.dot(a));
    return std::asinh(-bilinear(g, q, e));
  }

  Eigen::Vector3d at(double s) const {
    if (g == GeometryKind::SphereProduct) return std::cos(s) * a + std::sin(s) * e;
    return std::cosh(s) * a + std::sinh(s) * e;
  }
};

bool arcs_ok(double psi, double psi_b, double vertex_margin) {
  const double limit = kPi - kSemicircleMargin;
  return std::abs(psi) < limit && std::abs(psi - psi_b) < limit && std::abs(psi) > vertex_margin &&
         std::abs(psi - psi_b) > vertex_margin;
}

// Point of the side geodesic a -> b whose central projection is q*.
std::optional<Point> lift_to_side(GeometryKind g, const Point& a, const Point& b,
                                  const Eigen::Vector3d& q, double vertex_margin) {
  const SideFrame frame(g, project_to_base(g, a).v, project_to_base(g, b).v);
  const double psi = frame.psi(q);
  std::optional<double> chosen;
  std::vector<double> candidates{psi};
  if (g == GeometryKind::SphereProduct) candidates.push_back(psi > 0.0 ? psi - kPi : psi + kPi);
  for (double c : candidates) {
    if (!arcs_ok(c, frame.psi_b, vertex_margin)) continue;
    if (!chosen || std::abs(c - 0.5 * frame.psi_b) < std::abs(*chosen - 0.5 * frame.psi_b)) {
      chosen = c;
    }
  }
  if (!chosen) return std::nullopt;
  return geodesic_interpolate(g, a, b, *chosen / frame.psi_b);
}

BasePoint base_of(GeometryKind g, const Point& p) { return project_to_base(g, p); }

GeodesicTriangle random_general_triangle(GeometryKind g, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::array<Point, 3> v;
    if (g == GeometryKind::SphereProduct) {
      const Eigen::Vector3d c = gaussian3(rng).normalized();
      for (auto& p : v) {
        const Eigen::Vector3d u = (c + 0.6 * gaussian3(rng)).normalized();
        p = Point::from(std::exp(uniform(rng, -0.7, 0.7)) * u);
      }
    } else {
      for (auto& p : v) {
        const double r = uniform(rng, 0.0, 1.2);
        const double alpha = uniform(rng, -kPi, kPi);
        const Eigen::Vector3d u(std::cosh(r), std::sinh(r) * std::cos(alpha),
                                std::sinh(r) * std::sin(alpha));
        p = Point::from(std::exp(uniform(rng, -0.7, 0.7)) * u);
      }
    }
    bool spread = true;
    for (int i = 0; i < 3; ++i) {
      const double d = base_distance(g, base_of(g, v[i]), base_of(g, v[(i + 1) % 3]));
      spread = spread && d > 0.2 && d < 2.2;
    }
    if (!spread) continue;
    if (std::abs(base_triple_product(base_of(g, v[0]), base_of(g, v[1]), base_of(g, v[2]))) < 1e-2) {
      continue;
    }
    try {
      const GeodesicTriangle tri = classify_triangle(g, v[0], v[1], v[2]);
      if (tri.kind == TriangleKind::General) return tri;
    } catch (const GeometryError&) {
    }
  }
  throw GeometryError(ErrorCode::NonConvergence, "could not generate a general triangle");
}

// Flat plane through E0: the cone over one base line, with Euclidean
// coordinates (psi, t).
struct FibrePlane {
  GeometryKind g;
  Eigen::Vector3d b0;
  Eigen::Vector3d e;

  Point map(const Eigen::Vector2d& c) const {
    const double psi = c.x();
    const bool sphere = g == GeometryKind::SphereProduct;
    const Eigen::Vector3d base = sphere ? Eigen::Vector3d(std::cos(psi) * b0 + std::sin(psi) * e)
                                        : Eigen::Vector3d(std::cosh(psi) * b0 + std::sinh(psi) * e);
    return Point::from(std::exp(c.y()) * base);
  }
};

FibrePlane random_fibre_plane(GeometryKind g, std::mt19937_64& rng) {
  FibrePlane plane{g, {}, {}};
  if (g == GeometryKind::SphereProduct) {
    plane.b0 = gaussian3(rng).normalized();
  } else {
    const double r = uniform(rng, 0.0, 1.0);
    const double alpha = uniform(rng, -kPi, kPi);
    plane.b0 = {std::cosh(r), std::sinh(r) * std::cos(alpha), std::sinh(r) * std::sin(alpha)};
  }
  for (;;) {
    const Eigen::Vector3d v = gaussian3(rng);
    Eigen::Vector3d e = v - bilinear(g, v, plane.b0) * plane.b0;
    const double q = std::abs(bilinear(g, e, e));
    if (q < 1e-6) continue;
    plane.e = e / std::sqrt(q);
    return plane;
  }
}

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Parameter along p0 -> p1 of the meet with the line q0 -> q1.
std::optional<double> meet(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                           const Eigen::Vector2d& q0, const Eigen::Vector2d& q1) {
  const Eigen::Vector2d d = p1 - p0;
  const Eigen::Vector2d f = q1 - q0;
  const double den = cross2(d, f);
  if (std::abs(den) < 1e-6 * d.norm() * f.norm()) return std::nullopt;
  return cross2(q0 - p0, f) / den;
}

struct FlatTriangle {
  FibrePlane plane;
  std::array<Eigen::Vector2d, 3> c;
  GeodesicTriangle tri;
};

FlatTriangle random_flat_triangle(GeometryKind g, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    FlatTriangle ft{random_fibre_plane(g, rng), {}, {}};
    for (auto& c : ft.c) c = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    if (uniform(rng, 0.0, 1.0) < 0.2) ft.c[1].x() = ft.c[0].x();
    if (std::abs(cross2(ft.c[1] - ft.c[0], ft.c[2] - ft.c[0])) < 0.2) continue;
    try {
      ft.tri = classify_triangle(g, ft.plane.map(ft.c[0]), ft.plane.map(ft.c[1]),
                                 ft.plane.map(ft.c[2]));
      if (ft.tri.kind == TriangleKind::Fibre) return ft;
    } catch (const GeometryError&) {
    }
  }
  throw GeometryError(ErrorCode::NonConvergence, "could not generate a fibre triangle");
}

// Flat point at parameter s on side i -> i+1, or empty when it strays from the
// chart or too close to a vertex.
std::optional<Eigen::Vector2d> flat_side_point(const FlatTriangle& ft, int i, std::optional<double> s,
                                               double vertex_margin) {
  if (!s || *s < -3.0 || *s > 4.0) return std::nullopt;
  if (std::abs(*s) < vertex_margin || std::abs(*s - 1.0) < vertex_margin) return std::nullopt;
  const Eigen::Vector2d p = ft.c[i] + *s * (ft.c[(i + 1) % 3] - ft.c[i]);
  if (std::abs(p.x()) > 0.5 * (kPi - kSemicircleMargin)) return std::nullopt;
  return p;
}

}  // namespace

GeodesicLocation locate_on_geodesic(GeometryKind g, const Point& a, const Point& b,
                                    const Point& p, double tol) {
  require_valid(g, a, "a");
  require_valid(g, b, "b");
  require_valid(g, p, "p");
  const IsometryPair iso = translate_to_origin(g, a);
  GeodesicLocation out;
  Inversion ib;
  try {
    ib = invert_geodesic(g, iso.forward.apply(b));
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::OriginTarget) {
      throw GeometryError(ErrorCode::Coincident, "geodesic endpoints coincide");
    }
    throw;
  }
  out.params = ib.params;
  out.tau = ib.params.tau;
  Inversion ip;
  try {
    ip = invert_geodesic(g, iso.forward.apply(p));
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::OriginTarget) return out;
    throw;
  }
  const Eigen::Vector3d d = direction_vector(ib.params);
  const Eigen::Vector3d dp = direction_vector(ip.params);
  if ((dp - d).norm() <= tol) {
    out.sigma = ip.params.tau;
  } else if ((dp + d).norm() <= tol) {
    out.sigma = -ip.params.tau;
  } else {
    throw GeometryError(ErrorCode::NotCollinear, "point is not on the geodesic line");
  }
  return out;
}

bool on_geodesic(GeometryKind g, const Point& a, const Point& b, const Point& p, double tol) {
  try {
    locate_on_geodesic(g, a, b, p, tol);
    return true;
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::NotCollinear) return false;
    throw;
  }
}

bool is_fibre_like(GeometryKind g, const Point& a, const Point& b, double tol) {
  return std::abs(std::cos(locate_on_geodesic(g, a, b, b).params.v)) <= tol;
}

namespace {

void require_distinct(const GeodesicLocation& loc) {
  const double scale = 1e-12 * (1.0 + loc.tau);
  if (std::abs(loc.sigma) <= scale || std::abs(loc.tau - loc.sigma) <= scale) {
    throw GeometryError(ErrorCode::Coincident, "simple ratio needs three distinct points");
  }
}

bool between(const GeodesicLocation& loc) { return loc.sigma > 0.0 && loc.sigma < loc.tau; }

}  // namespace

double simple_ratio_general(GeometryKind g, const Point& a, const Point& p, const Point& b) {
  const GeodesicLocation loc = locate_on_geodesic(g, a, b, p);
  const double cv = std::cos(loc.params.v);
  if (std::abs(cv) <= 1e-9) {
    throw GeometryError(ErrorCode::FibreGeodesic,
                        "fibre-like geodesic: use the fibre simple ratio");
  }
  require_distinct(loc);
  const double magnitude =
      weight(g, std::abs(loc.sigma) * cv) / weight(g, std::abs(loc.tau - loc.sigma) * cv);
  return between(loc) ? magnitude : -magnitude;
}

double simple_ratio_fibre(GeometryKind g, const Point& a, const Point& p, const Point& b) {
  const GeodesicLocation loc = locate_on_geodesic(g, a, b, p);
  require_distinct(loc);
  const double magnitude = distance(g, a, p) / distance(g, p, b);
  return between(loc) ? magnitude : -magnitude;
}

namespace {

TheoremProduct side_product(const GeodesicTriangle& tri, const Point& p, const Point& q,
                            const Point& r) {
  const GeometryKind g = tri.geometry;
  const bool fibre = tri.kind == TriangleKind::Fibre;
  auto ratio = [&](const Point& a, const Point& x, const Point& b) {
    return fibre ? simple_ratio_fibre(g, a, x, b) : simple_ratio_general(g, a, x, b);
  };
  TheoremProduct out;
  out.ratios = {ratio(tri.a0(), p, tri.a1()), ratio(tri.a1(), q, tri.a2()),
                ratio(tri.a2(), r, tri.a0())};
  out.product = out.ratios[0] * out.ratios[1] * out.ratios[2];
  if (fibre) {
    int fibre_sides = 0;
    for (int i = 0; i < 3; ++i) fibre_sides += is_fibre_like(g, tri.v[i], tri.v[(i + 1) % 3]);
    out.experimental = fibre_sides > 0 && fibre_sides < 3;
  }
  return out;
}

}  // namespace

TheoremProduct ceva_product(const CevaConfig& config) {
  const GeodesicTriangle& tri = config.triangle;
  for (int i = 0; i < 3; ++i) {
    if (on_geodesic(tri.geometry, tri.v[i], tri.v[(i + 1) % 3], config.t)) {
      throw GeometryError(ErrorCode::Degenerate, "cevian point lies on a side of the triangle");
    }
  }
  return side_product(tri, config.p, config.q, config.r);
}

TheoremProduct menelaus_product(const MenelausConfig& config) {
  try {
    return side_product(config.triangle, config.p, config.q, config.r);
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::Coincident) {
      throw GeometryError(ErrorCode::Coincident, "transversal passes through a vertex");
    }
    throw;
  }
}

CevaConfig random_ceva_config(GeometryKind g, TriangleKind kind, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::array<double, 3> w{};
    for (double& x : w) x = uniform(rng, 0.1, 1.0);
    if (uniform(rng, 0.0, 1.0) < 0.25) {
      w[std::uniform_int_distribution<int>(0, 2)(rng)] = -uniform(rng, 0.05, 0.4);
    }

    if (kind == TriangleKind::Fibre) {
      const FlatTriangle ft = random_flat_triangle(g, rng);
      const double sum = w[0] + w[1] + w[2];
      if (std::abs(sum) < 0.1) continue;
      const Eigen::Vector2d t = (w[0] * ft.c[0] + w[1] * ft.c[1] + w[2] * ft.c[2]) / sum;
      // P on side 0-1 from vertex 2, Q on 1-2 from 0, R on 2-0 from 1.
      const auto p = flat_side_point(ft, 0, meet(ft.c[0], ft.c[1], ft.c[2], t), 1e-3);
      const auto q = flat_side_point(ft, 1, meet(ft.c[1], ft.c[2], ft.c[0], t), 1e-3);
      const auto r = flat_side_point(ft, 2, meet(ft.c[2], ft.c[0], ft.c[1], t), 1e-3);
      if (!p || !q || !r || std::abs(t.x()) > 0.5 * (kPi - kSemicircleMargin)) continue;
      return {ft.tri, ft.plane.map(t), ft.plane.map(*p), ft.plane.map(*q), ft.plane.map(*r)};
    }

    const GeodesicTriangle tri = random_general_triangle(g, rng);
    std::array<BasePoint, 3> b;
    for (int i = 0; i < 3; ++i) b[i] = base_of(g, tri.v[i]);
    const auto tb = to_base(g, w[0] * b[0].v + w[1] * b[1].v + w[2] * b[2].v);
    if (!tb) continue;
    const BasePoint t{*tb};
    try {
      const BasePoint pb = base_line_intersect(g, {b[2], t}, {b[0], b[1]}).point;
      const BasePoint qb = base_line_intersect(g, {b[0], t}, {b[1], b[2]}).point;
      const BasePoint rb = base_line_intersect(g, {b[1], t}, {b[2], b[0]}).point;
      const auto p = lift_to_side(g, tri.a0(), tri.a1(), pb.v, 1e-3);
      const auto q = lift_to_side(g, tri.a1(), tri.a2(), qb.v, 1e-3);
      const auto r = lift_to_side(g, tri.a2(), tri.a0(), rb.v, 1e-3);
      if (!p || !q || !r) continue;
      const auto tl = lift_to_side(g, tri.a0(), *q, t.v, 1e-3);
      if (!tl) continue;
      return {tri, *tl, *p, *q, *r};
    } catch (const GeometryError&) {
      continue;
    }
  }
  throw GeometryError(ErrorCode::NonConvergence, "could not generate a Ceva configuration");
}

MenelausConfig random_menelaus_config(GeometryKind g, TriangleKind kind, std::mt19937_64& rng) {
  constexpr double kVertexMargin = 0.05;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::array<std::array<double, 3>, 2> w{};
    for (auto& row : w) {
      for (double& x : row) x = uniform(rng, -0.3, 1.3);
    }

    if (kind == TriangleKind::Fibre) {
      const FlatTriangle ft = random_flat_triangle(g, rng);
      const double s0 = w[0][0] + w[0][1] + w[0][2];
      const double s1 = w[1][0] + w[1][1] + w[1][2];
      if (std::abs(s0) < 0.1 || std::abs(s1) < 0.1) continue;
      const Eigen::Vector2d l0 = (w[0][0] * ft.c[0] + w[0][1] * ft.c[1] + w[0][2] * ft.c[2]) / s0;
      const Eigen::Vector2d l1 = (w[1][0] * ft.c[0] + w[1][1] * ft.c[1] + w[1][2] * ft.c[2]) / s1;
      if ((l1 - l0).norm() < 0.1) continue;
      const auto p = flat_side_point(ft, 0, meet(ft.c[0], ft.c[1], l0, l1), kVertexMargin);
      const auto q = flat_side_point(ft, 1, meet(ft.c[1], ft.c[2], l0, l1), kVertexMargin);
      const auto r = flat_side_point(ft, 2, meet(ft.c[2], ft.c[0], l0, l1), kVertexMargin);
      if (!p || !q || !r) continue;
      return {ft.tri, ft.plane.map(*p), ft.plane.map(*q), ft.plane.map(*r)};
    }

    const GeodesicTriangle tri = random_general_triangle(g, rng);
    std::array<BasePoint, 3> b;
    for (int i = 0; i < 3; ++i) b[i] = base_of(g, tri.v[i]);
    const auto l0 = to_base(g, w[0][0] * b[0].v + w[0][1] * b[1].v + w[0][2] * b[2].v);
    const auto l1 = to_base(g, w[1][0] * b[0].v + w[1][1] * b[1].v + w[1][2] * b[2].v);
    if (!l0 || !l1 || base_distance(g, {*l0}, {*l1}) < 0.1) continue;
    const BaseLine line{{*l0}, {*l1}};
    try {
      const BasePoint pb = base_line_intersect(g, line, {b[0], b[1]}).point;
      const BasePoint qb = base_line_intersect(g, line, {b[1], b[2]}).point;
      const BasePoint rb = base_line_intersect(g, line, {b[2], b[0]}).point;
      const auto p = lift_to_side(g, tri.a0(), tri.a1(), pb.v, kVertexMargin);
      const auto q = lift_to_side(g, tri.a1(), tri.a2(), qb.v, kVertexMargin);
      const auto r = lift_to_side(g, tri.a2(), tri.a0(), rb.v, kVertexMargin);
      if (!p || !q || !r) continue;
      return {tri, *p, *q, *r};
    } catch (const GeometryError&) {
      continue;
    }
  }
  throw GeometryError(ErrorCode::NonConvergence, "could not generate a Menelaus configuration");
}

SuiteReport run_ceva_suite(GeometryKind g, TriangleKind kind, int count, std::uint64_t seed) {
  SuiteReport out;
  for (int k = 0; k < count; ++k) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k));
    const TheoremProduct r = ceva_product(random_ceva_config(g, kind, rng));
    out.products.push_back(r.product);
    out.max_deviation = std::max(out.max_deviation, std::abs(r.product - 1.0));
    out.experimental += r.experimental;
    ++out.count;
  }
  return out;
}

SuiteReport run_menelaus_suite(GeometryKind g, TriangleKind kind, int count, std::uint64_t seed) {
  SuiteReport out;
  for (int k = 0; k < count; ++k) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k));
    const TheoremProduct r = menelaus_product(random_menelaus_config(g, kind, rng));
    out.products.push_back(r.product);
    out.max_deviation = std::max(out.max_deviation, std::abs(r.product + 1.0));
    out.experimental += r.experimental;
    ++out.count;
  }
  return out;
}

}  // namespace thurston
