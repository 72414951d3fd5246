#include "thurston/base_plane.hpp"

#include "internal.hpp"

#include <cmath>

namespace thurston {

namespace {

constexpr double kCollinearTol = 1e-9;
constexpr double kBetweenTol = 1e-9;

}  // namespace

BasePoint project_to_base(GeometryKind g, const Point& p) {
  require_valid(g, p);
  return {p.vec() / norm(g, p)};
}

double base_distance(GeometryKind g, const BasePoint& a, const BasePoint& b) {
  return detail::base_angle(g, a.v, b.v);
}

double base_triple_product(const BasePoint& a, const BasePoint& b, const BasePoint& c) {
  return a.v.dot(b.v.cross(c.v));
}

bool base_between(GeometryKind g, const BasePoint& a, const BasePoint& p, const BasePoint& b) {
  const double dab = base_distance(g, a, b);
  if (g == GeometryKind::SphereProduct && dab >= detail::kPi) return false;
  return std::abs(base_distance(g, a, p) + base_distance(g, p, b) - dab) <= kBetweenTol;
}

double base_simple_ratio(GeometryKind g, const BasePoint& a, const BasePoint& p,
                         const BasePoint& b) {
  const double dap = base_distance(g, a, p);
  const double dpb = base_distance(g, p, b);
  const double dab = base_distance(g, a, b);
  if (dap < 1e-12 || dpb < 1e-12 || dab < 1e-12) {
    throw GeometryError(ErrorCode::Coincident, "simple ratio needs three distinct points");
  }
  const double scale = a.v.norm() * p.v.norm() * b.v.norm();
  if (std::abs(base_triple_product(a, p, b)) > kCollinearTol * scale) {
    throw GeometryError(ErrorCode::NotCollinear, "simple ratio points are not on one base line");
  }
  const double magnitude = weight(g, dap) / weight(g, dpb);
  return base_between(g, a, p, b) ? magnitude : -magnitude;
}

LineIntersection base_line_intersect(GeometryKind g, const BaseLine& l1, const BaseLine& l2) {
  const Eigen::Vector3d n1 = l1.a.v.cross(l1.b.v);
  const Eigen::Vector3d n2 = l2.a.v.cross(l2.b.v);
  const double s1 = n1.norm();
  const double s2 = n2.norm();
  if (s1 < 1e-14 * l1.a.v.norm() * l1.b.v.norm() || s2 < 1e-14 * l2.a.v.norm() * l2.b.v.norm()) {
    throw GeometryError(ErrorCode::Degenerate, "line defined by coincident or antipodal points");
  }
  const Eigen::Vector3d q = n1.cross(n2);
  if (q.norm() <= 1e-12 * s1 * s2) {
    throw GeometryError(ErrorCode::Degenerate, "the two lines coincide");
  }

  LineIntersection out;
  if (g == GeometryKind::SphereProduct) {
    const Eigen::Vector3d dir = q.normalized();
    const double score =
        dir.dot((l1.a.v + l1.b.v).normalized()) + dir.dot((l2.a.v + l2.b.v).normalized());
    out.point = {score >= 0.0 ? dir : Eigen::Vector3d(-dir)};
    out.ambiguous = std::abs(score) < 1e-12;
    return out;
  }
  const double form = q.x() * q.x() - q.y() * q.y() - q.z() * q.z();
  if (form <= 1e-12 * q.squaredNorm()) {
    throw GeometryError(ErrorCode::NoIntersection, "hyperbolic lines do not meet");
  }
  const Eigen::Vector3d p = q / std::sqrt(form);
  out.point = {p.x() > 0.0 ? p : Eigen::Vector3d(-p)};
  return out;
}

BasePoint base_interpolate(GeometryKind g, const BasePoint& a, const BasePoint& b, double s) {
  return {detail::base_slerp(g, a.v, b.v, s)};
}

}  // namespace thurston
