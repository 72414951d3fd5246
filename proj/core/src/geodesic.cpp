#include "thurston/geodesic.hpp"

#include "thurston/numerics.hpp"
#include "internal.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thurston {

namespace {

using detail::base_angle;
using detail::kPi;
using detail::principal_angle;

// Base-surface angle of a point seen from the origin, evaluated in forms that
// stay accurate for small angles (equal to arccos(x/N) / arccosh(x/N)).
double base_arc_from_origin(GeometryKind g, const Point& p, double n) {
  const double rho = std::hypot(p.y, p.z);
  if (g == GeometryKind::SphereProduct) return std::atan2(rho, p.x);
  return std::asinh(rho / n);
}

}  // namespace

std::string_view to_string(InversionBranch b) {
  switch (b) {
    case InversionBranch::Generic: return "generic";
    case InversionBranch::YZero: return "y_zero";
    case InversionBranch::YZeroUnitBase: return "y_zero_unit_base";
    case InversionBranch::FibreAxis: return "fibre_axis";
    case InversionBranch::AntipodalFibre: return "antipodal_fibre";
    case InversionBranch::PolarAxis: return "polar_axis";
  }
  return "unknown";
}

Point geodesic_point(GeometryKind g, double u, double v, double tau) {
  const double e = std::exp(tau * std::sin(v));
  const double arc = tau * std::cos(v);
  const bool sphere = g == GeometryKind::SphereProduct;
  const double c = sphere ? std::cos(arc) : std::cosh(arc);
  const double s = sphere ? std::sin(arc) : std::sinh(arc);
  return {e * c, e * s * std::cos(u), e * s * std::sin(u)};
}

Eigen::Vector3d direction_vector(const GeodesicParams& p) {
  return {std::cos(p.v) * std::cos(p.u), std::cos(p.v) * std::sin(p.u), std::sin(p.v)};
}

Inversion invert_geodesic(GeometryKind g, const Point& target) {
  require_valid(g, target, "geodesic target");
  const double magnitude = target.vec().norm();
  const double zero_tol = 1e-12 * (1.0 + magnitude);
  const bool y_zero = std::abs(target.y) <= zero_tol;
  const bool z_zero = std::abs(target.z) <= zero_tol;
  if (y_zero && z_zero && std::abs(target.x - 1.0) <= zero_tol) {
    throw GeometryError(ErrorCode::OriginTarget,
                        "geodesic target coincides with the origin point; direction undefined");
  }

  const bool sphere = g == GeometryKind::SphereProduct;
  const double n = norm(g, target);
  const double t = std::log(n);

  Inversion out;
  auto set_sloped = [&](double u, double arc) {
    out.params = {u, std::atan2(t, arc), std::hypot(arc, t)};
  };

  if (y_zero && z_zero) {
    if (target.x > 0.0) {
      out.branch = InversionBranch::FibreAxis;
      out.params = {0.0, t >= 0.0 ? kPi / 2 : -kPi / 2, std::abs(t)};
    } else {
      // Only reachable on S2xR: the base antipode of e1, arc = pi.
      out.branch = InversionBranch::AntipodalFibre;
      set_sloped(0.0, kPi);
    }
    return out;
  }

  if (y_zero) {
    const double u = target.z > 0.0 ? kPi / 2 : -kPi / 2;
    if (sphere && std::abs(target.x) <= zero_tol) {
      out.branch = InversionBranch::PolarAxis;
      set_sloped(u, kPi / 2);
    } else if (std::abs(n - 1.0) <= zero_tol) {
      out.branch = InversionBranch::YZeroUnitBase;
      out.params = {u, 0.0, base_arc_from_origin(g, target, n)};
    } else {
      out.branch = InversionBranch::YZero;
      set_sloped(u, base_arc_from_origin(g, target, n));
    }
    return out;
  }

  out.branch = InversionBranch::Generic;
  set_sloped(principal_angle(std::atan2(target.z, target.y)), base_arc_from_origin(g, target, n));
  return out;
}

double distance(GeometryKind g, const Point& p1, const Point& p2) {
  require_valid(g, p1, "p1");
  require_valid(g, p2, "p2");
  const double n1 = norm(g, p1);
  const double n2 = norm(g, p2);
  const double angle = base_angle(g, p1.vec() / n1, p2.vec() / n2);
  return std::hypot(angle, std::log(n1 / n2));
}

Eigen::Vector3d distance_squared_gradient(GeometryKind g, const Point& p, const Point& q) {
  require_valid(g, p, "p");
  require_valid(g, q, "q");
  const double sign = form_sign(g);
  const Eigen::Vector3d jp(p.x, sign * p.y, sign * p.z);
  const Eigen::Vector3d jq(q.x, sign * q.y, sign * q.z);
  const double np = norm(g, p);
  const double nq = norm(g, q);
  const double c = bilinear(g, p.vec(), q.vec()) / (np * nq);
  const Eigen::Vector3d grad_c = jp / (np * nq) - c * jq / (nq * nq);
  const double theta = base_angle(g, p.vec() / np, q.vec() / nq);
  const double ratio = theta < 1e-8 ? 1.0 : theta / weight(g, theta);
  const double fibre = std::log(nq / np);
  return -2.0 * sign * ratio * grad_c + 2.0 * fibre * jq / (nq * nq);
}

double distance_via_inversion(GeometryKind g, const Point& p1, const Point& p2) {
  const IsometryPair iso = translate_to_origin(g, p1);
  const Point image = iso.forward.apply(p2);
  try {
    return invert_geodesic(g, image).params.tau;
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::OriginTarget) return 0.0;
    throw;
  }
}

Point geodesic_interpolate(GeometryKind g, const Point& a, const Point& b, double s) {
  require_valid(g, a, "segment start");
  require_valid(g, b, "segment end");
  const double na = norm(g, a);
  const double nb = norm(g, b);
  const Eigen::Vector3d ba = a.vec() / na;
  const Eigen::Vector3d bb = b.vec() / nb;
  const Eigen::Vector3d base = detail::base_slerp(g, ba, bb, s);
  const double t = std::log(na) + s * (std::log(nb) - std::log(na));
  return Point::from(std::exp(t) * base);
}

double arc_length_quadrature(GeometryKind g, double u, double v, double tau, int steps) {
  if (steps < 2) throw GeometryError(ErrorCode::InvalidArgument, "quadrature needs >= 2 steps");
  if (tau == 0.0) return 0.0;
  const int n = steps % 2 == 0 ? steps : steps + 1;
  const bool sphere = g == GeometryKind::SphereProduct;
  const double sv = std::sin(v);
  const double cv = std::cos(v);
  const double cu = std::cos(u);
  const double su = std::sin(u);

  // Speed of the curve measured with the ambient Cartesian metric.
  auto speed = [&](double s) {
    const double e = std::exp(s * sv);
    const double arc = s * cv;
    const double c = sphere ? std::cos(arc) : std::cosh(arc);
    const double sn = sphere ? std::sin(arc) : std::sinh(arc);
    const double dc = sphere ? -sn : sn;
    const double ds = c;
    const Eigen::Vector3d x(e * c, e * sn * cu, e * sn * su);
    const Eigen::Vector3d dx = sv * x + e * cv * Eigen::Vector3d(dc, ds * cu, ds * su);
    if (sphere) return std::sqrt(dx.squaredNorm() / x.squaredNorm());
    const double X = x.x(), Y = x.y(), Z = x.z();
    const double q = -X * X + Y * Y + Z * Z;
    const double num = (X * X + Y * Y + Z * Z) * dx.x() * dx.x() - 4.0 * X * Y * dx.x() * dx.y() -
                       4.0 * X * Z * dx.x() * dx.z() + (X * X + Y * Y - Z * Z) * dx.y() * dx.y() +
                       4.0 * Y * Z * dx.y() * dx.z() + (X * X - Y * Y + Z * Z) * dx.z() * dx.z();
    return std::sqrt(num / (q * q));
  };

  return numerics::simpson(speed, 0.0, tau, n);
}

}  // namespace thurston
