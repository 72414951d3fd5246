#include "thurston/geometry.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace thurston {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClampTolerance = 1e-10;

// Maps atan2 output onto (-pi, pi].
double principal_angle(double a) { return a <= -kPi ? a + 2.0 * kPi : a; }

Eigen::Matrix4d embed(const Eigen::Matrix3d& m) {
  Eigen::Matrix4d out = Eigen::Matrix4d::Identity();
  out.block<3, 3>(1, 1) = m;
  return out;
}

// Rotation taking the unit vector b to e1, identity on (span{b, e1})^perp.
Eigen::Matrix3d rotation_to_e1(const Eigen::Vector3d& b) {
  const Eigen::Vector3d e1 = Eigen::Vector3d::UnitX();
  const Eigen::Vector3d k = b.cross(e1);
  const double s = k.norm();
  const double c = b.dot(e1);
  if (s < 1e-15) {
    if (c > 0.0) return Eigen::Matrix3d::Identity();
    return Eigen::Vector3d(-1.0, -1.0, 1.0).asDiagonal();
  }
  Eigen::Matrix3d kx;
  kx << 0.0, -k.z(), k.y(), k.z(), 0.0, -k.x(), -k.y(), k.x(), 0.0;
  return Eigen::Matrix3d::Identity() + kx + kx * kx * ((1.0 - c) / (s * s));
}

// Lorentz boost taking the unit hyperboloid point b to e1. `sign` = -1 gives
// the inverse boost.
Eigen::Matrix3d boost_to_e1(const Eigen::Vector3d& b, double sign = 1.0) {
  const Eigen::Vector2d bv(b.y(), b.z());
  const double sh = bv.norm();
  if (sh < 1e-15) return Eigen::Matrix3d::Identity();
  const double ch = b.x();
  const Eigen::Vector2d n = bv / sh;
  const double s = sign * sh;
  Eigen::Matrix3d m;
  m(0, 0) = ch;
  m(0, 1) = -s * n.x();
  m(0, 2) = -s * n.y();
  m(1, 0) = -s * n.x();
  m(2, 0) = -s * n.y();
  m.block<2, 2>(1, 1) = Eigen::Matrix2d::Identity() + (ch - 1.0) * n * n.transpose();
  return m;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPoint: return "invalid_point";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::OutOfRange: return "out_of_range";
    case ErrorCode::OriginTarget: return "origin_target";
    case ErrorCode::NotCollinear: return "not_collinear";
    case ErrorCode::Coincident: return "coincident";
    case ErrorCode::FibreGeodesic: return "fibre_geodesic";
    case ErrorCode::NoIntersection: return "no_intersection";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::NonConvergence: return "non_convergence";
    case ErrorCode::EmptyCurve: return "empty_curve";
    case ErrorCode::MalformedInput: return "malformed_input";
  }
  return "unknown";
}

std::string_view to_string(GeometryKind g) {
  return g == GeometryKind::SphereProduct ? "s2r" : "h2r";
}

GeometryKind parse_geometry(std::string_view tag) {
  if (tag == "s2r") return GeometryKind::SphereProduct;
  if (tag == "h2r") return GeometryKind::HyperbolicProduct;
  throw GeometryError(ErrorCode::MalformedInput,
                      "unknown geometry tag '" + std::string(tag) + "' (expected s2r or h2r)");
}

double bilinear(GeometryKind g, const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  const double s = form_sign(g);
  return a.x() * b.x() + s * (a.y() * b.y() + a.z() * b.z());
}

double norm(GeometryKind g, const Point& p) {
  const double q = bilinear(g, p.vec(), p.vec());
  return q > 0.0 ? std::sqrt(q) : std::nan("");
}

double omega(GeometryKind g, double argument) {
  if (g == GeometryKind::SphereProduct) {
    if (std::abs(argument) > 1.0 + kClampTolerance) {
      throw GeometryError(ErrorCode::InvalidArgument, "arccos argument outside [-1, 1]");
    }
    return std::acos(std::clamp(argument, -1.0, 1.0));
  }
  if (argument < 1.0 - kClampTolerance) {
    throw GeometryError(ErrorCode::InvalidArgument, "arccosh argument below 1");
  }
  return std::acosh(std::max(argument, 1.0));
}

double weight(GeometryKind g, double x) {
  return g == GeometryKind::SphereProduct ? std::sin(x) : std::sinh(x);
}

std::string_view to_string(Validity v) {
  switch (v) {
    case Validity::Valid: return "valid";
    case Validity::NonFinite: return "non_finite";
    case Validity::ZeroNorm: return "zero_norm";
    case Validity::OutsideCone: return "outside_cone";
    case Validity::NonPositiveX: return "non_positive_x";
  }
  return "unknown";
}

Validity validate_point(GeometryKind g, const Point& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
    return Validity::NonFinite;
  }
  const double q = bilinear(g, p.vec(), p.vec());
  if (g == GeometryKind::SphereProduct) {
    return q > 0.0 ? Validity::Valid : Validity::ZeroNorm;
  }
  if (q <= 0.0) return Validity::OutsideCone;
  if (p.x <= 0.0) return Validity::NonPositiveX;
  return Validity::Valid;
}

void require_valid(GeometryKind g, const Point& p, std::string_view what) {
  const Validity v = validate_point(g, p);
  if (v == Validity::Valid) return;
  std::ostringstream os;
  os.precision(17);
  os << what << " (" << p.x << ", " << p.y << ", " << p.z << ") is not a valid "
     << to_string(g) << " point: " << to_string(v);
  throw GeometryError(ErrorCode::InvalidPoint, os.str());
}

Point model_to_cartesian(GeometryKind g, const ModelCoords& c) {
  const double et = std::exp(c.t);
  if (g == GeometryKind::SphereProduct) {
    const double phi = c.a;
    const double theta = c.b;
    if (!(phi > -kPi && phi <= kPi) || !(theta >= -kPi / 2 && theta <= kPi / 2)) {
      throw GeometryError(ErrorCode::OutOfRange, "geographic chart coordinates out of range");
    }
    return {et * std::cos(phi) * std::cos(theta), et * std::sin(phi) * std::cos(theta),
            et * std::sin(theta)};
  }
  const double r = c.a;
  const double alpha = c.b;
  if (!(r >= 0.0) || !(alpha > -kPi && alpha <= kPi)) {
    throw GeometryError(ErrorCode::OutOfRange, "cylindrical chart coordinates out of range");
  }
  return {et * std::cosh(r), et * std::sinh(r) * std::cos(alpha),
          et * std::sinh(r) * std::sin(alpha)};
}

ModelCoords cartesian_to_model(GeometryKind g, const Point& p) {
  require_valid(g, p);
  const double n = norm(g, p);
  if (g == GeometryKind::SphereProduct) {
    return {std::log(n), principal_angle(std::atan2(p.y, p.x)),
            std::atan2(p.z, std::hypot(p.x, p.y))};
  }
  return {std::log(n), std::asinh(std::hypot(p.y, p.z) / n),
          principal_angle(std::atan2(p.z, p.y))};
}

Point Isometry::apply(const Point& p) const {
  const Eigen::Vector4d h = m_ * Eigen::Vector4d(1.0, p.x, p.y, p.z);
  return {h[1] / h[0], h[2] / h[0], h[3] / h[0]};
}

IsometryPair translate_to_origin(GeometryKind g, const Point& anchor) {
  require_valid(g, anchor, "anchor");
  const double n = norm(g, anchor);
  const Eigen::Vector3d b = anchor.vec() / n;

  Eigen::Matrix4d scale = Eigen::Matrix4d::Identity();
  scale.block<3, 3>(1, 1) *= 1.0 / n;
  Eigen::Matrix4d unscale = Eigen::Matrix4d::Identity();
  unscale.block<3, 3>(1, 1) *= n;

  Eigen::Matrix3d to_e1;
  Eigen::Matrix3d from_e1;
  if (g == GeometryKind::SphereProduct) {
    to_e1 = rotation_to_e1(b);
    from_e1 = to_e1.transpose();
  } else {
    to_e1 = boost_to_e1(b);
    from_e1 = boost_to_e1(b, -1.0);
  }
  return {Isometry(embed(to_e1) * scale), Isometry(unscale * embed(from_e1))};
}

Point point_reflection(GeometryKind g, const Point& center, const Point& p) {
  require_valid(g, center, "reflection center");
  require_valid(g, p);
  const double nm = norm(g, center);
  const double np = norm(g, p);
  const Eigen::Vector3d m = center.vec() / nm;
  const Eigen::Vector3d q = p.vec() / np;
  const Eigen::Vector3d reflected = 2.0 * bilinear(g, q, m) * m - q;
  return Point::from(reflected * (nm * nm / np));
}

}  // namespace thurston
