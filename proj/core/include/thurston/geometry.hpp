#pragma once

// Model core for the S2xR and H2xR product geometries in the projective
// model: points are (1, x, y, z) with the homogeneous coordinate fixed to 1.

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace thurston {

enum class GeometryKind { SphereProduct, HyperbolicProduct };

enum class ErrorCode {
  InvalidPoint,
  InvalidArgument,
  OutOfRange,
  OriginTarget,
  NotCollinear,
  Coincident,
  FibreGeodesic,
  NoIntersection,
  Degenerate,
  NonConvergence,
  EmptyCurve,
  MalformedInput,
};

std::string_view to_string(ErrorCode code);

/// Raised on precondition violations. Solver outcomes (non-convergence,
/// empty meshes) are reported through result structs instead.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

std::string_view to_string(GeometryKind g);
/// Accepts "s2r" / "h2r".
GeometryKind parse_geometry(std::string_view tag);

struct Point {
  double x = 1.0;
  double y = 0.0;
  double z = 0.0;

  Eigen::Vector3d vec() const { return {x, y, z}; }
  static Point from(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }
};

/// The origin point (1, 1, 0, 0).
inline constexpr Point kOrigin{1.0, 0.0, 0.0};

/// +1 for S2xR, -1 for H2xR: the sign carried by the y and z terms of the
/// ambient quadratic form.
constexpr double form_sign(GeometryKind g) {
  return g == GeometryKind::SphereProduct ? 1.0 : -1.0;
}

/// Quadratic form x*x' +- y*y' +- z*z' with the geometry sign.
double bilinear(GeometryKind g, const Eigen::Vector3d& a, const Eigen::Vector3d& b);

/// Geometry norm N = sqrt(x^2 +- y^2 +- z^2); NaN outside the domain.
double norm(GeometryKind g, const Point& p);

/// Angular function: arccos for S2xR, arccosh for H2xR.
double omega(GeometryKind g, double argument);
/// Ratio weight: sin for S2xR, sinh for H2xR.
double weight(GeometryKind g, double x);

enum class Validity { Valid, NonFinite, ZeroNorm, OutsideCone, NonPositiveX };

std::string_view to_string(Validity v);

Validity validate_point(GeometryKind g, const Point& p);
inline bool is_valid(GeometryKind g, const Point& p) {
  return validate_point(g, p) == Validity::Valid;
}
/// Throws GeometryError(InvalidPoint) naming `what` when p is not valid.
void require_valid(GeometryKind g, const Point& p, std::string_view what = "point");

/// Chart coordinates: fibre t plus (phi, theta) on S2xR or (r, alpha) on H2xR.
struct ModelCoords {
  double t = 0.0;
  double a = 0.0;
  double b = 0.0;
};

Point model_to_cartesian(GeometryKind g, const ModelCoords& c);
ModelCoords cartesian_to_model(GeometryKind g, const Point& p);

/// Projective linear map acting on homogeneous coordinates (x0, x, y, z).
class Isometry {
 public:
  Isometry() : m_(Eigen::Matrix4d::Identity()) {}
  explicit Isometry(const Eigen::Matrix4d& m) : m_(m) {}

  const Eigen::Matrix4d& matrix() const { return m_; }
  /// Applies the map and renormalizes so that x0 = 1.
  Point apply(const Point& p) const;
  Isometry compose(const Isometry& inner) const { return Isometry(m_ * inner.m_); }

 private:
  Eigen::Matrix4d m_;
};

struct IsometryPair {
  Isometry forward;
  Isometry inverse;
};

/// Orientation preserving isometry carrying `anchor` to (1, 1, 0, 0): a fibre
/// scaling by 1/N followed by the base rotation (S2) or boost (H2) in the
/// plane spanned by the normalized anchor and e1. Identity on the orthogonal
/// complement of that plane.
IsometryPair translate_to_origin(GeometryKind g, const Point& anchor);

/// Geodesic point reflection through `center`: base point reflection composed
/// with t -> 2 t_center - t. An isometry, but not projective linear.
Point point_reflection(GeometryKind g, const Point& center, const Point& p);

}  // namespace thurston
