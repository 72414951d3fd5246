#pragma once

#include "thurston/geometry.hpp"

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thurston::detail {

inline constexpr double kPi = std::numbers::pi;

// Maps atan2 output onto (-pi, pi].
inline double principal_angle(double a) { return a <= -kPi ? a + 2.0 * kPi : a; }

// Angle between two normalized base vectors. Equal to arccos(a.b) on S2 and
// arccosh<a,b> on H2, evaluated in cancellation-free forms.
inline double base_angle(GeometryKind g, const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  if (g == GeometryKind::SphereProduct) return std::atan2(a.cross(b).norm(), a.dot(b));
  const Eigen::Vector3d d = a - b;
  const double spacelike = d.y() * d.y() + d.z() * d.z() - d.x() * d.x();
  return 2.0 * std::asinh(std::sqrt(std::max(0.0, spacelike)) / 2.0);
}

// Point at signed fraction s along the base geodesic between unit vectors.
inline Eigen::Vector3d base_slerp(GeometryKind g, const Eigen::Vector3d& a,
                                  const Eigen::Vector3d& b, double s) {
  const double theta = base_angle(g, a, b);
  if (theta <= 1e-15) return a;
  if (g == GeometryKind::SphereProduct) {
    if (theta > kPi - 1e-12) {
      throw GeometryError(ErrorCode::Degenerate,
                          "antipodal base points: the connecting geodesic is not unique");
    }
    return (std::sin((1.0 - s) * theta) * a + std::sin(s * theta) * b) / std::sin(theta);
  }
  return (std::sinh((1.0 - s) * theta) * a + std::sinh(s * theta) * b) / std::sinh(theta);
}

}  // namespace thurston::detail
