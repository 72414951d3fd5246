#pragma once

// Geodesics issuing from the origin point (1, 1, 0, 0), their inversion, and
// the distance function of the two product geometries.

#include "thurston/geometry.hpp"

#include <string_view>

namespace thurston {

/// Direction angles and arc length of a unit-speed geodesic from the origin.
struct GeodesicParams {
  double u = 0.0;    // (-pi, pi]
  double v = 0.0;    // [-pi/2, pi/2]
  double tau = 0.0;  // >= 0
};

/// Case of the inversion formulas that produced a parameter triple.
enum class InversionBranch {
  Generic,        // y != 0
  YZero,          // y = 0, z != 0, base norm != 1
  YZeroUnitBase,  // y = 0, z != 0, base norm == 1 (v = 0)
  FibreAxis,      // y = z = 0, x > 0 (v = +-pi/2)
  AntipodalFibre, // y = z = 0, x < 0; S2xR only, extended by continuity
  PolarAxis,      // x = y = 0; S2xR only
};

std::string_view to_string(InversionBranch b);

struct Inversion {
  GeodesicParams params;
  InversionBranch branch = InversionBranch::Generic;
};

Point geodesic_point(GeometryKind g, double u, double v, double tau);
inline Point geodesic_point(GeometryKind g, const GeodesicParams& p) {
  return geodesic_point(g, p.u, p.v, p.tau);
}

/// Unit tangent (cos v cos u, cos v sin u, sin v) in (base, fibre) components.
Eigen::Vector3d direction_vector(const GeodesicParams& p);

/// Parameters of the geodesic from the origin to `target`. Throws
/// OriginTarget when target is the origin itself.
Inversion invert_geodesic(GeometryKind g, const Point& target);

/// Closed-form distance: sqrt(base_angle^2 + log^2(N1/N2)).
double distance(GeometryKind g, const Point& p1, const Point& p2);

/// Gradient of d^2(p, q) with respect to the Cartesian coordinates of q.
Eigen::Vector3d distance_squared_gradient(GeometryKind g, const Point& p, const Point& q);

/// Second distance route: translate p1 to the origin and invert the geodesic
/// to the image of p2.
double distance_via_inversion(GeometryKind g, const Point& p1, const Point& p2);

/// Point at fraction s of the geodesic from a to b (s outside [0, 1] extends
/// the geodesic line). The base part moves along the base geodesic, the fibre
/// coordinate linearly.
Point geodesic_interpolate(GeometryKind g, const Point& a, const Point& b, double s);

inline Point geodesic_midpoint(GeometryKind g, const Point& a, const Point& b) {
  return geodesic_interpolate(g, a, b, 0.5);
}

/// Arc length of the parametrized geodesic integrated against the ambient
/// metric with composite Simpson; an oracle for `distance` that does not
/// share its formula. Odd step counts are rounded up.
double arc_length_quadrature(GeometryKind g, double u, double v, double tau, int steps);

}  // namespace thurston
