#pragma once

// The constant-curvature base surfaces: the unit sphere (S2xR) and the upper
// unit hyperboloid sheet x^2 - y^2 - z^2 = 1 (H2xR).

#include "thurston/geometry.hpp"

#include <Eigen/Core>

namespace thurston {

struct BasePoint {
  Eigen::Vector3d v;
};

/// Central projection from E0 = (1, 0, 0, 0): p / N.
BasePoint project_to_base(GeometryKind g, const Point& p);

/// Great-circle / hyperbolic distance between base points.
double base_distance(GeometryKind g, const BasePoint& a, const BasePoint& b);

/// Scalar triple product of the three base vectors (the Minkowski triple
/// product coincides with it). Zero iff the points share a base line.
double base_triple_product(const BasePoint& a, const BasePoint& b, const BasePoint& c);

/// True when d(a,p) + d(p,b) = d(a,b) within 1e-9 (and d(a,b) < pi on S2).
bool base_between(GeometryKind g, const BasePoint& a, const BasePoint& p, const BasePoint& b);

/// Signed ratio w(d(a,p)) / w(d(p,b)), positive iff p lies between a and b.
/// Throws NotCollinear / Coincident.
double base_simple_ratio(GeometryKind g, const BasePoint& a, const BasePoint& p,
                         const BasePoint& b);

struct BaseLine {
  BasePoint a;
  BasePoint b;
};

struct LineIntersection {
  BasePoint point;
  /// S2 only: both antipodal candidates score equally against the defining
  /// arcs; `point` is then one of them and its antipode is equally valid.
  bool ambiguous = false;
};

/// Meet of two base lines. On S2 picks the antipodal candidate closer to the
/// arc interiors. Throws NoIntersection (H2 parallel/ultraparallel lines) or
/// Degenerate (identical lines).
LineIntersection base_line_intersect(GeometryKind g, const BaseLine& l1, const BaseLine& l2);

/// Base point at signed fraction s along the base geodesic from a to b.
BasePoint base_interpolate(GeometryKind g, const BasePoint& a, const BasePoint& b, double s);

}  // namespace thurston
