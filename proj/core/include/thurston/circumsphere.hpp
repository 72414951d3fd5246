#pragma once

// Circumscribed geodesic sphere of a geodesic tetrahedron.

#include "thurston/geometry.hpp"
#include "thurston/numerics.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace thurston {

struct Tetrahedron {
  std::array<Point, 4> vertices;
};

/// Throws Degenerate when a vertex is invalid, two vertices coincide or three
/// lie on one geodesic (every triangle inequality strict by more than 1e-9).
void validate(GeometryKind g, const Tetrahedron& t);

enum class CenterClass {
  ProperSphere,
  S2rRadiusExceedsPi,
  H2rOuterCenter,
  H2rIdealCenter,
};

std::string_view to_string(CenterClass c);

/// Class of an ambient point reached by the solver. H2xR uses the relative
/// cone value Q / (x^2 + y^2 + z^2) with Q = x^2 - y^2 - z^2: proper above
/// 1e-9 (and x > 0), ideal within 1e-9 of zero, outer otherwise.
CenterClass classify_center(GeometryKind g, const Point& center, std::optional<double> radius);

struct CircumsphereResult {
  Point center;
  std::optional<double> radius;  // omitted when distances to the center are not real
  CenterClass classification = CenterClass::ProperSphere;
  double residual = 0.0;         // max_ij |d(a_i, c) - d(a_j, c)|
  numerics::SolverReport report;
  std::string start_label;
  /// Other distinct fixed points found by the multistart.
  std::vector<Point> alternatives;
};

/// F_i(c) = d^2(a0, c) - d^2(a_i, c), i = 1..3; NaN where c is not a valid point.
numerics::Vector circumsphere_residual(GeometryKind g, const Tetrahedron& t,
                                       const numerics::Vector& c);

struct CircumsphereOptions {
  numerics::NewtonOptions newton;
  double distinct_tol = 1e-6;
};

/// Damped Newton from a fixed priority list of starts: Euclidean circumcenter,
/// centroid, then the midpoints between each vertex and its opposite face
/// centroid. The first proper solution wins. Throws NonConvergence (with the
/// best residual in the message) when no start converges and the H2xR
/// extrapolation does not leave the cone.
CircumsphereResult circumscribed_sphere(GeometryKind g, const Tetrahedron& t,
                                        const CircumsphereOptions& options = {});

}  // namespace thurston
