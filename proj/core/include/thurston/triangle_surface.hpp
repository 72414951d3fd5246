#pragma once

// Geodesic triangles and the surface spanned by them: the points P(l1, l2)
// closest to a0 on the curves C(l1, l2) = AS(a0, a1; l1) n AS(a2, a0; l2).

#include "thurston/apollonius.hpp"
#include "thurston/geometry.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace thurston {

enum class TriangleKind { Fibre, General };

std::string_view to_string(TriangleKind k);

struct GeodesicTriangle {
  GeometryKind geometry = GeometryKind::SphereProduct;
  std::array<Point, 3> v;
  TriangleKind kind = TriangleKind::General;

  const Point& a0() const { return v[0]; }
  const Point& a1() const { return v[1]; }
  const Point& a2() const { return v[2]; }
};

/// Fibre iff |det[a0; a1; a2]| <= 1e-9 |a0| |a1| |a2|, i.e. the vertices span
/// a Euclidean plane through E0. Throws Degenerate for coincident or
/// geodesically collinear vertices.
GeodesicTriangle classify_triangle(GeometryKind g, const Point& a0, const Point& a1,
                                   const Point& a2);

/// AS(a0, a1; l1) and AS(a2, a0; l2).
ApolloniusSpec first_surface(const GeodesicTriangle& tri, double lambda1);
ApolloniusSpec second_surface(const GeodesicTriangle& tri, double lambda2);

/// Axis-aligned box of half-width scale * max |a_i| around the Cartesian origin.
Box triangle_box(const GeodesicTriangle& tri, double scale);

struct SurfaceOptions {
  double box_scale = 3.0;
  double tol = 1e-11;
  int seed_cells = 12;
  bool grid_seeds = true;
  int max_components = 8;
  int max_points = 20000;
  double tie_tol = 1e-9;
};

enum class SurfaceStatus { Ok, Endpoint, EmptyCurve, Failed };

std::string_view to_string(SurfaceStatus s);

struct SurfacePoint {
  SurfaceStatus status = SurfaceStatus::Failed;
  Point point;
  double distance_to_a0 = 0.0;
  /// Minimizers within tie_tol of the minimum (the chosen one first).
  std::vector<Point> candidates;
  int components = 0;
  bool truncated = false;    // some traced component left the box or the domain
  bool at_boundary = false;  // minimum attained at a truncated end
  std::string message;

  bool ambiguous() const { return candidates.size() > 1; }
};

/// P(l1, l2). P(0, l2) = a0 and P(l1, 0) = a2; both zero is rejected.
/// `hints` are tried as seeds before the built-in ones.
SurfacePoint surface_point(const GeodesicTriangle& tri, double lambda1, double lambda2,
                           const SurfaceOptions& options = {},
                           const std::vector<Point>& hints = {});

struct RatioCheck {
  double ratio1 = 0.0;       // d(a0,P) / d(P,a1) - l1
  double ratio2 = 0.0;       // d(a2,P) / d(P,a0) - l2
  double composition = 0.0;  // d(a2,P) / d(P,a1) - l1 l2
  double max() const;
};

/// Signed defects of the two ratio constraints and their composition at P.
RatioCheck check_ratios(const GeodesicTriangle& tri, double lambda1, double lambda2,
                        const Point& p);

/// tan(s pi / 2).
double grid_lambda(double s);

struct SampleCell {
  int i = 0;  // lambda1 index
  int j = 0;  // lambda2 index
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  SurfacePoint result;
  RatioCheck check;
};

struct TriangleSurfaceSample {
  GeodesicTriangle triangle;
  int n = 0;  // cells per axis; s = k / n for k = 0..n-1
  std::vector<SampleCell> cells;  // row-major in (i, j)

  const SampleCell& at(int i, int j) const { return cells[static_cast<std::size_t>(i * n + j)]; }
  bool usable(int i, int j) const;
};

/// n x n grid with lambda = tan(s pi / 2), s = k / n. Cells are evaluated in
/// row-major order, each warm-started from its already computed neighbours.
TriangleSurfaceSample sample_triangle_surface(const GeodesicTriangle& tri, int n,
                                              const SurfaceOptions& options = {});

/// Vertices of usable cells and two triangles per grid quad with four
/// usable corners; zero-area triangles skipped.
SurfaceMesh sample_mesh(const TriangleSurfaceSample& sample);

/// Unit normal of the least-squares plane through the origin and the largest
/// |n . P| over the usable samples.
struct PlaneFit {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double max_deviation = 0.0;
};
PlaneFit fit_plane_through_origin(const TriangleSurfaceSample& sample);

enum class ProjectionStatus { Ok, Missed, SurfaceFailed };

std::string_view to_string(ProjectionStatus s);

struct ProjectedPoint {
  ProjectionStatus status = ProjectionStatus::Missed;
  Point point;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double ray_deviation = 0.0;  // Euclidean distance of `point` from the ray
  RatioCheck check;
};

struct ProjectedCurve {
  std::vector<ProjectedPoint> points;
  bool fibre = false;  // geodesic returned directly
};

/// Image of the geodesic p1 -> p2 on the triangle surface. Fibre triangles
/// return the geodesic itself; general triangles intersect each ray from E0
/// with the bilinear grid surface and re-solve surface_point at the hit.
ProjectedCurve project_curve_to_surface(const TriangleSurfaceSample& sample, const Point& p1,
                                        const Point& p2, int samples = 32,
                                        const SurfaceOptions& options = {});

struct Segment {
  Point a;
  Point b;
};

struct SegmentDistance {
  double distance = 0.0;
  double s = 0.0;  // parameter on the first segment
  double t = 0.0;  // parameter on the second segment
};

/// min over s, t in [0,1] of d(seg1(s), seg2(t)): (grid+1)^2 samples followed
/// by a shrinking compass search around the best sample.
SegmentDistance segment_min_distance(GeometryKind g, const Segment& seg1, const Segment& seg2,
                                     int grid = 64);

/// Largest distance from points along each side to the nearest usable sample.
std::array<double, 3> side_deviation(const TriangleSurfaceSample& sample, int per_side = 16);

}  // namespace thurston
