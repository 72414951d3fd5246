#pragma once

// Apollonius surfaces {Q : d(P1, Q) = lambda * d(Q, P2)} and their pairwise
// intersection curves.

#include "thurston/geometry.hpp"
#include "thurston/numerics.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <iosfwd>
#include <vector>

namespace thurston {

struct ApolloniusSpec {
  GeometryKind geometry = GeometryKind::SphereProduct;
  Point p1;
  Point p2;
  double lambda = 1.0;

  /// Same surface with the foci swapped and ratio 1/lambda; stands in for
  /// lambda = infinity (the degenerate surface at p2) when lambda = 0.
  ApolloniusSpec reciprocal() const { return {geometry, p2, p1, 1.0 / lambda}; }
};

/// Throws when a focus is invalid, the foci coincide or lambda is negative or
/// not finite.
void validate(const ApolloniusSpec& spec);

/// Left minus right side of the implicit surface equation,
///   4 w^2(<p1,q>/(N1 Nq)) + log^2(N1^2/Nq^2)
///     - lambda^2 [4 w^2(<p2,q>/(N2 Nq)) + log^2(N2^2/Nq^2)],
/// which equals 4 (d^2(p1,q) - lambda^2 d^2(q,p2)).
double apollonius_residual(const ApolloniusSpec& spec, const Point& q);

/// Analytic gradient of apollonius_residual with respect to q.
Eigen::Vector3d apollonius_gradient(const ApolloniusSpec& spec, const Point& q);

/// The same quantity assembled from distances obtained by translating q to the
/// origin and inverting the geodesics.
double apollonius_residual_via_inversion(const ApolloniusSpec& spec, const Point& q);

/// d(p1, q) - lambda * d(q, p2).
double distance_defect(const ApolloniusSpec& spec, const Point& q);

struct Box {
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(-1.0);
  Eigen::Vector3d hi = Eigen::Vector3d::Constant(1.0);

  double diagonal() const { return (hi - lo).norm(); }
  bool contains(const Eigen::Vector3d& p) const {
    return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
  }
};

/// Cells per axis.
struct Resolution {
  int nx = 64;
  int ny = 64;
  int nz = 64;
  int max() const { return std::max({nx, ny, nz}); }
};

struct SurfaceMesh {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;  // 0-based
  std::vector<double> residuals;              // apollonius_residual per vertex
};

enum class MeshOutcome { Ok, Empty };

struct MeshOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
  int edge_refine_iterations = 40;
};

struct MeshResult {
  MeshOutcome outcome = MeshOutcome::Empty;
  SurfaceMesh mesh;
  double max_distance_defect = 0.0;  // max |d(p1,v) - lambda d(v,p2)|
  double tolerance = 0.0;            // 10 * diagonal / resolution
  int skipped_cells = 0;             // cells with an invalid corner
};

/// Zero set of apollonius_residual over the box: cubes split into six
/// tetrahedra along the main diagonal, edge crossings refined on the residual.
/// Cells touching invalid model points are discarded.
MeshResult extract_isosurface(const ApolloniusSpec& spec, const Box& box,
                              const Resolution& resolution, const MeshOptions& options = {});

/// "v x y z" / "f i j k" lines, 1-based indices, 12 significant digits.
void write_obj(std::ostream& os, const SurfaceMesh& mesh);

/// Max |distance_defect| over the images of the mesh vertices under the point
/// reflection that swaps the foci. Meaningful for lambda = 1.
double bisector_symmetry_defect(const ApolloniusSpec& spec, const SurfaceMesh& mesh);

struct TraceOptions {
  Box box;
  double tol = 1e-11;  // on residual / (1 + lambda^2)
  int max_points = 20000;
};

struct IntersectionCurve {
  std::vector<Point> points;
  bool closed = false;
  bool truncated = false;          // left the box or the model domain
  bool degenerate_point = false;   // lambda1 = 0 or lambda2 = 0
  numerics::SolverReport seed_report;
};

/// Curve C = AS(A0,A1; l1) n AS(A2,A0; l2). Requires spec1.p1 == spec2.p2
/// (the shared vertex A0).
IntersectionCurve trace_intersection_curve(const ApolloniusSpec& spec1,
                                           const ApolloniusSpec& spec2, const Point& seed,
                                           const TraceOptions& options);

/// Both residuals normalized by (1 + lambda^2); the function traced above.
numerics::CurveFunction intersection_function(const ApolloniusSpec& spec1,
                                              const ApolloniusSpec& spec2);

/// Seeds on both surfaces from a coarse scan of the box: cells where both
/// residuals change sign are projected onto the curve. Duplicates removed.
std::vector<Point> find_curve_seeds(const ApolloniusSpec& spec1, const ApolloniusSpec& spec2,
                                    const Box& box, int cells_per_axis = 12,
                                    double tol = 1e-11);

}  // namespace thurston
