#pragma once

// Simple ratios on geodesics and the Menelaus / Ceva products for geodesic
// triangles, with generators for randomized configurations.

#include "thurston/geodesic.hpp"
#include "thurston/geometry.hpp"
#include "thurston/triangle_surface.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace thurston {

/// Position of p on the geodesic line through a and b, measured by signed
/// arc length sigma from a (positive towards b). Obtained by translating a to
/// the origin and inverting the geodesics to b and p.
struct GeodesicLocation {
  double sigma = 0.0;
  double tau = 0.0;  // d(a, b)
  GeodesicParams params;  // of the geodesic a -> b after the translation
};

/// Throws Coincident when a = b and NotCollinear when p is off the line
/// (direction mismatch above `tol`).
GeodesicLocation locate_on_geodesic(GeometryKind g, const Point& a, const Point& b,
                                    const Point& p, double tol = 1e-9);

bool on_geodesic(GeometryKind g, const Point& a, const Point& b, const Point& p,
                 double tol = 1e-9);

/// True when the geodesic through a and b runs along a fibre (cos v = 0).
bool is_fibre_like(GeometryKind g, const Point& a, const Point& b, double tol = 1e-9);

/// +-w(d(a,p) cos v) / w(d(p,b) cos v), positive iff p lies between a and b.
/// Throws FibreGeodesic when |cos v| <= 1e-9.
double simple_ratio_general(GeometryKind g, const Point& a, const Point& p, const Point& b);

/// +-d(a,p) / d(p,b), positive iff p lies between a and b.
double simple_ratio_fibre(GeometryKind g, const Point& a, const Point& p, const Point& b);

struct CevaConfig {
  GeodesicTriangle triangle;
  Point t;  // cevian point
  Point p;  // on g(a0, a1)
  Point q;  // on g(a1, a2)
  Point r;  // on g(a2, a0)
};

struct MenelausConfig {
  GeodesicTriangle triangle;
  Point p;  // on g(a0, a1)
  Point q;  // on g(a1, a2)
  Point r;  // on g(a2, a0)
};

struct TheoremProduct {
  double product = 0.0;
  std::array<double, 3> ratios{};
  /// Fibre-type triangle whose sides are partly fibre-like and partly not.
  bool experimental = false;
};

/// s(a0,P,a1) s(a1,Q,a2) s(a2,R,a0) with s_f on fibre-type triangles and s_g
/// otherwise. Throws Degenerate when T lies on a side, NotCollinear when a
/// point is off its side.
TheoremProduct ceva_product(const CevaConfig& config);

/// Same product for a transversal. Throws Coincident when it passes through
/// a vertex.
TheoremProduct menelaus_product(const MenelausConfig& config);

/// Random configurations. General triangles are built in the base plane and
/// lifted to the side geodesics; fibre triangles are built in the flat
/// (arc length, fibre) coordinates of their plane through E0.
CevaConfig random_ceva_config(GeometryKind g, TriangleKind kind, std::mt19937_64& rng);
MenelausConfig random_menelaus_config(GeometryKind g, TriangleKind kind, std::mt19937_64& rng);

struct SuiteReport {
  int count = 0;
  int experimental = 0;
  double max_deviation = 0.0;  // max |product - expected|
  std::vector<double> products;
};

/// Config k uses an RNG seeded with seed + k.
SuiteReport run_ceva_suite(GeometryKind g, TriangleKind kind, int count, std::uint64_t seed);
SuiteReport run_menelaus_suite(GeometryKind g, TriangleKind kind, int count, std::uint64_t seed);

}  // namespace thurston
