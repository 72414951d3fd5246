#include "oracles.hpp"

#include "thurston/apollonius.hpp"
#include "thurston/geodesic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace thurston;

namespace {

constexpr auto S = GeometryKind::SphereProduct;
constexpr auto H = GeometryKind::HyperbolicProduct;
constexpr double kE = std::numbers::e;

const ApolloniusSpec kRatioTwo{H, {1, 0, 0}, {1.5, 1, -0.5}, 2.0};

// Point q on the geodesic p1 -> p2 with d(p1, q) = lambda d(q, p2), by
// bisection on the oracle distance.
Point ratio_point(const ApolloniusSpec& spec) {
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    const Point q = geodesic_interpolate(spec.geometry, spec.p1, spec.p2, mid);
    const double f = oracle::distance(spec.geometry, spec.p1, q) -
                     spec.lambda * oracle::distance(spec.geometry, q, spec.p2);
    (f < 0 ? lo : hi) = mid;
  }
  return geodesic_interpolate(spec.geometry, spec.p1, spec.p2, 0.5 * (lo + hi));
}

}  // namespace

TEST(Residual, FibreMidpoint) {
  const ApolloniusSpec spec{S, {1, 0, 0}, {kE * kE, 0, 0}, 1.0};
  EXPECT_NEAR(apollonius_residual(spec, {kE, 0, 0}), 0.0, 1e-14);
}

TEST(Residual, BaseReflectionSymmetry) {
  const ApolloniusSpec spec{S, {1, 0, 0}, {0, 1, 0}, 1.0};
  EXPECT_NEAR(apollonius_residual(spec, {std::sqrt(0.5), std::sqrt(0.5), 0}), 0.0, 1e-14);
}

TEST(Residual, H2RRatioTwoPointOnTheSurface) {
  const Point q = ratio_point(kRatioTwo);
  EXPECT_LE(std::abs(apollonius_residual(kRatioTwo, q)), 1e-8);
  EXPECT_LE(std::abs(distance_defect(kRatioTwo, q)), 1e-9);
}

TEST(Residual, EqualsFourTimesSquaredDistanceDefect) {
  std::mt19937_64 rng(43);
  for (GeometryKind g : {S, H}) {
    for (int k = 0; k < 200; ++k) {
      const ApolloniusSpec spec{g, oracle::random_point(g, rng), oracle::random_point(g, rng), 0.3 + 0.01 * k};
      const Point q = oracle::random_point(g, rng);
      const double d1 = oracle::distance(g, spec.p1, q);
      const double d2 = oracle::distance(g, q, spec.p2);
      const double expect = 4.0 * (d1 * d1 - spec.lambda * spec.lambda * d2 * d2);
      EXPECT_NEAR(apollonius_residual(spec, q), expect, 1e-8 * (1 + std::abs(expect)));
      EXPECT_NEAR(apollonius_residual_via_inversion(spec, q), expect, 1e-7 * (1 + std::abs(expect)));
      EXPECT_NEAR(distance_defect(spec, q), d1 - spec.lambda * d2, 1e-10);
    }
  }
}

TEST(Residual, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(47);
  for (GeometryKind g : {S, H}) {
    for (int k = 0; k < 100; ++k) {
      const ApolloniusSpec spec{g, oracle::random_point(g, rng), oracle::random_point(g, rng), 1.7};
      const Point q = oracle::random_point(g, rng);
      auto f = [&](const Point& x) {
        const double d1 = oracle::distance(g, spec.p1, x);
        const double d2 = oracle::distance(g, x, spec.p2);
        return 4.0 * (d1 * d1 - spec.lambda * spec.lambda * d2 * d2);
      };
      const Eigen::Vector3d fd = oracle::fd_gradient(f, q);
      EXPECT_LE((apollonius_gradient(spec, q) - fd).norm(), 1e-5 * (1 + fd.norm()));
    }
  }
}

TEST(Validate, Preconditions) {
  EXPECT_THROW(validate(ApolloniusSpec{S, {1, 0, 0}, {1, 0, 0}, 1.0}), GeometryError);
  EXPECT_THROW(validate(ApolloniusSpec{S, {1, 0, 0}, {2, 0, 0}, -1.0}), GeometryError);
  EXPECT_THROW(validate(ApolloniusSpec{H, {1, 1, 1}, {2, 0, 0}, 1.0}), GeometryError);
  EXPECT_THROW(validate(ApolloniusSpec{S, {1, 0, 0}, {2, 0, 0}, INFINITY}), GeometryError);
  EXPECT_NO_THROW(validate(kRatioTwo));
}

TEST(Mesh, S2RBisectorWithinTolerance) {
  const ApolloniusSpec spec{S, {1, 0, 0}, {2, 1, 1}, 1.0};
  Box box;
  box.lo.setConstant(-3);
  box.hi.setConstant(3);
  const MeshResult r = extract_isosurface(spec, box, {32, 32, 32});
  ASSERT_EQ(r.outcome, MeshOutcome::Ok);
  EXPECT_GT(r.mesh.triangles.size(), 100u);
  EXPECT_LE(r.max_distance_defect, r.tolerance);
  for (const Point& v : r.mesh.vertices) {
    EXPECT_LE(std::abs(oracle::distance(S, spec.p1, v) - oracle::distance(S, v, spec.p2)), r.tolerance);
  }
  EXPECT_LE(bisector_symmetry_defect(spec, r.mesh), r.tolerance);
}

TEST(Mesh, H2RRatioTwoStaysInsideTheCone) {
  Box box;
  box.lo = {0.05, -3, -3};
  box.hi = {4, 3, 3};
  const MeshResult r = extract_isosurface(kRatioTwo, box, {32, 32, 32});
  ASSERT_EQ(r.outcome, MeshOutcome::Ok);
  EXPECT_GT(r.skipped_cells, 0);
  for (const Point& v : r.mesh.vertices) EXPECT_TRUE(is_valid(H, v));
  EXPECT_LE(r.max_distance_defect, r.tolerance);
}

TEST(Mesh, EmptyFarFromTheSurface) {
  const ApolloniusSpec spec{S, {1, 0, 0}, {2, 1, 1}, 1.0};
  Box box;
  box.lo = {-0.1, -1.4, -1.4};
  box.hi = {0.1, -1.2, -1.2};
  // Box near the focus p1 side only; check the residual sign first.
  const double r0 = apollonius_residual(spec, {0.0, -1.3, -1.3});
  ASSERT_LT(r0, 0.0);
  const MeshResult r = extract_isosurface(spec, box, {8, 8, 8});
  EXPECT_EQ(r.outcome, MeshOutcome::Empty);
  EXPECT_TRUE(r.mesh.vertices.empty());
}

TEST(Mesh, RejectsCoarseResolution) {
  EXPECT_THROW(extract_isosurface(kRatioTwo, Box{}, {4, 4, 4}), GeometryError);
}

TEST(Mesh, ThreadCountDoesNotChangeTheResult) {
  MeshOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const MeshResult a = extract_isosurface(kRatioTwo, Box{{0.1, -2, -2}, {3, 2, 2}}, {16, 16, 16}, one);
  const MeshResult b = extract_isosurface(kRatioTwo, Box{{0.1, -2, -2}, {3, 2, 2}}, {16, 16, 16}, four);
  ASSERT_EQ(a.mesh.vertices.size(), b.mesh.vertices.size());
  ASSERT_EQ(a.mesh.triangles, b.mesh.triangles);
  for (std::size_t k = 0; k < a.mesh.vertices.size(); ++k) {
    EXPECT_EQ(a.mesh.vertices[k].vec(), b.mesh.vertices[k].vec());
  }
}

TEST(Obj, WritesOneBasedFaces) {
  SurfaceMesh mesh;
  mesh.vertices = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  mesh.triangles = {{0, 1, 2}};
  std::ostringstream os;
  write_obj(os, mesh);
  EXPECT_NE(os.str().find("v 1 0 0"), std::string::npos);
  EXPECT_NE(os.str().find("f 1 2 3"), std::string::npos);
}

TEST(Curve, Lambda1ZeroIsTheSharedVertex) {
  const Point a0{1, 0, 0}, a1{-1, -1, 1}, a2{2, 1, 0};
  const ApolloniusSpec s1{S, a0, a1, 0.0};
  const ApolloniusSpec s2{S, a2, a0, 1.0};
  TraceOptions options;
  options.box = Box{{-4, -4, -4}, {4, 4, 4}};
  const IntersectionCurve c = trace_intersection_curve(s1, s2, a0, options);
  EXPECT_TRUE(c.degenerate_point);
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_EQ(c.points[0].vec(), a0.vec());
}

TEST(Curve, PointsSatisfyBothRatios) {
  const Point a0{1, 0, 0}, a1{-1, -1, 1}, a2{2, 1, 0};
  const ApolloniusSpec s1{S, a0, a1, 0.9};
  const ApolloniusSpec s2{S, a2, a0, 1.1};
  const Box box{{-6, -6, -6}, {6, 6, 6}};
  const std::vector<Point> seeds = find_curve_seeds(s1, s2, box);
  ASSERT_FALSE(seeds.empty());
  TraceOptions options;
  options.box = box;
  const IntersectionCurve c = trace_intersection_curve(s1, s2, seeds.front(), options);
  ASSERT_GT(c.points.size(), 10u);
  for (const Point& y : c.points) {
    EXPECT_NEAR(oracle::distance(S, a0, y) / oracle::distance(S, y, a1), 0.9, 1e-6);
    EXPECT_NEAR(oracle::distance(S, a2, y) / oracle::distance(S, y, a0), 1.1, 1e-6);
    EXPECT_NEAR(oracle::distance(S, a2, y) / oracle::distance(S, y, a1), 0.99, 1e-6);
  }
}

TEST(Curve, RequiresSharedVertex) {
  const ApolloniusSpec s1{S, {1, 0, 0}, {2, 0, 0}, 1.0};
  const ApolloniusSpec s2{S, {0, 1, 0}, {0, 0, 1}, 1.0};
  EXPECT_THROW(trace_intersection_curve(s1, s2, {1, 1, 1}, TraceOptions{}), GeometryError);
}
