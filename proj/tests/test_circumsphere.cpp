#include "oracles.hpp"

#include "thurston/circumsphere.hpp"
#include "thurston/geodesic.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace thurston;

namespace {

constexpr auto S = GeometryKind::SphereProduct;
constexpr auto H = GeometryKind::HyperbolicProduct;

struct Case {
  GeometryKind g;
  Tetrahedron t;
};

const Case kS2rTetB{S, {{Point{1, 0, 0}, Point{2, 2, 3}, Point{3, 1, 0}, Point{4, -1, 2}}}};
const Case kH2rTetA{H, {{Point{1, 0, 0}, Point{1.5, 1, -1}, Point{1, 0.5, 0}, Point{1, 0.5, 0.5}}}};
const Case kH2rTetB{H, {{Point{1, 0, 0}, Point{0.9, 0.12, -0.1}, Point{1.1, 0.2, 0}, Point{0.8, -0.1, 0.05}}}};

double spread(GeometryKind g, const Tetrahedron& t, const Point& c) {
  double lo = INFINITY, hi = 0.0;
  for (const Point& v : t.vertices) {
    const double d = oracle::distance(g, v, c);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi - lo;
}

}  // namespace

TEST(Circumsphere, CentersAreEquidistantUnderTheOracle) {
  for (const Case& c : {kS2rTetB, kH2rTetA, kH2rTetB}) {
    const CircumsphereResult r = circumscribed_sphere(c.g, c.t);
    ASSERT_EQ(r.classification, CenterClass::ProperSphere);
    ASSERT_TRUE(r.radius.has_value());
    EXPECT_LE(spread(c.g, c.t, r.center), 1e-9);
    EXPECT_NEAR(oracle::distance(c.g, c.t.vertices[0], r.center), *r.radius, 1e-9);
    EXPECT_TRUE(r.report.converged);
  }
}

TEST(Circumsphere, VertexOrderDoesNotMatter) {
  for (const Case& c : {kS2rTetB, kH2rTetB}) {
    const CircumsphereResult base = circumscribed_sphere(c.g, c.t);
    std::array<int, 4> order{0, 1, 2, 3};
    int checked = 0;
    while (std::next_permutation(order.begin(), order.end()) && checked < 8) {
      Tetrahedron t;
      for (int k = 0; k < 4; ++k) t.vertices[k] = c.t.vertices[order[k]];
      const CircumsphereResult r = circumscribed_sphere(c.g, t);
      EXPECT_LE((r.center.vec() - base.center.vec()).norm(), 1e-8);
      ++checked;
    }
  }
}

TEST(Circumsphere, EquivariantUnderIsometries) {
  const IsometryPair iso = translate_to_origin(H, {1.2, 0.3, -0.4});
  const CircumsphereResult base = circumscribed_sphere(kH2rTetB.g, kH2rTetB.t);
  Tetrahedron moved;
  for (int k = 0; k < 4; ++k) moved.vertices[k] = iso.forward.apply(kH2rTetB.t.vertices[k]);
  const CircumsphereResult r = circumscribed_sphere(H, moved);
  EXPECT_NEAR(*r.radius, *base.radius, 1e-9);
  const Point expected = iso.forward.apply(base.center);
  EXPECT_LE((r.center.vec() - expected.vec()).norm(), 1e-8);
}

TEST(Circumsphere, ResidualVanishesAtTheCenter) {
  const CircumsphereResult r = circumscribed_sphere(kH2rTetA.g, kH2rTetA.t);
  const numerics::Vector f = circumsphere_residual(kH2rTetA.g, kH2rTetA.t, r.center.vec());
  EXPECT_LE(f.lpNorm<Eigen::Infinity>(), 1e-10);
  const numerics::Vector bad = circumsphere_residual(H, kH2rTetA.t, Eigen::Vector3d(1, 2, 2));
  EXPECT_TRUE(std::isnan(bad[0]));
}

TEST(Circumsphere, DegenerateTetrahedra) {
  Tetrahedron coincident{{Point{1, 0, 0}, Point{1, 0, 0}, Point{2, 1, 0}, Point{1, 1, 1}}};
  EXPECT_THROW(circumscribed_sphere(S, coincident), GeometryError);
  // Three points on one fibre geodesic.
  Tetrahedron collinear{{Point{1, 0, 0}, Point{2, 0, 0}, Point{4, 0, 0}, Point{1, 1, 1}}};
  EXPECT_THROW(validate(S, collinear), GeometryError);
}

TEST(Classify, H2RCenters) {
  EXPECT_EQ(classify_center(H, {1, 0.2, 0.1}, 1.0), CenterClass::ProperSphere);
  EXPECT_EQ(classify_center(H, {1, 2, 0}, std::nullopt), CenterClass::H2rOuterCenter);
  EXPECT_EQ(classify_center(H, {1, 1, 0}, std::nullopt), CenterClass::H2rIdealCenter);
  EXPECT_EQ(to_string(CenterClass::H2rIdealCenter), "h2r_ideal_center");
}

TEST(Classify, S2RRadius) {
  EXPECT_EQ(classify_center(S, {1, 0, 0}, 1.0), CenterClass::ProperSphere);
  EXPECT_EQ(classify_center(S, {1, 0, 0}, 3.5), CenterClass::S2rRadiusExceedsPi);
}

TEST(Circumsphere, RandomTetrahedraInS2R) {
  std::mt19937_64 rng(53);
  int proper = 0;
  for (int k = 0; k < 30; ++k) {
    Tetrahedron t;
    for (Point& v : t.vertices) v = oracle::random_point(S, rng);
    try {
      const CircumsphereResult r = circumscribed_sphere(S, t);
      if (r.classification == CenterClass::ProperSphere) {
        ++proper;
        EXPECT_LE(spread(S, t, r.center), 1e-8);
      }
    } catch (const GeometryError& e) {
      EXPECT_TRUE(e.code() == ErrorCode::NonConvergence || e.code() == ErrorCode::Degenerate);
    }
  }
  EXPECT_GT(proper, 15);
}
