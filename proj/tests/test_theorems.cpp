#include "oracles.hpp"

#include "thurston/base_plane.hpp"
#include "thurston/geodesic.hpp"
#include "thurston/theorems.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace thurston;

namespace {

constexpr auto S = GeometryKind::SphereProduct;
constexpr auto H = GeometryKind::HyperbolicProduct;
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

// On S2 the three points must fit in an open half great circle: both arcs
// from p to the endpoints stay below pi.
bool within_chart(GeometryKind g, const Point& a, const Point& b, double f) {
  if (g == H) return true;
  const double arc = base_distance(g, project_to_base(g, a), project_to_base(g, b));
  return std::max(std::abs(f), std::abs(1.0 - f)) * arc < kPi - 0.05;
}

}  // namespace

TEST(Locate, SignedArcLength) {
  const Point a{1, 0, 0}, b{2, 1, 0.5};
  const double d = oracle::distance(H, a, b);
  const GeodesicLocation mid = locate_on_geodesic(H, a, b, geodesic_interpolate(H, a, b, 0.5));
  EXPECT_NEAR(mid.sigma, d / 2, 1e-10);
  EXPECT_NEAR(mid.tau, d, 1e-12);
  const GeodesicLocation behind = locate_on_geodesic(H, a, b, geodesic_interpolate(H, a, b, -0.4));
  EXPECT_NEAR(behind.sigma, -0.4 * d, 1e-10);
  EXPECT_FALSE(on_geodesic(H, a, b, {1.5, -0.3, 0.2}));
  EXPECT_THROW(locate_on_geodesic(H, a, b, {1.5, -0.3, 0.2}), GeometryError);
  EXPECT_THROW(locate_on_geodesic(H, a, a, b), GeometryError);
}

TEST(GeneralRatio, MidpointIsOne) {
  std::mt19937_64 rng(59);
  for (GeometryKind g : {S, H}) {
    for (int k = 0; k < 20; ++k) {
      const Point a = oracle::random_point(g, rng), b = oracle::random_point(g, rng);
      EXPECT_NEAR(simple_ratio_general(g, a, geodesic_midpoint(g, a, b), b), 1.0, 1e-9);
    }
  }
}

TEST(GeneralRatio, SineRatio) {
  const double u = 0.4, v = 0.6;
  const double cv = std::cos(v);
  const Point a = kOrigin;
  const Point p = geodesic_point(S, u, v, (kPi / 3) / cv);
  const Point b = geodesic_point(S, u, v, (kPi / 2) / cv);
  EXPECT_NEAR(simple_ratio_general(S, a, p, b), std::sqrt(3.0), 1e-10);
  EXPECT_NEAR(simple_ratio_general(S, a, p, b),
              base_simple_ratio(S, project_to_base(S, a), project_to_base(S, p), project_to_base(S, b)),
              1e-10);
}

TEST(GeneralRatio, SwapRelation) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> s(-0.8, 1.8);
  for (GeometryKind g : {S, H}) {
    for (int k = 0; k < 50; ++k) {
      const Point a = oracle::random_point(g, rng), b = oracle::random_point(g, rng);
      const double f = s(rng);
      if (std::abs(f) < 0.05 || std::abs(f - 1) < 0.05 || !within_chart(g, a, b, f)) continue;
      const Point p = geodesic_interpolate(g, a, b, f);
      EXPECT_NEAR(simple_ratio_general(g, a, p, b) * simple_ratio_general(g, b, p, a), 1.0, 1e-9);
    }
  }
}

TEST(GeneralRatio, FibreGeodesicRejected) {
  try {
    simple_ratio_general(S, {1, 0, 0}, {2, 0, 0}, {3, 0, 0});
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::FibreGeodesic);
  }
  EXPECT_TRUE(is_fibre_like(S, {1, 0, 0}, {2, 0, 0}));
  EXPECT_FALSE(is_fibre_like(S, {1, 0, 0}, {2, 1, 0}));
}

TEST(FibreRatio, Values) {
  EXPECT_NEAR(simple_ratio_fibre(S, {1, 0, 0}, {kE, 0, 0}, {kE * kE * kE, 0, 0}), 0.5, 1e-12);
  EXPECT_NEAR(simple_ratio_fibre(S, {1, 0, 0}, {kE, 0, 0}, {kE * kE, 0, 0}), 1.0, 1e-12);
  EXPECT_LT(simple_ratio_fibre(S, {1, 0, 0}, {kE * kE * kE, 0, 0}, {kE, 0, 0}), -1.0);
}

TEST(ProjectionEquality, GeneralRatioEqualsBaseRatio) {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> s(-0.9, 1.9);
  int checked = 0;
  for (GeometryKind g : {S, H}) {
    for (int k = 0; k < 200; ++k) {
      const Point a = oracle::random_point(g, rng), b = oracle::random_point(g, rng);
      if (is_fibre_like(g, a, b, 1e-3)) continue;
      const double f = s(rng);
      if (std::abs(f) < 0.02 || std::abs(f - 1) < 0.02 || !within_chart(g, a, b, f)) continue;
      const Point p = geodesic_interpolate(g, a, b, f);
      const double base = base_simple_ratio(g, project_to_base(g, a), project_to_base(g, p), project_to_base(g, b));
      EXPECT_NEAR(simple_ratio_general(g, a, p, b), base, 1e-9 * (1 + std::abs(base)));
      ++checked;
    }
  }
  EXPECT_GT(checked, 300);
}

TEST(Ceva, RandomSuites) {
  for (GeometryKind g : {S, H}) {
    for (TriangleKind kind : {TriangleKind::General, TriangleKind::Fibre}) {
      const SuiteReport r = run_ceva_suite(g, kind, 40, 100);
      EXPECT_EQ(r.count, 40);
      EXPECT_LE(r.max_deviation, 1e-8);
    }
  }
}

TEST(Menelaus, RandomSuites) {
  for (GeometryKind g : {S, H}) {
    for (TriangleKind kind : {TriangleKind::General, TriangleKind::Fibre}) {
      const SuiteReport r = run_menelaus_suite(g, kind, 40, 200);
      EXPECT_LE(r.max_deviation, 1e-8);
    }
  }
}

TEST(Ceva, ConfigPointsLieOnTheirSides) {
  std::mt19937_64 rng(71);
  for (GeometryKind g : {S, H}) {
    const CevaConfig c = random_ceva_config(g, TriangleKind::General, rng);
    const auto& v = c.triangle.v;
    EXPECT_TRUE(on_geodesic(g, v[0], v[1], c.p, 1e-7));
    EXPECT_TRUE(on_geodesic(g, v[1], v[2], c.q, 1e-7));
    EXPECT_TRUE(on_geodesic(g, v[2], v[0], c.r, 1e-7));
    // The cevians meet only after central projection to the base surface.
    EXPECT_TRUE(on_geodesic(g, v[0], c.q, c.t, 1e-7));
    const BasePoint t = project_to_base(g, c.t);
    for (auto [x, y] : {std::pair{v[1], c.r}, std::pair{v[2], c.p}}) {
      const BasePoint bx = project_to_base(g, x), by = project_to_base(g, y);
      EXPECT_NEAR(base_triple_product(bx, by, t), 0.0, 1e-9 * bx.v.norm() * by.v.norm() * t.v.norm());
    }
  }
}

TEST(Ceva, PointOnASideIsRejected) {
  std::mt19937_64 rng(73);
  CevaConfig c = random_ceva_config(S, TriangleKind::General, rng);
  c.t = c.p;
  EXPECT_THROW(ceva_product(c), GeometryError);
}

TEST(Menelaus, TransversalThroughAVertexIsRejected) {
  std::mt19937_64 rng(79);
  MenelausConfig c = random_menelaus_config(H, TriangleKind::General, rng);
  c.p = c.triangle.a1();
  EXPECT_THROW(menelaus_product(c), GeometryError);
}

TEST(Menelaus, SignPattern) {
  std::mt19937_64 rng(83);
  for (int k = 0; k < 20; ++k) {
    const MenelausConfig c = random_menelaus_config(S, TriangleKind::General, rng);
    const TheoremProduct p = menelaus_product(c);
    int positive = 0;
    for (double r : p.ratios) positive += r > 0;
    EXPECT_TRUE(positive == 0 || positive == 2);
    EXPECT_LT(p.product, 0.0);
  }
}
