#include "oracles.hpp"

#include "thurston/geodesic.hpp"

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

void expect_point(const Point& p, const Point& q, double tol) {
  EXPECT_NEAR(p.x, q.x, tol);
  EXPECT_NEAR(p.y, q.y, tol);
  EXPECT_NEAR(p.z, q.z, tol);
}

}  // namespace

TEST(GeodesicPoint, StartsAtOrigin) {
  for (GeometryKind g : {S, H}) expect_point(geodesic_point(g, 0.4, -0.3, 0.0), kOrigin, 0.0);
}

TEST(GeodesicPoint, FibreDirection) { expect_point(geodesic_point(S, 0, kPi / 2, 1), {kE, 0, 0}, 1e-14); }

TEST(GeodesicPoint, BaseArc) { expect_point(geodesic_point(S, kPi / 2, 0, kPi / 2), {0, 0, 1}, 1e-15); }

TEST(GeodesicPoint, UnitSpeedAgainstChartMetric) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-kPi, kPi), v(-1.4, 1.4), tau(0.2, 2.5);
  for (GeometryKind g : {S, H}) {
    for (int k = 0; k < 20; ++k) {
      const double uu = u(rng), vv = v(rng), tt = tau(rng);
      auto curve = [&](double s) { return geodesic_point(g, uu, vv, s); };
      EXPECT_NEAR(oracle::metric_length(g, curve, 0.0, tt, 400), tt, 1e-6);
    }
  }
}

TEST(Inversion, FibreAxisS2R) {
  const Inversion inv = invert_geodesic(S, {kE, 0, 0});
  EXPECT_EQ(inv.branch, InversionBranch::FibreAxis);
  EXPECT_NEAR(inv.params.u, 0.0, 1e-15);
  EXPECT_NEAR(inv.params.v, kPi / 2, 1e-15);
  EXPECT_NEAR(inv.params.tau, 1.0, 1e-15);
}

TEST(Inversion, YZeroS2R) {
  const Inversion inv = invert_geodesic(S, {0, 0, std::exp(kPi / 2)});
  EXPECT_EQ(inv.branch, InversionBranch::PolarAxis);
  EXPECT_NEAR(inv.params.u, kPi / 2, 1e-15);
  EXPECT_NEAR(inv.params.v, kPi / 4, 1e-15);
  EXPECT_NEAR(inv.params.tau, kPi / 2 * std::sqrt(2.0), 1e-14);
}

TEST(Inversion, FibreAxisH2R) {
  const Inversion inv = invert_geodesic(H, {2, 0, 0});
  EXPECT_NEAR(inv.params.u, 0.0, 1e-15);
  EXPECT_NEAR(inv.params.v, kPi / 2, 1e-15);
  EXPECT_NEAR(inv.params.tau, std::log(2.0), 1e-15);
}

TEST(Inversion, DownwardFibre) {
  const Inversion inv = invert_geodesic(H, {0.5, 0, 0});
  EXPECT_NEAR(inv.params.v, -kPi / 2, 1e-15);
  EXPECT_NEAR(inv.params.tau, std::log(2.0), 1e-15);
}

TEST(Inversion, OriginTargetThrows) {
  try {
    invert_geodesic(S, kOrigin);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::OriginTarget);
  }
}

TEST(Inversion, AntipodalFibreByContinuity) {
  const Inversion inv = invert_geodesic(S, {-kE, 0, 0});
  EXPECT_EQ(inv.branch, InversionBranch::AntipodalFibre);
  expect_point(geodesic_point(S, inv.params), {-kE, 0, 0}, 1e-13);
}

TEST(Inversion, RoundTripCoversBranches) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-kPi + 1e-3, kPi), v(-1.5, 1.5), tau(0.05, 3.0);
  for (GeometryKind g : {S, H}) {
    for (int k = 0; k < 400; ++k) {
      double uu = u(rng);
      double vv = v(rng);
      const double tt = tau(rng);
      switch (k % 4) {
        case 1: uu = k % 8 == 1 ? kPi / 2 : -kPi / 2; break;        // y = 0
        case 2: uu = k % 8 == 2 ? kPi / 2 : -kPi / 2; vv = 0; break;  // y = 0, unit base
        case 3: uu = 0; vv = k % 8 == 3 ? kPi / 2 : -kPi / 2; break;  // fibre axis
        default: break;
      }
      // Base arcs past pi wrap around on S2; keep them inside the chart.
      if (g == S && tt * std::cos(vv) >= kPi - 1e-3) continue;
      const Inversion inv = invert_geodesic(g, geodesic_point(g, uu, vv, tt));
      EXPECT_NEAR(inv.params.tau, tt, 1e-9);
      EXPECT_NEAR(inv.params.v, vv, 1e-9);
      if (std::abs(std::cos(vv)) > 1e-12) EXPECT_NEAR(std::remainder(inv.params.u - uu, 2 * kPi), 0.0, 1e-9);
    }
  }
}

TEST(Distance, KnownValues) {
  EXPECT_NEAR(distance(S, kOrigin, {kE, 0, 0}), 1.0, 1e-15);
  EXPECT_NEAR(distance(S, kOrigin, {0, 1, 0}), kPi / 2, 1e-15);
  EXPECT_NEAR(distance(H, kOrigin, {2, 0, 0}), std::log(2.0), 1e-15);
}

TEST(Distance, MatchesChartOracle) {
  std::mt19937_64 rng(29);
  for (GeometryKind g : {S, H}) {
    for (int k = 0; k < 500; ++k) {
      const Point p = oracle::random_point(g, rng);
      const Point q = oracle::random_point(g, rng);
      const double d = distance(g, p, q);
      EXPECT_NEAR(d, oracle::distance(g, p, q), 1e-11);
      EXPECT_NEAR(d, distance(g, q, p), 1e-14);
      EXPECT_NEAR(distance_via_inversion(g, p, q), d, 1e-9);
    }
  }
}

TEST(Distance, TriangleInequality) {
  std::mt19937_64 rng(31);
  for (GeometryKind g : {S, H}) {
    for (int k = 0; k < 500; ++k) {
      const Point a = oracle::random_point(g, rng);
      const Point b = oracle::random_point(g, rng);
      const Point c = oracle::random_point(g, rng);
      EXPECT_LE(distance(g, a, c), distance(g, a, b) + distance(g, b, c) + 1e-12);
    }
  }
}

TEST(Distance, SelfDistanceIsZero) {
  EXPECT_EQ(distance(H, {1.3, 0.2, 0.1}, {1.3, 0.2, 0.1}), 0.0);
  EXPECT_EQ(distance_via_inversion(S, {0.3, 0.2, 0.1}, {0.3, 0.2, 0.1}), 0.0);
}

TEST(Distance, RejectsInvalidPoints) {
  EXPECT_THROW(distance(H, {1, 1, 1}, kOrigin), GeometryError);
  EXPECT_THROW(distance(S, {0, 0, 0}, kOrigin), GeometryError);
}

TEST(Distance, SquaredGradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(37);
  for (GeometryKind g : {S, H}) {
    for (int k = 0; k < 100; ++k) {
      const Point p = oracle::random_point(g, rng);
      const Point q = oracle::random_point(g, rng);
      auto f = [&](const Point& x) { return oracle::distance(g, p, x) * oracle::distance(g, p, x); };
      const Eigen::Vector3d fd = oracle::fd_gradient(f, q);
      EXPECT_LE((distance_squared_gradient(g, p, q) - fd).norm(), 1e-6 * (1 + fd.norm()));
    }
  }
}

TEST(Interpolate, EndpointsAndEqualSplit) {
  std::mt19937_64 rng(41);
  for (GeometryKind g : {S, H}) {
    for (int k = 0; k < 100; ++k) {
      const Point a = oracle::random_point(g, rng);
      const Point b = oracle::random_point(g, rng);
      const double d = distance(g, a, b);
      expect_point(geodesic_interpolate(g, a, b, 0.0), a, 1e-12 * (1 + a.vec().norm()));
      expect_point(geodesic_interpolate(g, a, b, 1.0), b, 1e-10 * (1 + b.vec().norm()));
      const Point m = geodesic_midpoint(g, a, b);
      EXPECT_NEAR(distance(g, a, m), d / 2, 1e-9);
      EXPECT_NEAR(distance(g, m, b), d / 2, 1e-9);
      const Point q = geodesic_interpolate(g, a, b, 0.3);
      EXPECT_NEAR(distance(g, a, q), 0.3 * d, 1e-9);
    }
  }
}

TEST(Quadrature, UnitSpeed) {
  EXPECT_NEAR(arc_length_quadrature(S, 0, kPi / 2, 1, 10000), 1.0, 1e-8);
  EXPECT_NEAR(arc_length_quadrature(H, 0.3, 0.7, 2, 10000), 2.0, 1e-7);
  EXPECT_EQ(arc_length_quadrature(S, 1.0, 0.2, 0.0, 10000), 0.0);
  EXPECT_THROW(arc_length_quadrature(S, 1.0, 0.2, 1.0, 1), GeometryError);
}

TEST(Quadrature, AgreesWithChartMetric) {
  for (GeometryKind g : {S, H}) {
    const double u = 0.9, v = -0.4, tau = 2.2;
    auto curve = [&](double s) { return geodesic_point(g, u, v, s); };
    EXPECT_NEAR(arc_length_quadrature(g, u, v, tau, 2000), oracle::metric_length(g, curve, 0, tau, 2000),
                1e-6);
  }
}
