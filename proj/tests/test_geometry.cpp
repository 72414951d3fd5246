#include "oracles.hpp"

#include "thurston/geodesic.hpp"
#include "thurston/geometry.hpp"

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

TEST(Validity, OriginIsValidInH2R) { EXPECT_EQ(validate_point(H, {1, 0, 0}), Validity::Valid); }

TEST(Validity, OutsideConeInH2R) {
  EXPECT_EQ(validate_point(H, {1, 1, 1}), Validity::OutsideCone);
  EXPECT_THROW(require_valid(H, {1, 1, 1}), GeometryError);
}

TEST(Validity, LowerSheetInH2R) { EXPECT_EQ(validate_point(H, {-2, 0, 0}), Validity::NonPositiveX); }

TEST(Validity, ZeroNormInS2R) { EXPECT_EQ(validate_point(S, {0, 0, 0}), Validity::ZeroNorm); }

TEST(Validity, NonFinite) {
  EXPECT_EQ(validate_point(S, {std::nan(""), 0, 0}), Validity::NonFinite);
  EXPECT_EQ(validate_point(H, {INFINITY, 0, 0}), Validity::NonFinite);
}

TEST(Validity, AnyNonzeroPointIsValidInS2R) {
  EXPECT_TRUE(is_valid(S, {-3, 0.1, 0}));
  EXPECT_TRUE(is_valid(S, {0, 0, 1e-3}));
}

TEST(Geometry, ParseTags) {
  EXPECT_EQ(parse_geometry("s2r"), S);
  EXPECT_EQ(parse_geometry("h2r"), H);
  EXPECT_THROW(parse_geometry("e3"), GeometryError);
  EXPECT_EQ(to_string(S), "s2r");
  EXPECT_EQ(to_string(H), "h2r");
}

TEST(Geometry, NormIsNaNOutsideDomain) {
  EXPECT_DOUBLE_EQ(norm(H, {2, 1, 1}), std::sqrt(2.0));
  EXPECT_TRUE(std::isnan(norm(H, {1, 1, 1})));
}

TEST(Geometry, OmegaDomainChecks) {
  EXPECT_DOUBLE_EQ(omega(S, 0.0), kPi / 2);
  EXPECT_DOUBLE_EQ(omega(H, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(omega(S, 1.0 + 1e-12), 0.0);
  EXPECT_THROW(omega(S, 1.1), GeometryError);
  EXPECT_THROW(omega(H, 0.5), GeometryError);
}

TEST(Chart, GeographicOrigin) { expect_point(model_to_cartesian(S, {0, 0, 0}), {1, 0, 0}, 1e-15); }

TEST(Chart, CylindricalFibreShift) {
  expect_point(model_to_cartesian(H, {1, 0, 0}), {kE, 0, 0}, 1e-15);
}

TEST(Chart, QuarterTurn) { expect_point(model_to_cartesian(S, {0, kPi / 2, 0}), {0, 1, 0}, 1e-15); }

TEST(Chart, RangeChecks) {
  EXPECT_THROW(model_to_cartesian(S, {0, 4.0, 0}), GeometryError);
  EXPECT_THROW(model_to_cartesian(S, {0, 0, 2.0}), GeometryError);
  EXPECT_THROW(model_to_cartesian(H, {0, -1.0, 0}), GeometryError);
}

TEST(Chart, RoundTripAgainstOracleChart) {
  std::mt19937_64 rng(11);
  for (GeometryKind g : {S, H}) {
    for (int k = 0; k < 200; ++k) {
      const Point p = oracle::random_point(g, rng);
      const ModelCoords c = cartesian_to_model(g, p);
      const oracle::Chart o = oracle::chart(g, p);
      EXPECT_NEAR(c.t, o.t, 1e-12);
      if (g == S) {
        EXPECT_NEAR(c.a, o.a, 1e-12);
        EXPECT_NEAR(c.b, o.b, 1e-12);
      } else {
        EXPECT_NEAR(c.a, o.a, 1e-12);
        if (o.a > 1e-9) EXPECT_NEAR(std::remainder(c.b - o.b, 2 * kPi), 0.0, 1e-12);
      }
      expect_point(model_to_cartesian(g, c), p, 1e-12 * (1 + p.vec().norm()));
    }
  }
}

TEST(Isometry, IdentityAtOrigin) {
  const IsometryPair iso = translate_to_origin(S, {1, 0, 0});
  EXPECT_TRUE(iso.forward.matrix().isIdentity(1e-15));
}

TEST(Isometry, FibreTranslation) {
  const IsometryPair iso = translate_to_origin(S, {kE, 0, 0});
  expect_point(iso.forward.apply({kE, 0, 0}), {1, 0, 0}, 1e-15);
  const double d1 = oracle::distance(S, {kE, 0, 0}, {kE * kE, 0, 0});
  const double d2 = oracle::distance(S, {1, 0, 0}, iso.forward.apply({kE * kE, 0, 0}));
  EXPECT_NEAR(d1, d2, 1e-14);
  EXPECT_NEAR(d1, 1.0, 1e-14);
}

TEST(Isometry, PreservesDistancesOnRandomTriples) {
  std::mt19937_64 rng(5);
  for (GeometryKind g : {S, H}) {
    for (int k = 0; k < 50; ++k) {
      const Point anchor = g == H ? Point{std::cosh(1.0), std::sinh(1.0), 0} : oracle::random_point(g, rng);
      const IsometryPair iso = translate_to_origin(g, anchor);
      expect_point(iso.forward.apply(anchor), kOrigin, 1e-12);
      const Point a = oracle::random_point(g, rng);
      const Point b = oracle::random_point(g, rng);
      const Point c = oracle::random_point(g, rng);
      for (auto [p, q] : {std::pair{a, b}, std::pair{b, c}, std::pair{a, c}}) {
        EXPECT_NEAR(oracle::distance(g, iso.forward.apply(p), iso.forward.apply(q)),
                    oracle::distance(g, p, q), 1e-9);
      }
      expect_point(iso.inverse.apply(iso.forward.apply(a)), a, 1e-11 * (1 + a.vec().norm()));
    }
  }
}

TEST(Isometry, ComposeMatchesSequentialApplication) {
  const IsometryPair a = translate_to_origin(H, {2, 0.5, 0.3});
  const IsometryPair b = translate_to_origin(H, {1.5, -0.2, 0.9});
  const Point p{1.3, 0.4, -0.2};
  expect_point(a.forward.compose(b.forward).apply(p), a.forward.apply(b.forward.apply(p)), 1e-13);
}

TEST(PointReflection, IsAnInvolutiveIsometry) {
  std::mt19937_64 rng(3);
  for (GeometryKind g : {S, H}) {
    for (int k = 0; k < 50; ++k) {
      const Point m = oracle::random_point(g, rng);
      const Point p = oracle::random_point(g, rng);
      const Point q = oracle::random_point(g, rng);
      const Point rp = point_reflection(g, m, p);
      expect_point(point_reflection(g, m, rp), p, 1e-10 * (1 + p.vec().norm()));
      EXPECT_NEAR(oracle::distance(g, rp, point_reflection(g, m, q)), oracle::distance(g, p, q), 1e-9);
      EXPECT_NEAR(oracle::distance(g, m, rp), oracle::distance(g, m, p), 1e-9);
    }
  }
}
