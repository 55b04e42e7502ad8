#include <gtest/gtest.h>

#include <lightcone/lightcone.hpp>

#include <cmath>
#include <numbers>

#include "lightcone_acceptance/oracles.hpp"

namespace lightcone {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(RectToDoubleNull, Examples) {
  const EventDoubleNull a = rect_to_double_null({0, 1, 0, 0});
  EXPECT_DOUBLE_EQ(a.u, -0.5);
  EXPECT_DOUBLE_EQ(a.v, 0.5);
  EXPECT_NEAR(a.theta, kPi / 2, 1e-15);
  EXPECT_NEAR(a.phi, 0.0, 1e-15);

  const EventDoubleNull b = rect_to_double_null({-2, 0, 2, 0});
  EXPECT_DOUBLE_EQ(b.u, -2.0);
  EXPECT_DOUBLE_EQ(b.v, 0.0);
  EXPECT_NEAR(b.theta, kPi / 2, 1e-15);
  EXPECT_NEAR(b.phi, kPi / 2, 1e-15);

  EXPECT_THROW(rect_to_double_null({1, 0, 0, 0}), ChartDegeneracyError);
}

TEST(DoubleNullToRect, InvertsExamples) {
  for (EventRect e : {EventRect{0, 1, 0, 0}, EventRect{-2, 0, 2, 0}}) {
    const EventRect r = double_null_to_rect(rect_to_double_null(e));
    EXPECT_NEAR(r.x0, e.x0, 1e-15);
    EXPECT_NEAR(r.x1, e.x1, 1e-15);
    EXPECT_NEAR(r.x2, e.x2, 1e-15);
    EXPECT_NEAR(r.x3, e.x3, 1e-15);
  }
}

TEST(DoubleNullToRect, RandomRoundTrip) {
  oracle::Rng rng(5);
  for (int n = 0; n < 10000; ++n) {
    EventRect e{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    if (std::hypot(e.x1, e.x2) < 1e-3) continue;
    const EventRect r = double_null_to_rect(rect_to_double_null(e));
    const double scale = std::max({1.0, std::abs(e.x0), std::hypot(e.x1, e.x2, e.x3)});
    ASSERT_NEAR(r.x0, e.x0, 1e-12 * scale);
    ASSERT_NEAR(r.x1, e.x1, 1e-12 * scale);
    ASSERT_NEAR(r.x2, e.x2, 1e-12 * scale);
    ASSERT_NEAR(r.x3, e.x3, 1e-12 * scale);
  }
}

TEST(ConePoint, UnitSphereAndSouthPole) {
  for (double t : {0.1, 1.0, 2.5}) {
    const EventRect e = cone_point(-1.0, t, 0.3);
    EXPECT_DOUBLE_EQ(e.x0, -1.0);
    EXPECT_NEAR(std::hypot(e.x1, e.x2, e.x3), 1.0, 1e-15);
  }
  const EventRect s = cone_point(-1.0, kPi, 0.0);
  EXPECT_NEAR(s.x0, -1.0, 1e-15);
  EXPECT_NEAR(s.x1, 0.0, 1e-15);
  EXPECT_NEAR(s.x3, -1.0, 1e-15);
}

TEST(ConePoint, ResidualIsRoundoff) {
  oracle::Rng rng(8);
  for (int n = 0; n < 1000; ++n) {
    const EventRect e = cone_point(-rng.uniform(0.01, 10.0), rng.uniform(0, kPi), rng.uniform(0, 2 * kPi));
    EXPECT_LE(std::abs(cone_residual(e)), 1e-13 * std::max(1.0, e.x0 * e.x0));
  }
}

TEST(CausalNorm, Examples) {
  EXPECT_EQ(causal_norm_sq({1, 0, 0, 0}), -1.0);
  EXPECT_EQ(causal_norm_sq({1, 0, 0, 1}), 0.0);
  EXPECT_EQ(causal_norm_sq({0, 0, 0, 1}), 1.0);
}

TEST(WrapPhi, Range) {
  EXPECT_NEAR(wrap_phi(-0.5), 2 * kPi - 0.5, 1e-15);
  EXPECT_NEAR(wrap_phi(7.0), 7.0 - 2 * kPi, 1e-15);
  EXPECT_GE(wrap_phi(-1e-300), 0.0);
  EXPECT_LT(wrap_phi(-1e-300), 2 * kPi);
}

}  // namespace
}  // namespace lightcone
