#include <gtest/gtest.h>

#include <lightcone/lightcone.hpp>

#include <cmath>
#include <numbers>

#include "lightcone_acceptance/oracles.hpp"

namespace lightcone {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(GreensW, ClosedForms) {
  EXPECT_NEAR(greens_w(kPi), 0.0, 1e-16);
  EXPECT_NEAR(conformal_factor(kPi / 2), 2.0, 1e-15);
  for (double t : {0.01, 0.5, 1.0, 2.0, 3.0}) {
    EXPECT_NEAR(conformal_factor(t) * 2.0 * std::pow(std::sin(0.5 * t), 2), 2.0, 1e-14);
    EXPECT_NEAR(std::exp(-greens_w(t)), conformal_factor(t), 1e-12 * conformal_factor(t));
  }
}

TEST(Pairing, WCosClosedForm) {
  // int w cos dA = 2 pi * 2 int_0^1 (1 - 2s) log s ds * 2 = -2 pi
  const GridPtr g = build_grid(GridMode::FullSphere, 512, 1, 0.0);
  const double v = pairing_with_w(ScalarField::sample(g, [](double t, double) { return std::cos(t); }));
  EXPECT_NEAR(v, -2.0 * kPi, 1e-6);
}

TEST(Distributional, ConstantIsExact) {
  const GridPtr g = build_grid(GridMode::FullSphere, 64, 1, 0.0);
  EXPECT_LE(distributional_residual(ScalarField::constant(g, 1.0)).residual, 1e-12);
}

TEST(Distributional, RefinementDecreases) {
  const RefinementStudy s = refinement_study(
      [](double t, double p) { return oracle::spherical_harmonic(4, 0, t, p); }, {128, 256, 512});
  EXPECT_TRUE(s.monotone);
  EXPECT_LE(s.residual.back(), 1e-3);
  ASSERT_EQ(s.n_theta.size(), 3u);
}

TEST(Distributional, CosTest) {
  const GridPtr g = build_grid(GridMode::FullSphere, 512, 1, 0.0);
  const DistributionalResidual r =
      distributional_residual(ScalarField::sample(g, [](double t, double) { return std::cos(t); }));
  EXPECT_LE(r.residual, 1e-3);
  EXPECT_NEAR(r.pole_value, 1.0, 1e-12);
  EXPECT_NEAR(r.phi_integral, 0.0, 1e-12);
}

TEST(EmbedMarginal, Examples) {
  const EventRect s = embed_marginal_section(kPi, 0.3);
  EXPECT_NEAR(s.x0, -1.0, 1e-15);
  EXPECT_NEAR(s.x1, 0.0, 1e-15);
  EXPECT_NEAR(s.x2, 0.0, 1e-15);
  EXPECT_NEAR(s.x3, -1.0, 1e-15);
  const EventRect e = embed_marginal_section(kPi / 2, 0.0);
  EXPECT_NEAR(e.x0, -2.0, 1e-15);
  EXPECT_NEAR(e.x1, 2.0, 1e-15);
  EXPECT_NEAR(e.x2, 0.0, 1e-15);
  EXPECT_NEAR(e.x3, 0.0, 1e-15);
  EXPECT_THROW(embed_marginal_section(0.0, 0.0), BlowUpError);
}

TEST(EmbedMarginal, LiesInNullPlaneAndCone) {
  oracle::Rng rng(41);
  for (int n = 0; n < 1000; ++n) {
    const EventRect x = embed_marginal_section(rng.uniform(0.05, kPi), rng.uniform(0, 2 * kPi));
    const double scale = x.x0 * x.x0;
    EXPECT_NEAR(x.x0 + x.x3, -2.0, 1e-13 * std::abs(x.x0));
    EXPECT_NEAR(cone_residual(x), 0.0, 1e-13 * scale);
  }
}

TEST(MarginalSurface, CheckAndFlatness) {
  const MarginalSurfaceCheck m = marginal_surface_check(build_grid(GridMode::AxisymTruncated, 256, 1, 0.2));
  EXPECT_LE(m.laplacian_w_error, 1e-8);
  EXPECT_LE(m.tr_chi_sup, 1e-8);
  EXPECT_LE(m.tr_chibar_error, 1e-10);
  EXPECT_LE(m.K_sup, 1e-8);
  EXPECT_LE(flatness_check(build_grid(GridMode::AxisymTruncated, 256, 1, 0.2)), 1e-8);
  EXPECT_LE(flatness_check(build_grid(GridMode::AxisymTruncated, 256, 1, 0.5)), 1e-9);
}

TEST(MarginalSurface, AgreesWithNullPlaneReport) {
  const TrichotomyReport r = trichotomy_report(make_hyperplane({1, 0, 0, 1}, -2));
  const double flat = flatness_check(build_grid(GridMode::AxisymTruncated, 256, 1, 0.1));
  EXPECT_LE(std::abs(r.K_mean), 1e-8);
  EXPECT_LE(flat, 1e-7);
}

}  // namespace
}  // namespace lightcone
