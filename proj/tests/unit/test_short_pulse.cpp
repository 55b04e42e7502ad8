#include <gtest/gtest.h>

#include <lightcone/lightcone.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "lightcone_acceptance/oracles.hpp"

namespace lightcone {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(ExpTracefree, Examples) {
  const Sym2 z = exp_tracefree({0, 0, 0});
  EXPECT_EQ(z.xx, 1.0);
  EXPECT_EQ(z.xy, 0.0);
  EXPECT_EQ(z.yy, 1.0);
  const Sym2 d = exp_tracefree({0.5, 0, -0.5});
  EXPECT_NEAR(d.xx, std::exp(0.5), 1e-15);
  EXPECT_NEAR(d.yy, std::exp(-0.5), 1e-15);
  EXPECT_THROW(exp_tracefree({1.0, 0.0, 0.0}), DomainError);
}

TEST(ExpTracefree, EigenOracleAndUnitDeterminant) {
  oracle::Rng rng(51);
  for (int n = 0; n < 1000; ++n) {
    const double a = rng.uniform(-3, 3);
    const double b = rng.uniform(-3, 3);
    const Sym2 m = exp_tracefree({a, b, -a});
    double ref[3];
    oracle::exp_sym2_eigen(a, b, -a, ref);
    const double scale = std::cosh(std::hypot(a, b));
    EXPECT_NEAR(m.xx, ref[0], 1e-13 * scale);
    EXPECT_NEAR(m.xy, ref[1], 1e-13 * scale);
    EXPECT_NEAR(m.yy, ref[2], 1e-13 * scale);
    EXPECT_NEAR(det(m), 1.0, 1e-13 * scale * scale);
  }
}

TEST(Profile, Errors) {
  EXPECT_THROW(PulseProfile::zero(0.0, 2.0), ConfigError);
  EXPECT_THROW(PulseProfile::zero(0.01, 1.0), ConfigError);
}

TEST(Energy, ZeroSeed) {
  const PulseProfile p = PulseProfile::zero(0.01, 2.0);
  EXPECT_EQ(energy_density(p, 0.005, 1.0, 0.0), 0.0);
  const GridPtr g = build_grid(GridMode::AxisymTruncated, 16, 1, 0.0);
  const ScalarField k = energy_per_solid_angle(p, g);
  for (double v : k.values()) EXPECT_EQ(v, 0.0);
}

TEST(Energy, LinearUniformClosedForm) {
  // psi = (sqrt(delta)/r0) A (ub/delta) diag(1,-1): e = A^2 / (4 r0^2 delta).
  SeparableSeed s;
  s.time = TimeShape::Linear;
  s.angular = AngularShape::Uniform;
  s.amplitude = 0.7;
  for (double delta : {0.1, 0.01, 0.001}) {
    const double r0 = 2.0;
    const PulseProfile p = PulseProfile::separable(s, delta, r0);
    const double expect = 0.49 / (4.0 * r0 * r0 * delta);
    EXPECT_NEAR(energy_density(p, 0.3 * delta, 1.0, 0.0), expect, 1e-12 * expect);
    const GridPtr g = build_grid(GridMode::AxisymTruncated, 16, 1, 0.0);
    const ScalarField k = energy_per_solid_angle(p, g);
    for (double v : k.values()) EXPECT_NEAR(v, 0.49 / (32.0 * kPi), 1e-12);
    const ScalarField focus = focusing_strength(k);
    for (std::size_t i = 0; i < k.size(); ++i) EXPECT_NEAR(focus[i], 8.0 * kPi * k[i], 1e-15);
  }
}

TEST(Energy, AnalyticMatchesFiniteDifference) {
  SeparableSeed s;
  s.mix = 0.4;
  s.amplitude = 2.0;
  const PulseProfile p = PulseProfile::separable(s, 0.05, 3.0);
  for (double ub : {0.01, 0.02, 0.035}) {
    for (double t : {0.02, 0.1, 0.15}) {
      const double a = energy_density(p, ub, t, 0.0, Differentiation::Analytic);
      const double f = energy_density(p, ub, t, 0.0, Differentiation::FiniteDifference);
      EXPECT_NEAR(a, f, 1e-8 * std::max(1.0, a));
    }
  }
}

TEST(Energy, DeltaIndependentAndLocal) {
  SeparableSeed s;
  s.cap_epsilon = 0.3;
  const GridPtr g = build_grid(GridMode::AxisymTruncated, 32, 1, 0.0);
  const ScalarField k1 = energy_per_solid_angle(PulseProfile::separable(s, 0.01, 2.0), g);
  const ScalarField k2 = energy_per_solid_angle(PulseProfile::separable(s, 0.001, 2.0), g);
  const ScalarField k3 = energy_per_solid_angle(PulseProfile::separable(s, 0.001, 5.0), g);
  for (std::size_t i = 0; i < g->size(); ++i) {
    EXPECT_NEAR(k1[i], k2[i], 0.02 * std::max(k1[i], 1e-12));
    EXPECT_NEAR(k2[i], k3[i], 1e-12 * std::max(k2[i], 1.0));
    if (g->theta_at(i) >= 0.6) {
      EXPECT_EQ(k1[i], 0.0);
    }
    if (g->theta_at(i) <= 0.3) {
      EXPECT_GT(k1[i], 0.0);
    }
  }
}

TEST(Energy, ThreadsDoNotChangeResults) {
  SeparableSeed s;
  const PulseProfile p = PulseProfile::separable(s, 0.01, 2.0);
  const GridPtr g = build_grid(GridMode::FullSphere, 16, 8, 0.0);
  EXPECT_EQ(energy_per_solid_angle(p, g, 64, 1).values(), energy_per_solid_angle(p, g, 64, 3).values());
  EXPECT_THROW(energy_per_solid_angle(p, g, 32), ConfigError);
}

TEST(Energy, TabulatedLinearSeedMatchesSeparable) {
  const auto path = std::filesystem::temp_directory_path() / "lightcone_seed_table.csv";
  {
    std::ofstream out(path);
    out << "s,theta,psi11,psi12\n";
    for (int is = 0; is <= 8; ++is) {
      for (double t : {0.0, 1.0, kPi}) out << is / 8.0 << ',' << t << ',' << 0.5 * is / 8.0 << ",0\n";
    }
  }
  const TabulatedSeed table = read_tabulated_seed(path.string());
  std::filesystem::remove(path);
  EXPECT_EQ(table.s.size(), 9u);
  EXPECT_EQ(table.theta.size(), 3u);
  SeparableSeed s;
  s.time = TimeShape::Linear;
  s.angular = AngularShape::Uniform;
  s.amplitude = 0.5;
  const PulseProfile a = PulseProfile::tabulated(table, 0.01, 2.0);
  const PulseProfile b = PulseProfile::separable(s, 0.01, 2.0);
  for (double ub : {0.002, 0.005, 0.008}) {
    EXPECT_NEAR(energy_density(a, ub, 0.7, 0.0), energy_density(b, ub, 0.7, 0.0), 1e-10);
  }
  EXPECT_THROW(read_tabulated_seed("/nonexistent/seed.csv"), IoError);
}

TEST(Raychaudhuri, NoShearClosedForm) {
  const RaychaudhuriResult r = integrate_raychaudhuri(2.0, [](double) { return 0.0; }, 0.5, 2000);
  EXPECT_NEAR(r.tr_chi, 1.0 / (0.5 + 0.25), 1e-12);
  EXPECT_FALSE(r.focused);
}

TEST(Raychaudhuri, ConstantShearClosedForm) {
  const double sigma = 3.0, x0 = 1.0, delta = 0.4;
  const double a = std::sqrt(2.0 * sigma);
  const double expect = a * std::tan(std::atan(x0 / a) - 0.5 * a * delta);
  const RaychaudhuriResult r = integrate_raychaudhuri(x0, [&](double) { return sigma; }, delta, 2000);
  EXPECT_NEAR(r.tr_chi, expect, 1e-8);
  EXPECT_NEAR(r.shear_integral, sigma * delta, 1e-12);
  EXPECT_LE(r.tr_chi, r.bound);
}

TEST(Raychaudhuri, Focusing) {
  const RaychaudhuriResult r = integrate_raychaudhuri(1.0, [](double) { return 400.0; }, 1.0, 4000);
  EXPECT_TRUE(r.focused);
  EXPECT_GT(r.focus_location, 0.0);
  EXPECT_LT(r.focus_location, 1.0);
}

TEST(Bounds, Examples) {
  EXPECT_NEAR(trapped_bound(-1.0, 0.0, 0.01), 2.0, 1e-15);
  EXPECT_NEAR(trapped_bound(-1.0, 1.5, 0.01), -1.0, 1e-15);
  EXPECT_NEAR(trapped_bound(-2.0, 1.0, 0.01), 0.5, 1e-15);
  EXPECT_NEAR(final_check(0.0, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(final_check(0.1, 1.0), 0.2 / 1.21, 1e-15);
  EXPECT_LT(final_check(0.1, 1.2), 0.0);
}

}  // namespace
}  // namespace lightcone
