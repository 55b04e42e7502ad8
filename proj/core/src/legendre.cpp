#include "lightcone/legendre.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "lightcone/errors.hpp"

namespace lightcone {

GaussLegendreRule gauss_legendre(std::size_t n) {
  if (n == 0) throw ConfigError("gauss_legendre: n must be positive");
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double jd = static_cast<double>(j);
        p1 = ((2.0 * jd - 1.0) * z * p2 - (jd - 1.0) * p3) / jd;
      }
      pp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussLegendreRuleWide gauss_legendre_wide(std::size_t n) {
  if (n == 0) throw ConfigError("gauss_legendre: n must be positive");
  using Real = long double;
  GaussLegendreRuleWide rule;
  rule.nodes.assign(n, 0.0L);
  rule.weights.assign(n, 0.0L);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    Real z = std::cos(std::numbers::pi_v<Real> * (static_cast<Real>(i) + 0.75L) /
                      (static_cast<Real>(n) + 0.5L));
    Real pp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      Real p1 = 1.0L;
      Real p2 = 0.0L;
      for (std::size_t j = 1; j <= n; ++j) {
        const Real p3 = p2;
        p2 = p1;
        const Real jd = static_cast<Real>(j);
        p1 = ((2.0L * jd - 1.0L) * z * p2 - (jd - 1.0L) * p3) / jd;
      }
      pp = static_cast<Real>(n) * (z * p1 - p2) / (z * z - 1.0L);
      const Real dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-19L) break;
    }
    const Real w = 2.0L / ((1.0L - z * z) * pp * pp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0L;
  return rule;
}

GaussLegendreRule gauss_legendre(std::size_t n, double a, double b) {
  GaussLegendreRule rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

void normalized_legendre_column(std::size_t m, std::size_t lmax, double x,
                                double sin_theta, std::span<double> out) {
  normalized_legendre_column_t<double>(m, lmax, x, sin_theta, out);
}

void normalized_legendre_dtheta(std::size_t m, std::size_t lmax, double x,
                                double sin_theta, std::span<const double> column,
                                std::span<double> out) {
  normalized_legendre_dtheta_t<double>(m, lmax, x, sin_theta, column, out);
}

double real_spherical_harmonic(int l, int m, double theta, double phi) {
  const std::size_t am = static_cast<std::size_t>(std::abs(m));
  if (l < 0 || am > static_cast<std::size_t>(l)) {
    throw DomainError("real_spherical_harmonic: need 0 <= |m| <= l");
  }
  using Real = long double;
  const std::size_t lu = static_cast<std::size_t>(l);
  std::vector<Real> column(lu - am + 1);
  const Real t = theta;
  normalized_legendre_column_t<Real>(am, lu, std::cos(t), std::sin(t), column);
  const Real p = column.back() / std::sqrt(2.0L * std::numbers::pi_v<Real>);
  if (m == 0) return static_cast<double>(p);
  const Real md = static_cast<Real>(am);
  const Real sq2 = std::numbers::sqrt2_v<Real>;
  const Real ph = phi;
  return static_cast<double>(m > 0 ? sq2 * p * std::cos(md * ph) : sq2 * p * std::sin(md * ph));
}

}  // namespace lightcone
