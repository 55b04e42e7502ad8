#include "lightcone_acceptance/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lightcone::oracle {
namespace {

constexpr double kPi = std::numbers::pi;

double bump(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

double cutoff(double x) {
  const double a = bump(2.0 - x);
  const double b = bump(x - 1.0);
  return a / (a + b);
}

double green(double theta) { return 2.0 * std::log(std::sin(0.5 * theta)); }

double log_f(double eps, double theta) {
  const double outer = -(1.0 + eps) * green(theta);
  if (theta >= 2.0 * eps) return outer;
  const double inner = -(1.0 + eps) * green(eps);
  if (theta <= eps) return inner;
  const double g = cutoff(theta / eps);
  return (1.0 - g) * outer + g * inner;
}

}  // namespace

double spherical_harmonic(int l, int m, double theta, double phi) {
  const unsigned am = static_cast<unsigned>(std::abs(m));
  // std::sph_legendre carries the (-1)^m Condon-Shortley factor; drop it.
  const double p = std::sph_legendre(static_cast<unsigned>(l), am, theta) * (am % 2 ? -1.0 : 1.0);
  if (m == 0) return p;
  const double s = std::numbers::sqrt2 * p;
  return m > 0 ? s * std::cos(am * phi) : s * std::sin(am * phi);
}

KEpsOracle k_eps_dense(double eps, int n) {
  const double h = 2.0 * eps / n;
  KEpsOracle best{-1e300, 0.0};
  double lm = log_f(eps, 0.0);
  double l0 = log_f(eps, h);
  for (int j = 1; j <= n; ++j) {
    const double t = j * h;
    const double lp = log_f(eps, t + h);
    const double lap = (lp - 2.0 * l0 + lm) / (h * h) + (lp - lm) / (2.0 * h) / std::tan(t);
    const double v = std::exp(l0) * (1.0 - lap);
    if (v > best.value) best = {v, t};
    lm = l0;
    l0 = lp;
  }
  return best;
}

double f_eps_at_pole(double eps) { return std::pow(2.0 / (1.0 - std::cos(eps)), 1.0 + eps); }

void exp_sym2_eigen(double xx, double xy, double yy, double out[3]) {
  Eigen::Matrix2d m;
  m << xx, xy, xy, yy;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
  const Eigen::Matrix2d e = es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
                            es.eigenvectors().transpose();
  out[0] = e(0, 0);
  out[1] = e(0, 1);
  out[2] = e(1, 1);
}

ScalarField random_bandlimited(Rng& rng, const GridPtr& grid, int lmax, double lo, double hi) {
  struct Term {
    int l, m;
    double c;
  };
  std::vector<Term> terms;
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) terms.push_back({l, m, rng.uniform(-1.0, 1.0) / (1.0 + l)});
  }
  // The theta factor only changes between rows, so cache it.
  std::vector<double> p(terms.size());
  double last = std::numeric_limits<double>::quiet_NaN();
  const ScalarField g = ScalarField::sample(grid, [&](double t, double ph) {
    if (t != last) {
      for (std::size_t k = 0; k < terms.size(); ++k) {
        p[k] = spherical_harmonic(terms[k].l, std::abs(terms[k].m), t, 0.0);
      }
      last = t;
    }
    double v = 0.0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const int m = terms[k].m;
      const double az = m == 0 ? 1.0 : m > 0 ? std::cos(m * ph) : std::sin(-m * ph);
      v += terms[k].c * p[k] * az;
    }
    return v;
  });
  const double gmin = g.min();
  const double span = g.max() - gmin;
  return g.map([&](double v) { return lo + (hi - lo) * (v - gmin) / span; });
}

HyperplaneDraw random_hyperplane(Rng& rng) {
  HyperplaneDraw d;
  d.a.a0 = rng.uniform(-1.0, 1.0);
  d.a.a1 = rng.uniform(-1.0, 1.0);
  d.a.a2 = rng.uniform(-1.0, 1.0);
  d.a.a3 = rng.uniform(-1.0, 1.0);
  d.c = rng.uniform(-1.0, 1.0);
  return d;
}

}  // namespace lightcone::oracle
