#include "lightcone/greens.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lightcone/errors.hpp"
#include "lightcone/section_geometry.hpp"
#include "lightcone/sphere_ops.hpp"

namespace lightcone {
namespace {

constexpr double kPi = std::numbers::pi;

void check_theta(double theta) {
  if (!(theta > 0.0 && theta <= kPi)) throw DomainError("theta must lie in (0, pi]");
}

// Value at theta = 0 of the expansion with coefficients a_l0 scaled by fac(l).
template <class Fac>
double pole_sum(const SpectralCoeffs& c, Fac&& fac) {
  double s = 0.0;
  for (std::size_t l = 0; l <= c.lmax; ++l) {
    const double ld = static_cast<double>(l);
    s += fac(ld) * c.a[0][l] * std::sqrt((2.0 * ld + 1.0) / 2.0);
  }
  return s;
}

double pairing_impl(const ScalarField& g, double g_pole) {
  const SphereGrid& grid = g.grid();
  const std::vector<double>& w = grid.quad_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    s += w[i] * greens_w(grid.theta_at(i)) * (g[i] - g_pole);
  }
  return s - 4.0 * kPi * g_pole;
}

}  // namespace

double greens_w(double theta) {
  check_theta(theta);
  return 2.0 * std::log(std::sin(0.5 * theta));
}

double conformal_factor(double theta) {
  check_theta(theta);
  const double s = std::sin(0.5 * theta);
  return 1.0 / (s * s);
}

double pairing_with_w(const ScalarField& g) {
  if (g.grid().mode() != GridMode::FullSphere) {
    throw UsageError("pairing_with_w requires a FullSphere grid");
  }
  return pairing_impl(g, north_pole_value(g));
}

DistributionalResidual distributional_residual(const ScalarField& phi) {
  if (phi.grid().mode() != GridMode::FullSphere) {
    throw UsageError("distributional_residual requires a FullSphere grid");
  }
  const SpectralCoeffs c = analyze(phi);
  const double lap_pole = pole_sum(c, [](double l) { return -l * (l + 1.0); });
  const ScalarField lap = laplacian(phi);

  DistributionalResidual r;
  r.pole_value = pole_sum(c, [](double) { return 1.0; });
  r.pairing = pairing_impl(lap, lap_pole);
  r.phi_integral = integrate(phi);
  r.residual = std::abs(r.pairing + r.phi_integral - 4.0 * kPi * r.pole_value);
  return r;
}

RefinementStudy refinement_study(const std::function<double(double, double)>& phi,
                                  const std::vector<std::size_t>& levels, std::size_t n_phi,
                                  double floor) {
  RefinementStudy out;
  for (std::size_t n : levels) {
    const GridPtr g = build_grid(GridMode::FullSphere, n, n_phi, 0.0);
    out.n_theta.push_back(n);
    out.residual.push_back(distributional_residual(ScalarField::sample(g, phi)).residual);
  }
  out.monotone = true;
  for (std::size_t k = 1; k < out.residual.size(); ++k) {
    const bool improves = out.residual[k] < out.residual[k - 1];
    const bool converged = out.residual[k] <= floor;
    if (!(improves || converged)) out.monotone = false;
  }
  return out;
}

EventRect embed_marginal_section(double theta, double phi) {
  if (theta == 0.0) {
    throw BlowUpError("the marginal section goes to infinity at theta = 0");
  }
  check_theta(theta);
  const double one_minus_cos = 2.0 * std::pow(std::sin(0.5 * theta), 2);
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  return EventRect{-2.0 / one_minus_cos, 2.0 * st * std::cos(phi) / one_minus_cos,
                   2.0 * st * std::sin(phi) / one_minus_cos, 2.0 * ct / one_minus_cos};
}

MarginalSurfaceCheck marginal_surface_check(const GridPtr& grid) {
  if (grid->mode() != GridMode::AxisymTruncated) {
    throw UsageError("marginal surface checks need an AxisymTruncated grid");
  }
  if (!(grid->theta_min() > 0.0)) {
    throw DomainError("the marginal section needs theta_min > 0");
  }
  const ScalarField w = ScalarField::sample(grid, [](double t, double) { return greens_w(t); });
  const ScalarField f = ScalarField::sample(grid, [](double t, double) { return conformal_factor(t); });
  const ScalarField lap_w = laplacian(w);
  const ScalarField dw2 = gradient_sq(w);
  const SectionSpec spec = make_section(f);
  const NullExpansions e = null_expansions(spec);
  const ScalarField k = gauss_curvature(spec);
  const ScalarField res = gauss_residual(spec);

  MarginalSurfaceCheck out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t = grid->theta_at(i);
    const double cot_half = 1.0 / std::tan(0.5 * t);
    out.laplacian_w_error = std::max(out.laplacian_w_error, std::abs(lap_w[i] + 1.0));
    out.gradient_sq_error = std::max(out.gradient_sq_error, std::abs(dw2[i] - cot_half * cot_half));
    out.tr_chibar_error =
        std::max(out.tr_chibar_error, std::abs(e.tr_chibar[i] - (std::cos(t) - 1.0)));
  }
  out.tr_chi_sup = e.tr_chi.sup_norm();
  out.K_sup = k.sup_norm();
  out.gauss_residual_sup = res.sup_norm();
  return out;
}

double flatness_check(const GridPtr& grid) {
  if (grid->mode() != GridMode::AxisymTruncated) {
    throw UsageError("flatness_check needs an AxisymTruncated grid");
  }
  const ScalarField f = ScalarField::sample(grid, [](double t, double) { return conformal_factor(t); });
  return gauss_curvature(make_section(f)).sup_norm();
}

}  // namespace lightcone
