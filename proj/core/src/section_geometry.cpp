#include "lightcone/section_geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lightcone/errors.hpp"
#include "lightcone/sphere_ops.hpp"

namespace lightcone {
namespace {

void check_tail(const ScalarField& f, double tol) {
  const SpectralCoeffs c = analyze(f);
  double lead = 0.0;
  double tail = 0.0;
  for (std::size_t m = 0; m <= c.mmax; ++m) {
    for (std::size_t k = 0; k < c.a[m].size(); ++k) {
      const double v = std::max(std::abs(c.a[m][k]), std::abs(c.b[m][k]));
      lead = std::max(lead, v);
      if (m + k + 2 > c.lmax) tail = std::max(tail, v);
    }
  }
  if (tail > tol * lead) {
    std::ostringstream os;
    os << "section function is not resolved: trailing spectral coefficients reach "
       << tail / lead << " of the leading one";
    throw ResolutionError(os.str());
  }
}


}  // namespace

const char* to_string(Classification c) noexcept {
  switch (c) {
    case Classification::Trapped: return "Trapped";
    case Classification::MarginallyTrappedOutgoing: return "MarginallyTrappedOutgoing";
    case Classification::MarginallyTrappedIngoing: return "MarginallyTrappedIngoing";
    case Classification::Untrapped: return "Untrapped";
    case Classification::Mixed: return "Mixed";
  }
  return "Mixed";
}

SectionSpec make_section(ScalarField f) {
  SectionDomain d;
  const SphereGrid& g = f.grid();
  d.full_sphere = g.mode() == GridMode::FullSphere;
  d.theta_min = g.theta_min();
  d.theta_max = g.theta_max();
  d.noncompact = !d.full_sphere && (d.theta_min > 0.0 || d.theta_max < std::numbers::pi);
  return make_section(std::move(f), std::move(d));
}

SectionSpec make_section(ScalarField f, SectionDomain domain) {
  const std::size_t i = f.argmin();
  if (!(f[i] > 0.0)) {
    std::ostringstream os;
    os << "section function must be positive; min f = " << f[i] << " at theta = "
       << f.grid().theta_at(i);
    throw DomainError(os.str());
  }
  return SectionSpec{std::move(f), std::move(domain)};
}

NullExpansions null_expansions(const SectionSpec& spec, const ExpansionOptions& opt) {
  const ScalarField& f = spec.f;
  if (opt.check_spectral_tail && f.grid().mode() == GridMode::FullSphere) {
    check_tail(f, opt.tail_tolerance);
  }
  const ScalarField lap_log = laplacian(f.map([](double x) { return std::log(x); }));
  const ScalarField lap_f = laplacian(f);
  const ScalarField grad2 = gradient_sq(f);

  const std::size_t n = f.size();
  std::vector<double> chi(n), chibar(n), raw(n);
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double fi = f[i];
    chi[i] = 2.0 / fi * (1.0 - lap_log[i]);
    raw[i] = 2.0 / fi * (1.0 - lap_f[i] / fi + grad2[i] / (fi * fi));
    chibar[i] = -2.0 / fi;
    diff = std::max(diff, std::abs(chi[i] - raw[i]));
    scale = std::max({scale, std::abs(raw[i]), 2.0 / fi});
  }
  const double rel = diff / scale;
  if (opt.check_routes && !(rel <= opt.route_tolerance)) {
    std::ostringstream os;
    os << "tr chi routes disagree by " << rel << " (relative), above "
       << opt.route_tolerance << "; refine the grid";
    throw ResolutionError(os.str());
  }
  return NullExpansions{ScalarField(f.grid_ptr(), std::move(chi)),
                        ScalarField(f.grid_ptr(), std::move(chibar)),
                        ScalarField(f.grid_ptr(), std::move(raw)), rel};
}

ScalarField gauss_curvature(const SectionSpec& spec, const ExpansionOptions& opt) {
  const ScalarField& f = spec.f;
  if (opt.check_spectral_tail && f.grid().mode() == GridMode::FullSphere) {
    check_tail(f, opt.tail_tolerance);
  }
  const ScalarField lap_log = laplacian(f.map([](double x) { return std::log(x); }));
  std::vector<double> k(f.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = (1.0 - lap_log[i]) / (f[i] * f[i]);
  return ScalarField(f.grid_ptr(), std::move(k));
}

ScalarField gauss_residual(const SectionSpec& spec, const ExpansionOptions& opt) {
  const NullExpansions e = null_expansions(spec, opt);
  const ScalarField k = gauss_curvature(spec, opt);
  std::vector<double> r(k.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = k[i] + 0.25 * e.tr_chi_raw[i] * e.tr_chibar[i];
  return ScalarField(k.grid_ptr(), std::move(r));
}

NullFrameCoeffs null_frame_at(double f, double f_theta, double f_phi, double theta) {
  const double s2 = std::sin(theta) * std::sin(theta);
  const double f2 = f * f;
  NullFrameCoeffs c;
  c.v = 1.0;
  c.theta = -2.0 * f_theta / f2;
  c.phi = -2.0 * f_phi / (f2 * s2);
  c.u = (f_theta * f_theta + f_phi * f_phi / s2) / f2;
  return c;
}

std::vector<NullFrameCoeffs> null_frame_field(const SectionSpec& spec) {
  const ScalarField ft = d_theta(spec.f);
  const ScalarField fp = d_phi(spec.f);
  std::vector<NullFrameCoeffs> out(spec.f.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = null_frame_at(spec.f[i], ft[i], fp[i], spec.f.grid().theta_at(i));
  }
  return out;
}

NullFrameCoeffs null_frame(const SectionSpec& spec, std::size_t node) {
  if (node >= spec.f.size()) throw UsageError("null_frame: node index out of range");
  const ScalarField ft = d_theta(spec.f);
  const ScalarField fp = d_phi(spec.f);
  return null_frame_at(spec.f[node], ft[node], fp[node], spec.f.grid().theta_at(node));
}

NullFrameResiduals null_frame_residuals(double f, double f_theta, double f_phi, double theta,
                                        double phi, const NullFrameCoeffs& c) {
  using V = std::array<double, 4>;
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  const V omega{0.0, st * cp, st * sp, ct};
  const V d_u{1.0, -omega[1], -omega[2], -omega[3]};
  const V d_v{1.0, omega[1], omega[2], omega[3]};
  const V d_th{0.0, f * ct * cp, f * ct * sp, -f * st};
  const V d_ph{0.0, -f * st * sp, f * st * cp, 0.0};
  auto eta = [](const V& a, const V& b) {
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
  };
  V l{}, t_th{}, t_ph{};
  for (int k = 0; k < 4; ++k) {
    l[k] = c.u * d_u[k] + c.v * d_v[k] + c.theta * d_th[k] + c.phi * d_ph[k];
    // Tangents of u = -f: d_theta - f_theta d_u, d_phi - f_phi d_u.
    t_th[k] = d_th[k] - f_theta * d_u[k];
    t_ph[k] = d_ph[k] - f_phi * d_u[k];
  }
  return NullFrameResiduals{eta(l, l), eta(l, d_u), eta(l, t_th), eta(l, t_ph)};
}

Classification classify(const ScalarField& tr_chi, const ScalarField& tr_chibar, double tol) {
  const double chi_max = tr_chi.max();
  const double chi_min = tr_chi.min();
  const double bar_max = tr_chibar.max();
  if (chi_max < -tol && bar_max < -tol) return Classification::Trapped;
  if (tr_chi.sup_norm() <= tol && bar_max < -tol) return Classification::MarginallyTrappedOutgoing;
  if (tr_chibar.sup_norm() <= tol && chi_max < -tol) return Classification::MarginallyTrappedIngoing;
  if (chi_min > tol && bar_max < -tol) return Classification::Untrapped;
  return Classification::Mixed;
}

Classification classify(const SectionGeometry& g, double tol) {
  return classify(g.tr_chi, g.tr_chibar, tol);
}

SectionGeometry compute_geometry(const SectionSpec& spec, double classify_tol,
                                 const ExpansionOptions& opt) {
  NullExpansions e = null_expansions(spec, opt);
  ScalarField k = gauss_curvature(spec, ExpansionOptions{opt.route_tolerance, false, false,
                                                         opt.tail_tolerance});
  const Classification c = classify(e.tr_chi, e.tr_chibar, classify_tol);
  ExpansionMargins m{e.tr_chi.min(), e.tr_chi.max(), e.tr_chibar.min(), e.tr_chibar.max()};
  return SectionGeometry{spec, std::move(e.tr_chi), std::move(e.tr_chibar), std::move(k), c, m,
                         e.route_discrepancy};
}

BackgroundFields BackgroundFields::minkowski(const ScalarField& f) {
  const GridPtr& g = f.grid_ptr();
  const ScalarField zero = ScalarField::constant(g, 0.0);
  return BackgroundFields{ScalarField::constant(g, 1.0),
                          OneFormField{zero, zero},
                          f.map([](double x) { return 2.0 / x; }),
                          f.map([](double x) { return -2.0 / x; }),
                          SymTensorField{zero, zero, zero},
                          zero};
}

TransformationResult transformation_general(const BackgroundFields& bg, const ScalarField& f,
                                            MetricSpec metric) {
  const char* where = "transformation_general";
  for (const ScalarField* p : {&bg.omega, &bg.eta.theta, &bg.eta.phi, &bg.tr_chi, &bg.tr_chibar,
                               &bg.chibar_hat.tt, &bg.chibar_hat.tp, &bg.chibar_hat.pp,
                               &bg.omegabar}) {
    require_same_grid(*p, f, where);
  }
  if (!(bg.omega.min() > 0.0)) throw DomainError("transformation_general: Omega must be positive");
  if (metric == MetricSpec::ConformalSection && !(f.min() > 0.0)) {
    throw DomainError("transformation_general: conformal metric needs f > 0");
  }

  const ScalarField lap = laplacian(f);
  const ScalarField ft = d_theta(f);
  const ScalarField fp = d_phi(f);
  const std::size_t n = f.size();
  std::vector<double> total(n), t_bg(n), t_lap(n), t_eta(n), t_shear(n), t_in(n), t_acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s2 = std::pow(std::sin(f.grid().theta_at(i)), 2);
    // Inverse metric is c^-2 times the round one.
    const double c2 = metric == MetricSpec::ConformalSection ? f[i] * f[i] : 1.0;
    const double om = bg.omega[i];
    const double lap_f = lap[i] / c2;
    const double eta_grad = (bg.eta.theta[i] * ft[i] + bg.eta.phi[i] * fp[i] / s2) / c2;
    const double gt = ft[i], gp = fp[i] / s2;  // round-metric index-raised gradient
    const double shear = (bg.chibar_hat.tt[i] * gt * gt + 2.0 * bg.chibar_hat.tp[i] * gt * gp +
                          bg.chibar_hat.pp[i] * gp * gp) /
                         (c2 * c2);
    const double grad2 = (ft[i] * ft[i] + fp[i] * fp[i] / s2) / c2;
    t_bg[i] = bg.tr_chi[i];
    t_lap[i] = -2.0 * om * lap_f;
    t_eta[i] = -4.0 * om * eta_grad;
    t_shear[i] = -4.0 * om * om * shear;
    t_in[i] = -om * om * bg.tr_chibar[i] * grad2;
    t_acc[i] = -8.0 * om * om * bg.omegabar[i] * grad2;
    total[i] = t_bg[i] + t_lap[i] + t_eta[i] + t_shear[i] + t_in[i] + t_acc[i];
  }
  const GridPtr& g = f.grid_ptr();
  return TransformationResult{ScalarField(g, std::move(total)), ScalarField(g, std::move(t_bg)),
                              ScalarField(g, std::move(t_lap)), ScalarField(g, std::move(t_eta)),
                              ScalarField(g, std::move(t_shear)), ScalarField(g, std::move(t_in)),
                              ScalarField(g, std::move(t_acc))};
}

}  // namespace lightcone
