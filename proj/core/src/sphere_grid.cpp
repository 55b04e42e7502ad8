#include "lightcone/sphere_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lightcone/chebyshev.hpp"
#include "lightcone/errors.hpp"

namespace lightcone {
namespace {

constexpr double kPi = std::numbers::pi;

double mercator(double theta) { return std::log(std::tan(0.5 * theta)); }
double inverse_mercator(double xi) { return 2.0 * std::atan(std::exp(xi)); }

void validate_patches(std::vector<PatchSpec>& specs) {
  if (specs.empty()) throw ConfigError("axisymmetric grid needs at least one patch");
  for (std::size_t k = 0; k < specs.size(); ++k) {
    PatchSpec& p = specs[k];
    if (!(p.theta_lo >= 0.0 && p.theta_hi <= kPi && p.theta_lo < p.theta_hi)) {
      throw ConfigError("patch " + std::to_string(k) + " has an invalid theta range");
    }
    if (p.nodes < 4) {
      throw ConfigError("patch " + std::to_string(k) + " needs at least 4 nodes");
    }
    if (p.variable == PatchVariable::Mercator && (p.theta_lo <= 0.0 || p.theta_hi >= kPi)) {
      throw ConfigError("Mercator patch cannot touch a pole");
    }
    if (k > 0) {
      const double gap = p.theta_lo - specs[k - 1].theta_hi;
      if (std::abs(gap) > 1e-13) throw ConfigError("patches must be contiguous");
      p.theta_lo = specs[k - 1].theta_hi;
    }
  }
}

}  // namespace

const char* to_string(GridMode mode) noexcept {
  return mode == GridMode::FullSphere ? "FullSphere" : "AxisymTruncated";
}

double Patch::to_reference(double theta) const {
  const double y = spec.variable == PatchVariable::CosTheta ? std::cos(theta) : mercator(theta);
  return 2.0 * (y - y_lo) / (y_hi - y_lo) - 1.0;
}

std::size_t SphereGrid::patch_of(std::size_t i_theta) const {
  return patch_index_.at(i_theta);
}

std::shared_ptr<const SphereGrid> SphereGrid::full_sphere(std::size_t n_theta,
                                                          std::size_t n_phi) {
  if (n_theta < 4) throw ConfigError("n_theta must be at least 4");
  if (n_phi < 1) throw ConfigError("n_phi must be at least 1");
  std::shared_ptr<SphereGrid> g(new SphereGrid());
  g->mode_ = GridMode::FullSphere;
  const GaussLegendreRuleWide rule = gauss_legendre_wide(n_theta);
  g->theta_.resize(n_theta);
  g->cos_.resize(n_theta);
  g->sin_.resize(n_theta);
  g->gl_weights_.resize(n_theta);
  g->cos_w_.resize(n_theta);
  g->sin_w_.resize(n_theta);
  g->gl_w_.resize(n_theta);
  for (std::size_t i = 0; i < n_theta; ++i) {
    const long double x = rule.nodes[n_theta - 1 - i];
    const long double st = std::sqrt((1.0L - x) * (1.0L + x));
    g->cos_w_[i] = x;
    g->sin_w_[i] = st;
    g->gl_w_[i] = rule.weights[n_theta - 1 - i];
    g->cos_[i] = static_cast<double>(x);
    g->sin_[i] = static_cast<double>(st);
    g->theta_[i] = static_cast<double>(std::atan2(st, x));
    g->gl_weights_[i] = static_cast<double>(g->gl_w_[i]);
  }
  g->phi_.resize(n_phi);
  for (std::size_t j = 0; j < n_phi; ++j) {
    g->phi_[j] = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_phi);
  }
  const double dphi = 2.0 * kPi / static_cast<double>(n_phi);
  g->weights_.resize(n_theta * n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) {
    for (std::size_t j = 0; j < n_phi; ++j) g->weights_[i * n_phi + j] = g->gl_weights_[i] * dphi;
  }
  g->theta_lo_ = 0.0;
  g->theta_hi_ = kPi;
  g->lmax_ = n_theta - 1;
  g->mmax_ = std::min(g->lmax_, (n_phi - 1) / 2);
  g->legendre_offset_.resize(g->mmax_ + 1);
  std::size_t total = 0;
  for (std::size_t m = 0; m <= g->mmax_; ++m) {
    g->legendre_offset_[m] = total;
    total += n_theta * (g->lmax_ - m + 1);
  }
  g->legendre_.resize(total);
  for (std::size_t m = 0; m <= g->mmax_; ++m) {
    const std::size_t len = g->lmax_ - m + 1;
    for (std::size_t i = 0; i < n_theta; ++i) {
      long double* col = g->legendre_.data() + g->legendre_offset_[m] + i * len;
      normalized_legendre_column_t<long double>(m, g->lmax_, g->cos_w_[i], g->sin_w_[i],
                                                std::span(col, len));
    }
  }
  return g;
}

std::shared_ptr<const SphereGrid> SphereGrid::axisymmetric(std::vector<PatchSpec> specs) {
  validate_patches(specs);
  std::shared_ptr<SphereGrid> g(new SphereGrid());
  g->mode_ = GridMode::AxisymTruncated;
  g->phi_ = {0.0};
  g->theta_lo_ = specs.front().theta_lo;
  g->theta_hi_ = specs.back().theta_hi;

  for (std::size_t pi = 0; pi < specs.size(); ++pi) {
    const PatchSpec& spec = specs[pi];
    const std::size_t n = spec.nodes;
    const std::vector<double> ref = cheb::gauss_nodes(n);
    const std::vector<double> bw = cheb::barycentric_weights(n);
    const std::vector<double> fw = cheb::fejer_weights(n);
    const cheb::DiffMatrices dm = cheb::differentiation_matrices(n);

    Patch patch;
    patch.spec = spec;
    patch.offset = g->theta_.size();
    const bool cosine = spec.variable == PatchVariable::CosTheta;
    // Reference index r(k) of local node k, chosen so theta increases with k.
    std::vector<std::size_t> r(n);
    if (cosine) {
      patch.y_lo = std::cos(spec.theta_hi);
      patch.y_hi = std::cos(spec.theta_lo);
      for (std::size_t k = 0; k < n; ++k) r[k] = n - 1 - k;
    } else {
      patch.y_lo = mercator(spec.theta_lo);
      patch.y_hi = mercator(spec.theta_hi);
      for (std::size_t k = 0; k < n; ++k) r[k] = k;
    }
    const double half = 0.5 * (patch.y_hi - patch.y_lo);
    const double scale = 1.0 / half;

    patch.s.resize(n);
    patch.bary.resize(n);
    patch.laplacian.resize(n, n);
    patch.d_theta.resize(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const double s = ref[r[k]];
      const double y = patch.y_lo + half * (s + 1.0);
      double theta = 0.0;
      double sin_t = 0.0;
      if (cosine) {
        theta = std::acos(std::clamp(y, -1.0, 1.0));
        sin_t = std::sin(theta);
      } else {
        theta = inverse_mercator(y);
        sin_t = std::sin(theta);
      }
      patch.s[k] = s;
      patch.bary[k] = bw[r[k]];
      g->theta_.push_back(theta);
      g->patch_index_.push_back(pi);

      double a = 0.0;  // coefficient of f_yy
      double b = 0.0;  // coefficient of f_y
      double c = 0.0;  // d/dtheta = c * d/dy
      double jac = 0.0;
      if (cosine) {
        a = sin_t * sin_t;
        b = -2.0 * y;
        c = -sin_t;
        jac = 2.0 * kPi * half;
      } else {
        a = 1.0 / (sin_t * sin_t);
        c = 1.0 / sin_t;
        jac = 2.0 * kPi * sin_t * sin_t * half;
      }
      g->weights_.push_back(fw[r[k]] * jac);
      for (std::size_t q = 0; q < n; ++q) {
        const double d1 = scale * dm.d1(r[k], r[q]);
        const double d2 = scale * scale * dm.d2(r[k], r[q]);
        patch.laplacian(k, q) = a * d2 + b * d1;
        patch.d_theta(k, q) = c * d1;
      }
    }
    for (std::size_t k = 1; k < n; ++k) {
      if (!(g->theta_[patch.offset + k] > g->theta_[patch.offset + k - 1])) {
        throw ConfigError("patch nodes are not strictly increasing in theta");
      }
    }
    g->patches_.push_back(std::move(patch));
  }
  for (std::size_t i = 1; i < g->theta_.size(); ++i) {
    if (!(g->theta_[i] > g->theta_[i - 1])) {
      throw ConfigError("grid nodes are not strictly increasing in theta");
    }
  }
  return g;
}

std::vector<PatchSpec> default_axisym_layout(std::size_t n_theta, double theta_min,
                                             double theta_max) {
  if (n_theta < 4) throw ConfigError("n_theta must be at least 4");
  if (!(theta_min >= 0.0 && theta_max <= kPi && theta_min < theta_max)) {
    throw ConfigError("invalid theta range for axisymmetric layout");
  }
  const std::size_t per_patch = 16;
  const std::size_t total = n_theta / per_patch;
  const double north_end = 0.25 * kPi;
  const double south_start = 0.75 * kPi;
  const bool north = theta_min == 0.0 && theta_max > north_end + 0.1;
  const bool south = theta_max == kPi && theta_min < south_start - 0.1;
  const std::size_t caps = (north ? 1 : 0) + (south ? 1 : 0);
  if (total < 3 || total <= caps) {
    return {PatchSpec{theta_min, theta_max, PatchVariable::CosTheta, n_theta}};
  }

  std::vector<double> bounds;
  std::vector<PatchVariable> vars;
  const double lo = north ? north_end : theta_min;
  const double hi = south ? south_start : theta_max;
  const std::size_t interior = total - caps;
  if (north) {
    bounds.push_back(0.0);
    vars.push_back(PatchVariable::CosTheta);
  }
  for (std::size_t k = 0; k < interior; ++k) {
    bounds.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(interior));
    const bool at_pole = (k == 0 && lo == 0.0) || (k + 1 == interior && hi == kPi);
    vars.push_back(at_pole ? PatchVariable::CosTheta : PatchVariable::Mercator);
  }
  if (south) {
    bounds.push_back(south_start);
    vars.push_back(PatchVariable::CosTheta);
  }
  bounds.push_back(theta_max);

  std::vector<PatchSpec> out;
  const std::size_t base = n_theta / total;
  const std::size_t extra = n_theta % total;
  for (std::size_t k = 0; k < total; ++k) {
    out.push_back(PatchSpec{bounds[k], bounds[k + 1], vars[k], base + (k < extra ? 1 : 0)});
  }
  return out;
}

GridPtr build_grid(GridMode mode, std::size_t n_theta, std::size_t n_phi, double theta_min) {
  if (n_theta < 4) throw ConfigError("n_theta must be at least 4");
  if (n_phi < 1) throw ConfigError("n_phi must be at least 1");
  if (!(theta_min >= 0.0 && theta_min < 0.5 * kPi)) {
    throw ConfigError("theta_min must lie in [0, pi/2)");
  }
  if (mode == GridMode::FullSphere) {
    if (theta_min != 0.0) throw ConfigError("FullSphere grids require theta_min = 0");
    return SphereGrid::full_sphere(n_theta, n_phi);
  }
  if (n_phi != 1) throw ConfigError("AxisymTruncated grids require n_phi = 1");
  return SphereGrid::axisymmetric(default_axisym_layout(n_theta, theta_min));
}

}  // namespace lightcone
