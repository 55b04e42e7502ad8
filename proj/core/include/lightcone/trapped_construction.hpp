#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lightcone/scalar_field.hpp"
#include "lightcone/section_geometry.hpp"

namespace lightcone {

/// g(x) = h(2-x) / (h(2-x) + h(x-1)), h(s) = exp(-1/s) for s > 0, else 0.
/// Equal to 1 on [0,1], 0 on [2, inf), smooth and decreasing in between.
struct CutoffFunction {
  double operator()(double x) const;
};

CutoffFunction smooth_cutoff();

/// Closed form of log f_eps:
///   -(1+eps) w(theta)                                 for theta >= 2 eps
///   -(1-g)(1+eps) w(theta) - g (1+eps) w(eps),  g = g(theta/eps)   otherwise.
double log_f_eps(double epsilon, double theta);

/// Axisymmetric grid tailored to f_eps: a CosTheta cap on [0, eps], four
/// Mercator patches across the cutoff band [eps, 2 eps], equal-width Mercator
/// patches out to 3 pi/4 and a CosTheta cap at the south pole.
GridPtr construction_grid(double epsilon);

struct EpsConstruction {
  double epsilon = 0.0;
  ScalarField log_f;
  ScalarField f;
  double cap_boundary = 0.0;  ///< 2 eps
  std::optional<double> k_eps;
  double k_theta = 0.0;       ///< location of the supremum
  std::size_t cap_nodes = 0;  ///< nodes with theta <= 2 eps
};

/// 0 < eps <= 0.3 and at least 32 grid nodes in [0, 2 eps].
EpsConstruction build_f_eps(double epsilon, const GridPtr& grid);
EpsConstruction build_f_eps(double epsilon);

/// f_eps (1 - lap log f_eps) on the construction's grid.
ScalarField k_integrand(const EpsConstruction& c);

/// sup over [0, 2 eps] of k_integrand; stored in the construction.
double compute_k_eps(EpsConstruction& c);

/// k(theta) = value on theta <= cap, 0 beyond.
ScalarField cap_energy(const GridPtr& grid, double value, double cap);

struct ZoneExtremum {
  double value = 0.0;
  double theta = 0.0;
  bool present = false;
};

struct TrappedReport {
  bool trapped = false;
  double threshold = 0.0;       ///< verdict uses < -threshold
  ZoneExtremum upper_max;       ///< max of (2/f)(1 - lap log f) - 2k/f^2
  ZoneExtremum chibar_max;      ///< max of -2/f
  // Zone split, filled when a cap boundary is supplied.
  double cap_boundary = 0.0;
  ZoneExtremum cap_upper_max;
  ZoneExtremum outer_upper_max;
  ZoneExtremum outer_identity_max;  ///< max of tr chi~ + 2 eps / f beyond the cap
};

struct TrappedZones {
  double cap_boundary = 0.0;
  double epsilon = 0.0;
};

/// Checks the elliptic inequality (2/f)(1 - lap log f) - 2k/f^2 < 0 together
/// with -2/f < 0. `margin` of 0 means the strict test < -1e-12.
TrappedReport verify_trapped(const SectionSpec& spec, const ScalarField& k, double margin = 0.0,
                             std::optional<TrappedZones> zones = std::nullopt);

struct ScanRow {
  double epsilon = 0.0;
  double f_at_0 = 0.0;
  double k_eps = 0.0;
  double k_theta = 0.0;
  double band_lap_log_sup = 0.0;  ///< sup |lap log f_eps| over [eps, 2 eps]
  double eps2_f_at_0 = 0.0;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  double slope_f = 0.0;  ///< least-squares slope of log f_eps(0) against log eps
  double slope_k = 0.0;
  std::vector<double> band_ratios;  ///< band sup(eps_{i+1}) / band sup(eps_i)
  bool band_ratios_ok = false;      ///< every ratio within a factor 8
};

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Builds f_eps and k_eps for each eps (strictly decreasing). Work is spread
/// over `threads` workers; rows keep the input order.
ScanResult asymptotic_scan(const std::vector<double>& eps_list, unsigned threads = 1);

}  // namespace lightcone
