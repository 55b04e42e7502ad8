#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "lightcone/scalar_field.hpp"

namespace lightcone {

/// Symmetric 2x2 matrix [[xx, xy], [xy, yy]].
struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
};

inline double det(const Sym2& m) { return m.xx * m.yy - m.xy * m.xy; }

/// exp(psi) = cosh(l) I + sinh(l)/l psi, l = sqrt(psi11^2 + psi12^2).
/// Throws DomainError if |trace| exceeds 1e-14 (scaled by |psi| when larger than 1).
Sym2 exp_tracefree(const Sym2& psi);

/// Seed value psi0 and its s-derivative at one (s, theta, phi).
struct SeedSample {
  Sym2 psi0;
  Sym2 dpsi0_ds;
};

using SeedFunction = std::function<SeedSample(double s, double theta, double phi)>;

enum class TimeShape { Linear, Bump };       ///< a(s) = s, or 16 s^2 (1-s)^2
enum class AngularShape { Uniform, Cap };    ///< 1, or g(theta / cap_epsilon)

/// psi0 = amplitude a(s) A(theta) (cos(mix) diag(1,-1) + sin(mix) offdiag(1)).
struct SeparableSeed {
  TimeShape time = TimeShape::Bump;
  AngularShape angular = AngularShape::Cap;
  double amplitude = 1.0;
  double cap_epsilon = 0.1;
  double mix = 0.0;
};

/// Axisymmetric table read from CSV columns s,theta,psi11,psi12, ordered with
/// s as the slow index. Interpolated with modified Akima splines in s and
/// linearly in theta (clamped at the table's theta range).
struct TabulatedSeed {
  std::vector<double> s;      ///< ascending, at least 4 values in [0, 1]
  std::vector<double> theta;  ///< ascending
  std::vector<double> psi11;  ///< size s.size() * theta.size(), index is * n_theta + it
  std::vector<double> psi12;
};

TabulatedSeed read_tabulated_seed(const std::string& path);

/// Short-pulse data psi(ub, theta) = (sqrt(delta)/r0) psi0(ub/delta, theta),
/// zero for ub <= 0.
class PulseProfile {
 public:
  PulseProfile(SeedFunction seed, double delta, double r0, bool smooth, bool axisymmetric);

  static PulseProfile separable(const SeparableSeed& seed, double delta, double r0);
  static PulseProfile tabulated(const TabulatedSeed& table, double delta, double r0);
  static PulseProfile zero(double delta, double r0);

  double delta() const noexcept { return delta_; }
  double r0() const noexcept { return r0_; }
  bool smooth() const noexcept { return smooth_; }
  bool axisymmetric() const noexcept { return axisymmetric_; }

  SeedSample seed(double s, double theta, double phi) const;
  Sym2 psi(double ub, double theta, double phi) const;
  Sym2 psi_dot(double ub, double theta, double phi) const;  ///< d psi / d ub

 private:
  SeedFunction seed_;
  double delta_;
  double r0_;
  bool smooth_;
  bool axisymmetric_;
};

enum class Differentiation { Analytic, FiniteDifference };

/// e = (1/8) tr(m^-1 dm m^-1 dm), m = exp(psi), dm = d m / d ub. ub in [0, delta].
double energy_density(const PulseProfile& p, double ub, double theta, double phi,
                      Differentiation how = Differentiation::Analytic);

/// k(theta, phi) = (r0^2 / 8 pi) int_0^delta e dub by Gauss-Legendre with
/// `nodes` >= 64 points. Leading order in delta.
ScalarField energy_per_solid_angle(const PulseProfile& p, const GridPtr& grid,
                                   std::size_t nodes = 64, unsigned threads = 1);

/// The focusing strength r0^2 int e = 8 pi k that enters tr chi <= 2/|u| - 2k/|u|^2.
ScalarField focusing_strength(const ScalarField& energy_per_solid_angle);

struct RaychaudhuriResult {
  double tr_chi = 0.0;        ///< at ub = delta (or where focusing was detected)
  double bound = 0.0;         ///< tr_chi0 - int_0^delta shear_sq
  double shear_integral = 0.0;
  bool focused = false;       ///< tr chi ran off to -infinity inside [0, delta]
  double focus_location = 0.0;
};

/// Classical RK4 for D tr chi = -tr chi^2 / 2 - shear_sq(ub) over [0, delta].
RaychaudhuriResult integrate_raychaudhuri(double tr_chi0,
                                          const std::function<double(double)>& shear_sq,
                                          double delta, std::size_t steps);

/// 2/|u| - 2k/|u|^2 (leading order).
double trapped_bound(double u, double k, double delta);
/// (2 + 2 delta - 2k) / (1 + delta)^2.
double final_check(double delta, double k);

}  // namespace lightcone
