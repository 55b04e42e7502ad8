#include "lightcone/short_pulse.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>
#include <thread>

#include <boost/math/interpolators/makima.hpp>

#include "lightcone/errors.hpp"
#include "lightcone/legendre.hpp"
#include "lightcone/trapped_construction.hpp"

namespace lightcone {
namespace {

constexpr double kPi = std::numbers::pi;

Sym2 scaled(const Sym2& a, double s) { return Sym2{s * a.xx, s * a.xy, s * a.yy}; }

// 2x2 symmetric product helpers written out; matrices here are tiny.
struct M2 {
  double a, b, c, d;  // [[a, b], [c, d]]
};
M2 mul(const M2& x, const M2& y) {
  return M2{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}
M2 full(const Sym2& s) { return M2{s.xx, s.xy, s.xy, s.yy}; }

double quarter_trace_sq(const Sym2& m, const Sym2& dm) {
  const double dt = det(m);
  const M2 inv{m.yy / dt, -m.xy / dt, -m.xy / dt, m.xx / dt};
  const M2 a = mul(inv, full(dm));
  const M2 a2 = mul(a, a);
  return 0.125 * (a2.a + a2.d);
}

// sinh(l)/l without cancellation near 0.
double sinhc(double l) {
  if (std::abs(l) < 1e-4) return 1.0 + l * l / 6.0 + l * l * l * l / 120.0;
  return std::sinh(l) / l;
}

Sym2 exp_unchecked(const Sym2& psi) {
  const double p = 0.5 * (psi.xx - psi.yy);
  const double q = psi.xy;
  const double l = std::hypot(p, q);
  const double ch = std::cosh(l);
  const double sc = sinhc(l);
  return Sym2{ch + sc * p, sc * q, ch - sc * p};
}

// (sinhc(l)^2 - 1) / l^2.
double sinhc_sq_excess(double l) {
  const double l2 = l * l;
  if (l < 1e-3) return 1.0 / 3.0 + l2 * (2.0 / 45.0 + l2 / 315.0);
  const double sc = sinhc(l);
  return (sc - 1.0) * (sc + 1.0) / l2;
}

// With psi = l (cos a, sin a) in the (diag(1,-1), offdiag(1)) basis,
// tr((m^-1 dm)^2) = 2 (dl^2 + sinh^2 l da^2). Rewritten in p, q so nothing
// cancels when l is large or zero.
double energy_closed_form(const Sym2& psi, const Sym2& dpsi) {
  const double p = 0.5 * (psi.xx - psi.yy);
  const double q = psi.xy;
  const double dp = 0.5 * (dpsi.xx - dpsi.yy);
  const double dq = dpsi.xy;
  const double cross = p * dq - q * dp;
  return 0.25 * (dp * dp + dq * dq + sinhc_sq_excess(std::hypot(p, q)) * cross * cross);
}

double time_shape(TimeShape t, double s) {
  if (s <= 0.0) return 0.0;
  if (t == TimeShape::Linear) return s;
  if (s >= 1.0) return 0.0;
  return 16.0 * s * s * (1.0 - s) * (1.0 - s);
}
double time_shape_ds(TimeShape t, double s) {
  if (s <= 0.0) return 0.0;
  if (t == TimeShape::Linear) return 1.0;
  if (s >= 1.0) return 0.0;
  return 32.0 * s * (1.0 - s) * (1.0 - 2.0 * s);
}

}  // namespace

Sym2 exp_tracefree(const Sym2& psi) {
  const double size = std::max(1.0, std::abs(psi.xx) + std::abs(psi.yy));
  if (!(std::abs(psi.xx + psi.yy) <= 1e-14 * size)) {
    std::ostringstream os;
    os << "exp_tracefree: trace " << psi.xx + psi.yy << " is not zero";
    throw DomainError(os.str());
  }
  return exp_unchecked(psi);
}

PulseProfile::PulseProfile(SeedFunction seed, double delta, double r0, bool smooth,
                           bool axisymmetric)
    : seed_(std::move(seed)), delta_(delta), r0_(r0), smooth_(smooth), axisymmetric_(axisymmetric) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be positive");
  if (!(r0 > 1.0) || !std::isfinite(r0)) throw ConfigError("r0 must exceed 1");
  if (!seed_) throw ConfigError("pulse profile needs a seed");
}

PulseProfile PulseProfile::separable(const SeparableSeed& seed, double delta, double r0) {
  if (seed.angular == AngularShape::Cap && !(seed.cap_epsilon > 0.0)) {
    throw ConfigError("cap_epsilon must be positive");
  }
  const CutoffFunction g = smooth_cutoff();
  const double cm = std::cos(seed.mix);
  const double sm = std::sin(seed.mix);
  auto fn = [seed, g, cm, sm](double s, double theta, double) {
    const double ang = seed.angular == AngularShape::Uniform ? 1.0 : g(theta / seed.cap_epsilon);
    const double v = seed.amplitude * time_shape(seed.time, s) * ang;
    const double dv = seed.amplitude * time_shape_ds(seed.time, s) * ang;
    return SeedSample{Sym2{v * cm, v * sm, -v * cm}, Sym2{dv * cm, dv * sm, -dv * cm}};
  };
  return PulseProfile(fn, delta, r0, seed.time == TimeShape::Bump, true);
}

PulseProfile PulseProfile::tabulated(const TabulatedSeed& t, double delta, double r0) {
  using boost::math::interpolators::makima;
  const std::size_t ns = t.s.size();
  const std::size_t nt = t.theta.size();
  if (ns < 4) throw ConfigError("tabulated seed needs at least 4 s values");
  if (nt < 1) throw ConfigError("tabulated seed needs at least one theta value");
  if (t.psi11.size() != ns * nt || t.psi12.size() != ns * nt) {
    throw ConfigError("tabulated seed is not a rectangular s x theta table");
  }
  for (std::size_t i = 1; i < ns; ++i) {
    if (!(t.s[i] > t.s[i - 1])) throw ConfigError("tabulated s values must increase");
  }
  for (std::size_t i = 1; i < nt; ++i) {
    if (!(t.theta[i] > t.theta[i - 1])) throw ConfigError("tabulated theta values must increase");
  }

  struct Column {
    makima<std::vector<double>> p11;
    makima<std::vector<double>> p12;
  };
  auto columns = std::make_shared<std::vector<Column>>();
  for (std::size_t it = 0; it < nt; ++it) {
    std::vector<double> y11(ns), y12(ns);
    for (std::size_t is = 0; is < ns; ++is) {
      y11[is] = t.psi11[is * nt + it];
      y12[is] = t.psi12[is * nt + it];
    }
    columns->push_back(Column{makima<std::vector<double>>(std::vector<double>(t.s), std::move(y11)),
                              makima<std::vector<double>>(std::vector<double>(t.s), std::move(y12))});
  }
  const std::vector<double> thetas = t.theta;
  const double s_lo = t.s.front();
  const double s_hi = t.s.back();

  auto fn = [columns, thetas, s_lo, s_hi](double s, double theta, double) {
    if (s <= 0.0) return SeedSample{};
    const double sc = std::clamp(s, s_lo, s_hi);
    std::size_t hi = static_cast<std::size_t>(
        std::upper_bound(thetas.begin(), thetas.end(), theta) - thetas.begin());
    std::size_t lo = hi == 0 ? 0 : hi - 1;
    hi = std::min(hi, thetas.size() - 1);
    double wt = 0.0;
    if (hi != lo) wt = std::clamp((theta - thetas[lo]) / (thetas[hi] - thetas[lo]), 0.0, 1.0);
    const Column& a = (*columns)[lo];
    const Column& b = (*columns)[hi];
    const double v11 = (1.0 - wt) * a.p11(sc) + wt * b.p11(sc);
    const double v12 = (1.0 - wt) * a.p12(sc) + wt * b.p12(sc);
    const bool inside = s > s_lo && s < s_hi;
    const double d11 = inside ? (1.0 - wt) * a.p11.prime(sc) + wt * b.p11.prime(sc) : 0.0;
    const double d12 = inside ? (1.0 - wt) * a.p12.prime(sc) + wt * b.p12.prime(sc) : 0.0;
    return SeedSample{Sym2{v11, v12, -v11}, Sym2{d11, d12, -d11}};
  };
  return PulseProfile(fn, delta, r0, false, true);
}

PulseProfile PulseProfile::zero(double delta, double r0) {
  return PulseProfile([](double, double, double) { return SeedSample{}; }, delta, r0, true, true);
}

SeedSample PulseProfile::seed(double s, double theta, double phi) const {
  if (s <= 0.0) return SeedSample{};
  return seed_(s, theta, phi);
}

Sym2 PulseProfile::psi(double ub, double theta, double phi) const {
  return scaled(seed(ub / delta_, theta, phi).psi0, std::sqrt(delta_) / r0_);
}

Sym2 PulseProfile::psi_dot(double ub, double theta, double phi) const {
  return scaled(seed(ub / delta_, theta, phi).dpsi0_ds, 1.0 / (std::sqrt(delta_) * r0_));
}

double energy_density(const PulseProfile& p, double ub, double theta, double phi,
                      Differentiation how) {
  const double delta = p.delta();
  if (!(ub >= 0.0 && ub <= delta)) {
    std::ostringstream os;
    os << "energy_density: ub = " << ub << " outside [0, " << delta << "]";
    throw DomainError(os.str());
  }
  const Sym2 psi = p.psi(ub, theta, phi);
  if (how == Differentiation::Analytic) {
    exp_tracefree(psi);  // trace check only
    return energy_closed_form(psi, p.psi_dot(ub, theta, phi));
  }
  const Sym2 m = exp_tracefree(psi);
  Sym2 dm;
  const double h = 2e-3 * delta;
  auto mat = [&](double x) { return exp_tracefree(p.psi(x, theta, phi)); };
  auto comb = [](std::initializer_list<std::pair<double, Sym2>> terms, double scale) {
    Sym2 r;
    for (const auto& [c, s] : terms) {
      r.xx += c * s.xx;
      r.xy += c * s.xy;
      r.yy += c * s.yy;
    }
    return scaled(r, scale);
  };
  const double inv = 1.0 / (12.0 * h);
  if (ub - 2.0 * h >= 0.0 && ub + 2.0 * h <= delta) {
    dm = comb({{-1.0, mat(ub + 2 * h)}, {8.0, mat(ub + h)}, {-8.0, mat(ub - h)},
               {1.0, mat(ub - 2 * h)}},
              inv);
  } else if (ub - 2.0 * h < 0.0) {
    dm = comb({{-25.0, mat(ub)}, {48.0, mat(ub + h)}, {-36.0, mat(ub + 2 * h)},
               {16.0, mat(ub + 3 * h)}, {-3.0, mat(ub + 4 * h)}},
              inv);
  } else {
    dm = comb({{25.0, mat(ub)}, {-48.0, mat(ub - h)}, {36.0, mat(ub - 2 * h)},
               {-16.0, mat(ub - 3 * h)}, {3.0, mat(ub - 4 * h)}},
              inv);
  }
  return std::max(0.0, quarter_trace_sq(m, dm));
}

ScalarField energy_per_solid_angle(const PulseProfile& p, const GridPtr& grid, std::size_t nodes,
                                   unsigned threads) {
  if (nodes < 64) throw ConfigError("energy quadrature needs at least 64 nodes");
  const GaussLegendreRule rule = gauss_legendre(nodes, 0.0, p.delta());
  const double pref = p.r0() * p.r0() / (8.0 * kPi);
  const std::size_t np = grid->n_phi();
  const std::size_t nt = grid->n_theta();
  std::vector<double> out(grid->size(), 0.0);

  auto column = [&](double theta, double phi) {
    double s = 0.0;
    for (std::size_t q = 0; q < nodes; ++q) {
      s += rule.weights[q] * energy_density(p, rule.nodes[q], theta, phi);
    }
    return pref * s;
  };
  auto row = [&](std::size_t i) {
    const double theta = grid->theta_nodes()[i];
    if (p.axisymmetric()) {
      const double v = column(theta, 0.0);
      for (std::size_t j = 0; j < np; ++j) out[i * np + j] = v;
    } else {
      for (std::size_t j = 0; j < np; ++j) out[i * np + j] = column(theta, grid->phi_nodes()[j]);
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(nt)));
  if (workers == 1) {
    for (std::size_t i = 0; i < nt; ++i) row(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < nt; i += workers) row(i);
      });
    }
    for (std::thread& t : pool) t.join();
  }
  return ScalarField(grid, std::move(out));
}

ScalarField focusing_strength(const ScalarField& energy) {
  return (8.0 * kPi) * energy;
}

RaychaudhuriResult integrate_raychaudhuri(double tr_chi0,
                                          const std::function<double(double)>& shear_sq,
                                          double delta, std::size_t steps) {
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  if (steps == 0) throw ConfigError("steps must be positive");
  const double h = delta / static_cast<double>(steps);
  auto rhs = [&](double x, double y) { return -0.5 * y * y - shear_sq(x); };

  RaychaudhuriResult r;
  double y = tr_chi0;
  double integral = 0.0;
  for (std::size_t n = 0; n < steps; ++n) {
    const double x = h * static_cast<double>(n);
    const double s0 = shear_sq(x);
    const double sm = shear_sq(x + 0.5 * h);
    const double s1 = shear_sq(x + h);
    if (s0 < 0.0 || sm < 0.0 || s1 < 0.0) throw DomainError("shear_sq must be nonnegative");
    const double k1 = rhs(x, y);
    const double k2 = rhs(x + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = rhs(x + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = rhs(x + h, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    integral += h / 6.0 * (s0 + 4.0 * sm + s1);
    if (!std::isfinite(y) || y < -1e8) {
      r.focused = true;
      r.focus_location = x + h;
      break;
    }
  }
  r.tr_chi = y;
  r.shear_integral = integral;
  r.bound = tr_chi0 - integral;
  return r;
}

double trapped_bound(double u, double k, double delta) {
  if (!(u < 0.0)) throw DomainError("trapped_bound requires u < 0");
  if (!(k >= 0.0)) throw DomainError("trapped_bound requires k >= 0");
  if (!(delta >= 0.0)) throw DomainError("trapped_bound requires delta >= 0");
  const double au = -u;
  return 2.0 / au - 2.0 * k / (au * au);
}

double final_check(double delta, double k) {
  if (!(delta >= 0.0)) throw DomainError("final_check requires delta >= 0");
  return (2.0 + 2.0 * delta - 2.0 * k) / ((1.0 + delta) * (1.0 + delta));
}

TabulatedSeed read_tabulated_seed(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open pulse table '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("pulse table '" + path + "' is empty");
  line.erase(std::remove_if(line.begin(), line.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }),
             line.end());
  if (line != "s,theta,psi11,psi12") {
    throw ConfigError("pulse table header must be 's,theta,psi11,psi12'");
  }
  std::vector<double> s_col, t_col, p11, p12;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a, b, c, d;
    if (!(ls >> a >> b >> c >> d)) {
      throw ConfigError("pulse table line " + std::to_string(lineno) + " is malformed");
    }
    s_col.push_back(a);
    t_col.push_back(b);
    p11.push_back(c);
    p12.push_back(d);
  }
  TabulatedSeed t;
  for (double v : t_col) {
    if (std::find(t.theta.begin(), t.theta.end(), v) == t.theta.end()) t.theta.push_back(v);
    else break;
  }
  const std::size_t nt = t.theta.size();
  if (nt == 0 || s_col.size() % nt != 0) {
    throw ConfigError("pulse table is not a rectangular s x theta grid");
  }
  const std::size_t ns = s_col.size() / nt;
  for (std::size_t is = 0; is < ns; ++is) {
    for (std::size_t it = 0; it < nt; ++it) {
      const std::size_t r = is * nt + it;
      if (s_col[r] != s_col[is * nt] || t_col[r] != t.theta[it]) {
        throw ConfigError("pulse table row " + std::to_string(r + 2) +
                          " breaks the s-major rectangular layout");
      }
    }
    t.s.push_back(s_col[is * nt]);
  }
  t.psi11 = std::move(p11);
  t.psi12 = std::move(p12);
  return t;
}

}  // namespace lightcone
