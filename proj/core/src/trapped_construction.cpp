#include "lightcone/trapped_construction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "lightcone/errors.hpp"
#include "lightcone/greens.hpp"
#include "lightcone/sphere_ops.hpp"

namespace lightcone {
namespace {

constexpr double kPi = std::numbers::pi;

double h(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.3)) {
    std::ostringstream os;
    os << "epsilon must lie in (0, 0.3], got " << epsilon;
    throw ConfigError(os.str());
  }
}

void track(ZoneExtremum& z, double value, double theta) {
  if (!z.present || value > z.value) {
    z.value = value;
    z.theta = theta;
    z.present = true;
  }
}

}  // namespace

double CutoffFunction::operator()(double x) const {
  const double a = h(2.0 - x);
  const double b = h(x - 1.0);
  return a / (a + b);
}

CutoffFunction smooth_cutoff() { return CutoffFunction{}; }

double log_f_eps(double epsilon, double theta) {
  check_epsilon(epsilon);
  if (!(theta >= 0.0 && theta <= kPi)) throw DomainError("theta must lie in [0, pi]");
  const double w_eps = greens_w(epsilon);
  if (theta <= epsilon) return -(1.0 + epsilon) * w_eps;
  const double w = greens_w(theta);
  if (theta >= 2.0 * epsilon) return -(1.0 + epsilon) * w;
  const double g = smooth_cutoff()(theta / epsilon);
  return -(1.0 - g) * (1.0 + epsilon) * w - g * (1.0 + epsilon) * w_eps;
}

GridPtr construction_grid(double epsilon) {
  check_epsilon(epsilon);
  std::vector<PatchSpec> p;
  p.push_back({0.0, epsilon, PatchVariable::CosTheta, 16});
  for (int k = 0; k < 4; ++k) {
    p.push_back({epsilon * (1.0 + 0.25 * k), epsilon * (1.0 + 0.25 * (k + 1)),
                 PatchVariable::Mercator, 24});
  }
  const double lo = 2.0 * epsilon;
  const double hi = 0.75 * kPi;
  const int outer = std::max(4, static_cast<int>(std::ceil((hi - lo) / 0.15)));
  for (int k = 0; k < outer; ++k) {
    p.push_back({lo + (hi - lo) * k / outer, lo + (hi - lo) * (k + 1) / outer,
                 PatchVariable::Mercator, 16});
  }
  p.push_back({hi, kPi, PatchVariable::CosTheta, 16});
  return SphereGrid::axisymmetric(std::move(p));
}

EpsConstruction build_f_eps(double epsilon, const GridPtr& grid) {
  check_epsilon(epsilon);
  const double cap = 2.0 * epsilon;
  std::size_t rows = 0;
  for (double t : grid->theta_nodes()) rows += t <= cap ? 1 : 0;
  const std::size_t cap_nodes = rows * grid->n_phi();
  if (cap_nodes < 32) {
    std::ostringstream os;
    os << "grid has " << cap_nodes << " nodes in [0, 2 eps]; at least 32 are needed";
    throw ResolutionError(os.str());
  }
  ScalarField log_f =
      ScalarField::sample(grid, [epsilon](double t, double) { return log_f_eps(epsilon, t); });
  ScalarField f = log_f.map([](double x) { return std::exp(x); });
  return EpsConstruction{epsilon, std::move(log_f), std::move(f), cap, std::nullopt, 0.0,
                         cap_nodes};
}

EpsConstruction build_f_eps(double epsilon) {
  return build_f_eps(epsilon, construction_grid(epsilon));
}

ScalarField k_integrand(const EpsConstruction& c) {
  const ScalarField lap = laplacian(c.log_f);
  std::vector<double> v(lap.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c.f[i] * (1.0 - lap[i]);
  return ScalarField(c.f.grid_ptr(), std::move(v));
}

double compute_k_eps(EpsConstruction& c) {
  const CapSup s = sup_on_cap(k_integrand(c), c.cap_boundary);
  c.k_eps = s.value;
  c.k_theta = s.theta;
  return s.value;
}

ScalarField cap_energy(const GridPtr& grid, double value, double cap) {
  return ScalarField::sample(grid, [=](double t, double) { return t <= cap ? value : 0.0; });
}

TrappedReport verify_trapped(const SectionSpec& spec, const ScalarField& k, double margin,
                             std::optional<TrappedZones> zones) {
  require_same_grid(spec.f, k, "verify_trapped");
  if (!(margin >= 0.0)) throw ConfigError("margin must be nonnegative");
  const ScalarField& f = spec.f;
  const ScalarField lap = laplacian(f.map([](double x) { return std::log(x); }));

  TrappedReport r;
  r.threshold = std::max(margin, 1e-12);
  if (zones) r.cap_boundary = zones->cap_boundary;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double t = f.grid().theta_at(i);
    const double chi = 2.0 / f[i] * (1.0 - lap[i]);
    const double upper = chi - 2.0 * k[i] / (f[i] * f[i]);
    track(r.upper_max, upper, t);
    track(r.chibar_max, -2.0 / f[i], t);
    if (zones) {
      if (t <= zones->cap_boundary) {
        track(r.cap_upper_max, upper, t);
      } else {
        track(r.outer_upper_max, upper, t);
        track(r.outer_identity_max, chi + 2.0 * zones->epsilon / f[i], t);
      }
    }
  }
  r.trapped = r.upper_max.value < -r.threshold && r.chibar_max.value < -r.threshold;
  return r;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ConfigError("slope fit needs at least two matching points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

ScanResult asymptotic_scan(const std::vector<double>& eps_list, unsigned threads) {
  if (eps_list.size() < 2) throw ConfigError("scan needs at least two epsilon values");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    check_epsilon(eps_list[i]);
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw ConfigError("epsilon list must be strictly decreasing");
    }
  }
  ScanResult out;
  out.rows.resize(eps_list.size());
  std::vector<std::exception_ptr> errors(eps_list.size());

  auto work = [&](std::size_t i) {
    try {
      const double eps = eps_list[i];
      EpsConstruction c = build_f_eps(eps);
      ScanRow row;
      row.epsilon = eps;
      row.k_eps = compute_k_eps(c);
      row.k_theta = c.k_theta;
      row.f_at_0 = interpolate(c.f, 0.0, 0.0);
      row.eps2_f_at_0 = eps * eps * row.f_at_0;
      const ScalarField lap = laplacian(c.log_f);
      for (std::size_t n = 0; n < lap.size(); ++n) {
        const double t = lap.grid().theta_at(n);
        if (t >= eps && t <= 2.0 * eps) {
          row.band_lap_log_sup = std::max(row.band_lap_log_sup, std::abs(lap[n]));
        }
      }
      out.rows[i] = row;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(eps_list.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < eps_list.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < eps_list.size(); i += workers) work(i);
      });
    }
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<double> le, lf, lk;
  for (const ScanRow& r : out.rows) {
    le.push_back(std::log(r.epsilon));
    lf.push_back(std::log(r.f_at_0));
    lk.push_back(std::log(r.k_eps));
  }
  out.slope_f = least_squares_slope(le, lf);
  out.slope_k = least_squares_slope(le, lk);
  out.band_ratios_ok = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    const double ratio = out.rows[i].band_lap_log_sup / out.rows[i - 1].band_lap_log_sup;
    out.band_ratios.push_back(ratio);
    if (!(ratio <= 8.0 && ratio >= 1.0 / 8.0)) out.band_ratios_ok = false;
  }
  return out;
}

}  // namespace lightcone
