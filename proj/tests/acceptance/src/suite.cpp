#include "lightcone_acceptance/suite.hpp"

#include <lightcone/lightcone.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "lightcone_acceptance/oracles.hpp"

namespace lightcone::acceptance {
namespace {

constexpr double kPi = std::numbers::pi;
using nlohmann::json;

std::string fmt(const char* f, auto... args) {
  char buf[1024];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Criterion make(int id, const char* title) {
  Criterion c;
  c.id = id;
  c.title = title;
  return c;
}

// log f of a random bandlimited f is not bandlimited; its spectrum needs
// up to about 180 degrees to reach roundoff when min f sits near 0.5.
GridPtr random_field_grid() { return build_grid(GridMode::FullSphere, 192, 384, 0.0); }

double sup_diff(const ScalarField& a, const std::function<double(std::size_t)>& ref) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - ref(i)));
  return e;
}

Criterion spherical_operators() {
  Criterion c = make(1, "spherical operator fidelity");
  const GridPtr g = build_grid(GridMode::FullSphere, 64, 128, 0.0);
  double worst = 0.0;
  int worst_l = 0;
  int worst_m = 0;
  for (int l = 0; l <= 32; ++l) {
    for (int m = -l; m <= l; ++m) {
      const ScalarField y = ScalarField::sample(
          g, [&](double t, double p) { return oracle::spherical_harmonic(l, m, t, p); });
      const ScalarField lap = laplacian(y);
      const double e = sup_diff(lap, [&](std::size_t i) { return -l * (l + 1.0) * y[i]; }) /
                       y.sup_norm();
      if (e > worst) {
        worst = e;
        worst_l = l;
        worst_m = m;
      }
    }
  }
  const double area_err = std::abs(integrate(ScalarField::constant(g, 1.0)) - 4.0 * kPi);
  c.pass = worst <= 1e-10 && area_err <= 1e-12;
  c.summary = fmt("eigen error %.2e at (l,m)=(%d,%d) [<= 1e-10], area error %.2e [<= 1e-12]",
                  worst, worst_l, worst_m, area_err);
  c.details = {{"eigen_error", worst}, {"worst_l", worst_l}, {"worst_m", worst_m},
               {"area_error", area_err}};
  return c;
}

Criterion marginal_surface() {
  Criterion c = make(2, "marginal surface e^-w on [0.2, pi]");
  const GridPtr g = build_grid(GridMode::AxisymTruncated, 256, 1, 0.2);
  const ScalarField f =
      ScalarField::sample(g, [](double t, double) { return 2.0 / (1.0 - std::cos(t)); });
  const NullExpansions e = null_expansions(make_section(f));
  const double chi = e.tr_chi.sup_norm();
  const double chibar =
      sup_diff(e.tr_chibar, [&](std::size_t i) { return std::cos(g->theta_at(i)) - 1.0; });
  c.pass = chi <= 1e-8 && chibar <= 1e-10;
  c.summary = fmt("sup|tr chi| %.2e [<= 1e-8], sup|tr chibar - (cos-1)| %.2e [<= 1e-10]", chi,
                  chibar);
  c.details = {{"tr_chi_sup", chi}, {"tr_chibar_error", chibar}};
  return c;
}

Criterion trichotomy() {
  Criterion c = make(3, "hyperplane trichotomy");
  struct Case {
    const char* name;
    Covector4 a;
    double cc;
    double margin;
    double K;
    HyperplaneClass cls;
    Classification expect;
  };
  const Case cases[] = {
      {"H_s", {1, 0, 0, 0}, -1.0, 0.1, 1.0, HyperplaneClass::SpacelikePlane,
       Classification::Untrapped},
      {"H_n", {1, 0, 0, 1}, -2.0, 0.1, 0.0, HyperplaneClass::NullPlane,
       Classification::MarginallyTrappedOutgoing},
      {"H_t", {0, 0, 0, 1}, -1.0, 0.2, -1.0, HyperplaneClass::TimelikePlane,
       Classification::Trapped},
  };
  bool ok = true;
  std::string parts;
  for (const Case& k : cases) {
    IntersectionOptions opt;
    opt.margin = k.margin;
    const TrichotomyReport r = trichotomy_report(make_hyperplane(k.a, k.cc), opt);
    const double kerr = std::max(std::abs(r.K_min - k.K), std::abs(r.K_max - k.K));
    bool good = kerr <= 1e-8 && r.plane_class == k.cls && r.classification == k.expect;
    if (k.cls == HyperplaneClass::TimelikePlane) {
      good = good && r.noncompact && std::abs(r.theta_min - (0.5 * kPi + 0.2)) <= 1e-12;
    }
    ok = ok && good;
    parts += fmt("%s K err %.1e %s; ", k.name, kerr, to_string(r.classification));
    c.details[k.name] = {{"K_error", kerr},
                         {"class", to_string(r.plane_class)},
                         {"classification", to_string(r.classification)},
                         {"noncompact", r.noncompact},
                         {"pass", good}};
  }

  oracle::Rng rng(20240311);
  double worst = 0.0;
  int drawn = 0;
  int skipped = 0;
  int failures = 0;
  while (drawn < 100) {
    const oracle::HyperplaneDraw d = oracle::random_hyperplane(rng);
    try {
      const TrichotomyReport r = trichotomy_report(make_hyperplane(d.a, d.c));
      worst = std::max(worst, r.K_deviation);
      if (!r.sign_consistent) ++failures;
      ++drawn;
    } catch (const EmptySectionError&) {
      ++skipped;
    } catch (const Error&) {
      ++failures;
      ++drawn;
    }
  }
  ok = ok && worst <= 1e-6 && failures == 0;
  c.pass = ok;
  c.summary = parts + fmt("random: max K deviation %.2e [<= 1e-6], %d failures, %d empty redrawn",
                          worst, failures, skipped);
  c.details["random"] = {
      {"count", drawn}, {"max_K_deviation", worst}, {"failures", failures}, {"redrawn", skipped}};
  return c;
}

Criterion gauss_equation() {
  Criterion c = make(4, "Gauss equation residual");
  const GridPtr g = random_field_grid();
  oracle::Rng rng(4);
  double worst = 0.0;
  int failures = 0;
  for (int n = 0; n < 50; ++n) {
    const ScalarField f = oracle::random_bandlimited(rng, g, 8, 0.5, 2.0);
    try {
      worst = std::max(worst, gauss_residual(make_section(f)).sup_norm());
    } catch (const Error&) {
      ++failures;
    }
  }
  c.pass = worst <= 1e-8 && failures == 0;
  c.summary = fmt("max residual %.2e over 50 fields [<= 1e-8], %d failures", worst, failures);
  c.details = {{"max_residual", worst}, {"failures", failures}};
  return c;
}

Criterion greens_identity() {
  Criterion c = make(5, "Green's distributional identity");
  const std::vector<std::size_t> levels{128, 256, 512};
  struct Test {
    const char* name;
    std::function<double(double, double)> fn;
  };
  const Test tests[] = {
      {"1", [](double, double) { return 1.0; }},
      {"cos", [](double t, double) { return std::cos(t); }},
      {"Y20", [](double t, double p) { return oracle::spherical_harmonic(2, 0, t, p); }},
      {"Y40", [](double t, double p) { return oracle::spherical_harmonic(4, 0, t, p); }},
  };
  bool ok = true;
  std::string parts;
  for (const Test& t : tests) {
    const RefinementStudy s = refinement_study(t.fn, levels);
    const bool good = s.residual.back() <= 1e-3 && s.monotone;
    ok = ok && good;
    parts += fmt("%s %.1e%s; ", t.name, s.residual.back(), s.monotone ? "" : " (not monotone)");
    c.details[t.name] = {{"residuals", s.residual}, {"monotone", s.monotone}};
  }
  const GridPtr g = build_grid(GridMode::FullSphere, 512, 1, 0.0);
  const double pairing =
      pairing_with_w(ScalarField::sample(g, [](double t, double) { return std::cos(t); }));
  const double err = std::abs(pairing + 2.0 * kPi);
  ok = ok && err <= 1e-6;
  c.pass = ok;
  c.summary = parts + fmt("|int w cos + 2pi| %.2e [<= 1e-6]", err);
  c.details["w_cos_error"] = err;
  return c;
}

Criterion transformation_reduction() {
  Criterion c = make(6, "transformation formula, Minkowski reduction");
  const GridPtr g = random_field_grid();
  oracle::Rng rng(6);
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    const ScalarField f = oracle::random_bandlimited(rng, g, 8, 0.5, 2.0);
    const TransformationResult t = transformation_general(BackgroundFields::minkowski(f), f);
    const ScalarField lap_log = laplacian(f.map([](double v) { return std::log(v); }));
    worst = std::max(worst, sup_diff(t.tr_chi, [&](std::size_t i) {
                       return 2.0 / f[i] * (1.0 - lap_log[i]);
                     }));
  }
  c.pass = worst <= 1e-10;
  c.summary = fmt("max |formula - (2/f)(1 - lap log f)| %.2e over 20 fields [<= 1e-10]", worst);
  c.details = {{"max_error", worst}};
  return c;
}

Criterion construction() {
  Criterion c = make(7, "f_eps construction");
  bool ok = true;
  std::string parts;
  for (double eps : {0.2, 0.1, 0.05}) {
    EpsConstruction e = build_f_eps(eps);
    const GridPtr& g = e.f.grid_ptr();
    const ScalarField lap = laplacian(e.log_f);
    double outer = 0.0;
    for (std::size_t i = 0; i < lap.size(); ++i) {
      if (g->theta_at(i) >= 2.0 * eps + 0.05) outer = std::max(outer, std::abs(lap[i] - 1.0 - eps));
    }
    const double k = compute_k_eps(e);
    const SectionSpec spec = make_section(e.f);
    const TrappedZones zones{2.0 * eps, eps};
    const TrappedReport with = verify_trapped(spec, cap_energy(g, 1.1 * k, 2.0 * eps), 0.0, zones);
    const TrappedReport without = verify_trapped(spec, ScalarField::constant(g, 0.0), 0.0, zones);
    const bool good = outer <= 1e-8 && with.trapped && !without.trapped;
    ok = ok && good;
    parts += fmt("eps %.2f: outer %.1e, 1.1k %s, k=0 %s; ", eps, outer,
                 with.trapped ? "trapped" : "NOT trapped", without.trapped ? "TRAPPED" : "not trapped");
    c.details[fmt("%.3f", eps)] = {{"outer_identity_error", outer},
                                   {"k_eps", k},
                                   {"trapped_with_k", with.trapped},
                                   {"trapped_without_k", without.trapped},
                                   {"upper_max_with_k", with.upper_max.value}};
  }
  c.pass = ok;
  c.summary = parts.substr(0, parts.size() - 2);
  return c;
}

Criterion asymptotics() {
  Criterion c = make(8, "asymptotic scan");
  const std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
  const ScanResult s = asymptotic_scan(eps);
  double worst_rel = 0.0;
  json rows = json::array();
  for (const ScanRow& r : s.rows) {
    const oracle::KEpsOracle o = oracle::k_eps_dense(r.epsilon);
    const double rel = std::abs(r.k_eps - o.value) / o.value;
    worst_rel = std::max(worst_rel, rel);
    rows.push_back({{"epsilon", r.epsilon},
                    {"f_eps_at_0", r.f_at_0},
                    {"f_eps_at_0_closed_form", oracle::f_eps_at_pole(r.epsilon)},
                    {"k_eps", r.k_eps},
                    {"k_eps_oracle", o.value},
                    {"relative_error", rel}});
  }
  const bool f_ok = s.slope_f >= -2.3 && s.slope_f <= -1.8;
  const bool k_ok = s.slope_k >= -4.6 && s.slope_k <= -3.7;
  c.pass = f_ok && k_ok && worst_rel <= 1e-3;
  c.summary = fmt("slope f_eps(0) %.3f [-2.3, -1.8]%s, slope k_eps %.3f [-4.6, -3.7]%s, "
                  "k_eps vs dense oracle %.1e [<= 1e-3]",
                  s.slope_f, f_ok ? "" : " OUT", s.slope_k, k_ok ? "" : " OUT", worst_rel);
  c.details = {{"slope_f", s.slope_f}, {"slope_k", s.slope_k}, {"rows", rows},
               {"max_oracle_relative_error", worst_rel}};
  return c;
}

Criterion short_pulse() {
  Criterion c = make(9, "short-pulse pipeline");
  oracle::Rng rng(9);
  double det_err = 0.0;
  for (int n = 0; n < 10000; ++n) {
    // Frobenius norm of diag(a, -a) + offdiag(b) is sqrt(2 (a^2 + b^2)) <= 5.
    const double r = 5.0 / std::numbers::sqrt2 * std::sqrt(rng.uniform(0.0, 1.0));
    const double t = rng.uniform(0.0, 2.0 * kPi);
    const Sym2 m = exp_tracefree({r * std::cos(t), r * std::sin(t), -r * std::cos(t)});
    det_err = std::max(det_err, std::abs(det(m) - 1.0));
  }

  double riccati = 0.0;
  for (double r0 : {1.0, 2.0, 5.0}) {
    for (double x : {0.1, 1.0}) {
      const RaychaudhuriResult res =
          integrate_raychaudhuri(2.0 / r0, [](double) { return 0.0; }, x, 1000);
      riccati = std::max(riccati, std::abs(res.tr_chi - 2.0 / (r0 + x)));
    }
  }

  double worst_gap = -1e300;
  for (int n = 0; n < 20; ++n) {
    const double amp = rng.uniform(0.0, 3.0);
    const double width = rng.uniform(0.05, 1.0);
    const double r0 = rng.uniform(1.0, 4.0);
    const double delta = rng.uniform(0.05, 1.0);
    const RaychaudhuriResult res = integrate_raychaudhuri(
        2.0 / r0, [&](double ub) { return amp * std::exp(-ub / width); }, delta, 400);
    if (!res.focused) worst_gap = std::max(worst_gap, res.tr_chi - res.bound);
  }

  const double below = final_check(0.01, 1.2);
  const double at = final_check(0.0, 1.0);
  c.pass = det_err <= 1e-12 && riccati <= 1e-10 && worst_gap <= 1e-12 && below < 0.0 && at == 0.0;
  c.summary = fmt("det err %.1e [<= 1e-12], Riccati err %.1e [<= 1e-10], max(trchi - bound) %.2e "
                  "[<= 1e-12], final_check(0.01,1.2) = %.4f, final_check(0,1) = %g",
                  det_err, riccati, worst_gap, below, at);
  c.details = {{"det_error", det_err},     {"riccati_error", riccati},
               {"max_bound_gap", worst_gap}, {"final_check_0.01_1.2", below},
               {"final_check_0_1", at}};
  return c;
}

Criterion guarded(int id, const char* title, Criterion (*fn)()) {
  try {
    return fn();
  } catch (const Error& e) {
    Criterion c = make(id, title);
    c.summary = fmt("error: %s: %s", std::string(to_string(e.kind())).c_str(), e.what());
    c.details = {{"error", c.summary}};
    return c;
  }
}

}  // namespace

std::vector<Criterion> run_criteria() {
  return {
      guarded(1, "spherical operator fidelity", spherical_operators),
      guarded(2, "marginal surface e^-w on [0.2, pi]", marginal_surface),
      guarded(3, "hyperplane trichotomy", trichotomy),
      guarded(4, "Gauss equation residual", gauss_equation),
      guarded(5, "Green's distributional identity", greens_identity),
      guarded(6, "transformation formula, Minkowski reduction", transformation_reduction),
      guarded(7, "f_eps construction", construction),
      guarded(8, "asymptotic scan", asymptotics),
      guarded(9, "short-pulse pipeline", short_pulse),
  };
}

std::vector<Criterion> run_suite() {
  std::vector<Criterion> first = run_criteria();
  const std::vector<Criterion> second = run_criteria();
  const std::string a = to_json(first).dump();
  const std::string b = to_json(second).dump();
  Criterion c = make(10, "determinism");
  c.pass = a == b;
  c.summary = c.pass ? fmt("two passes serialize identically (%zu bytes)", a.size())
                     : std::string("two passes differ");
  c.details = {{"bytes", a.size()}, {"identical", c.pass}};
  first.push_back(std::move(c));
  return first;
}

json to_json(const std::vector<Criterion>& results) {
  json out = json::array();
  for (const Criterion& c : results) {
    out.push_back({{"id", c.id},
                   {"title", c.title},
                   {"pass", c.pass},
                   {"summary", c.summary},
                   {"details", c.details}});
  }
  return out;
}

std::string format_line(const Criterion& c) {
  return fmt("%s %2d  %s: %s", c.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), c.summary.c_str());
}

}  // namespace lightcone::acceptance
