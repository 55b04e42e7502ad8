#include "lightcone_cli/cli.hpp"

#include <lightcone/lightcone.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "lightcone_acceptance/suite.hpp"

#ifndef LIGHTCONE_VERSION
#define LIGHTCONE_VERSION "0.0.0"
#endif

namespace lightcone::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

struct Report {
  json result = json::object();
  std::vector<std::string> artifacts;
  std::vector<std::string> failures;  ///< numerical acceptance failures
  std::string line;                   ///< one-line stdout summary
};

struct Context {
  const json& p;
  const RunConfig& cfg;
  Report& report;

  double real(const char* k) const { return p.at(k).get<double>(); }
  long long integer(const char* k) const { return p.at(k).get<long long>(); }
  std::size_t count(const char* k, long long lo) const {
    const long long v = integer(k);
    if (v < lo) throw ConfigError(std::string(k) + " must be at least " + std::to_string(lo));
    return static_cast<std::size_t>(v);
  }
  std::string text(const char* k) const { return p.at(k).get<std::string>(); }
  bool has(const char* k) const { return !p.at(k).is_null(); }
  std::vector<double> reals(const char* k) const { return p.at(k).get<std::vector<double>>(); }

  std::string csv(const std::string& name) const {
    report.artifacts.push_back(name);
    return (cfg.out_dir / name).string();
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

json extremum(const ZoneExtremum& z) {
  if (!z.present) return nullptr;
  return {{"value", z.value}, {"theta", z.theta}};
}

json margins_json(const ExpansionMargins& m) {
  return {{"tr_chi_min", m.tr_chi_min},
          {"tr_chi_max", m.tr_chi_max},
          {"tr_chibar_min", m.tr_chibar_min},
          {"tr_chibar_max", m.tr_chibar_max}};
}

json trapped_json(const TrappedReport& r) {
  json j = {{"verdict", r.trapped ? "trapped" : "not-trapped"},
            {"threshold", r.threshold},
            {"upper_max", extremum(r.upper_max)},
            {"chibar_max", extremum(r.chibar_max)}};
  if (r.cap_boundary > 0.0) {
    j["cap_boundary"] = r.cap_boundary;
    j["cap_upper_max"] = extremum(r.cap_upper_max);
    j["outer_upper_max"] = extremum(r.outer_upper_max);
    j["outer_identity_max"] = extremum(r.outer_identity_max);
  }
  return j;
}

void check_expect(const Context& c, bool trapped) {
  if (!c.has("expect")) return;
  const std::string e = c.text("expect");
  if (e != "trapped" && e != "not-trapped") {
    throw ConfigError("expect must be 'trapped' or 'not-trapped', got '" + e + "'");
  }
  if ((e == "trapped") != trapped) {
    c.report.failures.push_back(fmt("expected %s, got %s", e.c_str(), trapped ? "trapped" : "not-trapped"));
  }
}

// Real orthonormal harmonic: sqrt(2) cos / sin for m != 0, no Condon-Shortley phase.
double real_harmonic(std::size_t l, int m, double theta, double phi) {
  const std::size_t am = static_cast<std::size_t>(std::abs(m));
  std::vector<double> col(l - am + 1);
  normalized_legendre_column(am, l, std::cos(theta), std::sin(theta), col);
  const double p = col.back() / std::sqrt(2.0 * kPi);
  if (m == 0) return p;
  return std::numbers::sqrt2 * p * (m > 0 ? std::cos(am * phi) : std::sin(am * phi));
}

ScalarField read_field_csv(const std::string& path, const GridPtr& grid) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open field '" + path + "'");
  std::string line;
  std::getline(in, line);
  std::vector<double> values;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double t, ph, v;
    if (!(ls >> t >> ph >> v)) throw ConfigError("field '" + path + "' line " + std::to_string(row + 2) + " is malformed");
    if (row >= grid->size() || std::abs(t - grid->theta_at(row)) > 1e-12 ||
        std::abs(ph - grid->phi_at(row)) > 1e-12) {
      throw GridMismatchError("field '" + path + "' row " + std::to_string(row + 2) +
                              " does not match the grid node");
    }
    values.push_back(v);
    ++row;
  }
  if (row != grid->size()) {
    throw GridMismatchError("field '" + path + "' has " + std::to_string(row) + " rows, grid has " +
                            std::to_string(grid->size()) + " nodes");
  }
  return ScalarField(grid, std::move(values));
}

/// theta,k table interpolated linearly onto the grid, clamped to the end values.
ScalarField read_energy_csv(const std::string& path, const GridPtr& grid) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open energy profile '" + path + "'");
  std::string line;
  std::getline(in, line);
  std::vector<double> th, k;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a, b;
    if (!(ls >> a >> b)) throw ConfigError("energy profile '" + path + "' is malformed");
    if (!th.empty() && a <= th.back()) throw ConfigError("energy profile theta must increase");
    th.push_back(a);
    k.push_back(b);
  }
  if (th.empty()) throw ConfigError("energy profile '" + path + "' is empty");
  return ScalarField::sample(grid, [&](double t, double) {
    if (t <= th.front()) return k.front();
    if (t >= th.back()) return k.back();
    const std::size_t j = static_cast<std::size_t>(std::upper_bound(th.begin(), th.end(), t) - th.begin());
    const double s = (t - th[j - 1]) / (th[j] - th[j - 1]);
    return (1.0 - s) * k[j - 1] + s * k[j];
  });
}

// ---------------------------------------------------------------- section

void cmd_section(const Context& c) {
  const std::string shape = c.text("shape");
  const std::string mode = c.text("grid");
  if (mode != "full" && mode != "axisym") throw ConfigError("grid must be 'full' or 'axisym'");
  const bool full = mode == "full";

  auto make_grid = [&] {
    return full ? build_grid(GridMode::FullSphere, c.count("n_theta", 4), c.count("n_phi", 1), 0.0)
                : build_grid(GridMode::AxisymTruncated, c.count("n_theta", 4), 1, c.real("theta_min"));
  };

  std::optional<ScalarField> f;
  if (shape == "constant") {
    if (!(c.real("value") > 0.0)) throw DomainError("value must be positive");
    f = ScalarField::constant(make_grid(), c.real("value"));
  } else if (shape == "marginal") {
    if (full) throw ConfigError("the marginal shape 2/(1 - cos theta) needs grid = axisym");
    f = ScalarField::sample(make_grid(), [](double t, double) { return conformal_factor(t); });
  } else if (shape == "harmonic") {
    const long long l = c.integer("l");
    const long long m = c.integer("m");
    if (l < 0 || std::abs(m) > l) throw ConfigError("harmonic needs l >= 0 and |m| <= l");
    if (!full && m != 0) throw ConfigError("axisym grids only carry m = 0");
    const double base = c.real("value");
    const double amp = c.real("amplitude");
    if (!(base > 0.0)) throw DomainError("value must be positive");
    f = ScalarField::sample(make_grid(), [&](double t, double ph) {
      return base * std::exp(amp * real_harmonic(static_cast<std::size_t>(l), static_cast<int>(m), t, ph));
    });
  } else if (shape == "feps") {
    f = build_f_eps(c.real("eps")).f;
  } else if (shape == "file") {
    if (!c.has("field")) throw ConfigError("shape = file needs --field");
    f = read_field_csv(c.text("field"), make_grid());
  } else {
    throw ConfigError("unknown shape '" + shape + "'");
  }

  ExpansionOptions opt;
  opt.route_tolerance = c.real("route_tol");
  opt.tail_tolerance = c.real("tail_tol");
  const SectionGeometry g = compute_geometry(make_section(*f), c.real("classify_tol"), opt);
  const ScalarField residual = gauss_residual(g.spec, opt);
  const SphereGrid& grid = f->grid();

  c.report.result = {
      {"grid", {{"mode", to_string(grid.mode())}, {"n_theta", grid.n_theta()}, {"n_phi", grid.n_phi()}}},
      {"domain",
       {{"full_sphere", g.spec.domain.full_sphere},
        {"theta_min", g.spec.domain.theta_min},
        {"theta_max", g.spec.domain.theta_max},
        {"noncompact", g.spec.domain.noncompact}}},
      {"f_min", f->min()},
      {"f_max", f->max()},
      {"classification", to_string(g.classification)},
      {"margins", margins_json(g.margins)},
      {"K_min", g.K.min()},
      {"K_max", g.K.max()},
      {"gauss_residual_sup", residual.sup_norm()},
      {"route_discrepancy", g.route_discrepancy},
  };
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < f->size(); ++i) {
    rows.push_back({grid.theta_at(i), grid.phi_at(i), (*f)[i], g.tr_chi[i], g.tr_chibar[i], g.K[i]});
  }
  write_table_csv(c.csv("section_fields.csv"), {"theta", "phi", "f", "tr_chi", "tr_chibar", "K"}, rows);
  c.report.line = fmt("section: %s, K in [%.6g, %.6g]", to_string(g.classification), g.K.min(), g.K.max());
}

// ---------------------------------------------------------------- hyperplane

void cmd_hyperplane(const Context& c) {
  const std::vector<double> a = c.reals("a");
  if (a.size() != 4) throw ConfigError("a needs four components a0,a1,a2,a3");
  const Hyperplane h = make_hyperplane({a[0], a[1], a[2], a[3]}, c.real("c"));
  IntersectionOptions opt;
  opt.margin = c.real("margin");
  opt.n_theta = c.count("n_theta", 4);

  // Placeholders, overwritten by trichotomy_report.
  const ScalarField blank = ScalarField::constant(build_grid(GridMode::FullSphere, 4, 1, 0.0), 1.0);
  ConeIntersection cut{SectionSpec{blank, {}}};
  SectionGeometry geom{SectionSpec{blank, {}}, blank, blank, blank, Classification::Mixed, {}, 0.0};
  const TrichotomyReport r = trichotomy_report(h, opt, &cut, &geom);

  const double k_tol = c.real("k_tol");
  if (!(r.K_deviation <= k_tol)) {
    c.report.failures.push_back(fmt("K deviation %.3e above %.3e", r.K_deviation, k_tol));
  }
  if (!r.sign_consistent) c.report.failures.push_back("sign of K does not match the plane class");

  c.report.result = {
      {"normalized", {{"a", {h.a.a0, h.a.a1, h.a.a2, h.a.a3}}, {"c", h.c}}},
      {"class", to_string(r.plane_class)},
      {"K", r.K_mean},
      {"K_min", r.K_min},
      {"K_max", r.K_max},
      {"K_deviation", r.K_deviation},
      {"sign_consistent", r.sign_consistent},
      {"classification", to_string(r.classification)},
      {"noncompact", r.noncompact},
      {"margins", margins_json(r.margins)},
      {"route_discrepancy", r.route_discrepancy},
      {"frame",
       {{"theta_min", r.theta_min},
        {"has_edge", r.has_edge},
        {"edge_theta", r.edge_theta},
        {"margin", r.margin},
        {"sign", cut.sign},
        {"spatial_norm", cut.spatial_norm}}},
  };
  std::vector<std::vector<double>> rows;
  const ScalarField& f = cut.spec.f;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const EventRect x = section_point(cut, i);
    rows.push_back({f.grid().theta_at(i), f[i], geom.K[i], geom.tr_chi[i], geom.tr_chibar[i], x.x0, x.x1, x.x2, x.x3});
  }
  write_table_csv(c.csv("hyperplane_section.csv"),
                  {"theta", "f", "K", "tr_chi", "tr_chibar", "x0", "x1", "x2", "x3"}, rows);
  c.report.line = fmt("hyperplane: %s plane, K = %.10g (deviation %.2e), %s", to_string(r.plane_class),
                      r.K_mean, r.K_deviation, to_string(r.classification));
}

// ---------------------------------------------------------------- greens

std::function<double(double, double)> test_function(const std::string& name) {
  if (name == "1") return [](double, double) { return 1.0; };
  if (name == "cos") return [](double t, double) { return std::cos(t); };
  if (name.size() > 1 && name.size() < 5 && name[0] == 'Y' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
    const std::size_t l = std::stoul(name.substr(1));
    return [l](double t, double ph) { return real_harmonic(l, 0, t, ph); };
  }
  throw ConfigError("unknown test function '" + name + "' (use 1, cos or Y<l>)");
}

void cmd_greens(const Context& c) {
  std::vector<std::size_t> levels;
  for (double v : c.reals("levels")) {
    if (!(v >= 4.0) || v != std::floor(v)) throw ConfigError("levels must be integers >= 4");
    levels.push_back(static_cast<std::size_t>(v));
  }
  if (levels.empty()) throw ConfigError("levels must not be empty");
  const double res_tol = c.real("residual_tol");

  json studies = json::object();
  double worst = 0.0;
  for (const std::string& name : c.p.at("tests").get<std::vector<std::string>>()) {
    const RefinementStudy s = refinement_study(test_function(name), levels);
    worst = std::max(worst, s.residual.back());
    if (!(s.residual.back() <= res_tol)) {
      c.report.failures.push_back(fmt("%s: residual %.3e above %.3e", name.c_str(), s.residual.back(), res_tol));
    }
    if (!s.monotone) c.report.failures.push_back(name + ": residual does not decrease under refinement");
    studies[name] = {{"n_theta", s.n_theta}, {"residual", s.residual}, {"monotone", s.monotone}};
  }

  const GridPtr pg = build_grid(GridMode::FullSphere, c.count("pairing_n_theta", 4), 1, 0.0);
  const double pairing = pairing_with_w(ScalarField::sample(pg, [](double t, double) { return std::cos(t); }));
  const double pairing_err = std::abs(pairing + 2.0 * kPi);
  if (!(pairing_err <= c.real("pairing_tol"))) {
    c.report.failures.push_back(fmt("int w cos error %.3e", pairing_err));
  }

  const GridPtr mg = build_grid(GridMode::AxisymTruncated, c.count("n_theta", 4), 1, c.real("theta_min"));
  const MarginalSurfaceCheck m = marginal_surface_check(mg);
  if (!(m.tr_chi_sup <= c.real("chi_tol"))) c.report.failures.push_back(fmt("sup |tr chi| %.3e", m.tr_chi_sup));
  if (!(m.tr_chibar_error <= c.real("chibar_tol"))) {
    c.report.failures.push_back(fmt("tr chibar error %.3e", m.tr_chibar_error));
  }

  c.report.result = {
      {"distributional", studies},
      {"w_cos_pairing", {{"value", pairing}, {"error", pairing_err}}},
      {"marginal_surface",
       {{"theta_min", c.real("theta_min")},
        {"laplacian_w_error", m.laplacian_w_error},
        {"gradient_sq_error", m.gradient_sq_error},
        {"tr_chi_sup", m.tr_chi_sup},
        {"tr_chibar_error", m.tr_chibar_error},
        {"K_sup", m.K_sup},
        {"gauss_residual_sup", m.gauss_residual_sup}}},
  };
  const std::size_t nphi = c.count("n_phi", 1);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < mg->size(); ++i) {
    const double t = mg->theta_at(i);
    for (std::size_t j = 0; j < nphi; ++j) {
      const double ph = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(nphi);
      const EventRect x = embed_marginal_section(t, ph);
      rows.push_back({t, ph, x.x0, x.x1, x.x2, x.x3});
    }
  }
  write_table_csv(c.csv("greens_surface.csv"), {"theta", "phi", "x0", "x1", "x2", "x3"}, rows);
  c.report.line = fmt("greens: worst residual %.2e, w cos error %.2e, sup |tr chi| %.2e", worst,
                      pairing_err, m.tr_chi_sup);
}

// ---------------------------------------------------------------- construct

void cmd_construct(const Context& c) {
  const double eps = c.real("eps");
  EpsConstruction e = build_f_eps(eps);
  const double k_eps = compute_k_eps(e);
  const GridPtr& g = e.f.grid_ptr();

  ScalarField k = ScalarField::constant(g, 0.0);
  json energy;
  if (c.has("energy")) {
    k = focusing_strength(read_energy_csv(c.text("energy"), g));
    energy = {{"source", "file"}, {"focusing_max", k.max()}};
  } else {
    const double cap_k = c.has("k") ? c.real("k") : c.real("k_scale") * k_eps;
    k = cap_energy(g, cap_k, 2.0 * eps);
    energy = {{"source", c.has("k") ? "k" : "k_scale"}, {"cap_value", cap_k}};
  }

  const SectionSpec spec = make_section(e.f);
  const TrappedReport r = verify_trapped(spec, k, c.real("margin"), TrappedZones{2.0 * eps, eps});
  check_expect(c, r.trapped);

  c.report.result = {
      {"epsilon", eps},
      {"k_eps", k_eps},
      {"k_theta", e.k_theta},
      {"f_eps_at_0", std::exp(log_f_eps(eps, 0.0))},
      {"cap_nodes", e.cap_nodes},
      {"energy", energy},
      {"trapped", trapped_json(r)},
  };
  const ScalarField lap = laplacian(e.log_f);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < e.f.size(); ++i) {
    const double f = e.f[i];
    rows.push_back({g->theta_at(i), f, 2.0 / f * (1.0 - lap[i]) - 2.0 * k[i] / (f * f), -2.0 / f});
  }
  write_table_csv(c.csv("construct.csv"), {"theta", "f_eps", "tr_chi_upper", "tr_chibar"}, rows);
  c.report.line = fmt("construct: eps %.4g, k_eps %.6g, verdict %s", eps, k_eps,
                      r.trapped ? "trapped" : "not-trapped");
}

// ---------------------------------------------------------------- scan

std::pair<double, double> window(const Context& c, const char* key) {
  const std::vector<double> w = c.reals(key);
  if (w.size() != 2 || !(w[0] <= w[1])) throw ConfigError(std::string(key) + " needs lo,hi with lo <= hi");
  return {w[0], w[1]};
}

void cmd_scan(const Context& c) {
  const auto [flo, fhi] = window(c, "slope_f_window");
  const auto [klo, khi] = window(c, "slope_k_window");
  const ScanResult s = asymptotic_scan(c.reals("eps"), c.cfg.threads);
  const bool f_ok = s.slope_f >= flo && s.slope_f <= fhi;
  const bool k_ok = s.slope_k >= klo && s.slope_k <= khi;
  if (!f_ok) c.report.failures.push_back(fmt("slope of f_eps(0) %.4f outside [%g, %g]", s.slope_f, flo, fhi));
  if (!k_ok) c.report.failures.push_back(fmt("slope of k_eps %.4f outside [%g, %g]", s.slope_k, klo, khi));

  json rows = json::array();
  std::vector<std::vector<double>> table;
  for (const ScanRow& r : s.rows) {
    rows.push_back({{"epsilon", r.epsilon},
                    {"f_eps_at_0", r.f_at_0},
                    {"k_eps", r.k_eps},
                    {"k_theta", r.k_theta},
                    {"band_lap_log_sup", r.band_lap_log_sup},
                    {"eps2_f_eps_at_0", r.eps2_f_at_0}});
    table.push_back({r.epsilon, r.f_at_0, r.k_eps, s.slope_f, s.slope_k});
  }
  c.report.result = {{"rows", rows},
                     {"slope_f", s.slope_f},
                     {"slope_k", s.slope_k},
                     {"slope_f_in_window", f_ok},
                     {"slope_k_in_window", k_ok},
                     {"band_ratios", s.band_ratios},
                     {"band_ratios_ok", s.band_ratios_ok}};
  write_table_csv(c.csv("scan.csv"), {"epsilon", "f_eps_at_0", "k_eps", "slope_f", "slope_k"}, table);
  c.report.line = fmt("scan: slope f_eps(0) %.4f, slope k_eps %.4f", s.slope_f, s.slope_k);
}

// ---------------------------------------------------------------- shortpulse

void cmd_shortpulse(const Context& c) {
  const double delta = c.real("delta");
  const double r0 = c.real("r0");
  std::optional<PulseProfile> pulse;
  if (c.has("profile")) {
    pulse = PulseProfile::tabulated(read_tabulated_seed(c.text("profile")), delta, r0);
  } else {
    SeparableSeed seed;
    const std::string time = c.text("time");
    const std::string ang = c.text("angular");
    if (time != "bump" && time != "linear") throw ConfigError("time must be 'bump' or 'linear'");
    if (ang != "cap" && ang != "uniform") throw ConfigError("angular must be 'cap' or 'uniform'");
    seed.time = time == "bump" ? TimeShape::Bump : TimeShape::Linear;
    seed.angular = ang == "cap" ? AngularShape::Cap : AngularShape::Uniform;
    seed.amplitude = c.real("amplitude");
    seed.cap_epsilon = c.real("cap_eps");
    seed.mix = c.real("mix");
    pulse = PulseProfile::separable(seed, delta, r0);
  }

  std::optional<EpsConstruction> feed;
  GridPtr grid;
  if (c.has("feed_eps")) {
    feed = build_f_eps(c.real("feed_eps"));
    grid = feed->f.grid_ptr();
  } else {
    grid = build_grid(GridMode::AxisymTruncated, c.count("n_theta", 4), 1, 0.0);
  }

  const ScalarField k = energy_per_solid_angle(*pulse, grid, c.count("nodes", 64), c.cfg.threads);
  const ScalarField focus = focusing_strength(k);
  const std::size_t imax = k.argmax();
  const double tmax = grid->theta_at(imax);
  const PulseProfile& p = *pulse;
  const RaychaudhuriResult ray = integrate_raychaudhuri(
      2.0 / r0, [&](double ub) { return 2.0 * energy_density(p, ub, tmax, 0.0); }, delta, c.count("steps", 1));

  c.report.result = {
      {"leading_order", true},
      {"k_max", k.max()},
      {"theta_at_max", tmax},
      {"focusing_max", focus.max()},
      {"raychaudhuri",
       {{"theta", tmax},
        {"tr_chi", ray.tr_chi},
        {"bound", ray.bound},
        {"shear_integral", ray.shear_integral},
        {"focused", ray.focused},
        {"focus_location", ray.focus_location}}},
      {"trapped_bound", trapped_bound(-r0, focus.max(), delta)},
      {"final_check", final_check(delta, focus.max())},
  };
  if (feed) {
    const double k_eps = compute_k_eps(*feed);
    const double eps = feed->epsilon;
    const TrappedReport r = verify_trapped(make_section(feed->f), focus, 0.0, TrappedZones{2.0 * eps, eps});
    check_expect(c, r.trapped);
    c.report.result["construction"] = {{"epsilon", eps}, {"k_eps", k_eps}, {"trapped", trapped_json(r)}};
  } else if (c.has("expect")) {
    throw ConfigError("expect needs feed_eps");
  }

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < k.size(); ++i) rows.push_back({grid->theta_at(i), k[i]});
  write_table_csv(c.csv("shortpulse.csv"), {"theta", "k"}, rows);
  c.report.line = fmt("shortpulse: k max %.6g at theta %.4f, tr chi(delta) %.6g", k.max(), tmax, ray.tr_chi);
}

// ---------------------------------------------------------------- selftest

void cmd_selftest(const Context& c) {
  const std::vector<acceptance::Criterion> res = acceptance::run_suite();
  std::string lines;
  for (const acceptance::Criterion& r : res) {
    if (!r.pass) c.report.failures.push_back(fmt("criterion %d failed", r.id));
    lines += acceptance::format_line(r) + "\n";
  }
  c.report.result = {{"criteria", acceptance::to_json(res)}};
  c.report.line = lines + fmt("%zu criteria, %zu failed", res.size(), c.report.failures.size());
}

void write_report(const RunConfig& cfg, const std::string& command, const json& params, const Report& r) {
  const std::string dump = json{{"command", command}, {"params", params}}.dump();
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(dump)));
  const json doc = {
      {"metadata",
       {{"tool", "lightcone"}, {"version", LIGHTCONE_VERSION}, {"command", command}, {"config_hash", hash}}},
      {"config", params},
      {"status", r.failures.empty() ? "ok" : "acceptance_failure"},
      {"failures", r.failures},
      {"result", r.result},
      {"artifacts", r.artifacts},
  };
  const fs::path path = cfg.out_dir / (command + ".json");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

ExitCode run(const std::string& command, const RunConfig& config) {
  const CommandSpec& spec = command_spec(command);
  const json params = resolve_params(spec, config.params);
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + config.out_dir.string() + "': " + ec.message());

  Report report;
  const Context ctx{params, config, report};
  if (command == "section") cmd_section(ctx);
  else if (command == "hyperplane") cmd_hyperplane(ctx);
  else if (command == "greens") cmd_greens(ctx);
  else if (command == "construct") cmd_construct(ctx);
  else if (command == "scan") cmd_scan(ctx);
  else if (command == "shortpulse") cmd_shortpulse(ctx);
  else if (command == "selftest") cmd_selftest(ctx);

  write_report(config, command, params, report);
  if (!config.quiet) {
    std::cout << report.line << '\n';
    for (const std::string& f : report.failures) std::cout << "acceptance failure: " << f << '\n';
  }
  return report.failures.empty() ? ExitCode::ok : ExitCode::numerical;
}

int run_guarded(const std::string& command, const RunConfig& config) {
  try {
    return static_cast<int>(run(command, config));
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return static_cast<int>(exit_code_for(e.kind()));
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: configuration: " << e.what() << '\n';
    return static_cast<int>(ExitCode::validation);
  }
}

}  // namespace lightcone::cli
