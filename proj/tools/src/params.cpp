#include "lightcone_cli/cli.hpp"

#include <sstream>

namespace lightcone::cli {
namespace {

using nlohmann::json;
using K = ParamKind;

std::vector<CommandSpec> build_specs() {
  std::vector<CommandSpec> out;
  out.push_back({"section",
                 "geometry of the section u = -f over the past cone",
                 {
                     {"shape", K::Text, "harmonic", "constant | marginal | harmonic | feps | file"},
                     {"grid", K::Text, "full", "full | axisym"},
                     {"n_theta", K::Integer, 64, "latitude nodes"},
                     {"n_phi", K::Integer, 128, "longitude nodes (full grid only)"},
                     {"theta_min", K::Real, 0.2, "lower edge of the axisym grid"},
                     {"value", K::Real, 1.0, "constant f, or the base of the harmonic shape"},
                     {"l", K::Integer, 2, "harmonic degree"},
                     {"m", K::Integer, 0, "harmonic order"},
                     {"amplitude", K::Real, 0.1, "f = value * exp(amplitude * Y_lm)"},
                     {"eps", K::Real, 0.1, "epsilon for the feps shape"},
                     {"field", K::OptionalText, nullptr, "CSV theta,phi,value in grid node order"},
                     {"route_tol", K::Real, 1e-9, "relative agreement of the two tr chi routes"},
                     {"tail_tol", K::Real, 1e-10, "spectral tail relative to the leading coefficient"},
                     {"classify_tol", K::Real, 1e-8, "tolerance for zero expansions"},
                 }});
  out.push_back({"hyperplane",
                 "section cut by the hyperplane a.x = c",
                 {
                     {"a", K::Reals, json::array({1.0, 0.0, 0.0, 0.0}), "a0,a1,a2,a3"},
                     {"c", K::Real, -1.0, "right-hand side"},
                     {"margin", K::Real, 0.1, "radians trimmed off an edge where f blows up"},
                     {"n_theta", K::Integer, 256, "grid size when f is constant"},
                     {"k_tol", K::Real, 1e-6, "allowed max - min of K"},
                 }});
  out.push_back({"greens",
                 "Green's function identity and the marginal surface e^-w",
                 {
                     {"tests", K::Texts, json::array({"1", "cos", "Y2", "Y4"}),
                      "test functions: 1, cos, Y<l> (zonal)"},
                     {"levels", K::Reals, json::array({128, 256, 512}), "refinement levels in n_theta"},
                     {"residual_tol", K::Real, 1e-3, "allowed residual at the finest level"},
                     {"pairing_n_theta", K::Integer, 512, "grid for the w cos pairing"},
                     {"pairing_tol", K::Real, 1e-6, "allowed error of int w cos = -2 pi"},
                     {"n_theta", K::Integer, 256, "marginal surface grid"},
                     {"theta_min", K::Real, 0.2, "marginal surface lower edge"},
                     {"chi_tol", K::Real, 1e-8, "allowed sup |tr chi|"},
                     {"chibar_tol", K::Real, 1e-10, "allowed sup |tr chibar - (cos - 1)|"},
                     {"n_phi", K::Integer, 16, "longitudes in the embedded surface CSV"},
                 }});
  out.push_back({"construct",
                 "build f_eps and k_eps and check the trapped inequality",
                 {
                     {"eps", K::Real, 0.1, "cap radius parameter"},
                     {"k_scale", K::Real, 1.1, "k = k_scale * k_eps on the cap"},
                     {"k", K::OptionalReal, nullptr, "absolute k on the cap, overrides k_scale"},
                     {"energy", K::OptionalText, nullptr,
                      "CSV theta,k energy per solid angle (as written by shortpulse)"},
                     {"margin", K::Real, 0.0, "verdict requires values below -margin"},
                     {"expect", K::OptionalText, nullptr, "trapped | not-trapped"},
                 }});
  out.push_back({"scan",
                 "f_eps(0) and k_eps against eps with log-log slopes",
                 {
                     {"eps", K::Reals, json::array({0.2, 0.1, 0.05, 0.025}), "strictly decreasing"},
                     {"slope_f_window", K::Reals, json::array({-2.3, -1.8}), "lo,hi"},
                     {"slope_k_window", K::Reals, json::array({-4.6, -3.7}), "lo,hi"},
                 }});
  out.push_back({"shortpulse",
                 "energy per solid angle of a short pulse",
                 {
                     {"delta", K::Real, 0.01, "pulse length"},
                     {"r0", K::Real, 2.0, "radius at the start of the pulse, > 1"},
                     {"time", K::Text, "bump", "bump | linear"},
                     {"angular", K::Text, "cap", "cap | uniform"},
                     {"amplitude", K::Real, 1.0, "seed amplitude"},
                     {"cap_eps", K::Real, 0.1, "angular cap parameter"},
                     {"mix", K::Real, 0.0, "polarisation angle"},
                     {"profile", K::OptionalText, nullptr, "CSV s,theta,psi11,psi12 seed table"},
                     {"n_theta", K::Integer, 64, "latitude nodes"},
                     {"nodes", K::Integer, 64, "quadrature nodes in the pulse"},
                     {"steps", K::Integer, 2000, "RK4 steps for the focusing check"},
                     {"feed_eps", K::OptionalReal, nullptr, "run the f_eps check with this k"},
                     {"expect", K::OptionalText, nullptr, "trapped | not-trapped (with feed_eps)"},
                 }});
  out.push_back({"selftest", "run the acceptance criteria", {}});
  return out;
}

bool matches(ParamKind kind, const json& v) {
  switch (kind) {
    case K::Real: return v.is_number();
    case K::Integer: return v.is_number_integer();
    case K::Text: return v.is_string();
    case K::Flag: return v.is_boolean();
    case K::OptionalReal: return v.is_null() || v.is_number();
    case K::OptionalText: return v.is_null() || v.is_string();
    case K::Reals:
      if (!v.is_array()) return false;
      for (const json& e : v) {
        if (!e.is_number()) return false;
      }
      return true;
    case K::Texts:
      if (!v.is_array()) return false;
      for (const json& e : v) {
        if (!e.is_string()) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

ExitCode exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::configuration:
    case ErrorKind::domain:
    case ErrorKind::empty_section:
    case ErrorKind::chart_degeneracy:
    case ErrorKind::io: return ExitCode::validation;
    case ErrorKind::usage:
    case ErrorKind::grid_mismatch: return ExitCode::usage;
    case ErrorKind::resolution:
    case ErrorKind::blow_up: return ExitCode::numerical;
  }
  return ExitCode::validation;
}

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> specs = build_specs();
  return specs;
}

const CommandSpec& command_spec(std::string_view name) {
  for (const CommandSpec& c : commands()) {
    if (c.name == name) return c;
  }
  throw UsageError("unknown command '" + std::string(name) + "'");
}

nlohmann::json resolve_params(const CommandSpec& spec, const nlohmann::json& given) {
  if (!given.is_object()) throw ConfigError("parameters for '" + spec.name + "' must be an object");
  json out = json::object();
  for (const ParamSpec& p : spec.params) {
    const auto it = given.find(p.key);
    const json& v = it == given.end() ? p.fallback : *it;
    if (!matches(p.kind, v)) {
      std::ostringstream os;
      os << spec.name << ": parameter '" << p.key << "' has the wrong type (" << v.dump() << ")";
      throw ConfigError(os.str());
    }
    // Real slots are stored as doubles so the resolved dump, and its hash,
    // does not depend on how a number was spelled.
    if ((p.kind == K::Real || p.kind == K::OptionalReal) && v.is_number()) {
      out[p.key] = v.get<double>();
    } else if (p.kind == K::Reals) {
      json arr = json::array();
      for (const json& e : v) arr.push_back(e.get<double>());
      out[p.key] = arr;
    } else {
      out[p.key] = v;
    }
  }
  for (const auto& [key, value] : given.items()) {
    if (!out.contains(key)) throw ConfigError(spec.name + ": unknown parameter '" + key + "'");
  }
  return out;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace lightcone::cli
