#include <cstdlib>
#include <deque>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "json_config.hpp"
#include "lightcone_cli/cli.hpp"

namespace {

using lightcone::cli::ParamKind;
using nlohmann::json;

struct Slot {
  const lightcone::cli::ParamSpec* spec = nullptr;
  const CLI::App* owner = nullptr;
  CLI::Option* option = nullptr;
  double real = 0.0;
  long long integer = 0;
  std::string text;
  bool flag = false;
  std::vector<double> reals;
  std::vector<std::string> texts;

  json value() const {
    switch (spec->kind) {
      case ParamKind::Real:
      case ParamKind::OptionalReal: return real;
      case ParamKind::Integer: return integer;
      case ParamKind::Text:
      case ParamKind::OptionalText: return text;
      case ParamKind::Flag: return flag;
      case ParamKind::Reals: return reals;
      case ParamKind::Texts: return texts;
    }
    return nullptr;
  }
};

std::string flag_name(std::string key) {
  for (char& ch : key) {
    if (ch == '_') ch = '-';
  }
  return "--" + key;
}

void add_param(CLI::App* sub, Slot& s) {
  const lightcone::cli::ParamSpec& p = *s.spec;
  const std::string name = flag_name(p.key);
  switch (p.kind) {
    case ParamKind::Real:
      s.real = p.fallback.get<double>();
      s.option = sub->add_option(name, s.real, p.help)->capture_default_str();
      break;
    case ParamKind::OptionalReal:
      s.option = sub->add_option(name, s.real, p.help);
      break;
    case ParamKind::Integer:
      s.integer = p.fallback.get<long long>();
      s.option = sub->add_option(name, s.integer, p.help)->capture_default_str();
      break;
    case ParamKind::Text:
      s.text = p.fallback.get<std::string>();
      s.option = sub->add_option(name, s.text, p.help)->capture_default_str();
      break;
    case ParamKind::OptionalText:
      s.option = sub->add_option(name, s.text, p.help);
      break;
    case ParamKind::Flag:
      s.option = sub->add_flag(name, s.flag, p.help);
      break;
    case ParamKind::Reals:
      s.option = sub->add_option(name, s.reals, p.help)->delimiter(',')->default_str(p.fallback.dump());
      break;
    case ParamKind::Texts:
      s.option = sub->add_option(name, s.texts, p.help)->delimiter(',')->default_str(p.fallback.dump());
      break;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trapped-surface geometry of sections of the Minkowski light cone.", "lightcone"};
  app.set_version_flag("--version", LIGHTCONE_VERSION);
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<lightcone::cli::JsonConfig>());
  app.set_config("--config", "", "JSON file mirroring the flags; flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::string out;
  unsigned threads = 1;
  bool quiet = false;
  app.add_option("--out", out, "output directory (default: $LIGHTCONE_OUTPUT_DIR, else .)");
  app.add_option("--threads", threads, "worker threads, 0 for all cores")->capture_default_str();
  app.add_flag("--quiet", quiet, "no summary on stdout");

  std::deque<Slot> slots;
  for (const lightcone::cli::CommandSpec& cmd : lightcone::cli::commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->fallthrough();
    for (const lightcone::cli::ParamSpec& p : cmd.params) {
      slots.push_back({});
      slots.back().spec = &p;
      slots.back().owner = sub;
      add_param(sub, slots.back());
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::string msg = e.what();
    // CLI11 words config errors for its INI reader.
    const std::string ini = "INI was not able to parse ";
    if (msg.rfind(ini, 0) == 0) msg = "config key not recognised: " + msg.substr(ini.size());
    std::cerr << "error: usage: " << msg << '\n';
    return static_cast<int>(lightcone::cli::ExitCode::usage);
  }

  const CLI::App* chosen = app.get_subcommands().front();
  lightcone::cli::RunConfig cfg;
  for (const Slot& s : slots) {
    if (s.owner == chosen && s.option->count() > 0) cfg.params[s.spec->key] = s.value();
  }
  if (!out.empty()) {
    cfg.out_dir = out;
  } else if (const char* env = std::getenv("LIGHTCONE_OUTPUT_DIR"); env && *env) {
    cfg.out_dir = env;
  }
  cfg.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  cfg.quiet = quiet;
  return lightcone::cli::run_guarded(chosen->get_name(), cfg);
}
