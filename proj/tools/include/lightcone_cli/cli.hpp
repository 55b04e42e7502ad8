#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <lightcone/errors.hpp>

namespace lightcone::cli {

enum class ExitCode : int {
  ok = 0,
  validation = 1,
  usage = 2,
  numerical = 3,
};

ExitCode exit_code_for(ErrorKind kind) noexcept;

enum class ParamKind { Real, Integer, Text, Flag, Reals, Texts, OptionalReal, OptionalText };

struct ParamSpec {
  std::string key;  ///< JSON key; the flag is the same with '-' for '_'
  ParamKind kind = ParamKind::Real;
  nlohmann::json fallback;  ///< null for optional parameters
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<ParamSpec> params;
};

const std::vector<CommandSpec>& commands();
const CommandSpec& command_spec(std::string_view name);  ///< UsageError if unknown

struct RunConfig {
  nlohmann::json params = nlohmann::json::object();  ///< command parameters, missing keys take defaults
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
  bool quiet = false;
};

/// Fills defaults, checks types and rejects unknown keys (ConfigError).
nlohmann::json resolve_params(const CommandSpec& spec, const nlohmann::json& given);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// Runs one command, writes `<out>/<command>.json` plus its CSV files and
/// returns the exit code. Library errors propagate to the caller.
ExitCode run(const std::string& command, const RunConfig& config);

/// Same, catching library errors: prints "error: <kind>: <message>" to stderr.
int run_guarded(const std::string& command, const RunConfig& config);

}  // namespace lightcone::cli
