#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace lightcone::acceptance {

struct Criterion {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;     ///< one line of measured values
  nlohmann::json details;  ///< measured values, deterministic
};

/// Criteria 1-9, one pass.
std::vector<Criterion> run_criteria();

/// Runs the criteria twice and appends the determinism criterion comparing
/// the two serialized passes.
std::vector<Criterion> run_suite();

nlohmann::json to_json(const std::vector<Criterion>& results);

/// "PASS  3  trichotomy: ..." style line.
std::string format_line(const Criterion& c);

}  // namespace lightcone::acceptance
