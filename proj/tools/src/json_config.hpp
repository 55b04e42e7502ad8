#pragma once

#include <CLI11.hpp>

namespace lightcone::cli {

/// CLI11 config reader for JSON files. Top-level keys set global options,
/// an object under a command name sets that command's options. Keys may use
/// '_' or '-'.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

}  // namespace lightcone::cli
