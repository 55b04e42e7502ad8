#include "json_config.hpp"

#include <algorithm>

#include <json.hpp>

namespace lightcone::cli {
namespace {

using nlohmann::json;

std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

void flatten(const json& obj, std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
  for (const auto& [key, value] : obj.items()) {
    if (value.is_object()) {
      parents.push_back(key);
      flatten(value, parents, out);
      parents.pop_back();
      continue;
    }
    if (value.is_null()) continue;
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = key;
    std::replace(item.name.begin(), item.name.end(), '_', '-');
    if (value.is_array()) {
      for (const json& e : value) item.inputs.push_back(scalar(e));
    } else {
      item.inputs.push_back(scalar(value));
    }
    out.push_back(std::move(item));
  }
}

json dump_app(const CLI::App* app, bool default_also) {
  json out = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
    std::string key = opt->get_lnames().front();
    std::replace(key.begin(), key.end(), '-', '_');
    std::vector<std::string> vals = opt->results();
    if (vals.empty()) {
      if (!default_also || opt->get_default_str().empty()) continue;
      vals.push_back(opt->get_default_str());
    }
    if (vals.size() == 1 && opt->get_expected_max() <= 1) {
      out[key] = vals.front();
    } else {
      out[key] = vals;
    }
  }
  for (const CLI::App* sub : app->get_subcommands({})) {
    const json j = dump_app(sub, default_also);
    if (!j.empty()) out[sub->get_name()] = j;
  }
  return out;
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool, std::string) const {
  return dump_app(app, default_also).dump(2) + "\n";
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  json doc;
  try {
    doc = json::parse(input);
  } catch (const json::parse_error& e) {
    throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw CLI::ConversionError("config must be a JSON object");
  std::vector<CLI::ConfigItem> out;
  std::vector<std::string> parents;
  flatten(doc, parents, out);
  return out;
}

}  // namespace lightcone::cli
