#include <fstream>
#include <set>
#include <sstream>

#include "hgt/errors.hpp"
#include "hgt/reporting.hpp"

namespace hgt {

namespace {

using nlohmann::json;

const std::set<std::string> kLevels{"elliptic", "elliptic_v", "hyperbolic", "complex"};

bool is_complex_value(const json& v) {
  if (v.is_number()) return true;
  return v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number();
}

void require_complex_list(const json& set, const std::string& where, const char* key,
                          std::size_t lo, std::size_t hi) {
  if (!set.contains(key) || !set[key].is_array()) {
    throw UsageError(where + ": missing array '" + key + "'");
  }
  const json& list = set[key];
  if (list.size() < lo || list.size() > hi) {
    throw UsageError(where + ": '" + key + "' must have " + std::to_string(lo) +
                     (lo == hi ? "" : " or " + std::to_string(hi)) + " entries");
  }
  for (const json& v : list) {
    if (!is_complex_value(v)) {
      throw UsageError(where + ": entries of '" + key + "' must be numbers or [re, im]");
    }
  }
}

void require_complex(const json& set, const std::string& where, const char* key) {
  if (!set.contains(key) || !is_complex_value(set[key])) {
    throw UsageError(where + ": '" + key + "' must be a number or [re, im]");
  }
}

ParameterSet parse_parameter_set(const std::string& name, const json& set) {
  const std::string where = "parameter set '" + name + "'";
  if (!set.is_object()) throw UsageError(where + ": must be an object");
  if (!set.contains("level") || !set["level"].is_string()) {
    throw UsageError(where + ": missing 'level'");
  }
  const std::string level = set["level"].get<std::string>();
  if (!kLevels.count(level)) throw UsageError(where + ": unknown level '" + level + "'");
  if (level == "elliptic" || level == "elliptic_v") {
    require_complex(set, where, "p");
    require_complex(set, where, "q");
    if (level == "elliptic") {
      require_complex_list(set, where, "t", 5, 6);
    } else {
      require_complex_list(set, where, "t", 8, 8);
    }
  } else if (level == "hyperbolic") {
    require_complex(set, where, "omega1");
    require_complex(set, where, "omega2");
    require_complex_list(set, where, "g", 5, 6);
  } else {
    require_complex_list(set, where, "alpha", 5, 6);
    if (!set.contains("N") || !set["N"].is_array() || set["N"].size() != set["alpha"].size()) {
      throw UsageError(where + ": 'N' must be an array as long as 'alpha'");
    }
    for (const json& v : set["N"]) {
      if (!v.is_number()) throw UsageError(where + ": entries of 'N' must be numbers");
    }
  }
  return {name, level, set};
}

SuiteRequest parse_request(const json& entry) {
  SuiteRequest r;
  if (entry.is_string()) {
    r.suite = entry.get<std::string>();
    return r;
  }
  if (!entry.is_object() || !entry.contains("suite") || !entry["suite"].is_string()) {
    throw UsageError("suites: each entry must be a name or an object with 'suite'");
  }
  r.suite = entry["suite"].get<std::string>();
  for (const auto& [key, value] : entry.items()) {
    if (key == "suite") continue;
    if (key == "params") {
      if (!value.is_string()) throw UsageError("suites: 'params' must be a set name");
      r.params = value.get<std::string>();
      continue;
    }
    r.args[key] = value;
  }
  return r;
}

double positive_number(const json& v, const std::string& what) {
  if (!v.is_number() || !(v.get<double>() > 0.0)) {
    throw UsageError(what + " must be a positive number");
  }
  return v.get<double>();
}

}  // namespace

void RunConfig::validate() const {
  if (suites.empty()) throw UsageError("config: the suite list is empty");
  for (const SuiteRequest& r : suites) {
    const SuiteInfo* info = find_suite(r.suite);
    if (info == nullptr) throw UsageError("config: unknown suite '" + r.suite + "'");
    if (r.params.empty()) continue;
    if (info->parameter_level.empty()) {
      throw UsageError("config: suite '" + r.suite + "' takes no parameter set");
    }
    const auto it = parameter_sets.find(r.params);
    if (it == parameter_sets.end()) {
      throw UsageError("config: unknown parameter set '" + r.params + "'");
    }
    if (it->second.level != info->parameter_level) {
      throw UsageError("config: suite '" + r.suite + "' needs a " + info->parameter_level +
                       " parameter set, '" + r.params + "' is " + it->second.level);
    }
  }
  for (const auto& [name, value] : tolerances) {
    if (find_suite(name) == nullptr) {
      throw UsageError("config: tolerance for unknown suite '" + name + "'");
    }
    if (!(value > 0.0)) throw UsageError("config: tolerance for '" + name + "' must be positive");
  }
  if (format != "json" && format != "csv") {
    throw UsageError("config: output format must be json or csv");
  }
}

double RunConfig::tolerance_for(const std::string& suite) const {
  if (const auto it = tolerances.find(suite); it != tolerances.end()) return it->second;
  const SuiteInfo* info = find_suite(suite);
  if (info == nullptr) throw UsageError("unknown suite '" + suite + "'");
  return info->default_tolerance;
}

std::string RunConfig::digest() const {
  json canonical = source;
  for (const auto& [name, value] : tolerances) canonical["tolerances"][name] = value;
  canonical["budgets"]["max_nodes"] = budget.max_nodes;
  canonical["budgets"]["max_shells"] = budget.max_shells;
  canonical["budgets"]["max_truncation"] = budget.max_truncation;
  canonical["seed"] = seed;
  return fnv1a_hex(canonical.dump());
}

RunConfig parse_config(const json& document) {
  if (!document.is_object()) throw UsageError("config: top level must be an object");
  if (document.contains("schema") && document["schema"] != json(std::string(kConfigSchema))) {
    throw UsageError("config: unsupported schema (expected " + std::string(kConfigSchema) + ")");
  }
  static const std::set<std::string> known{
      "schema", "suites", "parameter_sets", "tolerances", "budgets", "output", "seed"};
  for (const auto& [key, value] : document.items()) {
    if (!known.count(key)) throw UsageError("config: unknown key '" + key + "'");
  }

  RunConfig config;
  config.source = document;
  if (!document.contains("suites") || !document["suites"].is_array()) {
    throw UsageError("config: 'suites' must be an array");
  }
  for (const json& entry : document["suites"]) config.suites.push_back(parse_request(entry));

  if (document.contains("parameter_sets")) {
    const json& sets = document["parameter_sets"];
    if (!sets.is_object()) throw UsageError("config: 'parameter_sets' must be an object");
    for (const auto& [name, set] : sets.items()) {
      config.parameter_sets.emplace(name, parse_parameter_set(name, set));
    }
  }
  if (document.contains("tolerances")) {
    const json& tols = document["tolerances"];
    if (!tols.is_object()) throw UsageError("config: 'tolerances' must be an object");
    for (const auto& [name, value] : tols.items()) {
      config.tolerances[name] = positive_number(value, "tolerance '" + name + "'");
    }
  }
  if (document.contains("budgets")) {
    const json& b = document["budgets"];
    if (!b.is_object()) throw UsageError("config: 'budgets' must be an object");
    for (const auto& [key, value] : b.items()) {
      const std::string what = "budgets." + key;
      if (key == "max_nodes") {
        config.budget.max_nodes = static_cast<std::int64_t>(positive_number(value, what));
      } else if (key == "max_shells") {
        config.budget.max_shells = static_cast<std::int64_t>(positive_number(value, what));
      } else if (key == "max_truncation") {
        config.budget.max_truncation = positive_number(value, what);
      } else if (key == "threads") {
        config.budget.threads = static_cast<int>(positive_number(value, what));
      } else if (key == "ledger_cutoff") {
        config.ledger_cutoff = positive_number(value, what);
      } else if (key == "quadrature_fraction") {
        config.quadrature_fraction = positive_number(value, what);
      } else {
        throw UsageError("config: unknown budget '" + key + "'");
      }
    }
  }
  if (document.contains("output")) {
    const json& out = document["output"];
    if (!out.is_object()) throw UsageError("config: 'output' must be an object");
    if (out.contains("path")) {
      if (!out["path"].is_string()) throw UsageError("config: output.path must be a string");
      config.output_path = out["path"].get<std::string>();
    }
    if (out.contains("format")) {
      if (!out["format"].is_string()) throw UsageError("config: output.format must be a string");
      config.format = out["format"].get<std::string>();
    }
  }
  if (document.contains("seed")) {
    const json& seed = document["seed"];
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
      throw UsageError("config: 'seed' must be a non-negative integer");
    }
    config.seed = document["seed"].get<std::uint64_t>();
  }
  config.validate();
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(document);
}

void apply_tolerance_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw UsageError("--tol expects NAME=VALUE, got '" + assignment + "'");
  }
  const std::string name = assignment.substr(0, eq);
  if (find_suite(name) == nullptr) throw UsageError("--tol: unknown suite '" + name + "'");
  double value = 0.0;
  std::istringstream is(assignment.substr(eq + 1));
  if (!(is >> value) || !is.eof() || !(value > 0.0)) {
    throw UsageError("--tol: '" + assignment.substr(eq + 1) + "' is not a positive number");
  }
  config.tolerances[name] = value;
}

}  // namespace hgt
