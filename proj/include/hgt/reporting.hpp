#pragma once

// Run configuration, suite catalogue, suite execution and report
// serialization behind the hgt command-line tool.

#include <cstdint>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgt/contours_quadrature.hpp"
#include "hgt/verification.hpp"

namespace hgt {

inline constexpr std::string_view kConfigSchema = "hgt-config/1";
inline constexpr std::string_view kReportSchema = "hgt-report/1";

std::string library_version();

struct SuiteInfo {
  std::string name;
  // elliptic, hyperbolic, complex or limit.
  std::string level;
  // Parameter-set level consumed by the suite; empty for the limit suites.
  std::string parameter_level;
  double default_tolerance;
  // Short description of the identity or relation under test.
  std::string anchor;
};

const std::vector<SuiteInfo>& list_suites();
const SuiteInfo* find_suite(std::string_view name);

struct ParameterSet {
  std::string name;
  // elliptic, elliptic_v, hyperbolic or complex.
  std::string level;
  nlohmann::json values;
};

struct SuiteRequest {
  std::string suite;
  // Empty: the suite's built-in default set.
  std::string params;
  // Suite-specific arguments (indices, n lists, ladders, ...).
  nlohmann::json args = nlohmann::json::object();
};

struct RunConfig {
  std::vector<SuiteRequest> suites;
  std::map<std::string, ParameterSet> parameter_sets;
  std::map<std::string, double> tolerances;
  QuadratureBudget budget;
  double ledger_cutoff = 1e-7;
  double quadrature_fraction = 1e-2;
  std::optional<std::string> output_path;
  std::string format = "json";
  std::uint64_t seed = 1;
  nlohmann::json source;

  // Throws UsageError on an unknown suite or parameter set name, a
  // parameter set whose level does not match its suite, or a bad format.
  void validate() const;
  double tolerance_for(const std::string& suite) const;
  // FNV-1a digest of the canonical JSON form including overrides.
  std::string digest() const;
};

// Throws UsageError on malformed input. Balancing is not checked here; a
// set that fails it is reported per suite as rejected-parameters.
RunConfig parse_config(const nlohmann::json& document);
RunConfig load_config(const std::string& path);

// Applies a NAME=VALUE tolerance override.
void apply_tolerance_override(RunConfig& config, const std::string& assignment);

struct SuiteReport {
  std::string suite;
  std::string params;
  // passed, failed, rejected-parameters or error.
  std::string status;
  std::string error;
  double wall_time_s = 0.0;
  double tolerance = 0.0;
  std::string anchor;
  std::vector<CheckResult> checks;
};

struct RunReport {
  std::string library_version;
  std::string config_digest;
  std::vector<SuiteReport> suites;
  bool passed = false;
};

RunReport run(const RunConfig& config);

nlohmann::json report_to_json(const RunReport& report);
std::string report_json(const RunReport& report);
std::string report_csv(const RunReport& report);

// Parses a complex literal: 1.5, -2i, 0.3-0.2i, 1e-3+4e-2j, i.
Complex parse_complex(std::string_view text);

struct EvalOutput {
  std::string function;
  std::vector<std::pair<std::string, std::string>> args;
  Complex value;
  std::optional<double> error_estimate;
};

// Arguments are positional or name=value. Throws UsageError on an unknown
// function, wrong arity, an unknown name or an unparsable value.
EvalOutput eval(const std::string& function, const std::vector<std::string>& args);
std::string format_eval(const EvalOutput& output);
std::vector<std::string> eval_functions();

}  // namespace hgt
