#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "hgt/errors.hpp"
#include "hgt/reporting.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

void apply_env_caps(hgt::RunConfig& config) {
  const char* cap = std::getenv("HGT_MAX_NODES");
  if (cap == nullptr || *cap == '\0') return;
  char* end = nullptr;
  const long long value = std::strtoll(cap, &end, 10);
  if (*end != '\0' || value < 1) {
    throw hgt::UsageError("HGT_MAX_NODES must be a positive integer");
  }
  config.budget.max_nodes = std::min<std::int64_t>(config.budget.max_nodes, value);
}

int command_run(const std::string& config_path, const std::string& out_path,
                const std::string& format, const std::vector<std::string>& tolerances, int jobs) {
  hgt::RunConfig config = hgt::load_config(config_path);
  for (const std::string& t : tolerances) hgt::apply_tolerance_override(config, t);
  if (!format.empty()) config.format = format;
  if (!out_path.empty()) config.output_path = out_path;
  if (jobs > 0) config.budget.threads = jobs;
  apply_env_caps(config);
  config.validate();

  const hgt::RunReport report = hgt::run(config);
  const std::string text =
      config.format == "csv" ? hgt::report_csv(report) : hgt::report_json(report);
  if (config.output_path) {
    std::ofstream out(*config.output_path, std::ios::binary);
    if (!out) throw hgt::UsageError("cannot write '" + *config.output_path + "'");
    out << text;
  } else {
    std::cout << text;
  }
  for (const hgt::SuiteReport& s : report.suites) {
    std::size_t passed = 0;
    for (const auto& c : s.checks) passed += c.passed ? 1 : 0;
    std::fprintf(stderr, "%-36s %-20s %zu/%zu checks  %.2fs%s%s\n", s.suite.c_str(),
                 s.status.c_str(), passed, s.checks.size(), s.wall_time_s,
                 s.error.empty() ? "" : "  ", s.error.c_str());
  }
  return report.passed ? 0 : kExitFailed;
}

int command_list(bool as_json) {
  if (as_json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : hgt::list_suites()) {
      out.push_back({{"suite", s.name},
                     {"level", s.level},
                     {"parameter_level", s.parameter_level},
                     {"default_tolerance", s.default_tolerance},
                     {"anchor", s.anchor}});
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  for (const auto& s : hgt::list_suites()) {
    std::printf("%-36s %-11s tol=%-7g %s\n", s.name.c_str(), s.level.c_str(), s.default_tolerance,
                s.anchor.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Numerical verification of the elliptic, hyperbolic and complex hypergeometric "
      "tower"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hgt::library_version());

  auto* run = app.add_subcommand("run", "Execute the suites selected by a config file");
  std::string config_path, out_path, format;
  std::vector<std::string> tolerances;
  int jobs = 0;
  run->add_option("--config", config_path, "Config file (hgt-config/1 JSON)")->required();
  run->add_option("--out", out_path, "Report path (default: stdout)");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--tol", tolerances, "Tolerance override NAME=VALUE (repeatable)");
  run->add_option("--jobs", jobs, "Worker threads for quadrature")->check(CLI::PositiveNumber);

  auto* eval = app.add_subcommand("eval", "Evaluate one library function");
  std::string function;
  eval->add_option("function", function, "Function name")->required();
  eval->prefix_command();
  eval->footer([] {
    std::string s = "Functions (positional or name=value arguments):\n";
    for (const auto& f : hgt::eval_functions()) s += "  " + f + "\n";
    return s;
  }());

  auto* list = app.add_subcommand("list-suites", "Print the suite catalogue");
  bool list_json = false;
  list->add_flag("--json", list_json, "Machine-readable catalogue");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) return command_run(config_path, out_path, format, tolerances, jobs);
    if (eval->parsed()) {
      std::cout << hgt::format_eval(hgt::eval(function, eval->remaining()));
      return 0;
    }
    return command_list(list_json);
  } catch (const hgt::UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailed;
  }
}
