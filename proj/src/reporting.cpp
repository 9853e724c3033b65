#include "hgt/reporting.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "hgt/errors.hpp"

namespace hgt {

namespace {

using nlohmann::json;

Complex to_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw UsageError("expected a number or [re, im], got " + v.dump());
}

std::vector<Complex> complex_list(const json& v) {
  if (!v.is_array()) throw UsageError("expected an array, got " + v.dump());
  std::vector<Complex> out;
  for (const json& x : v) out.push_back(to_complex(x));
  return out;
}

std::vector<double> real_list(const json& v) {
  if (!v.is_array()) throw UsageError("expected an array of numbers, got " + v.dump());
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) throw UsageError("expected a number, got " + x.dump());
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<int> int_list(const json& v) {
  if (!v.is_array()) throw UsageError("expected an array of integers, got " + v.dump());
  std::vector<int> out;
  for (const json& x : v) {
    if (!x.is_number_integer()) throw UsageError("expected an integer, got " + x.dump());
    out.push_back(x.get<int>());
  }
  return out;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

const json& default_set(const std::string& key) {
  static const json sets = [] {
    json s;
    s["elliptic_beta"] = {
        {"level", "elliptic"}, {"p", 0.25}, {"q", 0.25}, {"t", {0.30, 0.35, 0.40, 0.25, 0.45}}};
    s["elliptic"] = {{"level", "elliptic"},
                     {"p", 0.2},
                     {"q", 0.3},
                     {"t", json::array({0.72, {0.66, 0.1}, 0.61, {0.55, -0.05}, {0.47, 0.03}})}};
    const double t6 = 0.0625 / (0.30 * 0.35 * 0.40 * 0.25 * 0.45);
    s["elliptic_v"] = {{"level", "elliptic_v"},
                       {"p", 0.25},
                       {"q", 0.25},
                       {"t", {0.30, 0.35, 0.40, 0.25, 0.45, t6, 0.5, 0.125}}};
    const Complex w2 = std::polar(1.0, -kPi / 4.0);
    s["hyperbolic"] = {{"level", "hyperbolic"},
                       {"omega1", 1.0},
                       {"omega2", complex_json(w2)},
                       {"g", json::array({0.2, {0.25, 0.1}, {0.22, -0.05}, 0.18, {0.45, 0.05}})}};
    s["complex"] = {
        {"level", "complex"},
        {"alpha",
         json::array({{0.3, -0.15}, {-0.2, -0.12}, {0.1, -0.15}, {0.25, -0.13}, {-0.15, -0.2}})},
        {"N", {1, 0, -1, 2, 0}}};
    return s;
  }();
  return sets.at(key);
}

BetaParams make_beta(const json& set) {
  const EllipticBase base(to_complex(set["p"]), to_complex(set["q"]));
  const auto t = complex_list(set["t"]);
  if (t.size() == 5) return BetaParams::with_solved_t6(base, {t[0], t[1], t[2], t[3], t[4]});
  return BetaParams(base, {t[0], t[1], t[2], t[3], t[4], t[5]});
}

VParams make_v(const json& set) {
  const EllipticBase base(to_complex(set["p"]), to_complex(set["q"]));
  const auto t = complex_list(set["t"]);
  return VParams(base, {t[0], t[1], t[2], t[3], t[4], t[5], t[6], t[7]});
}

HyperbolicParams make_hyperbolic(const json& set) {
  const HyperbolicPeriods periods(to_complex(set["omega1"]), to_complex(set["omega2"]));
  const auto g = complex_list(set["g"]);
  if (g.size() == 5)
    return HyperbolicParams::with_solved_g6(periods, {g[0], g[1], g[2], g[3], g[4]});
  return HyperbolicParams(periods, {g[0], g[1], g[2], g[3], g[4], g[5]});
}

ComplexLevelParams make_complex(const json& set) {
  const auto a = complex_list(set["alpha"]);
  const auto n = real_list(set["N"]);
  if (a.size() == 5) {
    return ComplexLevelParams::with_solved_sixth({a[0], a[1], a[2], a[3], a[4]},
                                                 {n[0], n[1], n[2], n[3], n[4]});
  }
  return ComplexLevelParams({a[0], a[1], a[2], a[3], a[4], a[5]},
                            {n[0], n[1], n[2], n[3], n[4], n[5]});
}

std::vector<GramIndex> gram_indices(const json& args, std::vector<GramIndex> fallback) {
  if (args.contains("indices")) {
    std::vector<GramIndex> out;
    if (!args["indices"].is_array()) throw UsageError("'indices' must be an array");
    for (const json& q : args["indices"]) {
      const auto v = int_list(q);
      if (v.size() != 4) throw UsageError("each index must be [m, k, n, l]");
      out.push_back({v[0], v[1], v[2], v[3]});
    }
    return out;
  }
  if (args.contains("max_index")) {
    if (!args["max_index"].is_number_integer()) throw UsageError("'max_index' must be an integer");
    return index_grid(args["max_index"].get<int>());
  }
  return fallback;
}

std::vector<Complex> sample_points(std::uint64_t seed, std::uint64_t stream, int count) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + stream);
  std::uniform_real_distribution<double> radius(0.8, 1.25);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<Complex> out;
  for (int i = 0; i < count; ++i) {
    const double r = radius(rng);
    out.push_back(std::polar(r, angle(rng)));
  }
  return out;
}

std::vector<Complex> z_points(const json& args, std::uint64_t seed, std::uint64_t stream,
                              int default_count) {
  if (args.contains("z")) return complex_list(args["z"]);
  int count = default_count;
  if (args.contains("samples")) {
    if (!args["samples"].is_number_integer() || args["samples"].get<int>() < 1) {
      throw UsageError("'samples' must be a positive integer");
    }
    count = args["samples"].get<int>();
  }
  return sample_points(seed, stream, count);
}

std::vector<GridGauge> gauges(const json& args) {
  if (!args.contains("gauges")) {
    return {GridGauge({0.37, 0.2}, {1.7, -0.3}), GridGauge({2.1, 0.5}, {0.1, 0.45})};
  }
  std::vector<GridGauge> out;
  if (!args["gauges"].is_array()) throw UsageError("'gauges' must be an array of [xi, eta]");
  for (const json& g : args["gauges"]) {
    const auto v = complex_list(g);
    if (v.size() != 2) throw UsageError("each gauge must be [xi, eta]");
    out.emplace_back(v[0], v[1]);
  }
  if (out.empty()) throw UsageError("'gauges' must not be empty");
  return out;
}

std::vector<int> n_list(const json& args, std::vector<int> fallback) {
  return args.contains("n") ? int_list(args["n"]) : fallback;
}

std::string format_z(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

struct SuiteContext {
  const json& set;
  const json& args;
  double tol;
  VerifyOptions options;
};

using SuiteRunner = std::function<std::vector<CheckResult>(const SuiteContext&)>;

void append(std::vector<CheckResult>& out, const std::vector<CheckResult>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

std::vector<CheckResult> run_elliptic_beta(const SuiteContext& c) {
  return {verify_elliptic_beta(make_beta(c.set), c.tol, c.options)};
}

std::vector<CheckResult> run_biorthogonality_elliptic(const SuiteContext& c) {
  return verify_biorthogonality_elliptic(make_beta(c.set), gram_indices(c.args, index_grid(1)),
                                         c.tol, c.options)
      .checks;
}

std::vector<CheckResult> run_ttr(const SuiteContext& c) {
  const BetaParams params = make_beta(c.set);
  const auto gs = gauges(c.args);
  std::vector<CheckResult> out;
  for (const Complex& z : z_points(c.args, c.options.seed, 1, 5)) {
    for (int n : n_list(c.args, {1, 2, 3})) {
      for (std::size_t g = 0; g < gs.size(); ++g) {
        CheckResult r = verify_ttr(params, gs[g], z, n, c.tol, c.options.policy);
        r.name += " gauge=" + std::to_string(g + 1) + " z=" + format_z(z);
        out.push_back(std::move(r));
      }
      const auto first = R_n_by_recurrence(z, params, gs[0], n, c.options.policy);
      for (std::size_t g = 1; g < gs.size(); ++g) {
        const auto other = R_n_by_recurrence(z, params, gs[g], n, c.options.policy);
        out.push_back(make_check("gauge independence of R_" + std::to_string(n) +
                                     " gauge=" + std::to_string(g + 1) + " z=" + format_z(z),
                                 other.back(), first.back(), c.tol, params_digest(params)));
      }
    }
  }
  return out;
}

std::vector<CheckResult> run_rii(const SuiteContext& c) {
  const BetaParams params = make_beta(c.set);
  const GridGauge gauge = gauges(c.args).front();
  std::vector<CheckResult> out;
  for (int n : n_list(c.args, {1, 2})) {
    out.push_back(verify_rii_form(params, gauge, n, c.tol, c.options));
  }
  return out;
}

std::vector<CheckResult> run_ehe(const SuiteContext& c) {
  const BetaParams params = make_beta(c.set);
  std::vector<CheckResult> out;
  const Complex pq = params.base().p() * params.base().q();
  for (int n : n_list(c.args, {0, 1, 2})) {
    Complex prod = 1.0;
    for (const Complex& e : ehe_parameters(params, n)) prod *= e;
    out.push_back(make_check("eps balancing n=" + std::to_string(n), prod, pq * pq, 1e-10,
                             params_digest(params)));
    for (const Complex& z : z_points(c.args, c.options.seed, 2, 3)) {
      CheckResult r = verify_ehe(params, n, z, c.tol, c.options.policy);
      r.name += " z=" + format_z(z);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<CheckResult> run_v(const SuiteContext& c) {
  return {verify_V_reduction(make_v(c.set), c.tol, c.options)};
}

std::vector<CheckResult> run_biorthogonality_hyperbolic(const SuiteContext& c) {
  return verify_biorthogonality_hyperbolic(make_hyperbolic(c.set),
                                           gram_indices(c.args, index_grid(1)), c.tol, c.options)
      .checks;
}

std::vector<CheckResult> run_biorthogonality_complex(const SuiteContext& c) {
  return verify_biorthogonality_complex(make_complex(c.set),
                                        gram_indices(c.args, {{0, 0, 0, 0}, {0, 0, 1, 0}}), c.tol,
                                        c.options)
      .checks;
}

double number_arg(const json& args, const char* key, double fallback) {
  if (!args.contains(key)) return fallback;
  if (!args[key].is_number()) throw UsageError(std::string("'") + key + "' must be a number");
  return args[key].get<double>();
}

std::vector<CheckResult> run_limit_theta(const SuiteContext& c) {
  const auto v = c.args.contains("v") ? real_list(c.args["v"]) : std::vector{0.2, 0.1, 0.05};
  return verify_limit_theta(number_arg(c.args, "u", 0.3), number_arg(c.args, "omega2", 1.0), v);
}

std::vector<CheckResult> run_limit_ellgamma(const SuiteContext& c) {
  const auto v = c.args.contains("v") ? real_list(c.args["v"]) : std::vector{0.2, 0.1, 0.05};
  const auto u =
      c.args.contains("u") ? complex_list(c.args["u"]) : std::vector<Complex>{0.3, 0.5, 0.7};
  const Complex w1 = c.args.contains("omega1") ? to_complex(c.args["omega1"]) : Complex(1.0);
  const Complex w2 = c.args.contains("omega2") ? to_complex(c.args["omega2"]) : Complex(0.7, 0.3);
  return verify_limit_ellgamma(u, HyperbolicPeriods(w1, w2), v);
}

std::vector<CheckResult> run_limit_hypgamma(const SuiteContext& c) {
  const auto d =
      c.args.contains("delta") ? real_list(c.args["delta"]) : std::vector{0.15, 0.10, 0.06};
  std::vector<std::pair<Complex, int>> cases{{{0.0, -1.0}, 0}, {{0.4, -0.5}, 1}, {{0.3, 0.2}, -2}};
  if (c.args.contains("cases")) {
    cases.clear();
    if (!c.args["cases"].is_array()) throw UsageError("'cases' must be an array");
    for (const json& e : c.args["cases"]) {
      if (!e.is_object() || !e.contains("x") || !e.contains("n") || !e["n"].is_number_integer()) {
        throw UsageError("each case must be {\"x\": value, \"n\": integer}");
      }
      cases.emplace_back(to_complex(e["x"]), e["n"].get<int>());
    }
  }
  std::vector<CheckResult> out;
  for (const auto& [x, n] : cases) append(out, verify_limit_hypgamma_to_complex(x, n, d));
  return out;
}

struct SuiteEntry {
  SuiteInfo info;
  std::string default_set;
  SuiteRunner runner;
};

const std::vector<SuiteEntry>& suite_table() {
  static const std::vector<SuiteEntry> table{
      {{"verify_elliptic_beta", "elliptic", "elliptic", 1e-8,
        "elliptic beta integral equals the product of elliptic gammas of pairwise products "
        "once the six parameters are balanced"},
       "elliptic_beta",
       run_elliptic_beta},
      {{"verify_biorthogonality_elliptic", "elliptic", "elliptic", 1e-8,
        "two-index biorthogonality of the R and T elliptic functions with normalization "
        "constants h_nl"},
       "elliptic",
       run_biorthogonality_elliptic},
      {{"verify_ttr", "elliptic", "elliptic", 1e-8,
        "three-term recurrence of R_n on the elliptic grid, independent of the gauge"},
       "elliptic",
       run_ttr},
      {{"verify_rii_form", "elliptic", "elliptic", 1e-8,
        "R_II-type recurrence of the polynomials P_n in the grid variable"},
       "elliptic",
       run_rii},
      {{"verify_ehe", "elliptic", "elliptic", 1e-8,
        "elliptic hypergeometric difference equation solved by R_n under mu = q^n"},
       "elliptic",
       run_ehe},
      {{"verify_V_reduction", "elliptic", "elliptic_v", 1e-8,
        "eight-parameter V integral reduces to the elliptic beta integral when t7 t8 = pq"},
       "elliptic_v",
       run_v},
      {{"verify_biorthogonality_hyperbolic", "hyperbolic", "hyperbolic", 1e-6,
        "two-index biorthogonality of the hyperbolic 10W9 functions along the imaginary axis"},
       "hyperbolic",
       run_biorthogonality_hyperbolic},
      {{"verify_biorthogonality_complex", "complex", "complex", 1e-3,
        "biorthogonality of the complex-level 9F8 functions: line integral plus bilateral "
        "sum over the lattice"},
       "complex",
       run_biorthogonality_complex},
      {{"verify_limit_theta", "limit", "", 1.0,
        "theta function degenerates to a sine factor with an exponential prefactor"},
       "",
       run_limit_theta},
      {{"verify_limit_ellgamma", "limit", "", 1.0,
        "elliptic gamma degenerates to the hyperbolic gamma function, uniformly on compacta"},
       "",
       run_limit_ellgamma},
      {{"verify_limit_hypgamma_to_complex", "limit", "", 1.0,
        "hyperbolic gamma near the unit-circle regime degenerates to the complex gamma "
        "function"},
       "",
       run_limit_hypgamma},
  };
  return table;
}

const SuiteEntry& suite_entry(const std::string& name) {
  for (const SuiteEntry& e : suite_table()) {
    if (e.info.name == name) return e;
  }
  throw UsageError("unknown suite '" + name + "'");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex_csv(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string library_version() { return HGT_VERSION; }

const std::vector<SuiteInfo>& list_suites() {
  static const std::vector<SuiteInfo> infos = [] {
    std::vector<SuiteInfo> out;
    for (const SuiteEntry& e : suite_table()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

const SuiteInfo* find_suite(std::string_view name) {
  for (const SuiteInfo& info : list_suites()) {
    if (info.name == name) return &info;
  }
  return nullptr;
}

RunReport run(const RunConfig& config) {
  config.validate();
  RunReport report;
  report.library_version = library_version();
  report.config_digest = config.digest();
  report.passed = true;

  VerifyOptions options;
  options.budget = config.budget;
  options.ledger_cutoff = config.ledger_cutoff;
  options.quadrature_fraction = config.quadrature_fraction;
  options.seed = config.seed;

  for (const SuiteRequest& request : config.suites) {
    const SuiteEntry& entry = suite_entry(request.suite);
    SuiteReport suite;
    suite.suite = request.suite;
    suite.tolerance = config.tolerance_for(request.suite);
    suite.anchor = entry.info.anchor;
    suite.params = request.params.empty() ? entry.default_set : request.params;

    const json empty = json::object();
    const json& set = request.params.empty()
                          ? (entry.default_set.empty() ? empty : default_set(entry.default_set))
                          : config.parameter_sets.at(request.params).values;
    const auto start = std::chrono::steady_clock::now();
    try {
      suite.checks = entry.runner({set, request.args, suite.tolerance, options});
      bool all = !suite.checks.empty();
      for (const CheckResult& c : suite.checks) all = all && c.passed;
      suite.status = all ? "passed" : "failed";
    } catch (const RejectedParametersError& e) {
      suite.status = "rejected-parameters";
      suite.error = e.what();
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      suite.status = "error";
      suite.error = e.what();
    }
    suite.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.passed = report.passed && suite.status == "passed";
    report.suites.push_back(std::move(suite));
  }
  return report;
}

json report_to_json(const RunReport& report) {
  json out;
  out["schema"] = std::string(kReportSchema);
  out["library_version"] = report.library_version;
  out["config_digest"] = report.config_digest;
  out["passed"] = report.passed;
  out["suites"] = json::array();
  for (const SuiteReport& s : report.suites) {
    json js;
    js["suite"] = s.suite;
    js["params"] = s.params;
    js["status"] = s.status;
    js["passed"] = s.status == "passed";
    if (!s.error.empty()) js["error"] = s.error;
    js["wall_time_s"] = s.wall_time_s;
    js["tolerance"] = s.tolerance;
    js["anchor"] = s.anchor;
    js["checks"] = json::array();
    for (const CheckResult& c : s.checks) {
      js["checks"].push_back({{"name", c.name},
                              {"lhs", complex_json(c.lhs)},
                              {"rhs", complex_json(c.rhs)},
                              {"residual", c.residual},
                              {"tolerance", c.tolerance},
                              {"passed", c.passed},
                              {"params_digest", c.params_digest}});
    }
    out["suites"].push_back(std::move(js));
  }
  return out;
}

std::string report_json(const RunReport& report) { return report_to_json(report).dump(2) + "\n"; }

std::string report_csv(const RunReport& report) {
  std::ostringstream os;
  os << "suite,params,status,check,lhs,rhs,residual,tolerance,passed,params_digest\n";
  for (const SuiteReport& s : report.suites) {
    if (s.checks.empty()) {
      os << csv_field(s.suite) << ',' << csv_field(s.params) << ',' << s.status << ','
         << csv_field(s.error) << ",,,," << format_double(s.tolerance) << ",false,\n";
      continue;
    }
    for (const CheckResult& c : s.checks) {
      os << csv_field(s.suite) << ',' << csv_field(s.params) << ',' << s.status << ','
         << csv_field(c.name) << ',' << format_complex_csv(c.lhs) << ','
         << format_complex_csv(c.rhs) << ',' << format_double(c.residual) << ','
         << format_double(c.tolerance) << ',' << (c.passed ? "true" : "false") << ','
         << c.params_digest << '\n';
    }
  }
  return os.str();
}

}  // namespace hgt
