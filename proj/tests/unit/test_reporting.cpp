#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "hgt/errors.hpp"
#include "hgt/reporting.hpp"

using hgt::Complex;
using hgt::UsageError;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "schema": "hgt-config/1",
    "suites": [
      {"suite": "verify_elliptic_beta", "params": "documented"},
      {"suite": "verify_ttr", "params": "generic", "n": [1], "samples": 2},
      "verify_limit_theta"
    ],
    "parameter_sets": {
      "documented": {"level": "elliptic", "p": 0.25, "q": 0.25,
                     "t": [0.30, 0.35, 0.40, 0.25, 0.45]},
      "generic": {"level": "elliptic", "p": 0.2, "q": 0.3,
                  "t": [0.72, [0.66, 0.1], 0.61, [0.55, -0.05], [0.47, 0.03]]}
    },
    "seed": 7
  })");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

Complex from_json(const json& v) { return {v[0].get<double>(), v[1].get<double>()}; }

hgt::RunReport without_timing(hgt::RunReport r) {
  for (auto& s : r.suites) s.wall_time_s = 0.0;
  return r;
}

}  // namespace

TEST_SUITE("catalogue") {
  TEST_CASE("suite list") {
    const auto& suites = hgt::list_suites();
    CHECK(suites.size() == 11);
    REQUIRE(hgt::find_suite("verify_elliptic_beta") != nullptr);
    REQUIRE(hgt::find_suite("verify_biorthogonality_complex") != nullptr);
    CHECK(hgt::find_suite("verify_biorthogonality_complex")->default_tolerance == 1e-3);
    CHECK(hgt::find_suite("verify_biorthogonality_hyperbolic")->default_tolerance == 1e-6);
    CHECK(hgt::find_suite("verify_elliptic_beta")->default_tolerance == 1e-8);
    CHECK(hgt::find_suite("no_such_suite") == nullptr);
    for (const auto& s : suites) CHECK_FALSE(s.anchor.empty());
  }
}

TEST_SUITE("config parsing") {
  TEST_CASE("valid document") {
    const auto config = hgt::parse_config(minimal());
    CHECK(config.suites.size() == 3);
    CHECK(config.seed == 7);
    CHECK(config.format == "json");
    CHECK(config.tolerance_for("verify_ttr") == 1e-8);
  }

  TEST_CASE("canned configs load") {
    for (const char* name : {"elliptic-fast.json", "full-tower.json", "limits-ladder.json"}) {
      CHECK_NOTHROW(hgt::load_config(std::string(HGT_CONFIG_DIR) + "/" + name));
    }
  }

  TEST_CASE("malformed documents are usage errors") {
    const auto mutate = [](auto&& edit) {
      json doc = minimal();
      edit(doc);
      return doc;
    };
    const std::vector<json> bad{
        json::array(),
        mutate([](json& d) { d["schema"] = "hgt-config/2"; }),
        mutate([](json& d) { d["extra"] = 1; }),
        mutate([](json& d) { d.erase("suites"); }),
        mutate([](json& d) { d["suites"] = json::array(); }),
        mutate([](json& d) { d["suites"][0] = "verify_everything"; }),
        mutate([](json& d) { d["suites"][0]["params"] = "missing"; }),
        mutate([](json& d) { d["suites"][0]["params"] = 3; }),
        mutate([](json& d) {
          d["suites"][2] = {{"suite", "verify_limit_theta"}, {"params", "documented"}};
        }),
        mutate([](json& d) { d["parameter_sets"]["documented"]["level"] = "hyperbolic"; }),
        mutate([](json& d) { d["parameter_sets"]["documented"]["level"] = "p-adic"; }),
        mutate([](json& d) { d["parameter_sets"]["documented"]["t"] = {0.1, 0.2}; }),
        mutate([](json& d) { d["parameter_sets"]["documented"]["t"][0] = "x"; }),
        mutate([](json& d) { d["parameter_sets"]["documented"]["t"][0] = {1, 2, 3}; }),
        mutate([](json& d) { d["parameter_sets"]["documented"].erase("q"); }),
        mutate([](json& d) { d["tolerances"] = {{"verify_ttr", -1.0}}; }),
        mutate([](json& d) { d["tolerances"] = {{"verify_nothing", 1e-3}}; }),
        mutate([](json& d) { d["budgets"] = {{"max_nodes", 0}}; }),
        mutate([](json& d) { d["budgets"] = {{"warp", 1}}; }),
        mutate([](json& d) { d["output"] = {{"format", "xml"}}; }),
        mutate([](json& d) { d["seed"] = -1; }),
        mutate([](json& d) { d["seed"] = 1.5; }),
    };
    for (std::size_t i = 0; i < bad.size(); ++i) {
      CAPTURE(i);
      CHECK_THROWS_AS(hgt::parse_config(bad[i]), UsageError);
    }
    CHECK_THROWS_AS(hgt::load_config("/nonexistent/config.json"), UsageError);
  }

  TEST_CASE("tolerance overrides") {
    auto config = hgt::parse_config(minimal());
    hgt::apply_tolerance_override(config, "verify_ttr=1e-6");
    CHECK(config.tolerance_for("verify_ttr") == 1e-6);
    CHECK_THROWS_AS(hgt::apply_tolerance_override(config, "verify_ttr"), UsageError);
    CHECK_THROWS_AS(hgt::apply_tolerance_override(config, "=1e-3"), UsageError);
    CHECK_THROWS_AS(hgt::apply_tolerance_override(config, "nope=1e-3"), UsageError);
    CHECK_THROWS_AS(hgt::apply_tolerance_override(config, "verify_ttr=abc"), UsageError);
    CHECK_THROWS_AS(hgt::apply_tolerance_override(config, "verify_ttr=-2"), UsageError);
  }

  TEST_CASE("digest tracks the effective configuration") {
    const auto a = hgt::parse_config(minimal());
    const auto b = hgt::parse_config(minimal());
    CHECK(a.digest() == b.digest());
    CHECK(a.digest().size() == 16);
    auto c = hgt::parse_config(minimal());
    hgt::apply_tolerance_override(c, "verify_ttr=1e-6");
    CHECK(c.digest() != a.digest());
    json other = minimal();
    other["seed"] = 8;
    CHECK(hgt::parse_config(other).digest() != a.digest());
  }
}

TEST_SUITE("runs and reports") {
  TEST_CASE("run, JSON and CSV carry the same payload") {
    const auto config = hgt::parse_config(minimal());
    const auto report = hgt::run(config);
    CHECK(report.passed);
    REQUIRE(report.suites.size() == 3);
    for (const auto& s : report.suites) CHECK(s.status == "passed");

    const json j = json::parse(hgt::report_json(report));
    CHECK(j["schema"] == "hgt-report/1");
    CHECK(j["config_digest"] == config.digest());
    CHECK(j["passed"] == true);

    std::istringstream csv(hgt::report_csv(report));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "suite,params,status,check,lhs,rhs,residual,tolerance,passed,params_digest");
    std::size_t rows = 0;
    for (const auto& js : j["suites"]) {
      for (const auto& jc : js["checks"]) {
        REQUIRE(std::getline(csv, line));
        const auto f = split_csv_line(line);
        REQUIRE(f.size() == 10);
        CHECK(f[0] == js["suite"].get<std::string>());
        CHECK(f[3] == jc["name"].get<std::string>());
        CHECK(hgt::parse_complex(f[4]) == from_json(jc["lhs"]));
        CHECK(hgt::parse_complex(f[5]) == from_json(jc["rhs"]));
        CHECK(std::stod(f[6]) == jc["residual"].get<double>());
        CHECK(std::stod(f[7]) == jc["tolerance"].get<double>());
        CHECK(f[8] == (jc["passed"].get<bool>() ? "true" : "false"));
        CHECK(f[9] == jc["params_digest"].get<std::string>());
        ++rows;
      }
    }
    CHECK(rows > 3);
    CHECK_FALSE(std::getline(csv, line));
  }

  TEST_CASE("identical configs give identical reports") {
    const auto config = hgt::parse_config(minimal());
    const auto a = hgt::report_json(without_timing(hgt::run(config)));
    const auto b = hgt::report_json(without_timing(hgt::run(config)));
    CHECK(a == b);
  }

  TEST_CASE("unbalanced parameters are rejected per suite") {
    json doc = minimal();
    doc["parameter_sets"]["documented"]["t"] = {0.30, 0.35, 0.40, 0.25, 0.45, 13.0};
    doc["suites"] = {{{"suite", "verify_elliptic_beta"}, {"params", "documented"}},
                     "verify_limit_theta"};
    const auto report = hgt::run(hgt::parse_config(doc));
    CHECK_FALSE(report.passed);
    REQUIRE(report.suites.size() == 2);
    CHECK(report.suites[0].status == "rejected-parameters");
    CHECK_FALSE(report.suites[0].error.empty());
    CHECK(report.suites[1].status == "passed");
  }

  TEST_CASE("one percent perturbation of t6 is rejected") {
    const double t6 = 0.0625 / (0.30 * 0.35 * 0.40 * 0.25 * 0.45);
    json doc = minimal();
    doc["suites"] = {{{"suite", "verify_elliptic_beta"}, {"params", "documented"}}};
    doc["parameter_sets"]["documented"]["t"] = {0.30, 0.35, 0.40, 0.25, 0.45, t6};
    CHECK(hgt::run(hgt::parse_config(doc)).passed);
    doc["parameter_sets"]["documented"]["t"] = {0.30, 0.35, 0.40, 0.25, 0.45, 1.01 * t6};
    const auto report = hgt::run(hgt::parse_config(doc));
    CHECK(report.suites[0].status == "rejected-parameters");
  }

  TEST_CASE("tight tolerance turns a pass into a failure") {
    json doc = minimal();
    doc["suites"] = {{{"suite", "verify_elliptic_beta"}, {"params", "documented"}}};
    doc["tolerances"] = {{"verify_elliptic_beta", 1e-17}};
    const auto report = hgt::run(hgt::parse_config(doc));
    CHECK(report.suites[0].status == "failed");
    CHECK_FALSE(report.passed);
  }

  TEST_CASE("bad suite arguments are usage errors") {
    json doc = minimal();
    doc["suites"] = {{{"suite", "verify_ttr"}, {"params", "generic"}, {"samples", 0}}};
    CHECK_THROWS_AS(hgt::run(hgt::parse_config(doc)), UsageError);
  }
}

TEST_SUITE("eval") {
  TEST_CASE("complex literals") {
    CHECK(hgt::parse_complex("1.5") == Complex(1.5, 0.0));
    CHECK(hgt::parse_complex("-2i") == Complex(0.0, -2.0));
    CHECK(hgt::parse_complex("i") == Complex(0.0, 1.0));
    CHECK(hgt::parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(hgt::parse_complex("0.3-0.2i") == Complex(0.3, -0.2));
    CHECK(hgt::parse_complex("1e-3+4e-2j") == Complex(1e-3, 4e-2));
    CHECK(hgt::parse_complex("2.5e+1-1e-1i") == Complex(25.0, -0.1));
    CHECK_THROWS_AS(hgt::parse_complex(""), UsageError);
    CHECK_THROWS_AS(hgt::parse_complex("abc"), UsageError);
    CHECK_THROWS_AS(hgt::parse_complex("1+xi"), UsageError);
  }

  TEST_CASE("positional and named arguments") {
    const auto a = hgt::eval("theta", {"0.5", "0.3"});
    const auto b = hgt::eval("theta", {"p=0.3", "z=0.5"});
    const auto c = hgt::eval("theta", {"p=0.3", "0.5"});
    CHECK(a.value == b.value);
    CHECK(a.value == c.value);
    CHECK(std::abs(a.value - 0.1206767662510669575287) < 1e-15);
    CHECK(a.error_estimate.has_value());
    const auto text = hgt::format_eval(b);
    CHECK(text.find("theta(z=0.5, p=0.3)") == 0);
    CHECK(text.find("value: 0.120676766251067+0i") != std::string::npos);
  }

  TEST_CASE("closed forms and integer arguments") {
    const auto g = hgt::eval("complex_field_gamma", {"x=0", "n=2"});
    CHECK(hgt::format_eval(g).find("value: 1+0i") != std::string::npos);
    CHECK_FALSE(g.error_estimate.has_value());
    const auto r =
        hgt::eval("R_n_elliptic", {"z=0.8+0.45i", "p=0.2", "q=0.3", "t1=0.72", "t2=0.66+0.1i",
                                   "t3=0.61", "t4=0.55-0.05i", "t5=0.47+0.03i", "n=1"});
    CHECK(std::abs(r.value - Complex(1.007447337556099152388, 0.005898460955415024750877)) < 1e-13);
  }

  TEST_CASE("bad calls") {
    CHECK_THROWS_AS(hgt::eval("zeta", {"1"}), UsageError);
    CHECK_THROWS_AS(hgt::eval("theta", {"0.5"}), UsageError);
    CHECK_THROWS_AS(hgt::eval("theta", {"0.5", "w=0.3"}), UsageError);
    CHECK_THROWS_AS(hgt::eval("theta", {"z=0.5", "z=0.3"}), UsageError);
    CHECK_THROWS_AS(hgt::eval("elliptic_pochhammer", {"0.3", "0.2", "0.3", "1.5"}), UsageError);
    CHECK_THROWS_AS(hgt::eval("theta", {"0", "0.3"}), hgt::DomainError);
  }

  TEST_CASE("function list") {
    const auto fs = hgt::eval_functions();
    CHECK(fs.size() == 14);
    CHECK(std::find(fs.begin(), fs.end(), "theta(z, p)") != fs.end());
  }
}
