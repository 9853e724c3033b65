#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>

#include "hgt/errors.hpp"
#include "hgt/reporting.hpp"

namespace hgt {

namespace {

double parse_real(std::string_view text, std::string_view original, bool unit = false) {
  const std::string s(text);
  if (unit && (s.empty() || s == "+")) return 1.0;
  if (unit && s == "-") return -1.0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    throw UsageError("cannot parse '" + std::string(original) + "' as a complex number");
  }
  return v;
}

struct Arg {
  std::string name;
  bool integer = false;
};

struct Function {
  std::vector<Arg> args;
  std::function<std::pair<Complex, std::optional<double>>(const std::map<std::string, Complex>&,
                                                          const std::map<std::string, int>&)>
      body;
};

using Values = std::map<std::string, Complex>;
using Ints = std::map<std::string, int>;
using Result = std::pair<Complex, std::optional<double>>;

Result exact(Complex z) { return {z, std::nullopt}; }
Result estimated(const Estimate& e) { return {e.value, e.error_bound}; }

BetaParams beta_from(const Values& v) {
  return BetaParams::with_solved_t6(EllipticBase(v.at("p"), v.at("q")),
                                    {v.at("t1"), v.at("t2"), v.at("t3"), v.at("t4"), v.at("t5")});
}

HyperbolicParams hyperbolic_from(const Values& v) {
  return HyperbolicParams::with_solved_g6(
      HyperbolicPeriods(v.at("omega1"), v.at("omega2")),
      {v.at("g1"), v.at("g2"), v.at("g3"), v.at("g4"), v.at("g5")});
}

std::vector<Arg> with(std::vector<Arg> head, const std::vector<Arg>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

const std::vector<Arg> kT{{"t1"}, {"t2"}, {"t3"}, {"t4"}, {"t5"}};
const std::vector<Arg> kG{{"g1"}, {"g2"}, {"g3"}, {"g4"}, {"g5"}};

const std::map<std::string, Function>& functions() {
  static const std::map<std::string, Function> table{
      {"qpoch_inf",
       {{{"z"}, {"p"}},
        [](const Values& v, const Ints&) {
          return estimated(qpoch_inf_estimate(v.at("z"), v.at("p")));
        }}},
      {"theta",
       {{{"z"}, {"p"}},
        [](const Values& v, const Ints&) {
          return estimated(theta_estimate(v.at("z"), v.at("p")));
        }}},
      {"theta_series",
       {{{"z"}, {"p"}},
        [](const Values& v, const Ints&) { return exact(theta_series(v.at("z"), v.at("p"))); }}},
      {"elliptic_pochhammer",
       {{{"z"}, {"p"}, {"q"}, {"n", true}},
        [](const Values& v, const Ints& i) {
          return exact(
              elliptic_pochhammer(v.at("z"), EllipticBase(v.at("p"), v.at("q")), i.at("n")));
        }}},
      {"elliptic_gamma",
       {{{"z"}, {"p"}, {"q"}},
        [](const Values& v, const Ints&) {
          return estimated(elliptic_gamma_estimate(v.at("z"), EllipticBase(v.at("p"), v.at("q"))));
        }}},
      {"b22",
       {{{"u"}, {"omega1"}, {"omega2"}},
        [](const Values& v, const Ints&) {
          return exact(b22(v.at("u"), HyperbolicPeriods(v.at("omega1"), v.at("omega2"))));
        }}},
      {"hyperbolic_gamma",
       {{{"u"}, {"omega1"}, {"omega2"}},
        [](const Values& v, const Ints&) {
          return exact(
              hyperbolic_gamma(v.at("u"), HyperbolicPeriods(v.at("omega1"), v.at("omega2"))));
        }}},
      {"log_gamma",
       {{{"w"}}, [](const Values& v, const Ints&) { return exact(log_gamma_complex(v.at("w"))); }}},
      {"complex_field_gamma",
       {{{"x"}, {"n"}},
        [](const Values& v, const Ints&) {
          if (v.at("n").imag() != 0.0) throw UsageError("complex_field_gamma: n must be real");
          return exact(complex_field_gamma(v.at("x"), v.at("n").real()));
        }}},
      {"grid_gamma",
       {{{"z"}, {"xi"}, {"eta"}, {"p"}},
        [](const Values& v, const Ints&) {
          return exact(grid_gamma(v.at("z"), GridGauge(v.at("xi"), v.at("eta")), v.at("p")));
        }}},
      {"R_n_elliptic",
       {with(with({{"z"}, {"p"}, {"q"}}, kT), {{"n", true}}),
        [](const Values& v, const Ints& i) {
          return exact(R_n_elliptic(v.at("z"), beta_from(v), i.at("n")));
        }}},
      {"T_n_elliptic",
       {with(with({{"z"}, {"p"}, {"q"}}, kT), {{"n", true}}),
        [](const Values& v, const Ints& i) {
          return exact(T_n_elliptic(v.at("z"), beta_from(v), i.at("n")));
        }}},
      {"h_nl_elliptic",
       {with(with({{"p"}, {"q"}}, kT), {{"n", true}, {"l", true}}),
        [](const Values& v, const Ints& i) {
          return exact(h_nl_elliptic(beta_from(v), i.at("n"), i.at("l")));
        }}},
      {"R_n_hyperbolic",
       {with(with({{"u"}, {"omega1"}, {"omega2"}}, kG), {{"n", true}}),
        [](const Values& v, const Ints& i) {
          return exact(R_n_hyperbolic(v.at("u"), hyperbolic_from(v), i.at("n")));
        }}},
  };
  return table;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.empty()) throw UsageError("empty complex literal");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_real(s, text, true)};
  return {parse_real(s.substr(0, split), text), parse_real(s.substr(split), text, true)};
}

std::vector<std::string> eval_functions() {
  std::vector<std::string> out;
  for (const auto& [name, f] : functions()) {
    std::string sig = name + "(";
    for (std::size_t k = 0; k < f.args.size(); ++k) sig += (k ? ", " : "") + f.args[k].name;
    out.push_back(sig + ")");
  }
  return out;
}

EvalOutput eval(const std::string& function, const std::vector<std::string>& args) {
  const auto it = functions().find(function);
  if (it == functions().end()) throw UsageError("eval: unknown function '" + function + "'");
  const Function& f = it->second;
  if (args.size() != f.args.size()) {
    throw UsageError("eval: " + function + " takes " + std::to_string(f.args.size()) +
                     " arguments, got " + std::to_string(args.size()));
  }

  std::map<std::string, std::string> raw;
  std::size_t position = 0;
  for (const std::string& a : args) {
    const auto eq = a.find('=');
    if (eq != std::string::npos) {
      const std::string name = a.substr(0, eq);
      const bool known =
          std::any_of(f.args.begin(), f.args.end(), [&](const Arg& x) { return x.name == name; });
      if (!known) throw UsageError("eval: " + function + " has no argument '" + name + "'");
      if (raw.count(name)) throw UsageError("eval: argument '" + name + "' given twice");
      raw[name] = a.substr(eq + 1);
    } else {
      while (position < f.args.size() && raw.count(f.args[position].name)) ++position;
      if (position == f.args.size()) throw UsageError("eval: too many positional arguments");
      raw[f.args[position].name] = a;
      ++position;
    }
  }

  EvalOutput out;
  out.function = function;
  Values values;
  Ints ints;
  for (const Arg& a : f.args) {
    const auto r = raw.find(a.name);
    if (r == raw.end()) throw UsageError("eval: missing argument '" + a.name + "'");
    const Complex z = parse_complex(r->second);
    if (a.integer) {
      if (z.imag() != 0.0 || z.real() != std::floor(z.real())) {
        throw UsageError("eval: argument '" + a.name + "' must be an integer");
      }
      ints[a.name] = static_cast<int>(z.real());
    }
    values[a.name] = z;
    out.args.emplace_back(a.name, r->second);
  }
  const auto [value, error] = f.body(values, ints);
  out.value = value;
  out.error_estimate = error;
  return out;
}

std::string format_eval(const EvalOutput& output) {
  std::string s = output.function + "(";
  for (std::size_t k = 0; k < output.args.size(); ++k) {
    s += (k ? ", " : "") + output.args[k].first + "=" + output.args[k].second;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, ")\nvalue: %.15g%+.15gi\n", output.value.real() + 0.0,
                output.value.imag() + 0.0);
  s += buf;
  if (output.error_estimate) {
    std::snprintf(buf, sizeof buf, "error_estimate: %.3g\n", *output.error_estimate);
  } else {
    std::snprintf(buf, sizeof buf, "error_estimate: not available (closed form or no bound)\n");
  }
  return s + buf;
}

}  // namespace hgt
