#include "hgt/contours_quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "hgt/errors.hpp"

namespace hgt {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr std::int64_t kInitialNodes = 32;
// Rotation of the trapezoidal grid, in turns. Keeps nodes off the real axis
// while preserving nesting under doubling.
constexpr double kNodeRotation = 0.0137;
constexpr double kLoopRadiusFactor = 0.4;
constexpr std::int64_t kInitialShells = 8;

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    using G = boost::math::quadrature::gauss<double, 20>;
    GaussRule r;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      r.nodes.push_back(x[i]);
      r.weights.push_back(w[i]);
      if (x[i] != 0.0) {
        r.nodes.push_back(-x[i]);
        r.weights.push_back(w[i]);
      }
    }
    return r;
  }();
  return rule;
}

// Evaluates f at every point into a row-major (points x components) buffer.
std::vector<Complex> evaluate(const VectorIntegrand& f, std::size_t components,
                              const std::vector<Complex>& points, int threads) {
  std::vector<Complex> out(points.size() * components);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      f(points[i], std::span<Complex>(out.data() + i * components, components));
    }
  };
  const std::size_t n = points.size();
  const std::size_t t = static_cast<std::size_t>(std::max(1, threads));
  if (t == 1 || n < 64) {
    work(0, n);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(t);
  const std::size_t chunk = (n + t - 1) / t;
  for (std::size_t w = 0; w < t; ++w) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, w, b, e] {
      try {
        work(b, e);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

VectorIntegrand lift(const Integrand& f) {
  return [f](Complex z, std::span<Complex> out) { out[0] = f(z); };
}

VectorShellTerm lift(const ShellTerm& f) {
  return [f](double n, std::span<Complex> out) { out[0] = f(n); };
}

bool within_tolerance(Complex delta, Complex value, double magnitude, double tol) {
  return std::abs(delta) <= tol * std::max(std::abs(value), magnitude);
}

// Nested trapezoidal rule on the circle z(theta) = center + radius e^{i theta}.
// Returns the mean of f(z) * weight(z).
std::vector<QuadratureResult> periodic_trapezoid(const VectorIntegrand& f, std::size_t components,
                                                 Complex center, double radius, bool loop_measure,
                                                 double tol, const QuadratureBudget& budget,
                                                 const char* what) {
  auto node = [&](std::int64_t k, std::int64_t n) {
    const double turns = static_cast<double>(k) / static_cast<double>(n) + kNodeRotation;
    return center + radius * std::exp(2.0 * kPi * kI * turns);
  };
  std::vector<Complex> sum(components);
  std::vector<double> abs_sum(components);
  auto accumulate = [&](const std::vector<Complex>& points) {
    const auto values = evaluate(f, components, points, budget.threads);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Complex w = loop_measure ? points[i] - center : Complex(1.0, 0.0);
      for (std::size_t c = 0; c < components; ++c) {
        const Complex v = values[i * components + c] * w;
        sum[c] += v;
        abs_sum[c] += std::abs(v);
      }
    }
  };

  std::int64_t n = kInitialNodes;
  {
    std::vector<Complex> points;
    for (std::int64_t k = 0; k < n; ++k) points.push_back(node(k, n));
    accumulate(points);
  }
  std::vector<Complex> previous(components);
  for (std::size_t c = 0; c < components; ++c) previous[c] = sum[c] / static_cast<double>(n);

  double worst = 0.0;
  while (2 * n <= budget.max_nodes) {
    std::vector<Complex> points;
    for (std::int64_t k = 0; k < n; ++k) points.push_back(node(2 * k + 1, 2 * n));
    accumulate(points);
    n *= 2;
    bool ok = true;
    std::vector<QuadratureResult> results(components);
    worst = 0.0;
    for (std::size_t c = 0; c < components; ++c) {
      const Complex value = sum[c] / static_cast<double>(n);
      const double magnitude = abs_sum[c] / static_cast<double>(n);
      const Complex delta = value - previous[c];
      results[c] = {value, std::abs(delta), n, true, magnitude};
      if (!within_tolerance(delta, value, magnitude, tol)) {
        ok = false;
        worst = std::max(worst, std::abs(delta) / std::max(std::abs(value), magnitude));
      }
      previous[c] = value;
    }
    if (ok) return results;
  }
  throw ConvergenceError(std::string(what) + ": no convergence within " +
                         std::to_string(budget.max_nodes) + " nodes (last relative change " +
                         std::to_string(worst) + ")");
}

double side_distance(Complex z, const ContourSpec& contour) {
  switch (contour.kind) {
    case ContourKind::circle:
      return std::abs(z) - contour.offset;
    case ContourKind::vertical_line:
      return z.real() - contour.offset;
    case ContourKind::horizontal_line:
      return z.imag() - contour.offset;
  }
  return 0.0;
}

Side side_of(Complex z, const ContourSpec& contour, double margin) {
  const double d = side_distance(z, contour);
  if (d < -margin) return Side::inside;
  if (d > margin) return Side::outside;
  return Side::boundary;
}

bool same_point(Complex a, Complex b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
}

std::vector<Complex> distinct(const std::vector<Complex>& xs) {
  std::vector<Complex> out;
  for (const Complex& x : xs) {
    if (std::none_of(out.begin(), out.end(), [&](Complex y) { return same_point(x, y); })) {
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace

ContourSpec ContourSpec::circle(double radius) {
  return {ContourKind::circle, radius, 0.0, Orientation::positive};
}

ContourSpec ContourSpec::vertical_line(double offset, double truncation) {
  return {ContourKind::vertical_line, offset, truncation, Orientation::standard};
}

ContourSpec ContourSpec::horizontal_line(double offset, double truncation) {
  return {ContourKind::horizontal_line, offset, truncation, Orientation::standard};
}

void ContourSpec::validate() const {
  if (kind == ContourKind::circle) {
    if (!(offset > 0.0)) throw DomainError("ContourSpec: circle radius must be positive");
  } else if (!(truncation > 0.0)) {
    throw DomainError("ContourSpec: line truncation must be positive");
  }
}

Complex ContourSpec::line_point(double x) const {
  if (kind == ContourKind::vertical_line) return {offset, x};
  if (kind == ContourKind::horizontal_line) return {x, offset};
  throw DomainError("ContourSpec::line_point: not a line");
}

std::vector<SeparationViolation> separation_violations(const PoleLedger& ledger,
                                                       const ContourSpec& contour) {
  std::vector<SeparationViolation> out;
  for (const Complex& z : ledger.inside_required) {
    const Side s = side_of(z, contour, ledger.margin);
    if (s != Side::inside) out.push_back({z, s, true});
  }
  for (const Complex& z : ledger.outside_required) {
    const Side s = side_of(z, contour, ledger.margin);
    if (s != Side::outside) out.push_back({z, s, false});
  }
  return out;
}

std::optional<SeparationViolation> pole_separation_check(const PoleLedger& ledger,
                                                         const ContourSpec& contour) {
  auto all = separation_violations(ledger, contour);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<Indentation> plan_indentations(const PoleLedger& ledger, const ContourSpec& contour,
                                           std::span<const Complex> avoid) {
  contour.validate();
  if (!(ledger.margin > 0.0)) throw DomainError("PoleLedger: margin must be positive");
  const auto inside = distinct(ledger.inside_required);
  const auto outside = distinct(ledger.outside_required);
  for (const Complex& a : inside) {
    for (const Complex& b : outside) {
      if (std::abs(a - b) <= ledger.margin) {
        throw RejectedParametersError(
            "contour pinched: a point required inside coincides with one required outside");
      }
    }
  }
  std::vector<Complex> all = inside;
  all.insert(all.end(), outside.begin(), outside.end());
  all.insert(all.end(), avoid.begin(), avoid.end());

  const int orientation = contour.kind == ContourKind::horizontal_line ? -1 : 1;
  std::vector<Indentation> plan;
  auto add = [&](Complex c, int sign) {
    double d = std::numeric_limits<double>::infinity();
    for (const Complex& x : all) {
      if (!same_point(c, x)) d = std::min(d, std::abs(c - x));
    }
    if (contour.kind == ContourKind::circle) d = std::min(d, std::abs(c));
    plan.push_back({c, kLoopRadiusFactor * d, sign * orientation});
  };
  PoleLedger reduced{inside, outside, ledger.margin};
  for (const auto& v : separation_violations(reduced, contour)) {
    if (v.side == Side::boundary) {
      throw RejectedParametersError("ledger point lies within the margin of the contour");
    }
    add(v.point, v.required_inside ? 1 : -1);
  }
  return plan;
}

QuadratureResult circle_quadrature(const Integrand& f, const ContourSpec& contour, double tol,
                                   const QuadratureBudget& budget) {
  return circle_quadrature(lift(f), 1, contour, tol, budget).front();
}

std::vector<QuadratureResult> circle_quadrature(const VectorIntegrand& f, std::size_t components,
                                                const ContourSpec& contour, double tol,
                                                const QuadratureBudget& budget) {
  contour.validate();
  if (contour.kind != ContourKind::circle) {
    throw DomainError("circle_quadrature: contour is not a circle");
  }
  return periodic_trapezoid(f, components, 0.0, contour.offset, false, tol, budget,
                            "circle_quadrature");
}

QuadratureResult loop_quadrature(const Integrand& f, Complex center, double radius, double tol,
                                 const QuadratureBudget& budget) {
  return loop_quadrature(lift(f), 1, center, radius, tol, budget).front();
}

std::vector<QuadratureResult> loop_quadrature(const VectorIntegrand& f, std::size_t components,
                                              Complex center, double radius, double tol,
                                              const QuadratureBudget& budget) {
  if (!(radius > 0.0)) throw DomainError("loop_quadrature: radius must be positive");
  return periodic_trapezoid(f, components, center, radius, true, tol, budget, "loop_quadrature");
}

QuadratureResult line_quadrature(const Integrand& f, const ContourSpec& contour, double tol,
                                 double decay_hint, const QuadratureBudget& budget) {
  return line_quadrature(lift(f), 1, contour, tol, decay_hint, budget).front();
}

std::vector<QuadratureResult> line_quadrature(const VectorIntegrand& f, std::size_t components,
                                              const ContourSpec& contour, double tol,
                                              double decay_hint, const QuadratureBudget& budget) {
  contour.validate();
  if (contour.kind == ContourKind::circle) {
    throw DomainError("line_quadrature: contour is not a line");
  }
  if (!(decay_hint > 0.0)) throw DomainError("line_quadrature: decay_hint must be positive");
  const GaussRule& rule = gauss_rule();

  auto breakpoints = [&](double T) {
    std::vector<double> edges{0.0};
    const double core = std::min(decay_hint, T);
    for (int i = 1; i <= 4; ++i) edges.push_back(core * i / 4.0);
    for (double x = 2.0 * core; x < T; x *= 2.0) edges.push_back(x);
    if (edges.back() < T) edges.push_back(T);
    std::vector<double> all;
    for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
      if (*it != 0.0) all.push_back(-*it);
    }
    all.insert(all.end(), edges.begin(), edges.end());
    return all;
  };

  struct Pass {
    std::vector<Complex> value;
    std::vector<double> magnitude;
    std::int64_t nodes;
  };
  auto integrate = [&](const std::vector<double>& edges, int level) {
    std::vector<Complex> points;
    std::vector<double> weights;
    const int split = 1 << level;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      const double h = (edges[e + 1] - edges[e]) / split;
      for (int s = 0; s < split; ++s) {
        const double a = edges[e] + s * h;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          points.push_back(contour.line_point(a + 0.5 * h * (1.0 + rule.nodes[i])));
          weights.push_back(0.5 * h * rule.weights[i]);
        }
      }
    }
    const auto values = evaluate(f, components, points, budget.threads);
    Pass pass{std::vector<Complex>(components), std::vector<double>(components),
              static_cast<std::int64_t>(points.size())};
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t c = 0; c < components; ++c) {
        const Complex v = values[i * components + c] * weights[i];
        pass.value[c] += v;
        pass.magnitude[c] += std::abs(v);
      }
    }
    return pass;
  };

  auto boundary = [&](double T) {
    std::vector<Complex> points;
    for (double x : {T, 0.95 * T, 0.9 * T}) {
      points.push_back(contour.line_point(x));
      points.push_back(contour.line_point(-x));
    }
    const auto values = evaluate(f, components, points, 1);
    std::vector<double> b(components);
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t c = 0; c < components; ++c) {
        b[c] = std::max(b[c], std::abs(values[i * components + c]));
      }
    }
    return b;
  };

  double T = std::max(contour.truncation, decay_hint);
  const Pass core = integrate(breakpoints(T), 0);
  std::vector<std::vector<double>> history;
  while (true) {
    const auto b = boundary(T);
    bool small = true;
    for (std::size_t c = 0; c < components; ++c) {
      const double scale = std::max(std::abs(core.value[c]), core.magnitude[c]);
      if (b[c] * T > tol * scale) small = false;
    }
    if (small) break;
    history.push_back(b);
    if (history.size() >= 3) {
      const auto& b0 = history[history.size() - 3];
      const auto& b1 = history[history.size() - 2];
      const auto& b2 = history[history.size() - 1];
      for (std::size_t c = 0; c < components; ++c) {
        if (b2[c] > 0.0 && b1[c] >= b0[c] && b2[c] >= b1[c]) {
          throw DivergenceError("line_quadrature: integrand does not decay along the line");
        }
      }
    }
    T *= 2.0;
    if (T > budget.max_truncation) {
      throw ConvergenceError("line_quadrature: truncation exceeded max_truncation");
    }
  }

  const auto edges = breakpoints(T);
  Pass previous = integrate(edges, 0);
  std::int64_t nodes = previous.nodes;
  double worst = 0.0;
  for (int level = 1;; ++level) {
    const std::int64_t next_nodes = previous.nodes * 2;
    if (next_nodes > budget.max_nodes) break;
    Pass current = integrate(edges, level);
    nodes += current.nodes;
    bool ok = true;
    worst = 0.0;
    std::vector<QuadratureResult> results(components);
    for (std::size_t c = 0; c < components; ++c) {
      const Complex delta = current.value[c] - previous.value[c];
      results[c] = {current.value[c], std::abs(delta), nodes, true, current.magnitude[c]};
      if (!within_tolerance(delta, current.value[c], current.magnitude[c], tol)) {
        ok = false;
        worst = std::max(
            worst, std::abs(delta) / std::max(std::abs(current.value[c]), current.magnitude[c]));
      }
    }
    if (ok) return results;
    previous = std::move(current);
  }
  throw ConvergenceError("line_quadrature: no convergence within " +
                         std::to_string(budget.max_nodes) + " nodes (last relative change " +
                         std::to_string(worst) + ")");
}

QuadratureResult bilateral_sum(const ShellTerm& term, double nu, double tol,
                               const QuadratureBudget& budget) {
  return bilateral_sum(lift(term), 1, nu, tol, budget).front();
}

std::vector<QuadratureResult> bilateral_sum(const VectorShellTerm& term, std::size_t components,
                                            double nu, double tol, const QuadratureBudget& budget) {
  const bool half = std::abs(nu - 0.5) < 1e-12;
  if (!half && std::abs(nu) > 1e-12) {
    throw DomainError("bilateral_sum: nu must be 0 or 1/2");
  }
  std::vector<Complex> partial(components);
  std::vector<double> abs_sum(components);
  std::vector<Complex> buffer(components);
  std::int64_t evaluations = 0;

  // Shell j holds N = +-(j + nu); for nu = 0 shell 0 is the single N = 0.
  auto add_shell = [&](std::int64_t j, std::vector<Complex>& block, double& block_max) {
    const double base = static_cast<double>(j) + (half ? 0.5 : 0.0);
    std::vector<double> ns{base};
    if (base != 0.0) ns.push_back(-base);
    for (double n : ns) {
      std::fill(buffer.begin(), buffer.end(), Complex{});
      term(n, buffer);
      ++evaluations;
      for (std::size_t c = 0; c < components; ++c) {
        block[c] += buffer[c];
        abs_sum[c] += std::abs(buffer[c]);
        block_max = std::max(block_max, std::abs(buffer[c]));
      }
    }
  };

  std::int64_t shells = std::min(kInitialShells, budget.max_shells);
  double previous_max = 0.0;
  {
    std::vector<Complex> block(components);
    for (std::int64_t j = 0; j < shells; ++j) add_shell(j, block, previous_max);
    for (std::size_t c = 0; c < components; ++c) partial[c] += block[c];
  }
  int streak = 0;
  while (2 * shells <= budget.max_shells) {
    std::vector<Complex> block(components);
    double block_max = 0.0;
    for (std::int64_t j = shells; j < 2 * shells; ++j) add_shell(j, block, block_max);
    shells *= 2;
    for (std::size_t c = 0; c < components; ++c) partial[c] += block[c];
    if (block_max > 0.0 && block_max >= previous_max) {
      throw DivergenceError("bilateral_sum: shell contributions are not decreasing");
    }
    previous_max = block_max;
    bool small = true;
    for (std::size_t c = 0; c < components; ++c) {
      if (!within_tolerance(block[c], partial[c], abs_sum[c], tol)) small = false;
    }
    streak = small ? streak + 1 : 0;
    if (streak >= 2) {
      std::vector<QuadratureResult> results(components);
      for (std::size_t c = 0; c < components; ++c) {
        results[c] = {partial[c], std::abs(block[c]), evaluations, true, abs_sum[c]};
      }
      return results;
    }
  }
  throw ConvergenceError("bilateral_sum: no convergence within " +
                         std::to_string(budget.max_shells) + " shells");
}

std::vector<QuadratureResult> indented_circle_integral(const VectorIntegrand& f,
                                                       std::size_t components,
                                                       const ContourSpec& contour,
                                                       const PoleLedger& ledger, double tol,
                                                       const QuadratureBudget& budget) {
  const auto plan = plan_indentations(ledger, contour);
  auto results = circle_quadrature(f, components, contour, tol, budget);
  const VectorIntegrand over_z = [&f](Complex z, std::span<Complex> out) {
    f(z, out);
    for (Complex& v : out) v /= z;
  };
  for (const Indentation& ind : plan) {
    const auto loop = loop_quadrature(over_z, components, ind.center, ind.radius, tol, budget);
    for (std::size_t c = 0; c < components; ++c) {
      results[c].value += static_cast<double>(ind.sign) * loop[c].value;
      results[c].error_estimate += loop[c].error_estimate;
      results[c].magnitude += loop[c].magnitude;
      results[c].nodes_used += loop[c].nodes_used;
    }
  }
  return results;
}

std::vector<QuadratureResult> indented_line_integral(
    const VectorIntegrand& f, std::size_t components, const ContourSpec& contour,
    const PoleLedger& ledger, double tol, double decay_hint, const QuadratureBudget& budget) {
  const auto plan = plan_indentations(ledger, contour);
  auto results = line_quadrature(f, components, contour, tol, decay_hint, budget);
  const Complex tangent = contour.kind == ContourKind::vertical_line ? kI : Complex(1.0);
  for (auto& r : results) r.value *= tangent;
  for (const Indentation& ind : plan) {
    const auto loop = loop_quadrature(f, components, ind.center, ind.radius, tol, budget);
    for (std::size_t c = 0; c < components; ++c) {
      results[c].value += 2.0 * kPi * kI * static_cast<double>(ind.sign) * loop[c].value;
      results[c].error_estimate += 2.0 * kPi * loop[c].error_estimate;
      results[c].magnitude += 2.0 * kPi * loop[c].magnitude;
      results[c].nodes_used += loop[c].nodes_used;
    }
  }
  return results;
}

PoleLedger build_ort2_ledger(const BetaParams& params, int m, int n, int k, int l, double cutoff) {
  const Complex p = params.base().p();
  const Complex q = params.base().q();
  const auto& t = params.t();
  auto power = [](Complex x, int e) {
    Complex r{1.0, 0.0};
    const Complex b = e >= 0 ? x : 1.0 / x;
    for (int i = 0; i < std::abs(e); ++i) r *= b;
    return r;
  };
  PoleLedger ledger;
  const Complex shift5 = power(p, -k) * power(q, -m);
  const Complex shift6 = power(p, -l) * power(q, -n);
  for (Complex pa = 1.0; std::abs(pa) >= cutoff; pa *= p) {
    for (Complex pb = pa; std::abs(pb) >= cutoff; pb *= q) {
      for (int j = 0; j < 4; ++j) ledger.inside_required.push_back(t[j] * pb);
      ledger.inside_required.push_back(t[4] * pb * shift5);
      ledger.inside_required.push_back(t[5] * pb * shift6);
    }
  }
  for (const Complex& z : ledger.inside_required) ledger.outside_required.push_back(1.0 / z);
  return ledger;
}

PoleLedger build_v_ledger(const VParams& params, double cutoff) {
  const Complex p = params.base().p();
  const Complex q = params.base().q();
  PoleLedger ledger;
  for (Complex pa = 1.0; std::abs(pa) >= cutoff; pa *= p) {
    for (Complex pb = pa; std::abs(pb) >= cutoff; pb *= q) {
      for (const Complex& tj : params.t()) ledger.inside_required.push_back(tj * pb);
    }
  }
  for (const Complex& z : ledger.inside_required) ledger.outside_required.push_back(1.0 / z);
  return ledger;
}

PoleLedger build_hyperbolic_ledger(const HyperbolicParams& params, int m, int n, int k, int l,
                                   int count) {
  const Complex w1 = params.periods().omega1();
  const Complex w2 = params.periods().omega2();
  const auto& g = params.g();
  PoleLedger ledger;
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      const Complex shift = static_cast<double>(a) * w2 + static_cast<double>(b) * w1;
      for (int j = 0; j < 4; ++j) ledger.outside_required.push_back(g[j] + shift);
      ledger.outside_required.push_back(g[4] + shift - static_cast<double>(k) * w2 -
                                        static_cast<double>(m) * w1);
      ledger.outside_required.push_back(g[5] + shift - static_cast<double>(l) * w2 -
                                        static_cast<double>(n) * w1);
    }
  }
  for (const Complex& z : ledger.outside_required) ledger.inside_required.push_back(-z);
  return ledger;
}

PoleLedger build_complex_ledger(const ComplexLevelParams& params, int m, int n, int s, int l,
                                int count) {
  const auto& alpha = params.alpha();
  PoleLedger ledger;
  for (int c = 0; c < count; ++c) {
    const double dc = static_cast<double>(c);
    for (int j = 0; j < 4; ++j) ledger.inside_required.push_back(alpha[j] - kI * dc);
    ledger.inside_required.push_back(alpha[4] + kI * static_cast<double>(s + m - c));
    ledger.inside_required.push_back(alpha[5] + kI * static_cast<double>(l + n - c));
  }
  for (const Complex& z : ledger.inside_required) ledger.outside_required.push_back(-z);
  return ledger;
}

}  // namespace hgt
