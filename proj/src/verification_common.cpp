#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "hgt/errors.hpp"
#include "hgt/verification.hpp"
#include "verification_internal.hpp"

namespace hgt {

namespace {

void append(std::ostringstream& os, Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g;", z.real(), z.imag());
  os << buf;
}

bool same_point(Complex a, Complex b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
}

}  // namespace

CheckResult make_check(std::string name, Complex lhs, Complex rhs, double tolerance,
                       std::string params_digest, double scale) {
  CheckResult r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  const double denom = std::max({std::abs(lhs), std::abs(rhs), scale});
  const bool finite = std::isfinite(std::abs(lhs)) && std::isfinite(std::abs(rhs));
  r.residual = denom > 0.0 ? std::abs(lhs - rhs) / denom : 0.0;
  if (!finite || !std::isfinite(r.residual)) {
    r.residual = std::numeric_limits<double>::infinity();
  }
  r.tolerance = tolerance;
  r.passed = r.residual <= tolerance;
  r.params_digest = std::move(params_digest);
  return r;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string params_digest(const BetaParams& params) {
  std::ostringstream os;
  os << "elliptic:";
  append(os, params.base().p());
  append(os, params.base().q());
  for (const Complex& t : params.t()) append(os, t);
  return fnv1a_hex(os.str());
}

std::string params_digest(const VParams& params) {
  std::ostringstream os;
  os << "elliptic-v:";
  append(os, params.base().p());
  append(os, params.base().q());
  for (const Complex& t : params.t()) append(os, t);
  return fnv1a_hex(os.str());
}

std::string params_digest(const HyperbolicParams& params) {
  std::ostringstream os;
  os << "hyperbolic:";
  append(os, params.periods().omega1());
  append(os, params.periods().omega2());
  for (const Complex& g : params.g()) append(os, g);
  return fnv1a_hex(os.str());
}

std::string params_digest(const ComplexLevelParams& params) {
  std::ostringstream os;
  os << "complex:";
  for (std::size_t k = 0; k < 6; ++k) {
    append(os, params.alpha()[k]);
    append(os, params.n()[k]);
  }
  return fnv1a_hex(os.str());
}

std::string params_digest(const std::vector<Complex>& values) {
  std::ostringstream os;
  os << "values:";
  for (const Complex& v : values) append(os, v);
  return fnv1a_hex(os.str());
}

std::optional<Complex> GramMatrix::entry(const GramIndex& index) const {
  for (const GramEntry& e : entries) {
    const auto& ix = e.index;
    if (ix.m == index.m && ix.k == index.k && ix.n == index.n && ix.l == index.l) {
      return e.value;
    }
  }
  return std::nullopt;
}

std::optional<Complex> GramMatrix::reference(int n, int l) const {
  for (const auto& [key, value] : diagonal_reference) {
    if (key[0] == n && key[1] == l) return value;
  }
  return std::nullopt;
}

std::vector<GramIndex> index_grid(int max_index) {
  if (max_index < 0) throw DomainError("index_grid: max_index must be >= 0");
  std::vector<GramIndex> out;
  for (int m = 0; m <= max_index; ++m) {
    for (int k = 0; k <= max_index; ++k) {
      for (int n = 0; n <= max_index; ++n) {
        for (int l = 0; l <= max_index; ++l) out.push_back({m, k, n, l});
      }
    }
  }
  return out;
}

namespace detail {

std::string index_label(const GramIndex& index) {
  return "((" + std::to_string(index.m) + "," + std::to_string(index.k) + "),(" +
         std::to_string(index.n) + "," + std::to_string(index.l) + "))";
}

std::vector<QuadratureResult> multi_ledger_integral(const VectorIntegrand& f,
                                                    const std::vector<PoleLedger>& ledgers,
                                                    const ContourSpec& contour, double tol,
                                                    double decay_hint,
                                                    const QuadratureBudget& budget) {
  const std::size_t components = ledgers.size();
  const bool circle = contour.kind == ContourKind::circle;

  std::vector<Complex> all;
  for (const PoleLedger& ledger : ledgers) {
    all.insert(all.end(), ledger.inside_required.begin(), ledger.inside_required.end());
    all.insert(all.end(), ledger.outside_required.begin(), ledger.outside_required.end());
  }

  struct Loop {
    Complex center;
    double radius;
    std::vector<std::pair<std::size_t, int>> users;
  };
  std::vector<Loop> loops;
  for (std::size_t c = 0; c < components; ++c) {
    for (const Indentation& ind : plan_indentations(ledgers[c], contour, all)) {
      auto it = std::find_if(loops.begin(), loops.end(),
                             [&](const Loop& l) { return same_point(l.center, ind.center); });
      if (it == loops.end()) {
        loops.push_back({ind.center, ind.radius, {}});
        it = std::prev(loops.end());
      }
      it->radius = std::min(it->radius, ind.radius);
      it->users.emplace_back(c, ind.sign);
    }
  }

  std::vector<QuadratureResult> results =
      circle ? circle_quadrature(f, components, contour, tol, budget)
             : line_quadrature(f, components, contour, tol, decay_hint, budget);
  const Complex two_pi_i(0.0, 2.0 * kPi);
  Complex loop_factor{1.0, 0.0};
  if (!circle) {
    const Complex tangent =
        contour.kind == ContourKind::vertical_line ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
    for (auto& r : results) r.value *= tangent;
    loop_factor = two_pi_i;
  }

  const VectorIntegrand over_z = [&f](Complex z, std::span<Complex> out) {
    f(z, out);
    for (Complex& v : out) v /= z;
  };
  for (const Loop& loop : loops) {
    const auto values =
        loop_quadrature(circle ? over_z : f, components, loop.center, loop.radius, tol, budget);
    for (const auto& [c, sign] : loop.users) {
      results[c].value += loop_factor * static_cast<double>(sign) * values[c].value;
      results[c].error_estimate += std::abs(loop_factor) * values[c].error_estimate;
      results[c].magnitude += std::abs(loop_factor) * values[c].magnitude;
    }
    for (auto& r : results) r.nodes_used += values.front().nodes_used;
  }
  return results;
}

}  // namespace detail

}  // namespace hgt
