// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hgt/errors.hpp"
#include "hgt/verification.hpp"

namespace {

using hgt::Complex;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(Complex a, Complex b) {
  const double s = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / s;
}

hgt::BetaParams documented() {
  return hgt::BetaParams::with_solved_t6(hgt::EllipticBase(0.25, 0.25),
                                         {0.30, 0.35, 0.40, 0.25, 0.45});
}

hgt::BetaParams generic() {
  return hgt::BetaParams::with_solved_t6(hgt::EllipticBase(0.2, 0.3),
                                         {0.72, {0.66, 0.1}, 0.61, {0.55, -0.05}, {0.47, 0.03}});
}

const hgt::GridGauge kGauge1({0.37, 0.2}, {1.7, -0.3});
const hgt::GridGauge kGauge2({2.1, 0.5}, {0.1, 0.45});

std::vector<Complex> sample_z(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r(0.8, 1.25);
  std::uniform_real_distribution<double> a(0.0, 2.0 * hgt::kPi);
  std::vector<Complex> out;
  for (int i = 0; i < count; ++i) {
    const double radius = r(rng);
    out.push_back(std::polar(radius, a(rng)));
  }
  return out;
}

// Diagonal entries against their references, off-diagonal entries against
// off_tol times the geometric mean of the two diagonal references.
void check_gram(const hgt::GramMatrix& gram, double diag_tol, double off_tol, Outcome& o,
                double& worst_diag, double& worst_off) {
  for (const auto& e : gram.entries) {
    const auto& ix = e.index;
    if (ix.diagonal()) {
      const auto ref = gram.reference(ix.n, ix.l);
      if (!ref) {
        o.require(false, "missing diagonal reference");
        continue;
      }
      const double r = rel(e.value, *ref);
      worst_diag = std::max(worst_diag, r);
      o.require(r < diag_tol, fmt("diagonal (%g,%g) residual %.3g", ix.n, ix.l, r));
    } else {
      const auto a = gram.reference(ix.m, ix.k);
      const auto b = gram.reference(ix.n, ix.l);
      const auto base = gram.reference(0, 0);
      const double scale = a && b ? std::sqrt(std::abs(*a) * std::abs(*b))
                           : base ? std::abs(*base)
                                  : 0.0;
      const double r = scale > 0.0 ? std::abs(e.value) / scale : INFINITY;
      worst_off = std::max(worst_off, r);
      o.require(r < off_tol, fmt("off-diagonal ratio %.3g", r));
    }
  }
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto r = hgt::verify_elliptic_beta(documented(), 1e-8);
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(r.residual < 1e-8, "residual too large");
  o.require(s < 5.0, "runtime over 5 s");
  o.detail = fmt("residual %.3g < 1e-8, %.2f s < 5 s", r.residual, s) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto r = hgt::verify_biorthogonality_elliptic(generic(), 1, 1e-6);
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  double wd = 0.0, wo = 0.0;
  check_gram(r.gram, 1e-6, 1e-6, o, wd, wo);
  o.require(r.gram.entries.size() == 16, "expected 16 Gram entries");
  o.require(s < 60.0, "runtime over 60 s");
  o.detail = fmt("16 entries, worst diagonal %.3g < 1e-6, worst off-diagonal %.3g < 1e-6", wd, wo) +
             fmt(", %.2f s < 60 s", s) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto params = generic();
  double worst = 0.0, worst_gauge = 0.0;
  for (const Complex& z : sample_z(3, 5)) {
    for (int n = 1; n <= 3; ++n) {
      for (const auto* g : {&kGauge1, &kGauge2}) {
        const auto c = hgt::verify_ttr(params, *g, z, n, 1e-8);
        worst = std::max(worst, c.residual);
      }
      const auto a = hgt::R_n_by_recurrence(z, params, kGauge1, n);
      const auto b = hgt::R_n_by_recurrence(z, params, kGauge2, n);
      worst_gauge = std::max(worst_gauge, rel(a.back(), b.back()));
    }
  }
  o.require(worst < 1e-8, "recurrence residual too large");
  o.require(worst_gauge < 1e-9, "gauges disagree");
  o.detail = fmt("n=1..3, 5 z, 2 gauges: worst residual %.3g < 1e-8, gauge spread %.3g < 1e-9",
                 worst, worst_gauge) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto params = generic();
  const Complex pq = params.base().p() * params.base().q();
  double worst = 0.0, worst_eps = 0.0;
  for (int n = 0; n <= 2; ++n) {
    Complex prod = 1.0;
    for (const Complex& e : hgt::ehe_parameters(params, n)) prod *= e;
    worst_eps = std::max(worst_eps, rel(prod, pq * pq));
    for (const Complex& z : sample_z(4, 3)) {
      worst = std::max(worst, hgt::verify_ehe(params, n, z, 1e-7).residual);
    }
  }
  o.require(worst < 1e-7, "equation residual too large");
  o.require(worst_eps < 1e-10, "eps balancing off");
  o.detail =
      fmt("n=0..2, 3 z: worst residual %.3g < 1e-7, eps balancing %.3g < 1e-10", worst, worst_eps) +
      (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto params = generic();
  double worst = 0.0;
  for (int n = 1; n <= 2; ++n) {
    hgt::RiiFit fit;
    const auto c = hgt::verify_rii_form(params, kGauge1, n, 1e-8, {}, &fit);
    worst = std::max(worst, c.residual);
    o.require(fit.fit_points.size() == 3 && fit.holdout_points.size() == 5,
              "expected 3 fit and 5 holdout points");
  }
  o.require(worst < 1e-8, "holdout residual too large");
  o.detail = fmt("n=1,2, 3 fit + 5 holdout points: worst residual %.3g < 1e-8", worst) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion6() {
  Outcome o;
  const double t6 = 0.0625 / (0.30 * 0.35 * 0.40 * 0.25 * 0.45);
  const hgt::VParams v(hgt::EllipticBase(0.25, 0.25),
                       {0.30, 0.35, 0.40, 0.25, 0.45, t6, 0.5, 0.125});
  const auto c = hgt::verify_V_reduction(v, 1e-8);
  o.require(c.residual < 1e-8, "residual too large");
  o.detail = fmt("t7 t8 = pq: residual %.3g < 1e-8", c.residual) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto params = hgt::HyperbolicParams::with_solved_g6(
      hgt::HyperbolicPeriods(1.0, std::polar(1.0, -hgt::kPi / 4)),
      {0.2, {0.25, 0.1}, {0.22, -0.05}, 0.18, {0.45, 0.05}});
  const double nome = std::abs(params.periods().q());
  const auto t0 = Clock::now();
  const auto r = hgt::verify_biorthogonality_hyperbolic(params, 1, 1e-6);
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  double wd = 0.0, wo = 0.0;
  check_gram(r.gram, 1e-6, 1e-5, o, wd, wo);
  o.require(std::min(nome, 1.0 / nome) <= 0.8, "nome outside |q| <= 0.8");
  o.require(s < 120.0, "runtime over 2 min");
  o.detail = fmt("|q| = %.3f, worst diagonal %.3g < 1e-6, ", nome, wd) +
             fmt("worst off-diagonal %.3g < 1e-5, %.2f s < 120 s", wo, s) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion8() {
  Outcome o;
  const std::array<Complex, 5> alpha{
      Complex{0.3, -0.15}, {-0.2, -0.12}, {0.1, -0.15}, {0.25, -0.13}, {-0.15, -0.2}};
  const std::vector<hgt::GramIndex> idx{{0, 0, 0, 0}, {0, 0, 1, 0}};
  std::string detail;
  const auto t0 = Clock::now();
  for (const auto& n :
       {std::array<double, 5>{1, 0, -1, 2, 0}, std::array<double, 5>{0.5, -0.5, 1.5, -0.5, 0.5}}) {
    const auto params = hgt::ComplexLevelParams::with_solved_sixth(alpha, n);
    const auto r = hgt::verify_biorthogonality_complex(params, idx, 1e-3);
    double wd = 0.0, wo = 0.0;
    check_gram(r.gram, 1e-3, 1e-2, o, wd, wo);
    detail += fmt("nu=%g: beta %.3g < 1e-3, off-diagonal %.3g < 1e-2; ", params.nu(), wd, wo);
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(s < 180.0, "runtime over 3 min");
  o.detail = detail + fmt("%.2f s < 180 s", s) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion9() {
  Outcome o;
  const std::vector<double> v{0.2, 0.1, 0.05};
  const std::vector<double> delta{0.15, 0.10, 0.06};
  std::vector<std::pair<std::string, std::vector<hgt::CheckResult>>> ladders;
  ladders.emplace_back("theta", hgt::verify_limit_theta(0.3, 1.0, v));
  ladders.emplace_back(
      "ellgamma",
      hgt::verify_limit_ellgamma({0.3, 0.5, 0.7}, hgt::HyperbolicPeriods(1.0, {0.7, 0.3}), v));
  for (const auto& [x, n] :
       std::vector<std::pair<Complex, int>>{{{0.0, -1.0}, 0}, {{0.4, -0.5}, 1}, {{0.3, 0.2}, -2}}) {
    ladders.emplace_back(fmt("hypgamma x=%g%+gi", x.real(), x.imag()) + " n=" + std::to_string(n),
                         hgt::verify_limit_hypgamma_to_complex(x, n, delta));
  }
  std::string detail;
  for (const auto& [name, checks] : ladders) {
    detail += name + " [";
    for (std::size_t i = 0; i < checks.size(); ++i) {
      detail += fmt(i ? " %.3g" : "%.3g", checks[i].residual);
      o.require(checks[i].passed, name + " rung " + std::to_string(i) + " not decreasing");
    }
    detail += "] ";
  }
  o.detail = "strictly decreasing: " + detail + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion10() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto polar = [&](double lo, double hi) {
    const double r = lo + (hi - lo) * unit(rng);
    return std::polar(r, 2.0 * hgt::kPi * unit(rng));
  };
  double series = 0.0, quasi = 0.0, reflection = 0.0, difference = 0.0, cgamma = 0.0;
  hgt::PrecisionPolicy policy;
  for (int i = 0; i < 20; ++i) {
    const Complex z = polar(0.5, 2.0);
    const Complex p = polar(0.05, 0.5);
    const Complex t = hgt::theta(z, p, policy);
    series = std::max(series, rel(t, hgt::theta_series(z, p, policy)));
    quasi = std::max(quasi, std::abs(hgt::theta(p * z, p) + t / z) / std::abs(t / z));

    const hgt::EllipticBase base(polar(0.05, 0.35), polar(0.05, 0.35));
    const Complex w = polar(0.4, 1.6);
    const Complex g = hgt::elliptic_gamma(w, base);
    const Complex pq = base.p() * base.q();
    reflection = std::max(reflection, std::abs(hgt::elliptic_gamma(pq / w, base) * g - 1.0));
    difference = std::max(
        difference, rel(hgt::elliptic_gamma(base.q() * w, base), hgt::theta(w, base.p()) * g));
    difference = std::max(
        difference, rel(hgt::elliptic_gamma(base.p() * w, base), hgt::theta(w, base.q()) * g));

    const Complex x(3.0 * unit(rng) - 1.5, 3.0 * unit(rng) - 1.5);
    const int n = static_cast<int>(rng() % 7) - 3;
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    cgamma = std::max(cgamma, rel(hgt::complex_field_gamma(x, n) * hgt::complex_field_gamma(-x, -n),
                                  sign * 4.0 / (x * x + double(n * n))));
  }
  const Complex i1{0.0, 1.0};
  const double trivial = std::max({rel(hgt::complex_field_gamma(-i1, 0), 1.0),
                                   rel(hgt::complex_field_gamma(0.0, 2), 1.0),
                                   std::abs(hgt::complex_field_gamma(-2.0 * i1, 0))});
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(series < 1e-12, "theta product/series");
  o.require(quasi < 1e-12, "theta quasi-periodicity");
  o.require(reflection < 1e-10, "elliptic gamma reflection");
  o.require(difference < 1e-10, "elliptic gamma difference equations");
  o.require(trivial < 1e-15, "complex gamma trivial values");
  o.require(cgamma < 1e-12, "complex gamma reflection");
  o.require(s < 5.0, "runtime over 5 s");
  o.detail =
      fmt("20 samples: theta series %.3g < 1e-12, quasi-periodicity %.3g < 1e-12, ", series,
          quasi) +
      fmt("gamma reflection %.3g < 1e-10, difference %.3g < 1e-10, ", reflection, difference) +
      fmt("complex gamma trivial %.3g < 1e-15, reflection %.3g < 1e-12, ", trivial, cgamma) +
      fmt("%.2f s < 5 s", s) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"elliptic beta integral", criterion1},
      {"two-index elliptic biorthogonality", criterion2},
      {"three-term recurrence", criterion3},
      {"elliptic hypergeometric equation", criterion4},
      {"R_II form", criterion5},
      {"V-function reduction", criterion6},
      {"hyperbolic biorthogonality", criterion7},
      {"complex-level biorthogonality", criterion8},
      {"limit ladders", criterion9},
      {"core identity battery", criterion10},
  };
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.passed;
    std::printf("%s criterion %zu: %s: %s\n", o.passed ? "PASS" : "FAIL", k + 1,
                criteria[k].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
