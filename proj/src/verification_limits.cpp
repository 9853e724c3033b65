#include <cmath>
#include <cstdio>
#include <functional>

#include "hgt/errors.hpp"
#include "hgt/verification.hpp"

namespace hgt {

namespace {

std::string format_value(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

void require_ladder(const std::vector<double>& list, double floor, const char* what,
                    const char* name) {
  if (list.empty()) throw DomainError(std::string(what) + ": empty ladder");
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!(list[i] >= floor)) {
      throw RejectedParametersError(std::string(what) + ": " + name + " = " +
                                    format_value(list[i]) + " is below " + format_value(floor) +
                                    " where cancellation in double precision dominates");
    }
    if (i > 0 && !(list[i] < list[i - 1])) {
      throw DomainError(std::string(what) + ": ladder must be strictly decreasing");
    }
  }
}

// Rung i passes when its residual is below the previous one.
std::vector<CheckResult> ladder(const std::vector<double>& list, const std::string& label,
                                const std::string& digest,
                                const std::function<std::pair<Complex, Complex>(double)>& sides) {
  std::vector<CheckResult> out;
  double previous = 1.0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto [lhs, rhs] = sides(list[i]);
    const double tolerance = i == 0 ? 1.0 : std::nextafter(previous, 0.0);
    out.push_back(make_check(label + "=" + format_value(list[i]), lhs, rhs, tolerance, digest));
    previous = out.back().residual;
  }
  return out;
}

}  // namespace

std::vector<CheckResult> verify_limit_theta(double u, double omega2,
                                            const std::vector<double>& v_list) {
  if (!(omega2 > 0.0)) throw DomainError("verify_limit_theta: omega2 must be positive");
  require_ladder(v_list, kMinLimitV, "verify_limit_theta", "v");
  const std::string digest = params_digest(std::vector<Complex>{u, omega2});
  return ladder(v_list, "theta limit u=" + format_value(u) + " v", digest, [&](double v) {
    const Complex lhs = theta(std::exp(-2.0 * kPi * v * u), std::exp(-2.0 * kPi * v * omega2));
    const Complex rhs = std::exp(-kPi / (6.0 * omega2 * v)) * 2.0 * std::sin(kPi * u / omega2);
    return std::pair{lhs, rhs};
  });
}

std::vector<CheckResult> verify_limit_ellgamma(const std::vector<Complex>& u_grid,
                                               const HyperbolicPeriods& periods,
                                               const std::vector<double>& v_list) {
  if (u_grid.empty()) throw DomainError("verify_limit_ellgamma: empty u grid");
  require_ladder(v_list, kMinLimitV, "verify_limit_ellgamma", "v");
  const Complex w1 = periods.omega1();
  const Complex w2 = periods.omega2();
  if (!(w1.real() > 0.0 && w2.real() > 0.0)) {
    throw DomainError("verify_limit_ellgamma: periods need positive real parts");
  }
  std::vector<CheckResult> out;
  for (const Complex& u : u_grid) {
    const std::string digest = params_digest(std::vector<Complex>{u, w1, w2});
    char label[96];
    std::snprintf(label, sizeof label, "elliptic gamma limit u=%g%+gi v", u.real(), u.imag());
    auto rungs = ladder(v_list, label, digest, [&](double v) {
      const EllipticBase base(std::exp(-2.0 * kPi * v * w1), std::exp(-2.0 * kPi * v * w2));
      const Complex lhs = elliptic_gamma(std::exp(-2.0 * kPi * v * u), base);
      const Complex rhs = std::exp(-kPi * (2.0 * u - w1 - w2) / (12.0 * v * w1 * w2)) *
                          hyperbolic_gamma(u, periods);
      return std::pair{lhs, rhs};
    });
    out.insert(out.end(), rungs.begin(), rungs.end());
  }
  return out;
}

std::vector<CheckResult> verify_limit_hypgamma_to_complex(Complex x, int n,
                                                          const std::vector<double>& delta_list) {
  require_ladder(delta_list, kMinLimitDelta, "verify_limit_hypgamma_to_complex", "delta");
  const std::string digest = params_digest(std::vector<Complex>{x, static_cast<double>(n)});
  char label[96];
  std::snprintf(label, sizeof label, "hyperbolic to complex gamma x=%g%+gi n=%d delta", x.real(),
                x.imag(), n);
  const Complex i(0.0, 1.0);
  const double nn = static_cast<double>(n);
  const Complex gamma_xn = complex_field_gamma(x, nn);
  return ladder(delta_list, label, digest, [&](double delta) {
    const Complex b = i + delta;
    const HyperbolicPeriods periods(b * b, 1.0);
    const Complex u = i * b * (nn + x * delta);
    const Complex lhs = hyperbolic_gamma(u, periods);
    const Complex rhs =
        std::exp(i * kPi * nn * nn / 2.0) * std::pow(4.0 * kPi * delta, i * x - 1.0) * gamma_xn;
    return std::pair{lhs, rhs};
  });
}

}  // namespace hgt
