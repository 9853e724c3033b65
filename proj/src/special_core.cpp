#include "hgt/special_core.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "hgt/errors.hpp"

namespace hgt {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_inside_unit_disk(Complex p, const char* what) {
  if (!(std::abs(p) < 1.0)) {
    throw DomainError(std::string(what) + ": base must satisfy |p| < 1");
  }
}

// sum_{a >= 0} log(1 - exp(first + a * step)), Re(step) < 0. Each factor is
// evaluated from its exponent so that huge |exp(first)| never overflows.
// When check_poles is set a factor within kPoleThreshold of zero throws.
Complex log_qpoch_from_exponent(Complex first, Complex step, bool check_poles,
                                const PrecisionPolicy& policy) {
  const double ratio = std::exp(step.real());
  Complex sum{};
  Complex exponent = first;
  for (std::int64_t a = 0; a < policy.max_terms; ++a) {
    const double re = exponent.real();
    if (re < 30.0) {
      const Complex w = std::exp(exponent);
      const double aw = std::abs(w);
      if (aw < 0.5 && aw / ((1.0 - ratio) * (1.0 - aw)) < policy.truncation_epsilon) {
        return sum;
      }
      const Complex factor = 1.0 - w;
      if (check_poles && std::abs(factor) < kPoleThreshold) {
        throw PoleError(
            "hyperbolic_gamma: u hits a pole of the denominator "
            "product",
            static_cast<long>(a));
      }
      sum += std::log(factor);
    } else {
      // log(1 - w) = log(-w) + log(1 - 1/w), and |1/w| < e^-30.
      sum += exponent + Complex(0.0, kPi) - std::exp(-exponent);
    }
    exponent += step;
  }
  throw ConvergenceError("log q-Pochhammer: max_terms exhausted");
}

}  // namespace

void PrecisionPolicy::validate() const {
  if (!(truncation_epsilon > 0.0)) {
    throw DomainError("PrecisionPolicy: truncation_epsilon must be positive");
  }
  if (max_terms < 1) throw DomainError("PrecisionPolicy: max_terms must be >= 1");
  if (working_precision_bits < 53) {
    throw DomainError("PrecisionPolicy: working_precision_bits must be >= 53");
  }
}

EllipticBase::EllipticBase(Complex p, Complex q) : p_(p), q_(q) {
  const double ap = std::abs(p);
  const double aq = std::abs(q);
  if (!(ap > 0.0 && ap < 1.0 && aq > 0.0 && aq < 1.0)) {
    throw DomainError("EllipticBase: need 0 < |p| < 1 and 0 < |q| < 1");
  }
}

EllipticBase EllipticBase::trigonometric(Complex q) {
  if (q == Complex{} || !std::isfinite(std::abs(q))) {
    throw DomainError("EllipticBase::trigonometric: q must be finite and nonzero");
  }
  return EllipticBase(Unchecked{}, Complex{}, q);
}

EllipticBase EllipticBase::swapped() const { return EllipticBase(Unchecked{}, q_, p_); }

HyperbolicPeriods::HyperbolicPeriods(Complex omega1, Complex omega2)
    : omega1_(omega1), omega2_(omega2) {
  if (omega1 == Complex{} || omega2 == Complex{}) {
    throw DomainError("HyperbolicPeriods: periods must be nonzero");
  }
  const Complex tau = omega1 / omega2;
  if (std::abs(tau.imag()) <= 1e-12 * std::abs(tau) && tau.real() <= 0.0) {
    throw DomainError("HyperbolicPeriods: omega1/omega2 is a non-positive real");
  }
}

Complex HyperbolicPeriods::q() const { return std::exp(2.0 * kPi * kI * omega1_ / omega2_); }

Estimate qpoch_inf_estimate(Complex z, Complex p, const PrecisionPolicy& policy) {
  policy.validate();
  require_inside_unit_disk(p, "qpoch_inf");
  if (p == Complex{}) return {1.0 - z, 0.0};
  const double ap = std::abs(p);
  Complex prod{1.0, 0.0};
  Complex x = z;
  for (std::int64_t a = 0; a < policy.max_terms; ++a) {
    const double ax = std::abs(x);
    if (ax < 0.5) {
      // |log prod_{b >= a}(1 - z p^b)| <= |x| / ((1 - |p|)(1 - |x|)).
      const double tail = ax / ((1.0 - ap) * (1.0 - ax));
      if (tail < policy.truncation_epsilon) return {prod, tail * std::abs(prod)};
    }
    prod *= 1.0 - x;
    x *= p;
  }
  throw ConvergenceError("qpoch_inf: max_terms exhausted before the tail bound was met");
}

Complex qpoch_inf(Complex z, Complex p, const PrecisionPolicy& policy) {
  return qpoch_inf_estimate(z, p, policy).value;
}

Estimate theta_estimate(Complex z, Complex p, const PrecisionPolicy& policy) {
  if (z == Complex{}) throw DomainError("theta: z = 0 is not in the domain");
  const Estimate a = qpoch_inf_estimate(z, p, policy);
  const Estimate b = qpoch_inf_estimate(p / z, p, policy);
  return {a.value * b.value, a.error_bound * std::abs(b.value) + b.error_bound * std::abs(a.value)};
}

Complex theta(Complex z, Complex p, const PrecisionPolicy& policy) {
  if (z == Complex{}) throw DomainError("theta: z = 0 is not in the domain");
  return qpoch_inf(z, p, policy) * qpoch_inf(p / z, p, policy);
}

Complex theta_product(std::span<const Complex> zs, Complex p, const PrecisionPolicy& policy) {
  Complex r{1.0, 0.0};
  for (const Complex& z : zs) r *= theta(z, p, policy);
  return r;
}

Complex theta_series(Complex z, Complex p, const PrecisionPolicy& policy) {
  policy.validate();
  if (z == Complex{}) throw DomainError("theta_series: z = 0 is not in the domain");
  if (p == Complex{}) throw DomainError("theta_series: p = 0 is not supported");
  require_inside_unit_disk(p, "theta_series");

  using LC = std::complex<long double>;
  const LC lz(z.real(), z.imag());
  const LC lp(p.real(), p.imag());
  const long double eps = policy.truncation_epsilon;

  // k >= 0: t_{k+1} = -t_k p^k z ; k < 0: t_{k-1} = -t_k p^{1-k} / z.
  LC sum(1.0L, 0.0L);
  long double max_term = 1.0L;
  auto run = [&](LC term, LC pk, bool forward) {
    for (std::int64_t k = 0; k < policy.max_terms; ++k) {
      const LC ratio = forward ? -pk * lz : -pk / lz;
      term *= ratio;
      sum += term;
      const long double at = std::abs(term);
      max_term = std::max(max_term, at);
      pk *= lp;
      if (std::abs(ratio) < 0.5L && at <= eps * max_term * 1e-3L) return;
    }
    throw ConvergenceError("theta_series: bilateral sum did not converge");
  };
  run(LC(1.0L, 0.0L), LC(1.0L, 0.0L), true);
  run(LC(1.0L, 0.0L), lp, false);

  const Complex s(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
  return s / qpoch_inf(p, p, policy);
}

Complex elliptic_pochhammer(Complex z, const EllipticBase& base, int n,
                            const PrecisionPolicy& policy) {
  if (n < 0) throw DomainError("elliptic_pochhammer: n must be >= 0");
  Complex r{1.0, 0.0};
  Complex x = z;
  for (int k = 0; k < n; ++k) {
    r *= theta(x, base.p(), policy);
    x *= base.q();
  }
  return r;
}

Estimate elliptic_gamma_estimate(Complex z, const EllipticBase& base,
                                 const PrecisionPolicy& policy) {
  policy.validate();
  if (base.is_trigonometric()) {
    throw DomainError("elliptic_gamma: requires 0 < |p|,|q| < 1");
  }
  if (z == Complex{}) throw DomainError("elliptic_gamma: z = 0 is not in the domain");

  const Complex p = base.p();
  const Complex q = base.q();
  const double r = std::max(std::abs(p), std::abs(q));
  const Complex zinv = 1.0 / z;

  std::vector<Complex> pp{1.0};
  std::vector<Complex> qq{1.0};
  Complex num{1.0, 0.0};
  Complex den{1.0, 0.0};

  for (std::int64_t m = 0; m < policy.max_terms; ++m) {
    while (static_cast<std::int64_t>(pp.size()) < m + 2) {
      pp.push_back(pp.back() * p);
      qq.push_back(qq.back() * q);
    }
    double shell = 0.0;
    for (std::int64_t j = 0; j <= m; ++j) {
      const std::int64_t k = m - j;
      const Complex a = pp[j + 1] * qq[k + 1] * zinv;
      const Complex b = z * pp[j] * qq[k];
      const Complex d = 1.0 - b;
      if (std::abs(d) < kPoleThreshold) {
        throw PoleError("elliptic_gamma: z hits a pole (1 - z p^j q^k = 0)", static_cast<long>(j),
                        static_cast<long>(k));
      }
      num *= 1.0 - a;
      den *= d;
      shell = std::max(shell, std::abs(a) + std::abs(b));
    }
    if (shell < policy.truncation_epsilon) {
      const Complex value = num / den;
      const double tail = shell * r * static_cast<double>(m + 2) / ((1.0 - r) * (1.0 - r));
      return {value, tail * std::abs(value)};
    }
  }
  throw ConvergenceError("elliptic_gamma: max_terms exhausted");
}

Complex elliptic_gamma(Complex z, const EllipticBase& base, const PrecisionPolicy& policy) {
  return elliptic_gamma_estimate(z, base, policy).value;
}

Complex elliptic_inverse_gamma_square(Complex z, const EllipticBase& base,
                                      const PrecisionPolicy& policy) {
  const Complex z2 = z * z;
  return theta(z2, base.p(), policy) * theta(1.0 / z2, base.q(), policy);
}

Complex b22(Complex u, const HyperbolicPeriods& periods) {
  const Complex w1 = periods.omega1();
  const Complex w2 = periods.omega2();
  const Complex shifted = u - 0.5 * (w1 + w2);
  return (shifted * shifted - (w1 * w1 + w2 * w2) / 12.0) / (w1 * w2);
}

Complex log_hyperbolic_gamma(Complex u, const HyperbolicPeriods& periods,
                             const PrecisionPolicy& policy) {
  policy.validate();
  Complex w1 = periods.omega1();
  Complex w2 = periods.omega2();
  const Complex tau = w1 / w2;
  if (std::abs(tau.imag()) <= 1e-12 * std::abs(tau)) {
    throw UnsupportedRegimeError("hyperbolic_gamma: |q| = 1 is not supported");
  }
  // gamma^(2) is symmetric in the periods; the product formula needs
  // Im(omega1/omega2) > 0.
  if (tau.imag() < 0.0) std::swap(w1, w2);

  const Complex two_pi_i = 2.0 * kPi * kI;
  const Complex log_q = two_pi_i * w1 / w2;
  const Complex log_qt = -two_pi_i * w2 / w1;
  const Complex prefactor = -0.5 * kPi * kI * b22(u, HyperbolicPeriods(w1, w2));
  const Complex numerator =
      log_qpoch_from_exponent(log_qt + two_pi_i * u / w1, log_qt, false, policy);
  const Complex denominator = log_qpoch_from_exponent(two_pi_i * u / w2, log_q, true, policy);
  return prefactor + numerator - denominator;
}

Complex hyperbolic_gamma(Complex u, const HyperbolicPeriods& periods,
                         const PrecisionPolicy& policy) {
  return std::exp(log_hyperbolic_gamma(u, periods, policy));
}

Complex hyperbolic_inverse_gamma_pair(Complex u, const HyperbolicPeriods& periods) {
  return -4.0 * std::sin(kPi * u / periods.omega1()) * std::sin(kPi * u / periods.omega2());
}

}  // namespace hgt
