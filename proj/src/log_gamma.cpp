#include <array>
#include <cmath>
#include <complex>

#include "hgt/errors.hpp"
#include "hgt/special_core.hpp"

namespace hgt {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kIntegerTolerance = 1e-12;

bool is_nonpositive_integer(Complex w) {
  if (std::abs(w.imag()) > kIntegerTolerance) return false;
  if (w.real() > kIntegerTolerance) return false;
  return std::abs(w.real() - std::round(w.real())) <= kIntegerTolerance;
}

Complex lanczos_log_gamma(Complex w) {
  const Complex z = w - 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    x += kLanczos[i] / (z + static_cast<double>(i));
  }
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi w) without overflow for large |Im w|.
Complex log_sin_pi(Complex w) {
  constexpr Complex kI{0.0, 1.0};
  if (w.imag() > 20.0) {
    return -kI * kPi * w + std::log(Complex(0.0, 0.5)) +
           std::log(1.0 - std::exp(2.0 * kI * kPi * w));
  }
  if (w.imag() < -20.0) {
    return kI * kPi * w + std::log(Complex(0.0, -0.5)) +
           std::log(1.0 - std::exp(-2.0 * kI * kPi * w));
  }
  return std::log(std::sin(kPi * w));
}

}  // namespace

Complex log_gamma_complex(Complex w) {
  if (is_nonpositive_integer(w)) {
    throw PoleError("log_gamma_complex: pole at a non-positive integer", std::lround(w.real()));
  }
  if (w.real() >= 0.5) return lanczos_log_gamma(w);
  return std::log(kPi) - log_sin_pi(w) - lanczos_log_gamma(1.0 - w);
}

Complex complex_field_gamma(Complex x, double n) {
  constexpr Complex kI{0.0, 1.0};
  const Complex a = 0.5 * (n + kI * x);
  const Complex b = 1.0 + 0.5 * (n - kI * x);
  const bool numerator_pole = is_nonpositive_integer(a);
  const bool denominator_pole = is_nonpositive_integer(b);
  if (numerator_pole && denominator_pole) {
    throw IndeterminateError("complex_field_gamma: numerator and denominator poles coincide");
  }
  if (numerator_pole) throw PoleError("complex_field_gamma: numerator pole");
  if (denominator_pole) return Complex{};
  if (a.imag() == 0.0 && b.imag() == 0.0) {
    const double ratio = std::tgamma(a.real()) / std::tgamma(b.real());
    if (std::isfinite(ratio) && ratio != 0.0) return ratio;
  }
  return std::exp(log_gamma_complex(a) - log_gamma_complex(b));
}

Complex log_complex_field_gamma(Complex x, double n) {
  constexpr Complex kI{0.0, 1.0};
  const Complex a = 0.5 * (n + kI * x);
  const Complex b = 1.0 + 0.5 * (n - kI * x);
  if (is_nonpositive_integer(a)) {
    throw PoleError("log_complex_field_gamma: numerator pole");
  }
  if (is_nonpositive_integer(b)) {
    throw DomainError("log_complex_field_gamma: the factor vanishes");
  }
  return log_gamma_complex(a) - log_gamma_complex(b);
}

}  // namespace hgt
