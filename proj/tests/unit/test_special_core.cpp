#include <doctest.h>

#include <cmath>

#include "hgt/errors.hpp"
#include "hgt/special_core.hpp"
#include "support.hpp"

using hgt::Complex;
using hgt::EllipticBase;
using hgt::HyperbolicPeriods;
using hgt_test::annulus_sample;
using hgt_test::rel;

namespace {

const Complex kI{0.0, 1.0};

}  // namespace

TEST_SUITE("frozen oracles") {
  // Reference values computed with 40-digit arithmetic.
  TEST_CASE("q-Pochhammer and theta") {
    CHECK(rel(hgt::qpoch_inf(0.5, 0.3), 0.3980822043018776635608) < 1e-14);
    CHECK(rel(hgt::theta(-1.0, 0.2), 3.1777245674336637407) < 1e-14);
    CHECK(rel(hgt::theta(0.5, 0.3), 0.1206767662510669575287) < 1e-14);
    CHECK(rel(hgt::elliptic_pochhammer({0.3, 0.1}, EllipticBase(0.2, 0.25), 3),
              {-0.8361600199412755606791, 0.5626509503644210362724}) < 1e-14);
  }

  TEST_CASE("elliptic gamma") {
    CHECK(rel(hgt::elliptic_gamma({0.4, 0.3}, EllipticBase(0.2, 0.3)),
              {1.130736039532308184404, 1.300939932064277952003}) < 1e-13);
    CHECK(rel(hgt::elliptic_gamma({-0.6, 0.2}, EllipticBase({0.3, 0.1}, 0.25)),
              {0.4070697942703715124963, 0.1217083157332994584576}) < 1e-13);
  }

  TEST_CASE("hyperbolic gamma") {
    CHECK(rel(hgt::hyperbolic_gamma({0.3, 0.2},
                                    HyperbolicPeriods(1.0, std::polar(1.0, -hgt::kPi / 4))),
              {0.5077938394553112022683, -0.241133306945201573964}) < 1e-12);
    CHECK(rel(hgt::hyperbolic_gamma({0.7, 0.1}, HyperbolicPeriods(1.0, {0.7, 0.3})),
              {0.8426887917323722536579, -0.007748398160170210705811}) < 1e-12);
  }

  TEST_CASE("log gamma and complex-field gamma") {
    CHECK(rel(hgt::log_gamma_complex({2.5, 1.5}),
              {-0.2271122407932273221864, 1.171292934664603033976}) < 1e-13);
    // Only exp() of the left half-plane value is branch independent.
    CHECK(rel(std::exp(hgt::log_gamma_complex({-3.7, 0.2})),
              std::exp(Complex(-1.636433092562456377077, -12.66328267963577157075))) < 1e-12);
    CHECK(rel(hgt::complex_field_gamma({0.4, -0.5}, 1),
              {1.275197488449040000539, -0.331193857402179630811}) < 1e-13);
  }

  TEST_CASE("b22 by hand expansion") {
    CHECK(rel(hgt::b22(3.0, HyperbolicPeriods(1.0, 2.0)), 11.0 / 12.0) < 1e-15);
    CHECK(rel(hgt::b22(0.0, HyperbolicPeriods(1.0, 1.0)), 5.0 / 6.0) < 1e-15);
    const HyperbolicPeriods w({1.0, 0.2}, {0.3, 0.9});
    const Complex w1 = w.omega1(), w2 = w.omega2();
    CHECK(rel(hgt::b22((w1 + w2) / 2.0, w), -(w1 * w1 + w2 * w2) / (12.0 * w1 * w2)) < 1e-14);
  }
}

TEST_SUITE("trivial values") {
  TEST_CASE("theta") {
    CHECK(std::abs(hgt::theta(0.4, 0.0) - 0.6) < 1e-15);
    CHECK(std::abs(hgt::theta(1.0, 0.25)) == 0.0);
    CHECK(std::abs(hgt::theta_series(1.0, 0.3)) < 1e-15);
    CHECK(rel(hgt::theta_series(0.5, 0.3), hgt::theta(0.5, 0.3)) < 1e-15);
  }

  TEST_CASE("elliptic Pochhammer") {
    const EllipticBase base(0.2, 0.25);
    CHECK(hgt::elliptic_pochhammer(0.3, base, 0) == Complex(1.0));
    CHECK(rel(hgt::elliptic_pochhammer(0.3, base, 1), hgt::theta(0.3, 0.2)) < 1e-15);
    CHECK(rel(hgt::elliptic_pochhammer(0.3, EllipticBase::trigonometric(0.5), 2), 0.7 * 0.85) <
          1e-15);
  }

  TEST_CASE("elliptic gamma at the square root of pq") {
    CHECK(rel(hgt::elliptic_gamma(std::sqrt(0.06), EllipticBase(0.2, 0.3)), 1.0) < 1e-14);
  }

  TEST_CASE("hyperbolic gamma at the centre") {
    const HyperbolicPeriods w(1.0, 2.0 * kI);
    CHECK(rel(hgt::hyperbolic_gamma((w.omega1() + w.omega2()) / 2.0, w), 1.0) < 1e-13);
  }

  TEST_CASE("log gamma") {
    CHECK(std::abs(hgt::log_gamma_complex(1.0)) < 1e-15);
    CHECK(rel(hgt::log_gamma_complex(0.5), 0.5 * std::log(hgt::kPi)) < 1e-14);
  }

  TEST_CASE("complex-field gamma") {
    CHECK(rel(hgt::complex_field_gamma(-kI, 0), 1.0) < 1e-15);
    CHECK(rel(hgt::complex_field_gamma(0.0, 2), 1.0) < 1e-15);
    CHECK(hgt::complex_field_gamma(-2.0 * kI, 0) == Complex(0.0));
  }
}

TEST_SUITE("identities on random samples") {
  TEST_CASE("theta product agrees with the series") {
    hgt::PrecisionPolicy policy;
    policy.truncation_epsilon = 1e-14;
    for (double p : {0.05, 0.2, 0.35, 0.5}) {
      for (const Complex& z : annulus_sample(11, 20, 0.5, 2.0)) {
        const Complex product = hgt::theta(z, p, policy);
        CHECK(std::abs(product - hgt::theta_series(z, p, policy)) <=
              10 * policy.truncation_epsilon * std::abs(product));
      }
    }
  }

  TEST_CASE("theta quasi-periodicity and inversion") {
    for (const Complex p : {Complex(0.3), Complex(0.2, 0.15)}) {
      for (const Complex& z : annulus_sample(12, 20, 0.5, 2.0)) {
        const Complex t = hgt::theta(z, p);
        CHECK(std::abs(hgt::theta(p * z, p) + t / z) <= 1e-12 * std::abs(t / z));
        CHECK(std::abs(hgt::theta(1.0 / z, p) + t / z) <= 1e-12 * std::abs(t / z));
      }
    }
  }

  TEST_CASE("elliptic gamma reflection and difference equations") {
    const EllipticBase base({0.2, 0.05}, 0.3);
    const Complex p = base.p(), q = base.q();
    for (const Complex& z : annulus_sample(13, 20, 0.4, 1.6)) {
      const Complex g = hgt::elliptic_gamma(z, base);
      CHECK(std::abs(hgt::elliptic_gamma(p * q / z, base) * g - 1.0) < 1e-10);
      CHECK(rel(hgt::elliptic_gamma(q * z, base), hgt::theta(z, p) * g) < 1e-10);
      CHECK(rel(hgt::elliptic_gamma(p * z, base), hgt::theta(z, q) * g) < 1e-10);
    }
  }

  TEST_CASE("elliptic gamma is symmetric in the bases") {
    for (const Complex& z : annulus_sample(14, 10, 0.4, 1.6)) {
      CHECK(rel(hgt::elliptic_gamma(z, EllipticBase(0.2, 0.3)),
                hgt::elliptic_gamma(z, EllipticBase(0.3, 0.2))) < 1e-13);
    }
  }

  TEST_CASE("inverse gamma square matches theta product") {
    const EllipticBase base(0.2, 0.3);
    for (const Complex& z : annulus_sample(15, 10, 0.7, 1.3)) {
      const Complex direct =
          1.0 / (hgt::elliptic_gamma(z * z, base) * hgt::elliptic_gamma(1.0 / (z * z), base));
      CHECK(rel(hgt::elliptic_inverse_gamma_square(z, base), direct) < 1e-11);
    }
    CHECK(std::isfinite(std::abs(hgt::elliptic_inverse_gamma_square(1.0, base))));
  }

  TEST_CASE("hyperbolic gamma reflection and shift") {
    const HyperbolicPeriods w(1.0, std::polar(1.0, -hgt::kPi / 4));
    const Complex s = w.omega1() + w.omega2();
    for (const Complex& u0 : annulus_sample(16, 20, 0.1, 0.6)) {
      const Complex u = u0 + 0.3;
      const Complex g = hgt::hyperbolic_gamma(u, w);
      CHECK(std::abs(g * hgt::hyperbolic_gamma(s - u, w) - 1.0) < 1e-11);
      CHECK(rel(hgt::hyperbolic_gamma(u + w.omega1(), w) / g,
                2.0 * std::sin(hgt::kPi * u / w.omega2())) < 1e-10);
      CHECK(rel(hgt::hyperbolic_inverse_gamma_pair(u, w),
                1.0 / (g * hgt::hyperbolic_gamma(-u, w))) < 1e-10);
    }
  }

  TEST_CASE("hyperbolic gamma is symmetric in the periods") {
    const HyperbolicPeriods w(1.0, {0.7, 0.3});
    for (const Complex& u : annulus_sample(17, 10, 0.2, 0.8)) {
      CHECK(rel(hgt::hyperbolic_gamma(u, w), hgt::hyperbolic_gamma(u, w.swapped())) < 1e-11);
    }
  }

  TEST_CASE("log gamma matches the real gamma function and recurrence") {
    for (double x : {0.3, 1.0, 2.5, 7.25, -0.5, -2.7}) {
      CHECK(rel(std::exp(hgt::log_gamma_complex(x)), std::tgamma(x)) < 1e-13);
    }
    for (const Complex& w : annulus_sample(18, 20, 0.5, 8.0)) {
      CHECK(rel(std::exp(hgt::log_gamma_complex(w + 1.0)),
                w * std::exp(hgt::log_gamma_complex(w))) < 1e-12);
    }
  }

  TEST_CASE("complex-field gamma reflection") {
    // Gamma(x,n) Gamma(-x,-n) = (-1)^n 4/(x^2 + n^2), from the classical
    // reflection formula.
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> part(-1.5, 1.5);
    for (int i = 0; i < 20; ++i) {
      const Complex x(part(rng), part(rng));
      for (int n : {-2, -1, 0, 1, 3}) {
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        CHECK(rel(hgt::complex_field_gamma(x, n) * hgt::complex_field_gamma(-x, -n),
                  sign * 4.0 / (x * x + double(n * n))) < 1e-12);
      }
    }
  }

  TEST_CASE("complex-field gamma against real gamma ratios") {
    for (double n : {0.0, 0.5, 1.0, 1.5, 3.0}) {
      for (double y : {-0.6, -0.2, 0.3}) {
        // x = -i y makes both arguments real.
        const Complex x(0.0, -y);
        const double expected = std::tgamma((n + y) / 2) / std::tgamma(1 + (n - y) / 2);
        CHECK(rel(hgt::complex_field_gamma(x, n), expected) < 1e-13);
        CHECK(rel(std::exp(hgt::log_complex_field_gamma(x, n)), expected) < 1e-12);
      }
    }
  }
}

TEST_SUITE("theta asymptotics") {
  TEST_CASE("sine limit ratio approaches one monotonically") {
    const double u = 0.3, w2 = 1.0;
    double previous = 1e300;
    for (double v : {0.2, 0.1, 0.05}) {
      const Complex t =
          hgt::theta(std::exp(-2 * hgt::kPi * v * u), std::exp(-2 * hgt::kPi * v * w2));
      const double model = std::exp(-hgt::kPi / (6 * w2 * v)) * 2 * std::sin(hgt::kPi * u / w2);
      const double gap = std::abs(t / model - 1.0);
      CHECK(gap < previous);
      previous = gap;
    }
    CHECK(previous < 0.1);
  }
}

TEST_SUITE("errors") {
  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(hgt::theta(0.0, 0.3), hgt::DomainError);
    CHECK_THROWS_AS(hgt::theta(0.5, 1.2), hgt::DomainError);
    CHECK_THROWS_AS(EllipticBase(1.2, 0.3), hgt::DomainError);
    CHECK_THROWS_AS(EllipticBase(0.0, 0.3), hgt::DomainError);
    CHECK_THROWS_AS(hgt::elliptic_pochhammer(0.3, EllipticBase(0.2, 0.3), -1), hgt::DomainError);
    CHECK_THROWS_AS(HyperbolicPeriods(1.0, -2.0), hgt::DomainError);
    CHECK_THROWS_AS(HyperbolicPeriods(0.0, 1.0), hgt::DomainError);
    hgt::PrecisionPolicy bad;
    bad.truncation_epsilon = 0.0;
    CHECK_THROWS_AS(bad.validate(), hgt::DomainError);
  }

  TEST_CASE("poles") {
    const EllipticBase base(0.2, 0.3);
    try {
      hgt::elliptic_gamma(1.0 / (0.2 * 0.09), base);
      FAIL("expected a pole");
    } catch (const hgt::PoleError& e) {
      CHECK(e.index_a() == 1);
      CHECK(e.index_b() == 2);
    }
    CHECK_THROWS_AS(hgt::log_gamma_complex(-3.0), hgt::PoleError);
    CHECK_THROWS_AS(hgt::complex_field_gamma(0.0, 0), hgt::PoleError);
    CHECK_THROWS_AS(hgt::complex_field_gamma(0.0, -2), hgt::IndeterminateError);
  }

  TEST_CASE("unit-circle regime of the hyperbolic gamma") {
    const HyperbolicPeriods w(1.0, 2.0);
    CHECK_THROWS_AS(hgt::hyperbolic_gamma(0.3, w), hgt::UnsupportedRegimeError);
  }
}
