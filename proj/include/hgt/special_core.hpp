#pragma once

// Infinite-product building blocks shared by every level of the tower:
// q-Pochhammer symbols, the theta function theta(z;p) = (z;p)(p/z;p), the
// elliptic Pochhammer symbol, the elliptic gamma function, the hyperbolic
// gamma function and the gamma function over the complex field.
//
// All functions are pure. Truncated products stop once the remaining factors
// are provably within the policy's truncation epsilon of one.

#include <complex>
#include <cstdint>
#include <span>

namespace hgt {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// A denominator factor closer than this to zero is reported as a pole.
inline constexpr double kPoleThreshold = 1e-13;

struct PrecisionPolicy {
  double truncation_epsilon = 1e-16;
  std::int64_t max_terms = 100000;
  int working_precision_bits = 53;

  // Throws DomainError on epsilon <= 0, max_terms < 1 or bits < 53.
  void validate() const;
};

// Bases (p, q) of the elliptic level. The regular constructor enforces
// 0 < |p|,|q| < 1. The trigonometric factory builds p = 0 with an arbitrary
// nonzero q; it is only accepted by operations that document p = 0
// (terminating series and elliptic Pochhammer symbols).
class EllipticBase {
 public:
  EllipticBase(Complex p, Complex q);

  static EllipticBase trigonometric(Complex q);

  Complex p() const noexcept { return p_; }
  Complex q() const noexcept { return q_; }
  bool is_trigonometric() const noexcept { return p_ == Complex{}; }

  // (p, q) -> (q, p).
  EllipticBase swapped() const;

 private:
  struct Unchecked {};
  EllipticBase(Unchecked, Complex p, Complex q) : p_(p), q_(q) {}

  Complex p_;
  Complex q_;
};

// Quasi-periods of the hyperbolic level.
class HyperbolicPeriods {
 public:
  // Throws DomainError if either period is zero or omega1/omega2 is a
  // non-positive real. A positive real ratio (|q| = 1) is representable but
  // every evaluation rejects it with UnsupportedRegimeError.
  HyperbolicPeriods(Complex omega1, Complex omega2);

  Complex omega1() const noexcept { return omega1_; }
  Complex omega2() const noexcept { return omega2_; }

  HyperbolicPeriods swapped() const { return {omega2_, omega1_}; }

  // q = exp(2 pi i omega1/omega2); may have modulus above one.
  Complex q() const;

 private:
  Complex omega1_;
  Complex omega2_;
};

// A value together with a bound on the truncation error it carries.
struct Estimate {
  Complex value;
  double error_bound = 0.0;
};

// (z;p)_inf. p = 0 is allowed and gives 1 - z.
Complex qpoch_inf(Complex z, Complex p, const PrecisionPolicy& policy = {});
Estimate qpoch_inf_estimate(Complex z, Complex p, const PrecisionPolicy& policy = {});

// theta(z;p) = (z;p)_inf (p/z;p)_inf.
Complex theta(Complex z, Complex p, const PrecisionPolicy& policy = {});
Estimate theta_estimate(Complex z, Complex p, const PrecisionPolicy& policy = {});

// Product of theta(x_i;p) over the list.
Complex theta_product(std::span<const Complex> zs, Complex p, const PrecisionPolicy& policy = {});

// Bilateral series representation of theta; an oracle for theta(), never
// used on hot paths.
Complex theta_series(Complex z, Complex p, const PrecisionPolicy& policy = {});

// theta(z;p;q)_n = prod_{k<n} theta(z q^k;p).
Complex elliptic_pochhammer(Complex z, const EllipticBase& base, int n,
                            const PrecisionPolicy& policy = {});

// Gamma(z;p,q) = prod_{j,k>=0} (1 - p^{j+1} q^{k+1}/z) / (1 - z p^j q^k).
Complex elliptic_gamma(Complex z, const EllipticBase& base, const PrecisionPolicy& policy = {});
Estimate elliptic_gamma_estimate(Complex z, const EllipticBase& base,
                                 const PrecisionPolicy& policy = {});

// 1 / (Gamma(z^2;p,q) Gamma(z^-2;p,q)) = theta(z^2;p) theta(z^-2;q). Finite
// at z = +-1 where the two gamma factors are individually singular.
Complex elliptic_inverse_gamma_square(Complex z, const EllipticBase& base,
                                      const PrecisionPolicy& policy = {});

Complex b22(Complex u, const HyperbolicPeriods& periods);

// gamma^(2)(u; omega1, omega2). log_hyperbolic_gamma returns a logarithm
// (defined modulo 2 pi i) for assembling products of many factors without
// overflow.
Complex hyperbolic_gamma(Complex u, const HyperbolicPeriods& periods,
                         const PrecisionPolicy& policy = {});
Complex log_hyperbolic_gamma(Complex u, const HyperbolicPeriods& periods,
                             const PrecisionPolicy& policy = {});

// 1 / (gamma^(2)(u) gamma^(2)(-u)) = -4 sin(pi u/omega1) sin(pi u/omega2).
Complex hyperbolic_inverse_gamma_pair(Complex u, const HyperbolicPeriods& periods);

// log Gamma(w) for complex w; exp() of the result is Gamma(w). The imaginary
// part is continuous on Re(w) >= 1/2; the reflection formula is used to the
// left of that line.
Complex log_gamma_complex(Complex w);

// Gamma(x, n) = Gamma((n + i x)/2) / Gamma(1 + (n - i x)/2). n may be an
// integer or a half-integer. A denominator pole gives exactly zero.
Complex complex_field_gamma(Complex x, double n);

// log Gamma(x, n) for factors known to be finite and nonzero.
Complex log_complex_field_gamma(Complex x, double n);

}  // namespace hgt
