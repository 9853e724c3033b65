#pragma once

// Terminating very-well-poised series and the biorthogonal rational
// functions built from them at the elliptic, hyperbolic and complex levels,
// together with recurrence coefficients and normalization constants.

#include <array>
#include <span>
#include <vector>

#include "hgt/special_core.hpp"

namespace hgt {

// Relative tolerance used by the parameter constructors for balancing.
inline constexpr double kBalancingTolerance = 1e-12;

// Bases p, q and t1..t6 with t1 t2 t3 t4 t5 t6 = pq. |t_j| < 1 is not
// enforced here: measure-level users validate the contour separately.
class BetaParams {
 public:
  // Throws RejectedParametersError when the balancing fails.
  BetaParams(EllipticBase base, const std::array<Complex, 6>& t);

  // Builds t6 = pq / (t1 t2 t3 t4 t5).
  static BetaParams with_solved_t6(EllipticBase base, const std::array<Complex, 5>& t15);

  const EllipticBase& base() const noexcept { return base_; }
  const std::array<Complex, 6>& t() const noexcept { return t_; }
  Complex t(int j) const { return t_.at(static_cast<std::size_t>(j - 1)); }

  BetaParams swapped_t5_t6() const;
  BetaParams with_swapped_base() const;

 private:
  EllipticBase base_;
  std::array<Complex, 6> t_;
};

// Bases and t1..t8 with t1 ... t8 = (pq)^2.
class VParams {
 public:
  VParams(EllipticBase base, const std::array<Complex, 8>& t);

  const EllipticBase& base() const noexcept { return base_; }
  const std::array<Complex, 8>& t() const noexcept { return t_; }

 private:
  EllipticBase base_;
  std::array<Complex, 8> t_;
};

// Gauge parameters of the elliptic grid gamma(z).
class GridGauge {
 public:
  // Throws DomainError when xi or eta is zero.
  GridGauge(Complex xi, Complex eta);

  Complex xi() const noexcept { return xi_; }
  Complex eta() const noexcept { return eta_; }

  // Throws DomainError when eta = xi^{+-1} p^k for some |k| <= k_check.
  void validate(Complex p, int k_check = 8) const;

 private:
  Complex xi_;
  Complex eta_;
};

// Quasi-periods and exponents g1..g6 with g1 + ... + g6 = omega1 + omega2.
class HyperbolicParams {
 public:
  HyperbolicParams(HyperbolicPeriods periods, const std::array<Complex, 6>& g);

  static HyperbolicParams with_solved_g6(HyperbolicPeriods periods,
                                         const std::array<Complex, 5>& g15);

  const HyperbolicPeriods& periods() const noexcept { return periods_; }
  const std::array<Complex, 6>& g() const noexcept { return g_; }

  HyperbolicParams swapped_g5_g6() const;
  HyperbolicParams with_swapped_periods() const;

  // s_j = exp(2 pi i g_j / omega2).
  std::array<Complex, 6> s() const;

 private:
  HyperbolicPeriods periods_;
  std::array<Complex, 6> g_;
};

// Pairs (alpha_k, N_k) with sum alpha = -2i, sum N = 0 and every N_k in
// Z + nu for nu in {0, 1/2}.
class ComplexLevelParams {
 public:
  ComplexLevelParams(const std::array<Complex, 6>& alpha, const std::array<double, 6>& n);

  static ComplexLevelParams with_solved_sixth(const std::array<Complex, 5>& alpha15,
                                              const std::array<double, 5>& n15);

  const std::array<Complex, 6>& alpha() const noexcept { return alpha_; }
  const std::array<double, 6>& n() const noexcept { return n_; }
  double nu() const noexcept { return nu_; }

  ComplexLevelParams swapped_5_6() const;

  // a_k = (i alpha_k + N_k)/2 and a'_k = (i alpha_k - N_k)/2.
  std::array<Complex, 6> a() const;
  std::array<Complex, 6> a_prime() const;

 private:
  std::array<Complex, 6> alpha_;
  std::array<double, 6> n_;
  double nu_;
};

// Returns the index N of the first parameter equal to q^{-N} (N <= n_max)
// or -1 when the list does not terminate.
int terminating_index(std::span<const Complex> t, Complex q, int n_max);

// r+1 V r(t0; t1..t_{r-4}; q, p) for a terminating list. p = 0 is allowed
// (the trigonometric base); q may then have any nonzero modulus.
Complex vwp_elliptic_series(Complex t0, std::span<const Complex> t, const EllipticBase& base,
                            int n_max, const PrecisionPolicy& policy = {});

// n-th term of the same series assembled directly from theta products.
Complex vwp_elliptic_term(Complex t0, std::span<const Complex> t, const EllipticBase& base, int n,
                          const PrecisionPolicy& policy = {});

// R_n(z; t; q, p): series base q, theta nome p of params.base().
Complex R_n_elliptic(Complex z, const BetaParams& params, int n,
                     const PrecisionPolicy& policy = {});
Complex T_n_elliptic(Complex z, const BetaParams& params, int n,
                     const PrecisionPolicy& policy = {});

// R_n(z;q,p) R_m(z;p,q), respectively with T.
Complex R_nm_elliptic(Complex z, const BetaParams& params, int n, int m,
                      const PrecisionPolicy& policy = {});
Complex T_nm_elliptic(Complex z, const BetaParams& params, int n, int m,
                      const PrecisionPolicy& policy = {});

// gamma(z) = theta(z xi, z/xi; p) / theta(z eta, z/eta; p).
Complex grid_gamma(Complex z, const GridGauge& gauge, Complex p,
                   const PrecisionPolicy& policy = {});
// alpha_n = gamma(q^n/t5), beta_n = gamma(q^n/t6).
Complex grid_alpha(const BetaParams& params, const GridGauge& gauge, int n,
                   const PrecisionPolicy& policy = {});
Complex grid_beta(const BetaParams& params, const GridGauge& gauge, int n,
                  const PrecisionPolicy& policy = {});

struct RecurrenceCoefficients {
  Complex B;
  Complex rho;
};

RecurrenceCoefficients recurrence_coefficients(const BetaParams& params, const GridGauge& gauge,
                                               Complex x, const PrecisionPolicy& policy = {});

// R_0 .. R_n at z generated by the three-term recurrence from R_0 = 1.
std::vector<Complex> R_n_by_recurrence(Complex z, const BetaParams& params, const GridGauge& gauge,
                                       int n, const PrecisionPolicy& policy = {});

// h_nl, q-direction index n and p-direction index l.
Complex h_nl_elliptic(const BetaParams& params, int n, int l, const PrecisionPolicy& policy = {});

// Hyperbolic 10W9 functions in base exp(2 pi i omega1/omega2).
Complex R_n_hyperbolic(Complex u, const HyperbolicParams& params, int n,
                       const PrecisionPolicy& policy = {});
Complex T_n_hyperbolic(Complex u, const HyperbolicParams& params, int n,
                       const PrecisionPolicy& policy = {});
// R_n(u; omega1, omega2) R_m(u; omega2, omega1).
Complex R_nm_hyperbolic(Complex u, const HyperbolicParams& params, int n, int m,
                        const PrecisionPolicy& policy = {});
Complex T_nm_hyperbolic(Complex u, const HyperbolicParams& params, int n, int m,
                        const PrecisionPolicy& policy = {});
Complex h_n_hyperbolic(const HyperbolicParams& params, int n, const PrecisionPolicy& policy = {});
Complex h_nl_hyperbolic(const HyperbolicParams& params, int n, int l,
                        const PrecisionPolicy& policy = {});

// Rising factorial (a)_k.
Complex rising(Complex a, int k);

// Very-well-poised 9F8 of the complex level.
Complex R_n_complex(Complex Y, const std::array<Complex, 6>& a, int n);
// R_n(Y; a) R_s(Y'; a') at Y = (iy+N)/2, Y' = (iy-N)/2.
Complex R_ns_complex(Complex y, double N, const ComplexLevelParams& params, int n, int s);
Complex T_ns_complex(Complex y, double N, const ComplexLevelParams& params, int n, int s);
Complex h_n_complex(const std::array<Complex, 6>& a, int n);
Complex h_nl_complex(const ComplexLevelParams& params, int n, int l);

}  // namespace hgt
