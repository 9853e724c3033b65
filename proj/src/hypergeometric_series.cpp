#include "hgt/hypergeometric_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hgt/errors.hpp"

namespace hgt {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kTerminationTolerance = 1e-10;
constexpr double kSeriesBalancingTolerance = 1e-10;

Complex ipow(Complex x, int n) {
  Complex r{1.0, 0.0};
  const Complex b = n >= 0 ? x : 1.0 / x;
  for (int k = 0; k < std::abs(n); ++k) r *= b;
  return r;
}

template <std::size_t N>
Complex product(const std::array<Complex, N>& xs) {
  Complex r{1.0, 0.0};
  for (const Complex& x : xs) r *= x;
  return r;
}

Complex thetas(std::initializer_list<Complex> xs, Complex p, const PrecisionPolicy& policy) {
  Complex r{1.0, 0.0};
  for (const Complex& x : xs) r *= theta(x, p, policy);
  return r;
}

void require_nonnegative(int n, const char* what) {
  if (n < 0) throw DomainError(std::string(what) + ": index must be >= 0");
}

Complex checked_denominator(Complex d, const char* what, long a = -1, long b = -1) {
  if (std::abs(d) < kPoleThreshold) throw PoleError(what, a, b);
  return d;
}

// prod_{k<n} (1 - x q^k).
Complex trig_pochhammer(Complex x, Complex q, int n) {
  Complex r{1.0, 0.0};
  for (int k = 0; k < n; ++k) {
    r *= 1.0 - x;
    x *= q;
  }
  return r;
}

// (a1)_n ... (ak)_n
Complex risings(std::initializer_list<Complex> as, int n) {
  Complex r{1.0, 0.0};
  for (const Complex& a : as) r *= rising(a, n);
  return r;
}

}  // namespace

BetaParams::BetaParams(EllipticBase base, const std::array<Complex, 6>& t) : base_(base), t_(t) {
  if (base.is_trigonometric()) {
    throw RejectedParametersError("BetaParams: requires 0 < |p|,|q| < 1");
  }
  for (const Complex& x : t) {
    if (x == Complex{}) throw RejectedParametersError("BetaParams: t_j must be nonzero");
  }
  const Complex pq = base.p() * base.q();
  if (std::abs(product(t) - pq) > kBalancingTolerance * std::abs(pq)) {
    throw RejectedParametersError("BetaParams: balancing t1...t6 = pq violated");
  }
}

BetaParams BetaParams::with_solved_t6(EllipticBase base, const std::array<Complex, 5>& t15) {
  std::array<Complex, 6> t{};
  std::copy(t15.begin(), t15.end(), t.begin());
  t[5] = base.p() * base.q() / product(t15);
  return BetaParams(base, t);
}

BetaParams BetaParams::swapped_t5_t6() const {
  std::array<Complex, 6> t = t_;
  std::swap(t[4], t[5]);
  return BetaParams(base_, t);
}

BetaParams BetaParams::with_swapped_base() const { return BetaParams(base_.swapped(), t_); }

VParams::VParams(EllipticBase base, const std::array<Complex, 8>& t) : base_(base), t_(t) {
  if (base.is_trigonometric()) {
    throw RejectedParametersError("VParams: requires 0 < |p|,|q| < 1");
  }
  for (const Complex& x : t) {
    if (x == Complex{}) throw RejectedParametersError("VParams: t_j must be nonzero");
  }
  const Complex pq = base.p() * base.q();
  const Complex target = pq * pq;
  if (std::abs(product(t) - target) > kBalancingTolerance * std::abs(target)) {
    throw RejectedParametersError("VParams: balancing t1...t8 = (pq)^2 violated");
  }
}

GridGauge::GridGauge(Complex xi, Complex eta) : xi_(xi), eta_(eta) {
  if (xi == Complex{} || eta == Complex{}) {
    throw DomainError("GridGauge: xi and eta must be nonzero");
  }
}

void GridGauge::validate(Complex p, int k_check) const {
  for (int k = -k_check; k <= k_check; ++k) {
    const Complex pk = ipow(p, k);
    for (const Complex& c : {xi_ * pk, pk / xi_}) {
      if (std::abs(eta_ - c) <= 1e-10 * std::abs(c)) {
        throw DomainError("GridGauge: eta coincides with xi^{+-1} p^k");
      }
    }
  }
}

HyperbolicParams::HyperbolicParams(HyperbolicPeriods periods, const std::array<Complex, 6>& g)
    : periods_(periods), g_(g) {
  Complex sum{};
  double scale = std::abs(periods.omega1() + periods.omega2());
  for (const Complex& x : g) {
    sum += x;
    scale = std::max(scale, std::abs(x));
  }
  if (std::abs(sum - periods.omega1() - periods.omega2()) > kBalancingTolerance * scale) {
    throw RejectedParametersError("HyperbolicParams: balancing g1+...+g6 = omega1+omega2 violated");
  }
}

HyperbolicParams HyperbolicParams::with_solved_g6(HyperbolicPeriods periods,
                                                  const std::array<Complex, 5>& g15) {
  std::array<Complex, 6> g{};
  Complex sum{};
  for (std::size_t j = 0; j < 5; ++j) {
    g[j] = g15[j];
    sum += g15[j];
  }
  g[5] = periods.omega1() + periods.omega2() - sum;
  return HyperbolicParams(periods, g);
}

HyperbolicParams HyperbolicParams::swapped_g5_g6() const {
  std::array<Complex, 6> g = g_;
  std::swap(g[4], g[5]);
  return HyperbolicParams(periods_, g);
}

HyperbolicParams HyperbolicParams::with_swapped_periods() const {
  return HyperbolicParams(periods_.swapped(), g_);
}

std::array<Complex, 6> HyperbolicParams::s() const {
  std::array<Complex, 6> s{};
  for (std::size_t j = 0; j < 6; ++j) {
    s[j] = std::exp(2.0 * kPi * kI * g_[j] / periods_.omega2());
  }
  return s;
}

ComplexLevelParams::ComplexLevelParams(const std::array<Complex, 6>& alpha,
                                       const std::array<double, 6>& n)
    : alpha_(alpha), n_(n), nu_(0.0) {
  Complex sum{};
  double scale = 2.0;
  double nsum = 0.0;
  for (std::size_t k = 0; k < 6; ++k) {
    sum += alpha[k];
    scale = std::max(scale, std::abs(alpha[k]));
    nsum += n[k];
  }
  if (std::abs(sum + 2.0 * kI) > kBalancingTolerance * scale) {
    throw RejectedParametersError("ComplexLevelParams: sum of alpha_k must be -2i");
  }
  if (std::abs(nsum) > kBalancingTolerance) {
    throw RejectedParametersError("ComplexLevelParams: sum of N_k must be 0");
  }
  const double frac = n[0] - std::floor(n[0]);
  if (std::abs(frac) < 1e-12 || std::abs(frac - 1.0) < 1e-12) {
    nu_ = 0.0;
  } else if (std::abs(frac - 0.5) < 1e-12) {
    nu_ = 0.5;
  } else {
    throw RejectedParametersError("ComplexLevelParams: N_k must be integers or half-integers");
  }
  for (double x : n) {
    const double shifted = x - nu_;
    if (std::abs(shifted - std::round(shifted)) > 1e-12) {
      throw RejectedParametersError("ComplexLevelParams: N_k must share one parity sector");
    }
  }
}

ComplexLevelParams ComplexLevelParams::with_solved_sixth(const std::array<Complex, 5>& alpha15,
                                                         const std::array<double, 5>& n15) {
  std::array<Complex, 6> alpha{};
  std::array<double, 6> n{};
  Complex asum{};
  double nsum = 0.0;
  for (std::size_t k = 0; k < 5; ++k) {
    alpha[k] = alpha15[k];
    n[k] = n15[k];
    asum += alpha15[k];
    nsum += n15[k];
  }
  alpha[5] = -2.0 * kI - asum;
  n[5] = -nsum;
  return ComplexLevelParams(alpha, n);
}

ComplexLevelParams ComplexLevelParams::swapped_5_6() const {
  std::array<Complex, 6> alpha = alpha_;
  std::array<double, 6> n = n_;
  std::swap(alpha[4], alpha[5]);
  std::swap(n[4], n[5]);
  return ComplexLevelParams(alpha, n);
}

std::array<Complex, 6> ComplexLevelParams::a() const {
  std::array<Complex, 6> a{};
  for (std::size_t k = 0; k < 6; ++k) a[k] = 0.5 * (kI * alpha_[k] + n_[k]);
  return a;
}

std::array<Complex, 6> ComplexLevelParams::a_prime() const {
  std::array<Complex, 6> a{};
  for (std::size_t k = 0; k < 6; ++k) a[k] = 0.5 * (kI * alpha_[k] - n_[k]);
  return a;
}

int terminating_index(std::span<const Complex> t, Complex q, int n_max) {
  int best = -1;
  for (const Complex& x : t) {
    Complex xq = x;
    for (int n = 0; n <= n_max; ++n) {
      if (best >= 0 && n >= best) break;
      if (std::abs(xq - 1.0) < kTerminationTolerance) {
        best = n;
        break;
      }
      xq *= q;
    }
  }
  return best;
}

Complex vwp_elliptic_series(Complex t0, std::span<const Complex> t, const EllipticBase& base,
                            int n_max, const PrecisionPolicy& policy) {
  if (t0 == Complex{}) throw DomainError("vwp_elliptic_series: t0 must be nonzero");
  for (const Complex& x : t) {
    if (x == Complex{}) throw DomainError("vwp_elliptic_series: parameters must be nonzero");
  }
  const Complex p = base.p();
  const Complex q = base.q();
  const int r = static_cast<int>(t.size()) + 4;

  Complex prod{1.0, 0.0};
  for (const Complex& x : t) prod *= x;
  const Complex lhs = prod * prod;
  const Complex rhs = ipow(t0, r - 5) * ipow(q, r - 7);
  if (std::abs(lhs - rhs) > kSeriesBalancingTolerance * std::max(std::abs(lhs), std::abs(rhs))) {
    throw DomainError("vwp_elliptic_series: balancing condition violated");
  }

  const int terms = terminating_index(t, q, n_max);
  if (terms < 0) {
    throw DomainError("vwp_elliptic_series: no parameter of the form q^{-N} with N <= n_max");
  }

  Complex sum{1.0, 0.0};
  Complex term{1.0, 0.0};
  Complex qn1{1.0, 0.0};  // q^{n-1}
  for (int n = 1; n <= terms; ++n) {
    Complex num = theta(t0 * qn1 * qn1 * q * q, p, policy) * q;
    Complex den = checked_denominator(theta(t0 * qn1 * qn1, p, policy),
                                      "vwp_elliptic_series: theta(t0 q^{2n-2}) vanishes", n);
    num *= theta(t0 * qn1, p, policy);
    den *= checked_denominator(theta(q * qn1, p, policy),
                               "vwp_elliptic_series: theta(q^n) vanishes", n, 0);
    for (std::size_t m = 0; m < t.size(); ++m) {
      num *= theta(t[m] * qn1, p, policy);
      den *= checked_denominator(theta(q * t0 / t[m] * qn1, p, policy),
                                 "vwp_elliptic_series: denominator theta vanishes", n,
                                 static_cast<long>(m + 1));
    }
    term *= num / den;
    sum += term;
    qn1 *= q;
  }
  return sum;
}

Complex vwp_elliptic_term(Complex t0, std::span<const Complex> t, const EllipticBase& base, int n,
                          const PrecisionPolicy& policy) {
  require_nonnegative(n, "vwp_elliptic_term");
  const Complex q = base.q();
  const Complex p = base.p();
  Complex num =
      theta(t0 * ipow(q, 2 * n), p, policy) * elliptic_pochhammer(t0, base, n, policy) * ipow(q, n);
  Complex den = theta(t0, p, policy) * elliptic_pochhammer(q, base, n, policy);
  for (const Complex& x : t) {
    num *= elliptic_pochhammer(x, base, n, policy);
    den *= elliptic_pochhammer(q * t0 / x, base, n, policy);
  }
  return num / checked_denominator(den, "vwp_elliptic_term: denominator vanishes", n);
}

Complex R_n_elliptic(Complex z, const BetaParams& params, int n, const PrecisionPolicy& policy) {
  require_nonnegative(n, "R_n_elliptic");
  if (n == 0) return 1.0;
  if (z == Complex{}) throw DomainError("R_n_elliptic: z must be nonzero");
  const auto& t = params.t();
  const Complex p = params.base().p();
  const Complex q = params.base().q();
  const Complex qn = ipow(q, n);
  const std::array<Complex, 7> args = {
      q / (t[0] * t[4]), q / (t[1] * t[4]), q / (t[2] * t[4]),     t[3] * z,
      t[3] / z,          1.0 / qn,          p * qn / (t[4] * t[5])};
  return vwp_elliptic_series(t[3] / t[4], args, params.base(), n, policy);
}

Complex T_n_elliptic(Complex z, const BetaParams& params, int n, const PrecisionPolicy& policy) {
  return R_n_elliptic(z, params.swapped_t5_t6(), n, policy);
}

Complex R_nm_elliptic(Complex z, const BetaParams& params, int n, int m,
                      const PrecisionPolicy& policy) {
  return R_n_elliptic(z, params, n, policy) *
         R_n_elliptic(z, params.with_swapped_base(), m, policy);
}

Complex T_nm_elliptic(Complex z, const BetaParams& params, int n, int m,
                      const PrecisionPolicy& policy) {
  return R_nm_elliptic(z, params.swapped_t5_t6(), n, m, policy);
}

Complex grid_gamma(Complex z, const GridGauge& gauge, Complex p, const PrecisionPolicy& policy) {
  const Complex xi = gauge.xi();
  const Complex eta = gauge.eta();
  const Complex den = thetas({z * eta, z / eta}, p, policy);
  checked_denominator(den, "grid_gamma: z hits a pole of the grid");
  return thetas({z * xi, z / xi}, p, policy) / den;
}

Complex grid_alpha(const BetaParams& params, const GridGauge& gauge, int n,
                   const PrecisionPolicy& policy) {
  return grid_gamma(ipow(params.base().q(), n) / params.t()[4], gauge, params.base().p(), policy);
}

Complex grid_beta(const BetaParams& params, const GridGauge& gauge, int n,
                  const PrecisionPolicy& policy) {
  return grid_gamma(ipow(params.base().q(), n) / params.t()[5], gauge, params.base().p(), policy);
}

RecurrenceCoefficients recurrence_coefficients(const BetaParams& params, const GridGauge& gauge,
                                               Complex x, const PrecisionPolicy& policy) {
  const auto& t = params.t();
  const Complex p = params.base().p();
  const Complex q = params.base().q();
  const Complex eta = gauge.eta();
  const Complex t56 = t[4] * t[5];
  const Complex den = thetas({t56 * x * x / p, q * t56 * x * x / p}, p, policy);
  checked_denominator(den, "recurrence_coefficients: denominator of B vanishes");
  const Complex num = thetas(
      {x, t[3] / (t[4] * x), q * t[3] / (t[4] * x), q * x / (t[0] * t[1]), q * x / (t[0] * t[2]),
       q * x / (t[1] * t[2]), q * eta * t[5] * x / p, q * t[5] * x / (p * eta)},
      p, policy);
  const Complex rho = thetas({q * t[3] * t[5] / p, q / (t[0] * t[4]), q / (t[1] * t[4]),
                              q / (t[2] * t[4]), t[3] * eta, t[3] / eta},
                             p, policy);
  return {num / den, rho};
}

std::vector<Complex> R_n_by_recurrence(Complex z, const BetaParams& params, const GridGauge& gauge,
                                       int n, const PrecisionPolicy& policy) {
  require_nonnegative(n, "R_n_by_recurrence");
  const Complex p = params.base().p();
  const Complex q = params.base().q();
  const auto& t = params.t();
  gauge.validate(p);
  const Complex g = grid_gamma(z, gauge, p, policy);
  const Complex g_t4 = grid_gamma(t[3], gauge, p, policy);
  const Complex rho = recurrence_coefficients(params, gauge, 1.0, policy).rho;

  std::vector<Complex> R{1.0};
  for (int k = 0; k < n; ++k) {
    const Complex qk = ipow(q, k);
    const Complex b_up = recurrence_coefficients(params, gauge, qk / (t[4] * t[5]), policy).B;
    const Complex lead = (g - grid_alpha(params, gauge, k + 1, policy)) * b_up;
    checked_denominator(lead, "R_n_by_recurrence: leading coefficient vanishes", k);
    Complex rest = rho * (g - g_t4) * R[k];
    if (k > 0) {
      const Complex b_down = recurrence_coefficients(params, gauge, 1.0 / qk, policy).B;
      rest += (g - grid_beta(params, gauge, k - 1, policy)) * b_down * (R[k - 1] - R[k]);
    }
    R.push_back(R[k] - rest / lead);
  }
  return R;
}

namespace {

Complex h_part_elliptic(const BetaParams& params, int n, const PrecisionPolicy& policy) {
  const auto& t = params.t();
  const EllipticBase& base = params.base();
  const Complex p = base.p();
  const Complex q = base.q();
  auto P = [&](Complex x) { return elliptic_pochhammer(x, base, n, policy); };
  const Complex t56 = t[4] * t[5];
  const Complex num = theta(1.0 / t56, p, policy) * P(q) * P(q * t[3] / t[4]) *
                      P(p * q * t[3] / t[5]) * P(t[0] * t[1]) * P(t[0] * t[2]) * P(t[1] * t[2]) *
                      ipow(q, n);
  const Complex den = theta(ipow(q, 2 * n) / t56, p, policy) * P(1.0 / (t[3] * t[4])) *
                      P(p / (t[3] * t[5])) * P(p / t56) * P(t[0] * t[3]) * P(t[1] * t[3]) *
                      P(t[2] * t[3]);
  checked_denominator(den, "h_nl_elliptic: denominator vanishes", n);
  return num / den;
}

}  // namespace

Complex h_nl_elliptic(const BetaParams& params, int n, int l, const PrecisionPolicy& policy) {
  require_nonnegative(n, "h_nl_elliptic");
  require_nonnegative(l, "h_nl_elliptic");
  return h_part_elliptic(params, n, policy) *
         h_part_elliptic(params.with_swapped_base(), l, policy);
}

Complex R_n_hyperbolic(Complex u, const HyperbolicParams& params, int n,
                       const PrecisionPolicy& policy) {
  require_nonnegative(n, "R_n_hyperbolic");
  if (n == 0) return 1.0;
  const auto s = params.s();
  const Complex Q = params.periods().q();
  const Complex X = std::exp(2.0 * kPi * kI * u / params.periods().omega2());
  const Complex Qn = ipow(Q, n);
  const std::array<Complex, 7> args = {Q / (s[0] * s[4]), Q / (s[1] * s[4]), Q / (s[2] * s[4]),
                                       s[3] * X,          s[3] / X,          1.0 / Qn,
                                       Qn / (s[4] * s[5])};
  return vwp_elliptic_series(s[3] / s[4], args, EllipticBase::trigonometric(Q), n, policy);
}

Complex T_n_hyperbolic(Complex u, const HyperbolicParams& params, int n,
                       const PrecisionPolicy& policy) {
  return R_n_hyperbolic(u, params.swapped_g5_g6(), n, policy);
}

Complex R_nm_hyperbolic(Complex u, const HyperbolicParams& params, int n, int m,
                        const PrecisionPolicy& policy) {
  return R_n_hyperbolic(u, params, n, policy) *
         R_n_hyperbolic(u, params.with_swapped_periods(), m, policy);
}

Complex T_nm_hyperbolic(Complex u, const HyperbolicParams& params, int n, int m,
                        const PrecisionPolicy& policy) {
  return R_nm_hyperbolic(u, params.swapped_g5_g6(), n, m, policy);
}

Complex h_n_hyperbolic(const HyperbolicParams& params, int n, const PrecisionPolicy&) {
  require_nonnegative(n, "h_n_hyperbolic");
  if (n == 0) return 1.0;
  const auto s = params.s();
  const Complex Q = params.periods().q();
  auto P = [&](Complex x) { return trig_pochhammer(x, Q, n); };
  const Complex s56 = s[4] * s[5];
  const Complex num = (1.0 - 1.0 / s56) * P(Q) * P(Q * s[3] / s[4]) * P(Q * s[3] / s[5]) *
                      P(s[0] * s[1]) * P(s[0] * s[2]) * P(s[1] * s[2]) / ipow(Q, n);
  const Complex den = (1.0 - ipow(Q, 2 * n) / s56) * P(1.0 / (s[3] * s[4])) *
                      P(1.0 / (s[3] * s[5])) * P(1.0 / s56) * P(s[0] * s[3]) * P(s[1] * s[3]) *
                      P(s[2] * s[3]);
  checked_denominator(den, "h_n_hyperbolic: denominator vanishes", n);
  return num / den;
}

Complex h_nl_hyperbolic(const HyperbolicParams& params, int n, int l,
                        const PrecisionPolicy& policy) {
  return h_n_hyperbolic(params, n, policy) *
         h_n_hyperbolic(params.with_swapped_periods(), l, policy);
}

Complex rising(Complex a, int k) {
  require_nonnegative(k, "rising");
  Complex r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= a + static_cast<double>(i);
  return r;
}

Complex R_n_complex(Complex Y, const std::array<Complex, 6>& a, int n) {
  require_nonnegative(n, "R_n_complex");
  const auto& [a1, a2, a3, a4, a5, a6] = a;
  const Complex a45 = a4 - a5;
  checked_denominator(a45, "R_n_complex: a4 = a5");
  const double dn = static_cast<double>(n);
  const std::array<Complex, 8> up = {a45,    1.0 - a1 - a5, 1.0 - a2 - a5, 1.0 - a3 - a5,
                                     a4 + Y, a4 - Y,        -dn,           dn - a5 - a6};
  const std::array<Complex, 8> down = {
      1.0,          a1 + a4,      a2 + a4,        a3 + a4,
      1.0 - a5 - Y, 1.0 - a5 + Y, 1.0 + dn + a45, 1.0 - dn + a4 + a6};
  Complex sum{};
  Complex ratio{1.0, 0.0};
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      const double km = static_cast<double>(k - 1);
      for (std::size_t j = 0; j < 8; ++j) {
        ratio *= up[j] + km;
        ratio /= checked_denominator(down[j] + km, "R_n_complex: denominator vanishes", k,
                                     static_cast<long>(j));
      }
    }
    sum += (2.0 * k + a45) / a45 * ratio;
  }
  return sum;
}

Complex R_ns_complex(Complex y, double N, const ComplexLevelParams& params, int n, int s) {
  const Complex Y = 0.5 * (kI * y + N);
  const Complex Yp = 0.5 * (kI * y - N);
  return R_n_complex(Y, params.a(), n) * R_n_complex(Yp, params.a_prime(), s);
}

Complex T_ns_complex(Complex y, double N, const ComplexLevelParams& params, int n, int s) {
  return R_ns_complex(y, N, params.swapped_5_6(), n, s);
}

Complex h_n_complex(const std::array<Complex, 6>& a, int n) {
  require_nonnegative(n, "h_n_complex");
  const auto& [a1, a2, a3, a4, a5, a6] = a;
  const Complex a56 = a5 + a6;
  const Complex lead = checked_denominator(a56 - 2.0 * n, "h_n_complex: a5 + a6 = 2n", n);
  const Complex num = risings({1.0, 1.0 + a4 - a5, 1.0 + a4 - a6, a1 + a2, a1 + a3, a2 + a3}, n);
  const Complex den = risings({-a4 - a5, -a4 - a6, -a56, a1 + a4, a2 + a4, a3 + a4}, n);
  checked_denominator(den, "h_n_complex: denominator vanishes", n);
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return sign * a56 / lead * num / den;
}

Complex h_nl_complex(const ComplexLevelParams& params, int n, int l) {
  return h_n_complex(params.a(), n) * h_n_complex(params.a_prime(), l);
}

}  // namespace hgt
