#pragma once

// Numerical checks of the exact identities at each level of the tower and
// of the degeneration limits between levels. Every check compares two
// independently computed sides and reports a relative residual.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgt/contours_quadrature.hpp"
#include "hgt/hypergeometric_series.hpp"
#include "hgt/special_core.hpp"

namespace hgt {

struct CheckResult {
  std::string name;
  Complex lhs;
  Complex rhs;
  // |lhs - rhs| / max(|lhs|, |rhs|, scale)
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string params_digest;
};

// scale is a reference magnitude for identities whose sides may vanish.
CheckResult make_check(std::string name, Complex lhs, Complex rhs, double tolerance,
                       std::string params_digest, double scale = 0.0);

// 16 hex digits of the 64-bit FNV-1a hash.
std::string fnv1a_hex(std::string_view text);

std::string params_digest(const BetaParams& params);
std::string params_digest(const VParams& params);
std::string params_digest(const HyperbolicParams& params);
std::string params_digest(const ComplexLevelParams& params);
std::string params_digest(const std::vector<Complex>& values);

// Pairing of R_{mk} against T_{nl}; at the complex level (m,k) reads (m,s).
struct GramIndex {
  int m = 0;
  int k = 0;
  int n = 0;
  int l = 0;

  bool diagonal() const { return m == n && k == l; }
};

struct GramEntry {
  GramIndex index;
  Complex value;
  double error_estimate = 0.0;
  double magnitude = 0.0;
};

struct GramMatrix {
  std::vector<GramEntry> entries;
  // (n, l) -> h_nl times the beta-integral product.
  std::vector<std::pair<std::array<int, 2>, Complex>> diagonal_reference;

  std::optional<Complex> entry(const GramIndex& index) const;
  std::optional<Complex> reference(int n, int l) const;
};

struct BiorthogonalityResult {
  GramMatrix gram;
  std::vector<CheckResult> checks;
};

struct VerifyOptions {
  QuadratureBudget budget;
  PrecisionPolicy policy;
  double ledger_cutoff = 1e-7;
  // Quadrature tolerance as a fraction of the check tolerance.
  double quadrature_fraction = 1e-2;
  std::uint64_t seed = 1;
};

// All index quadruples with entries in [0, max_index].
std::vector<GramIndex> index_grid(int max_index);

CheckResult verify_elliptic_beta(const BetaParams& params, double tol,
                                 const VerifyOptions& options = {});

BiorthogonalityResult verify_biorthogonality_elliptic(const BetaParams& params, int max_index,
                                                      double tol,
                                                      const VerifyOptions& options = {});
BiorthogonalityResult verify_biorthogonality_elliptic(const BetaParams& params,
                                                      const std::vector<GramIndex>& indices,
                                                      double tol,
                                                      const VerifyOptions& options = {});

// n >= 0; for n = 0 the R_{-1} term is multiplied by B(1) = 0 and an
// arbitrary finite R_{-1} is used.
CheckResult verify_ttr(const BetaParams& params, const GridGauge& gauge, Complex z, int n,
                       double tol, const PrecisionPolicy& policy = {});

struct RiiFit {
  Complex a;
  Complex u;
  Complex v;
  std::vector<Complex> fit_points;
  std::vector<Complex> holdout_points;
};

// Fits a_n, u_n, v_n at three sampled z and checks five further samples.
// The returned check carries the worst holdout residual.
CheckResult verify_rii_form(const BetaParams& params, const GridGauge& gauge, int n, double tol,
                            const VerifyOptions& options = {}, RiiFit* fit = nullptr);

// P_n(gamma(z)) = prod_{k=1}^n (gamma(z) - alpha_k) R_n(z).
Complex rii_polynomial(Complex z, const BetaParams& params, const GridGauge& gauge, int n,
                       const PrecisionPolicy& policy = {});

// eps = (t1, t2, t3, t4, pq q^n/t5, q t6/q^n, t5/q, t5).
std::array<Complex, 8> ehe_parameters(const BetaParams& params, int n);

CheckResult verify_ehe(const BetaParams& params, int n, Complex z, double tol,
                       const PrecisionPolicy& policy = {});

// The V integral by loop-corrected circle quadrature.
QuadratureResult evaluate_V(const VParams& params, double tol, const VerifyOptions& options = {});

CheckResult verify_V_reduction(const VParams& params, double tol,
                               const VerifyOptions& options = {});

BiorthogonalityResult verify_biorthogonality_hyperbolic(const HyperbolicParams& params,
                                                        int max_index, double tol,
                                                        const VerifyOptions& options = {});
BiorthogonalityResult verify_biorthogonality_hyperbolic(const HyperbolicParams& params,
                                                        const std::vector<GramIndex>& indices,
                                                        double tol,
                                                        const VerifyOptions& options = {});

BiorthogonalityResult verify_biorthogonality_complex(const ComplexLevelParams& params,
                                                     int max_index, double tol,
                                                     const VerifyOptions& options = {});
BiorthogonalityResult verify_biorthogonality_complex(const ComplexLevelParams& params,
                                                     const std::vector<GramIndex>& indices,
                                                     double tol, const VerifyOptions& options = {});

// Smallest ladder parameters accepted by the limit suites.
inline constexpr double kMinLimitV = 1e-3;
inline constexpr double kMinLimitDelta = 0.03;

// One check per rung. Rung i passes when its residual is strictly below the
// residual of rung i-1 (the first rung only needs a residual below one).
std::vector<CheckResult> verify_limit_theta(double u, double omega2,
                                            const std::vector<double>& v_list);
std::vector<CheckResult> verify_limit_ellgamma(const std::vector<Complex>& u_grid,
                                               const HyperbolicPeriods& periods,
                                               const std::vector<double>& v_list);
std::vector<CheckResult> verify_limit_hypgamma_to_complex(Complex x, int n,
                                                          const std::vector<double>& delta_list);

}  // namespace hgt
