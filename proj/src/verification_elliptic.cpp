#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "hgt/errors.hpp"
#include "hgt/verification.hpp"
#include "verification_internal.hpp"

namespace hgt {

namespace {

Complex beta_weight(Complex z, const BetaParams& params, const PrecisionPolicy& policy) {
  const EllipticBase& base = params.base();
  Complex w = elliptic_inverse_gamma_square(z, base, policy);
  for (const Complex& t : params.t()) {
    w *= elliptic_gamma(t * z, base, policy) * elliptic_gamma(t / z, base, policy);
  }
  return w;
}

Complex beta_prefactor(const EllipticBase& base, const PrecisionPolicy& policy) {
  return qpoch_inf(base.p(), base.p(), policy) * qpoch_inf(base.q(), base.q(), policy) / 2.0;
}

template <std::size_t N>
Complex pair_product(const std::array<Complex, N>& t, const EllipticBase& base,
                     const PrecisionPolicy& policy) {
  Complex r = 1.0;
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t k = j + 1; k < N; ++k) r *= elliptic_gamma(t[j] * t[k], base, policy);
  }
  return r;
}

Complex sample_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(0.8, 1.25);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  return std::polar(radius(rng), angle(rng));
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

CheckResult verify_elliptic_beta(const BetaParams& params, double tol,
                                 const VerifyOptions& options) {
  const PrecisionPolicy& policy = options.policy;
  const PoleLedger ledger = build_ort2_ledger(params, 0, 0, 0, 0, options.ledger_cutoff);
  const VectorIntegrand f = [&](Complex z, std::span<Complex> out) {
    out[0] = beta_weight(z, params, policy);
  };
  const auto values =
      detail::multi_ledger_integral(f, {ledger}, ContourSpec::circle(1.0),
                                    detail::quadrature_tol(tol, options), 1.0, options.budget);
  const Complex lhs = beta_prefactor(params.base(), policy) * values[0].value;
  const Complex rhs = pair_product(params.t(), params.base(), policy);
  return make_check("elliptic beta integral", lhs, rhs, tol, params_digest(params));
}

BiorthogonalityResult verify_biorthogonality_elliptic(const BetaParams& params, int max_index,
                                                      double tol, const VerifyOptions& options) {
  return verify_biorthogonality_elliptic(params, index_grid(max_index), tol, options);
}

BiorthogonalityResult verify_biorthogonality_elliptic(const BetaParams& params,
                                                      const std::vector<GramIndex>& indices,
                                                      double tol, const VerifyOptions& options) {
  if (indices.empty()) throw DomainError("verify_biorthogonality_elliptic: no indices");
  const PrecisionPolicy& policy = options.policy;
  int top = 0;
  std::vector<PoleLedger> ledgers;
  for (const GramIndex& ix : indices) {
    if (std::min({ix.m, ix.k, ix.n, ix.l}) < 0) {
      throw DomainError("verify_biorthogonality_elliptic: negative index");
    }
    top = std::max({top, ix.m, ix.k, ix.n, ix.l});
    ledgers.push_back(build_ort2_ledger(params, ix.m, ix.n, ix.k, ix.l, options.ledger_cutoff));
  }

  const BetaParams swapped = params.with_swapped_base();
  const auto size = static_cast<std::size_t>(top + 1);
  const VectorIntegrand f = [&](Complex z, std::span<Complex> out) {
    std::vector<Complex> rq(size), rp(size), tq(size), tp(size);
    for (int i = 0; i <= top; ++i) {
      const auto s = static_cast<std::size_t>(i);
      rq[s] = R_n_elliptic(z, params, i, policy);
      rp[s] = R_n_elliptic(z, swapped, i, policy);
      tq[s] = T_n_elliptic(z, params, i, policy);
      tp[s] = T_n_elliptic(z, swapped, i, policy);
    }
    const Complex w = beta_weight(z, params, policy);
    for (std::size_t c = 0; c < indices.size(); ++c) {
      const GramIndex& ix = indices[c];
      out[c] = w * rq[static_cast<std::size_t>(ix.m)] * rp[static_cast<std::size_t>(ix.k)] *
               tq[static_cast<std::size_t>(ix.n)] * tp[static_cast<std::size_t>(ix.l)];
    }
  };
  const auto values =
      detail::multi_ledger_integral(f, ledgers, ContourSpec::circle(1.0),
                                    detail::quadrature_tol(tol, options), 1.0, options.budget);

  const Complex kappa = beta_prefactor(params.base(), policy);
  BiorthogonalityResult result;
  for (std::size_t c = 0; c < indices.size(); ++c) {
    result.gram.entries.push_back({indices[c], kappa * values[c].value,
                                   std::abs(kappa) * values[c].error_estimate,
                                   std::abs(kappa) * values[c].magnitude});
  }

  const Complex product = pair_product(params.t(), params.base(), policy);
  std::map<std::pair<int, int>, Complex> cache;
  const auto reference = [&](int n, int l) {
    auto it = cache.find({n, l});
    if (it == cache.end()) {
      it = cache.emplace(std::pair{n, l}, h_nl_elliptic(params, n, l, policy) * product).first;
    }
    return it->second;
  };
  for (const GramIndex& ix : indices) {
    if (ix.diagonal() && !result.gram.reference(ix.n, ix.l)) {
      result.gram.diagonal_reference.push_back({{ix.n, ix.l}, reference(ix.n, ix.l)});
    }
  }
  detail::append_gram_checks(result, reference, tol, params_digest(params));
  return result;
}

CheckResult verify_ttr(const BetaParams& params, const GridGauge& gauge, Complex z, int n,
                       double tol, const PrecisionPolicy& policy) {
  if (n < 0) throw DomainError("verify_ttr: n must be >= 0");
  const Complex p = params.base().p();
  const Complex q = params.base().q();
  gauge.validate(p);
  const Complex t5 = params.t(5);
  const Complex t6 = params.t(6);

  const Complex g = grid_gamma(z, gauge, p, policy);
  const Complex r_n = R_n_elliptic(z, params, n, policy);
  const Complex r_next = R_n_elliptic(z, params, n + 1, policy);
  const Complex r_prev = n == 0 ? Complex(12.345, 0.0) : R_n_elliptic(z, params, n - 1, policy);
  const Complex beta_prev = n == 0 ? Complex{} : grid_beta(params, gauge, n - 1, policy);
  const Complex qn = std::pow(q, n);

  const Complex a = (g - grid_alpha(params, gauge, n + 1, policy)) *
                    recurrence_coefficients(params, gauge, qn / (t5 * t6), policy).B *
                    (r_next - r_n);
  const Complex b =
      (g - beta_prev) * recurrence_coefficients(params, gauge, 1.0 / qn, policy).B * (r_prev - r_n);
  const RecurrenceCoefficients at_one = recurrence_coefficients(params, gauge, 1.0, policy);
  const Complex c = at_one.rho * (g - grid_gamma(params.t(4), gauge, p, policy)) * r_n;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  return make_check("three-term recurrence n=" + std::to_string(n), a + b + c, 0.0, tol,
                    params_digest(params), scale);
}

Complex rii_polynomial(Complex z, const BetaParams& params, const GridGauge& gauge, int n,
                       const PrecisionPolicy& policy) {
  if (n < 0) throw DomainError("rii_polynomial: n must be >= 0");
  const Complex g = grid_gamma(z, gauge, params.base().p(), policy);
  Complex prefactor = 1.0;
  for (int k = 1; k <= n; ++k) prefactor *= g - grid_alpha(params, gauge, k, policy);
  return prefactor * R_n_elliptic(z, params, n, policy);
}

CheckResult verify_rii_form(const BetaParams& params, const GridGauge& gauge, int n, double tol,
                            const VerifyOptions& options, RiiFit* fit) {
  if (n < 1) throw DomainError("verify_rii_form: n must be >= 1");
  const PrecisionPolicy& policy = options.policy;
  const Complex p = params.base().p();
  gauge.validate(p);
  const Complex alpha_n = grid_alpha(params, gauge, n, policy);
  const Complex beta_prev = grid_beta(params, gauge, n - 1, policy);

  struct Sample {
    Complex z, g, prev, cur, next;
  };
  std::mt19937_64 rng(options.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(n));
  const auto draw = [&]() -> Sample {
    for (int attempt = 0; attempt < 200; ++attempt) {
      const Complex z = sample_point(rng);
      try {
        Sample s{z, grid_gamma(z, gauge, p, policy),
                 rii_polynomial(z, params, gauge, n - 1, policy),
                 rii_polynomial(z, params, gauge, n, policy),
                 rii_polynomial(z, params, gauge, n + 1, policy)};
        if (finite(s.g) && finite(s.prev) && finite(s.cur) && finite(s.next)) return s;
      } catch (const PoleError&) {
      }
    }
    throw ConvergenceError("verify_rii_form: no admissible sample point found");
  };
  const auto row = [&](const Sample& s) {
    return std::array<Complex, 3>{s.g * s.cur, -s.cur,
                                  (s.g - alpha_n) * (s.g - beta_prev) * s.prev};
  };

  Eigen::Matrix3cd m;
  Eigen::Vector3cd rhs;
  std::vector<Sample> fit_samples;
  Eigen::Vector3cd coeffs;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 20) throw ConvergenceError("verify_rii_form: singular fit system");
    fit_samples.clear();
    for (int i = 0; i < 3; ++i) {
      const Sample s = draw();
      const auto r = row(s);
      const double norm = std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
      for (int j = 0; j < 3; ++j) m(i, j) = r[static_cast<std::size_t>(j)] / norm;
      rhs(i) = -s.next / norm;
      fit_samples.push_back(s);
    }
    const Eigen::FullPivLU<Eigen::Matrix3cd> lu(m);
    if (lu.rcond() > 1e-12) {
      coeffs = lu.solve(rhs);
      break;
    }
  }
  const Complex a = coeffs(0);
  const Complex u = coeffs(2);
  const Complex v = coeffs(1) / a;

  CheckResult worst;
  bool have = false;
  std::vector<Complex> holdouts;
  for (int i = 0; i < 5; ++i) {
    const Sample s = draw();
    holdouts.push_back(s.z);
    const Complex t1 = s.next;
    const Complex t2 = a * (s.g - v) * s.cur;
    const Complex t3 = u * (s.g - alpha_n) * (s.g - beta_prev) * s.prev;
    const double scale =
        std::max({std::abs(t1), std::abs(a * s.g * s.cur), std::abs(a * v * s.cur), std::abs(t3)});
    CheckResult r = make_check("R_II relation n=" + std::to_string(n), t1 + t2 + t3, 0.0, tol,
                               params_digest(params), scale);
    if (!have || r.residual > worst.residual) {
      worst = r;
      have = true;
    }
  }
  if (fit != nullptr) {
    fit->a = a;
    fit->u = u;
    fit->v = v;
    fit->fit_points.clear();
    for (const Sample& s : fit_samples) fit->fit_points.push_back(s.z);
    fit->holdout_points = holdouts;
  }
  return worst;
}

std::array<Complex, 8> ehe_parameters(const BetaParams& params, int n) {
  if (n < 0) throw DomainError("ehe_parameters: n must be >= 0");
  const Complex p = params.base().p();
  const Complex q = params.base().q();
  const Complex mu = std::pow(q, n);
  const Complex t5 = params.t(5);
  return {params.t(1),     params.t(2),          params.t(3), params.t(4),
          p * q * mu / t5, q * params.t(6) / mu, t5 / q,      t5};
}

CheckResult verify_ehe(const BetaParams& params, int n, Complex z, double tol,
                       const PrecisionPolicy& policy) {
  const auto eps = ehe_parameters(params, n);
  const Complex p = params.base().p();
  const Complex q = params.base().q();
  Complex prod = 1.0;
  for (const Complex& e : eps) prod *= e;
  const Complex pq2 = (p * q) * (p * q);
  if (std::abs(prod / pq2 - 1.0) > 1e-10) {
    throw RejectedParametersError("verify_ehe: product of eps differs from (pq)^2");
  }

  const auto denom = [&](Complex x) {
    return theta(x * x, p, policy) * theta(q * x * x, p, policy);
  };
  for (int attempt = 0; std::abs(denom(z)) < 1e-12 || std::abs(denom(1.0 / z)) < 1e-12; ++attempt) {
    if (attempt == 16) throw DomainError("verify_ehe: no regular point near z");
    z *= std::polar(1.0, 0.01);
  }

  Complex num_a = 1.0;
  Complex num_b = 1.0;
  for (const Complex& e : eps) {
    num_a *= theta(e * z, p, policy);
    num_b *= theta(e / z, p, policy);
  }
  const Complex A = num_a / denom(z);
  const Complex Bc = num_b / denom(1.0 / z);
  Complex C = 1.0;
  for (std::size_t k = 0; k < 6; ++k) C *= theta(eps[k] * eps[7] / q, p, policy);

  const Complex psi = R_n_elliptic(z, params, n, policy);
  const Complex psi_up = R_n_elliptic(q * z, params, n, policy);
  const Complex psi_down = R_n_elliptic(z / q, params, n, policy);
  const Complex a = A * (psi_up - psi);
  const Complex b = Bc * (psi_down - psi);
  const Complex c = C * psi;
  const double scale = std::max({std::abs(A * psi_up), std::abs(A * psi), std::abs(Bc * psi_down),
                                 std::abs(Bc * psi), std::abs(c)});
  return make_check("elliptic hypergeometric equation n=" + std::to_string(n), a + b + c, 0.0, tol,
                    params_digest(params), scale);
}

QuadratureResult evaluate_V(const VParams& params, double tol, const VerifyOptions& options) {
  const PrecisionPolicy& policy = options.policy;
  const EllipticBase& base = params.base();
  const PoleLedger ledger = build_v_ledger(params, options.ledger_cutoff);
  const VectorIntegrand f = [&](Complex z, std::span<Complex> out) {
    Complex w = elliptic_inverse_gamma_square(z, base, policy);
    for (const Complex& t : params.t()) {
      w *= elliptic_gamma(t * z, base, policy) * elliptic_gamma(t / z, base, policy);
    }
    out[0] = w;
  };
  auto values = detail::multi_ledger_integral(f, {ledger}, ContourSpec::circle(1.0), tol, 1.0,
                                              options.budget);
  const Complex kappa = beta_prefactor(base, policy);
  QuadratureResult r = values[0];
  r.value *= kappa;
  r.error_estimate *= std::abs(kappa);
  r.magnitude *= std::abs(kappa);
  return r;
}

CheckResult verify_V_reduction(const VParams& params, double tol, const VerifyOptions& options) {
  const EllipticBase& base = params.base();
  const Complex pq = base.p() * base.q();
  const auto& t = params.t();
  for (std::size_t j = 0; j < 8; ++j) {
    for (std::size_t k = j + 1; k < 8; ++k) {
      if (std::abs(t[j] * t[k] / pq - 1.0) > 1e-12) continue;
      std::array<Complex, 6> rest;
      std::size_t r = 0;
      for (std::size_t i = 0; i < 8; ++i) {
        if (i != j && i != k) rest[r++] = t[i];
      }
      const QuadratureResult v = evaluate_V(params, detail::quadrature_tol(tol, options), options);
      const Complex rhs = pair_product(rest, base, options.policy);
      return make_check(
          "V reduction t" + std::to_string(j + 1) + "*t" + std::to_string(k + 1) + "=pq", v.value,
          rhs, tol, params_digest(params));
    }
  }
  throw RejectedParametersError("verify_V_reduction: no pair t_j t_k equals pq");
}

}  // namespace hgt
