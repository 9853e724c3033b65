#include <algorithm>
#include <cmath>
#include <map>

#include "hgt/errors.hpp"
#include "hgt/verification.hpp"
#include "verification_internal.hpp"

namespace hgt {

namespace {

constexpr double kMaxHyperbolicNome = 0.8;

Complex hyperbolic_weight(Complex u, const HyperbolicParams& params,
                          const PrecisionPolicy& policy) {
  const HyperbolicPeriods& periods = params.periods();
  Complex log_w = 0.0;
  for (const Complex& g : params.g()) {
    log_w +=
        log_hyperbolic_gamma(g + u, periods, policy) + log_hyperbolic_gamma(g - u, periods, policy);
  }
  return std::exp(log_w) * hyperbolic_inverse_gamma_pair(2.0 * u, periods);
}

}  // namespace

BiorthogonalityResult verify_biorthogonality_hyperbolic(const HyperbolicParams& params,
                                                        int max_index, double tol,
                                                        const VerifyOptions& options) {
  return verify_biorthogonality_hyperbolic(params, index_grid(max_index), tol, options);
}

BiorthogonalityResult verify_biorthogonality_hyperbolic(const HyperbolicParams& params,
                                                        const std::vector<GramIndex>& indices,
                                                        double tol, const VerifyOptions& options) {
  if (indices.empty()) throw DomainError("verify_biorthogonality_hyperbolic: no indices");
  const PrecisionPolicy& policy = options.policy;
  const HyperbolicPeriods& periods = params.periods();
  const double nome = std::abs(periods.q());
  if (std::min(nome, 1.0 / nome) > kMaxHyperbolicNome) {
    throw RejectedParametersError(
        "verify_biorthogonality_hyperbolic: |q| = exp(2 pi i omega1/omega2) too close to 1");
  }

  int top = 0;
  std::vector<PoleLedger> ledgers;
  for (const GramIndex& ix : indices) {
    if (std::min({ix.m, ix.k, ix.n, ix.l}) < 0) {
      throw DomainError("verify_biorthogonality_hyperbolic: negative index");
    }
    top = std::max({top, ix.m, ix.k, ix.n, ix.l});
    ledgers.push_back(build_hyperbolic_ledger(params, ix.m, ix.n, ix.k, ix.l));
  }

  const HyperbolicParams swapped = params.with_swapped_periods();
  const auto size = static_cast<std::size_t>(top + 1);
  const VectorIntegrand f = [&](Complex u, std::span<Complex> out) {
    std::vector<Complex> r1(size), r2(size), t1(size), t2(size);
    for (int i = 0; i <= top; ++i) {
      const auto s = static_cast<std::size_t>(i);
      r1[s] = R_n_hyperbolic(u, params, i, policy);
      r2[s] = R_n_hyperbolic(u, swapped, i, policy);
      t1[s] = T_n_hyperbolic(u, params, i, policy);
      t2[s] = T_n_hyperbolic(u, swapped, i, policy);
    }
    const Complex w = hyperbolic_weight(u, params, policy);
    for (std::size_t c = 0; c < indices.size(); ++c) {
      const GramIndex& ix = indices[c];
      out[c] = w * r1[static_cast<std::size_t>(ix.m)] * r2[static_cast<std::size_t>(ix.k)] *
               t1[static_cast<std::size_t>(ix.n)] * t2[static_cast<std::size_t>(ix.l)];
    }
  };
  const auto values =
      detail::multi_ledger_integral(f, ledgers, ContourSpec::vertical_line(0.0, 10.0),
                                    detail::quadrature_tol(tol, options), 2.0, options.budget);

  const Complex kappa = 1.0 / (Complex(0.0, 2.0) * std::sqrt(periods.omega1() * periods.omega2()));
  BiorthogonalityResult result;
  for (std::size_t c = 0; c < indices.size(); ++c) {
    result.gram.entries.push_back({indices[c], kappa * values[c].value,
                                   std::abs(kappa) * values[c].error_estimate,
                                   std::abs(kappa) * values[c].magnitude});
  }

  Complex product = 1.0;
  const auto& g = params.g();
  for (std::size_t j = 0; j < 6; ++j) {
    for (std::size_t k = j + 1; k < 6; ++k) {
      product *= hyperbolic_gamma(g[j] + g[k], periods, policy);
    }
  }
  std::map<std::pair<int, int>, Complex> cache;
  const auto reference = [&](int n, int l) {
    auto it = cache.find({n, l});
    if (it == cache.end()) {
      it = cache.emplace(std::pair{n, l}, h_nl_hyperbolic(params, n, l, policy) * product).first;
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

}  // namespace hgt
