#include <algorithm>
#include <cmath>
#include <map>

#include "hgt/errors.hpp"
#include "hgt/verification.hpp"
#include "verification_internal.hpp"

namespace hgt {

namespace {

// (y^2 + N^2) prod_k Gamma(alpha_k + y, N_k + N) Gamma(alpha_k - y, N_k - N).
Complex complex_weight(double y, double N, const ComplexLevelParams& params) {
  Complex log_w = 0.0;
  for (std::size_t k = 0; k < 6; ++k) {
    const Complex a = params.alpha()[k];
    const double nk = params.n()[k];
    try {
      log_w += log_complex_field_gamma(a + y, nk + N) + log_complex_field_gamma(a - y, nk - N);
    } catch (const DomainError&) {
      return 0.0;
    }
  }
  return (y * y + N * N) * std::exp(log_w);
}

}  // namespace

BiorthogonalityResult verify_biorthogonality_complex(const ComplexLevelParams& params,
                                                     int max_index, double tol,
                                                     const VerifyOptions& options) {
  return verify_biorthogonality_complex(params, index_grid(max_index), tol, options);
}

BiorthogonalityResult verify_biorthogonality_complex(const ComplexLevelParams& params,
                                                     const std::vector<GramIndex>& indices,
                                                     double tol, const VerifyOptions& options) {
  if (indices.empty()) throw DomainError("verify_biorthogonality_complex: no indices");
  const ContourSpec line = ContourSpec::horizontal_line(0.0, 10.0);
  for (const GramIndex& ix : indices) {
    if (std::min({ix.m, ix.k, ix.n, ix.l}) < 0) {
      throw DomainError("verify_biorthogonality_complex: negative index");
    }
    const PoleLedger ledger = build_complex_ledger(params, ix.m, ix.n, ix.k, ix.l);
    if (pole_separation_check(ledger, line)) {
      throw RejectedParametersError(
          "verify_biorthogonality_complex: the real line does not separate the poles for " +
          detail::index_label(ix));
    }
  }

  const std::size_t components = indices.size();
  const double inner_tol = detail::quadrature_tol(tol, options);
  const VectorShellTerm shell = [&](double N, std::span<Complex> out) {
    const VectorIntegrand f = [&](Complex y, std::span<Complex> values) {
      const Complex w = complex_weight(y.real(), N, params);
      for (std::size_t c = 0; c < components; ++c) {
        if (w == Complex{}) {
          values[c] = 0.0;
          continue;
        }
        const GramIndex& ix = indices[c];
        values[c] =
            w * R_ns_complex(y, N, params, ix.m, ix.k) * T_ns_complex(y, N, params, ix.n, ix.l);
      }
    };
    const double width = std::max(2.0, std::abs(N));
    ContourSpec spec = line;
    spec.truncation = std::max(10.0, 4.0 * width);
    const auto r = line_quadrature(f, components, spec, inner_tol, width, options.budget);
    for (std::size_t c = 0; c < components; ++c) out[c] = r[c].value;
  };
  const auto sums = bilateral_sum(shell, components, params.nu(), inner_tol, options.budget);

  const double norm = 1.0 / (8.0 * kPi);
  BiorthogonalityResult result;
  for (std::size_t c = 0; c < components; ++c) {
    result.gram.entries.push_back({indices[c], norm * sums[c].value, norm * sums[c].error_estimate,
                                   norm * sums[c].magnitude});
  }

  Complex product = 1.0;
  for (std::size_t j = 0; j < 6; ++j) {
    for (std::size_t k = j + 1; k < 6; ++k) {
      product *=
          complex_field_gamma(params.alpha()[j] + params.alpha()[k], params.n()[j] + params.n()[k]);
    }
  }
  std::map<std::pair<int, int>, Complex> cache;
  const auto reference = [&](int n, int l) {
    auto it = cache.find({n, l});
    if (it == cache.end()) {
      it = cache.emplace(std::pair{n, l}, h_nl_complex(params, n, l) * product).first;
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
