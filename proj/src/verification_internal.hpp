#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "hgt/contours_quadrature.hpp"
#include "hgt/verification.hpp"

namespace hgt::detail {

// Binary64 quadrature cannot certify relative errors much below this.
inline constexpr double kMinQuadratureTolerance = 1e-14;

inline double quadrature_tol(double tol, const VerifyOptions& options) {
  return std::max(tol * options.quadrature_fraction, kMinQuadratureTolerance);
}

// Integral of a vector integrand whose components each need their own
// separating contour. Every component shares the base-contour nodes; loop
// radii are computed against the union of all ledgers so that each loop is
// valid for every component, and each distinct loop is integrated once.
// Circles return (1/2 pi i) \oint f dz/z, lines return \int_C f du.
std::vector<QuadratureResult> multi_ledger_integral(const VectorIntegrand& f,
                                                    const std::vector<PoleLedger>& ledgers,
                                                    const ContourSpec& contour, double tol,
                                                    double decay_hint,
                                                    const QuadratureBudget& budget);

std::string index_label(const GramIndex& index);

// Appends one check per Gram entry: diagonal entries against the reference
// h_nl * product, off-diagonal entries against zero relative to the
// geometric mean of the two diagonal references.
template <typename Reference>
void append_gram_checks(BiorthogonalityResult& result, Reference&& reference, double tol,
                        const std::string& digest) {
  for (const GramEntry& e : result.gram.entries) {
    const auto& ix = e.index;
    if (ix.diagonal()) {
      result.checks.push_back(
          make_check("diagonal " + index_label(ix), e.value, reference(ix.n, ix.l), tol, digest));
    } else {
      const double scale =
          std::sqrt(std::abs(reference(ix.m, ix.k)) * std::abs(reference(ix.n, ix.l)));
      result.checks.push_back(
          make_check("off-diagonal " + index_label(ix), e.value, 0.0, tol, digest, scale));
    }
  }
}

}  // namespace hgt::detail
