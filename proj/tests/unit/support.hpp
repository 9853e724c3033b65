#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hgt/special_core.hpp"

namespace hgt_test {

using hgt::Complex;

inline double rel(Complex a, Complex b) {
  const double s = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / s;
}

// Points with modulus in [rmin, rmax] and uniform argument.
inline std::vector<Complex> annulus_sample(std::uint64_t seed, int count, double rmin,
                                           double rmax) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r(rmin, rmax);
  std::uniform_real_distribution<double> a(0.0, 2.0 * hgt::kPi);
  std::vector<Complex> out;
  for (int i = 0; i < count; ++i) {
    const double radius = r(rng);
    out.push_back(std::polar(radius, a(rng)));
  }
  return out;
}

}  // namespace hgt_test
