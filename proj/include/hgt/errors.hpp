#pragma once

#include <stdexcept>
#include <string>

namespace hgt {

// All library failures derive from hgt::Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A truncated product, series or quadrature ran out of budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Integrand tails or shells failed to decay.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// A factor of a denominator came within the pole threshold of zero.
// index_a / index_b identify the offending factor where the operation has
// a natural indexing (e.g. (j,k) of the elliptic gamma double product).
class PoleError : public Error {
 public:
  PoleError(const std::string& what, long index_a = -1, long index_b = -1)
      : Error(what), index_a_(index_a), index_b_(index_b) {}

  long index_a() const noexcept { return index_a_; }
  long index_b() const noexcept { return index_b_; }

 private:
  long index_a_;
  long index_b_;
};

// 0/0 situations, e.g. simultaneous numerator and denominator poles.
class IndeterminateError : public Error {
 public:
  using Error::Error;
};

// Parameter regimes the library deliberately does not evaluate (|q| = 1).
class UnsupportedRegimeError : public Error {
 public:
  using Error::Error;
};

// A parameter set failed validation before any quadrature was attempted.
class RejectedParametersError : public Error {
 public:
  using Error::Error;
};

// Malformed command line or run configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace hgt
