#pragma once

#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "cluster_reduce/matrix.hpp"

namespace cluster_reduce {

/// Variable-precision binary float used by float-mode dynamics.
using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultPrecisionDigits = 64;

/// Sets the default decimal precision for newly created Reals and restores
/// the previous value on destruction.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned digits10) : saved_(Real::default_precision()) {
    Real::default_precision(digits10);
  }
  ~ScopedPrecision() { Real::default_precision(saved_); }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_;
};

/// Precision requested through CLUSTER_REDUCE_PRECISION, else the default.
unsigned precision_from_environment(unsigned fallback = kDefaultPrecisionDigits);

inline Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

template <>
inline Real scalar_from_rational<Real>(const Rational& q) {
  return to_real(q);
}

/// Decimal rendering with `digits` significant digits.
std::string to_decimal(const Real& x, unsigned digits);

/// Rational approximation p/q of x with |x - p/q| < 10^-digits.
Rational rational_approximation(const Real& x, unsigned digits);

}  // namespace cluster_reduce
