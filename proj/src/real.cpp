#include "cluster_reduce/real.hpp"

#include <cstdlib>
#include <sstream>
#include <string>

namespace cluster_reduce {

unsigned precision_from_environment(unsigned fallback) {
  const char* raw = std::getenv("CLUSTER_REDUCE_PRECISION");
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    std::size_t used = 0;
    const long v = std::stol(raw, &used);
    if (used != std::string(raw).size() || v < 10 || v > 100000) throw Error("");
    return static_cast<unsigned>(v);
  } catch (const std::exception&) {
    throw Error(std::string("CLUSTER_REDUCE_PRECISION must be an integer in [10, 100000], got \"") + raw + "\"");
  }
}

std::string to_decimal(const Real& x, unsigned digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

// Continued fraction convergents until the error drops below 10^-digits.
Rational rational_approximation(const Real& x, unsigned digits) {
  const Real tol = pow(Real(10), -static_cast<int>(digits));
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Real r = x;
  for (int iter = 0; iter < 100000; ++iter) {
    const Real fl = floor(r);
    Integer a;
    mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDD);
    const Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Rational approx(p1, q1);
    if (abs(to_real(approx) - x) < tol) {
      Rational out = approx;
      out.canonicalize();
      return out;
    }
    const Real frac = r - fl;
    if (frac == 0) break;
    r = 1 / frac;
  }
  Rational out(p1, q1);
  out.canonicalize();
  return out;
}

}  // namespace cluster_reduce
