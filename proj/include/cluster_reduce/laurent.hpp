#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cluster_reduce/matrix.hpp"

namespace cluster_reduce {

using Exponent = std::vector<long>;

namespace detail {

template <class T>
T ipow(const T& base, long e) {
  if (e < 0) return T(1) / ipow(base, -e);
  T result(1), b(base);
  while (e > 0) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

}  // namespace detail

/// Multivariate Laurent polynomial over Q. Terms are kept in descending
/// lexicographic order of exponent vectors; zero coefficients are never stored.
class LaurentPoly {
 public:
  using Terms = std::map<Exponent, Rational, std::greater<Exponent>>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t num_vars) : num_vars_(num_vars) {}

  static LaurentPoly constant(std::size_t num_vars, const Rational& c);
  static LaurentPoly variable(std::size_t num_vars, std::size_t index);
  static LaurentPoly monomial(std::size_t num_vars, Exponent exponent, const Rational& c = 1);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  bool is_constant() const;
  /// Coefficient of the constant term if the polynomial is constant.
  std::optional<Rational> constant_value() const;

  const Exponent& leading_exponent() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }
  Rational coefficient(const Exponent& e) const;

  void add_term(const Exponent& e, const Rational& c);

  /// Componentwise minimum / maximum exponent over all terms.
  Exponent min_exponents() const;
  Exponent max_exponents() const;
  bool has_nonnegative_exponents() const;
  /// Indices of variables with a nonzero exponent in some term.
  std::vector<std::size_t> active_variables() const;

  /// Multiplication by the monomial x^shift.
  LaurentPoly shifted(const Exponent& shift) const;

  LaurentPoly derivative(std::size_t var) const;
  LaurentPoly pow(unsigned e) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= Rational(-1); }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  template <class T>
  T evaluate(std::span<const T> point) const {
    if (point.size() != num_vars_) throw DimensionMismatch("LaurentPoly::evaluate: point has wrong dimension");
    T acc(0);
    for (const auto& [e, c] : terms_) {
      T term = scalar_from_rational<T>(c);
      for (std::size_t i = 0; i < num_vars_; ++i)
        if (e[i] != 0) term *= detail::ipow(point[i], e[i]);
      acc += term;
    }
    return acc;
  }

  /// Canonical text, e.g. "x2*x5 + x3*x4" or "y1^-1 + 2".
  std::string to_string(std::string_view prefix = "x") const;

 private:
  std::size_t num_vars_ = 0;
  Terms terms_;
};

/// Greatest common divisor of two polynomials (Laurent inputs are reduced
/// modulo monomials first). Result is an integer polynomial with content 1
/// and positive leading coefficient; gcd(0, 0) == 0.
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

/// a / b when b divides a exactly (polynomials with nonnegative exponents).
std::optional<LaurentPoly> exact_divide(const LaurentPoly& a, const LaurentPoly& b);

/// Quotient of Laurent polynomials kept in canonical form: numerator and
/// denominator are polynomials without common factor (monomials included),
/// the denominator has integer coefficients, content 1 and a positive
/// leading coefficient.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(const LaurentPoly& numerator);
  RationalFunction(const LaurentPoly& numerator, const LaurentPoly& denominator);

  static RationalFunction constant(std::size_t num_vars, const Rational& c);
  static RationalFunction variable(std::size_t num_vars, std::size_t index);

  std::size_t num_vars() const noexcept { return num_.num_vars(); }
  const LaurentPoly& numerator() const noexcept { return num_; }
  const LaurentPoly& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  /// Denominator is a single monomial.
  bool is_laurent() const noexcept { return den_.is_monomial(); }
  /// Laurent polynomial equal to this function, if it is one.
  std::optional<LaurentPoly> as_laurent() const;

  RationalFunction derivative(std::size_t var) const;
  RationalFunction pow(long e) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  template <class T>
  T evaluate(std::span<const T> point) const {
    const T d = den_.evaluate(point);
    if (d == 0) throw ZeroDenominator("denominator vanishes at the evaluation point");
    return num_.evaluate(point) / d;
  }

  std::string to_string(std::string_view prefix = "x") const;

 private:
  friend RationalFunction normal_form(const LaurentPoly& num, const LaurentPoly& den);
  static RationalFunction from_canonical(LaurentPoly num, LaurentPoly den) {
    RationalFunction f;
    f.num_ = std::move(num);
    f.den_ = std::move(den);
    return f;
  }

  LaurentPoly num_{0};
  LaurentPoly den_ = LaurentPoly::constant(0, 1);
};

/// Canonical form of num/den. RationalFunction values are always canonical;
/// this is the explicit entry point for raw numerator/denominator pairs.
RationalFunction normal_form(const LaurentPoly& num, const LaurentPoly& den);
inline RationalFunction normal_form(const RationalFunction& f) { return f; }

/// f(args[0], ..., args[n-1]); every argument shares one variable count.
RationalFunction compose(const RationalFunction& f, std::span<const RationalFunction> args);

/// Parses expressions with integers, variables (letters followed by a
/// 1-based index), parentheses and the operators + - * / ^.
RationalFunction parse_rational_function(std::string_view text, std::size_t num_vars);

/// Largest variable index mentioned in any of the texts.
std::size_t infer_num_vars(std::span<const std::string> texts);

/// Poisson bracket {f, g} for the log-canonical structure
/// sum_{i<j} c_ij x_i x_j d/dx_i ^ d/dx_j.
LaurentPoly log_canonical_bracket(const LaurentPoly& f, const LaurentPoly& g, const IntMatrix& c);

/// Tuple of rational functions in a common set of variables.
class BirationalMap {
 public:
  BirationalMap() = default;
  BirationalMap(std::size_t dim_in, std::vector<RationalFunction> components);

  static BirationalMap identity(std::size_t n);
  static BirationalMap parse(std::span<const std::string> components, std::size_t dim_in = 0);

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return components_.size(); }
  const std::vector<RationalFunction>& components() const noexcept { return components_; }
  const RationalFunction& operator[](std::size_t i) const { return components_[i]; }

  template <class T>
  std::vector<T> evaluate(std::span<const T> point) const {
    std::vector<T> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.template evaluate<T>(point));
    return out;
  }

  std::vector<std::string> to_strings(std::string_view prefix = "x") const;

  friend bool operator==(const BirationalMap& a, const BirationalMap& b) {
    return a.dim_in_ == b.dim_in_ && a.components_ == b.components_;
  }

 private:
  std::size_t dim_in_ = 0;
  std::vector<RationalFunction> components_;
};

/// g ∘ f.
BirationalMap compose(const BirationalMap& g, const BirationalMap& f);

/// f composed with itself p times (p == 0 gives the identity).
BirationalMap iterate_map(const BirationalMap& f, unsigned p);

/// x ↦ (x^{u_1}, ..., x^{u_r}), rows u_i of an integer exponent matrix.
class MonomialMap {
 public:
  MonomialMap() = default;
  explicit MonomialMap(IntMatrix exponents);

  static MonomialMap identity(std::size_t n);

  std::size_t dim_in() const noexcept { return exponents_.cols(); }
  std::size_t dim_out() const noexcept { return exponents_.rows(); }
  const IntMatrix& exponents() const noexcept { return exponents_; }
  Exponent exponent(std::size_t i) const;

  RationalFunction component(std::size_t i) const;
  BirationalMap to_birational() const;

  template <class T>
  std::vector<T> evaluate(std::span<const T> point) const {
    if (point.size() != dim_in()) throw DimensionMismatch("MonomialMap::evaluate: point has wrong dimension");
    std::vector<T> out;
    out.reserve(dim_out());
    for (std::size_t i = 0; i < dim_out(); ++i) {
      T v(1);
      for (std::size_t j = 0; j < dim_in(); ++j) {
        const long e = exponents_(i, j).get_si();
        if (e != 0) v *= detail::ipow(point[j], e);
      }
      out.push_back(v);
    }
    return out;
  }

  friend bool operator==(const MonomialMap& a, const MonomialMap& b) { return a.exponents_ == b.exponents_; }

 private:
  IntMatrix exponents_ = IntMatrix(0, 0);
};

/// g ∘ f for monomial maps: exponent matrix G * F.
MonomialMap compose(const MonomialMap& g, const MonomialMap& f);

/// Partial derivatives of a map, prepared once and evaluated at many points.
class MapJacobian {
 public:
  explicit MapJacobian(const BirationalMap& f);

  template <class T>
  Matrix<T> evaluate(std::span<const T> point) const {
    const std::size_t m = parts_.size(), n = dim_in_;
    Matrix<T> jac(m, n);
    for (std::size_t k = 0; k < m; ++k) {
      const auto& p = parts_[k];
      const T num = p.num.evaluate(point);
      const T den = p.den.evaluate(point);
      if (den == 0) throw ZeroDenominator("Jacobian: denominator vanishes at the evaluation point");
      const T den2 = den * den;
      for (std::size_t j = 0; j < n; ++j) {
        T dn = p.dnum[j].evaluate(point);
        T dd = p.dden[j].evaluate(point);
        jac(k, j) = (dn * den - num * dd) / den2;
      }
    }
    return jac;
  }

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return parts_.size(); }

 private:
  struct Component {
    LaurentPoly num, den;
    std::vector<LaurentPoly> dnum, dden;
  };
  std::size_t dim_in_;
  std::vector<Component> parts_;
};

}  // namespace cluster_reduce
