#include "cluster_reduce/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace cluster_reduce {

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::constant(std::size_t num_vars, const Rational& c) {
  LaurentPoly p(num_vars);
  p.add_term(Exponent(num_vars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw IndexOutOfRange("variable index out of range");
  Exponent e(num_vars, 0);
  e[index] = 1;
  return monomial(num_vars, std::move(e));
}

LaurentPoly LaurentPoly::monomial(std::size_t num_vars, Exponent exponent, const Rational& c) {
  if (exponent.size() != num_vars) throw DimensionMismatch("monomial exponent has wrong length");
  LaurentPoly p(num_vars);
  p.add_term(exponent, c);
  return p;
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return std::all_of(leading_exponent().begin(), leading_exponent().end(), [](long e) { return e == 0; });
}

std::optional<Rational> LaurentPoly::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return terms_.empty() ? Rational(0) : leading_coefficient();
}

Rational LaurentPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Exponent LaurentPoly::min_exponents() const {
  Exponent out(num_vars_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      out = e;
      first = false;
      continue;
    }
    for (std::size_t i = 0; i < num_vars_; ++i) out[i] = std::min(out[i], e[i]);
  }
  return out;
}

Exponent LaurentPoly::max_exponents() const {
  Exponent out(num_vars_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      out = e;
      first = false;
      continue;
    }
    for (std::size_t i = 0; i < num_vars_; ++i) out[i] = std::max(out[i], e[i]);
  }
  return out;
}

bool LaurentPoly::has_nonnegative_exponents() const {
  for (const auto& [e, c] : terms_)
    for (long x : e)
      if (x < 0) return false;
  return true;
}

std::vector<std::size_t> LaurentPoly::active_variables() const {
  std::vector<bool> seen(num_vars_, false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < num_vars_; ++i)
      if (e[i] != 0) seen[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < num_vars_; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

LaurentPoly LaurentPoly::shifted(const Exponent& shift) const {
  if (shift.size() != num_vars_) throw DimensionMismatch("shift has wrong length");
  LaurentPoly out(num_vars_);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    for (std::size_t i = 0; i < num_vars_; ++i) f[i] += shift[i];
    out.terms_.emplace_hint(out.terms_.end(), std::move(f), c);
  }
  return out;
}

LaurentPoly LaurentPoly::derivative(std::size_t var) const {
  if (var >= num_vars_) throw IndexOutOfRange("derivative: variable index out of range");
  LaurentPoly out(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    out.terms_.emplace_hint(out.terms_.end(), std::move(f), c * e[var]);
  }
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
  if (is_monomial()) {
    Exponent f = leading_exponent();
    for (auto& x : f) x *= static_cast<long>(e);
    Rational c = detail::ipow(leading_coefficient(), static_cast<long>(e));
    return monomial(num_vars_, std::move(f), c);
  }
  LaurentPoly result = constant(num_vars_, 1), base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.num_vars_ != num_vars_) throw DimensionMismatch("adding polynomials in different variable counts");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.num_vars_ != num_vars_) throw DimensionMismatch("subtracting polynomials in different variable counts");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.num_vars_ != b.num_vars_) throw DimensionMismatch("multiplying polynomials in different variable counts");
  LaurentPoly out(a.num_vars_);
  Exponent e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

namespace {

void append_monomial(std::ostringstream& os, const Exponent& e, std::string_view prefix) {
  bool first = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << prefix << (i + 1);
    if (e[i] != 1) os << '^' << e[i];
  }
}

bool is_zero_exponent(const Exponent& e) {
  return std::all_of(e.begin(), e.end(), [](long x) { return x == 0; });
}

std::size_t monomial_factor_count(const Exponent& e) {
  return static_cast<std::size_t>(std::count_if(e.begin(), e.end(), [](long x) { return x != 0; }));
}

}  // namespace

std::string LaurentPoly::to_string(std::string_view prefix) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (is_zero_exponent(e)) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    append_monomial(os, e, prefix);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Division and gcd

std::optional<LaurentPoly> exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw ZeroDenominator("exact_divide: division by zero polynomial");
  if (a.num_vars() != b.num_vars()) throw DimensionMismatch("exact_divide: variable counts differ");
  const std::size_t n = a.num_vars();
  LaurentPoly q(n), r = a;
  const Exponent& eb = b.leading_exponent();
  const Rational cb = b.leading_coefficient();
  Exponent e(n);
  while (!r.is_zero()) {
    const Exponent& er = r.leading_exponent();
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = er[i] - eb[i];
      if (e[i] < 0) return std::nullopt;
    }
    const Rational c = r.leading_coefficient() / cb;
    q.add_term(e, c);
    for (const auto& [tb, cbt] : b.terms()) {
      Exponent t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = tb[i] + e[i];
      r.add_term(t, -c * cbt);
    }
  }
  return q;
}

namespace {

// Scalar s making p * s an integer polynomial with content 1 and positive
// leading coefficient.
Rational primitive_scale(const LaurentPoly& p) {
  Integer lcm_den = 1, gcd_num = 0;
  for (const auto& [e, c] : p.terms()) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational s(lcm_den, gcd_num);
  s.canonicalize();
  if (p.leading_coefficient() < 0) s = -s;
  return s;
}

LaurentPoly primitive(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  return p * primitive_scale(p);
}

long degree_in(const LaurentPoly& p, std::size_t v) {
  long d = 0;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (first || e[v] > d) d = e[v];
    first = false;
  }
  return d;
}

// Coefficients of p viewed as a polynomial in variable v.
std::map<long, LaurentPoly> coefficients_in(const LaurentPoly& p, std::size_t v) {
  std::map<long, LaurentPoly> out;
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    f[v] = 0;
    auto [it, inserted] = out.try_emplace(e[v], p.num_vars());
    it->second.add_term(f, c);
  }
  return out;
}

LaurentPoly leading_coefficient_in(const LaurentPoly& p, std::size_t v) {
  const long d = degree_in(p, v);
  LaurentPoly out(p.num_vars());
  for (const auto& [e, c] : p.terms())
    if (e[v] == d) {
      Exponent f = e;
      f[v] = 0;
      out.add_term(f, c);
    }
  return out;
}

LaurentPoly polynomial_gcd(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly content_in(const LaurentPoly& p, std::size_t v) {
  LaurentPoly g(p.num_vars());
  for (const auto& [d, c] : coefficients_in(p, v)) {
    g = g.is_zero() ? primitive(c) : polynomial_gcd(g, c);
    if (g.is_constant()) return LaurentPoly::constant(p.num_vars(), 1);
  }
  return g;
}

LaurentPoly primitive_part_in(const LaurentPoly& p, std::size_t v) {
  const LaurentPoly c = content_in(p, v);
  if (c.is_constant()) return primitive(p);
  auto q = exact_divide(p, c);
  if (!q) throw std::logic_error("primitive_part_in: content does not divide");
  return primitive(*q);
}

// Pseudo-remainder of a by b as polynomials in v (up to a nonzero factor
// from the coefficient ring).
LaurentPoly pseudo_remainder(LaurentPoly a, const LaurentPoly& b, std::size_t v) {
  const long db = degree_in(b, v);
  const LaurentPoly lb = leading_coefficient_in(b, v);
  Exponent shift(a.num_vars(), 0);
  while (!a.is_zero()) {
    const long da = degree_in(a, v);
    if (da < db) break;
    const LaurentPoly la = leading_coefficient_in(a, v);
    shift[v] = da - db;
    a = lb * a - la * b.shifted(shift);
  }
  return a;
}

// gcd of polynomials with nonnegative exponents.
LaurentPoly polynomial_gcd(const LaurentPoly& a_in, const LaurentPoly& b_in) {
  if (a_in.is_zero()) return primitive(b_in);
  if (b_in.is_zero()) return primitive(a_in);
  const std::size_t n = a_in.num_vars();

  const Exponent ma = a_in.min_exponents(), mb = b_in.min_exponents();
  Exponent common(n), neg_a(n), neg_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    common[i] = std::min(ma[i], mb[i]);
    neg_a[i] = -ma[i];
    neg_b[i] = -mb[i];
  }
  LaurentPoly a = primitive(a_in.shifted(neg_a));
  LaurentPoly b = primitive(b_in.shifted(neg_b));

  LaurentPoly g = LaurentPoly::constant(n, 1);
  if (!a.is_constant() && !b.is_constant()) {
    const auto va = a.active_variables(), vb = b.active_variables();
    std::optional<std::size_t> only_a, only_b;
    for (std::size_t v : va)
      if (!std::binary_search(vb.begin(), vb.end(), v)) only_a = only_a.value_or(v);
    for (std::size_t v : vb)
      if (!std::binary_search(va.begin(), va.end(), v)) only_b = only_b.value_or(v);

    if (only_a) {
      g = polynomial_gcd(content_in(a, *only_a), b);
    } else if (only_b) {
      g = polynomial_gcd(a, content_in(b, *only_b));
    } else {
      const std::size_t v = va.front();
      const LaurentPoly ca = content_in(a, v), cb = content_in(b, v);
      LaurentPoly pa = primitive_part_in(a, v), pb = primitive_part_in(b, v);
      const LaurentPoly gc = polynomial_gcd(ca, cb);
      if (degree_in(pa, v) < degree_in(pb, v)) std::swap(pa, pb);
      while (!pb.is_zero()) {
        LaurentPoly r = pseudo_remainder(pa, pb, v);
        pa = std::move(pb);
        pb = r.is_zero() ? std::move(r) : primitive_part_in(r, v);
      }
      g = primitive(gc * primitive_part_in(pa, v));
    }
  }
  return g.shifted(common);
}

}  // namespace

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.num_vars() != b.num_vars()) throw DimensionMismatch("gcd: variable counts differ");
  if (a.is_zero() && b.is_zero()) return LaurentPoly(a.num_vars());
  const std::size_t n = a.num_vars();
  Exponent na = a.is_zero() ? Exponent(n, 0) : a.min_exponents();
  Exponent nb = b.is_zero() ? Exponent(n, 0) : b.min_exponents();
  for (auto& x : na) x = std::min(x, 0L) * -1;
  for (auto& x : nb) x = std::min(x, 0L) * -1;
  return polynomial_gcd(a.shifted(na), b.shifted(nb));
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction normal_form(const LaurentPoly& num, const LaurentPoly& den) {
  if (num.num_vars() != den.num_vars()) throw DimensionMismatch("numerator and denominator variable counts differ");
  if (den.is_zero()) throw ZeroDenominator("rational function with zero denominator");
  const std::size_t n = num.num_vars();
  if (num.is_zero()) return RationalFunction::from_canonical(LaurentPoly(n), LaurentPoly::constant(n, 1));

  const Exponent mn = num.min_exponents(), md = den.min_exponents();
  Exponent neg_n(n), neg_d(n), pos_shift(n, 0), neg_shift(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    neg_n[i] = -mn[i];
    neg_d[i] = -md[i];
    const long a = mn[i] - md[i];
    (a > 0 ? pos_shift[i] : neg_shift[i]) = a > 0 ? a : -a;
  }
  LaurentPoly N = num.shifted(neg_n), D = den.shifted(neg_d);

  if (auto c = D.constant_value()) {
    N *= 1 / *c;
    D = LaurentPoly::constant(n, 1);
  } else if (!N.is_constant()) {
    const LaurentPoly g = polynomial_gcd(N, D);
    if (!g.is_constant()) {
      N = *exact_divide(N, g);
      D = *exact_divide(D, g);
    }
  }
  const Rational s = primitive_scale(D);
  N *= s;
  D *= s;
  return RationalFunction::from_canonical(N.shifted(pos_shift), D.shifted(neg_shift));
}

RationalFunction::RationalFunction(const LaurentPoly& numerator)
    : RationalFunction(numerator, LaurentPoly::constant(numerator.num_vars(), 1)) {}

RationalFunction::RationalFunction(const LaurentPoly& numerator, const LaurentPoly& denominator)
    : RationalFunction(normal_form(numerator, denominator)) {}

RationalFunction RationalFunction::constant(std::size_t num_vars, const Rational& c) {
  return RationalFunction(LaurentPoly::constant(num_vars, c));
}

RationalFunction RationalFunction::variable(std::size_t num_vars, std::size_t index) {
  return RationalFunction(LaurentPoly::variable(num_vars, index));
}

std::optional<LaurentPoly> RationalFunction::as_laurent() const {
  if (!den_.is_monomial()) return std::nullopt;
  Exponent neg = den_.leading_exponent();
  for (auto& x : neg) x = -x;
  return num_.shifted(neg) * Rational(1 / den_.leading_coefficient());
}

RationalFunction RationalFunction::derivative(std::size_t var) const {
  return RationalFunction(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RationalFunction RationalFunction::pow(long e) const {
  if (e >= 0) return from_canonical(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
  if (num_.is_zero()) throw ZeroDenominator("negative power of the zero function");
  return RationalFunction(den_.pow(static_cast<unsigned>(-e)), num_.pow(static_cast<unsigned>(-e)));
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a) { return RationalFunction::from_canonical(-a.num_, a.den_); }

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw ZeroDenominator("division by the zero function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::to_string(std::string_view prefix) const {
  const std::string num = num_.to_string(prefix);
  if (den_.is_constant()) return num;
  std::string out = num_.size() > 1 ? "(" + num + ")" : num;
  const bool bare_den = den_.is_monomial() && den_.leading_coefficient() == 1 &&
                        monomial_factor_count(den_.leading_exponent()) == 1;
  out += '/';
  out += bare_den ? den_.to_string(prefix) : "(" + den_.to_string(prefix) + ")";
  return out;
}

// ---------------------------------------------------------------------------
// Composition

namespace {

// Argument of a substitution split as numerator/denominator Laurent
// polynomials, with cached powers.
class SubstitutionArg {
 public:
  explicit SubstitutionArg(const RationalFunction& g) {
    if (auto l = g.as_laurent()) {
      num_ = *l;
      den_ = LaurentPoly::constant(l->num_vars(), 1);
      laurent_ = true;
    } else {
      num_ = g.numerator();
      den_ = g.denominator();
    }
    monomial_ = laurent_ && num_.is_monomial();
  }

  bool monomial() const noexcept { return monomial_; }
  bool laurent() const noexcept { return laurent_; }

  // num^e for any integer e when the argument is a monomial.
  LaurentPoly monomial_power(long e) const {
    Exponent f = num_.leading_exponent();
    for (auto& x : f) x *= e;
    return LaurentPoly::monomial(num_.num_vars(), std::move(f), detail::ipow(num_.leading_coefficient(), e));
  }

  const LaurentPoly& num_power(long e) { return power(num_, num_powers_, e); }
  const LaurentPoly& den_power(long e) { return power(den_, den_powers_, e); }

 private:
  static const LaurentPoly& power(const LaurentPoly& base, std::vector<LaurentPoly>& cache, long e) {
    if (cache.empty()) cache.push_back(LaurentPoly::constant(base.num_vars(), 1));
    while (static_cast<long>(cache.size()) <= e) cache.push_back(cache.back() * base);
    return cache[static_cast<std::size_t>(e)];
  }

  LaurentPoly num_, den_;
  bool laurent_ = false;
  bool monomial_ = false;
  std::vector<LaurentPoly> num_powers_, den_powers_;
};

// p(args) as (numerator, denominator).
std::pair<LaurentPoly, LaurentPoly> substitute(const LaurentPoly& p, std::vector<SubstitutionArg>& args,
                                               std::size_t out_vars) {
  const std::size_t n = p.num_vars();
  LaurentPoly denominator = LaurentPoly::constant(out_vars, 1);
  LaurentPoly numerator(out_vars);
  if (p.is_zero()) return {numerator, denominator};
  const Exponent lo = p.min_exponents(), hi = p.max_exponents();
  std::vector<long> pos(n), neg(n);
  for (std::size_t i = 0; i < n; ++i) {
    pos[i] = std::max(hi[i], 0L);
    neg[i] = std::max(-lo[i], 0L);
    if (args[i].monomial()) continue;
    if (neg[i] > 0) denominator = denominator * args[i].num_power(neg[i]);
    if (!args[i].laurent() && pos[i] > 0) denominator = denominator * args[i].den_power(pos[i]);
  }
  for (const auto& [e, c] : p.terms()) {
    LaurentPoly term = LaurentPoly::constant(out_vars, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (args[i].monomial()) {
        if (e[i] != 0) term = term * args[i].monomial_power(e[i]);
        continue;
      }
      if (e[i] + neg[i] > 0) term = term * args[i].num_power(e[i] + neg[i]);
      if (!args[i].laurent() && pos[i] - e[i] > 0) term = term * args[i].den_power(pos[i] - e[i]);
    }
    numerator += term;
  }
  return {numerator, denominator};
}

}  // namespace

RationalFunction compose(const RationalFunction& f, std::span<const RationalFunction> args) {
  if (args.size() != f.num_vars()) throw DimensionMismatch("compose: argument count differs from variable count");
  if (args.empty()) return f;
  const std::size_t m = args.front().num_vars();
  std::vector<SubstitutionArg> prepared;
  prepared.reserve(args.size());
  for (const auto& g : args) {
    if (g.num_vars() != m) throw DimensionMismatch("compose: arguments use different variable counts");
    prepared.emplace_back(g);
  }
  auto [a, q] = substitute(f.numerator(), prepared, m);
  auto [a2, q2] = substitute(f.denominator(), prepared, m);
  if (a2.is_zero()) throw ZeroDenominator("compose: denominator becomes identically zero");
  return RationalFunction(a * q2, q * a2);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t num_vars) : text_(text), n_(num_vars) {}

  RationalFunction parse() {
    RationalFunction f = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalFunction expression() {
    RationalFunction acc = term();
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  RationalFunction term() {
    RationalFunction acc = factor();
    for (;;) {
      if (accept('*'))
        acc = acc * factor();
      else if (accept('/'))
        acc = acc / factor();
      else
        return acc;
    }
  }

  RationalFunction factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    RationalFunction base = primary();
    if (accept('^')) {
      skip_space();
      bool negative = false;
      if (accept('-'))
        negative = true;
      else
        accept('+');
      skip_space();
      const std::string digits = read_digits();
      if (digits.empty()) fail("expected an integer exponent");
      const long e = std::stol(digits);
      base = base.pow(negative ? -e : e);
    }
    return base;
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  RationalFunction primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      RationalFunction inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return RationalFunction::constant(n_, Rational(Integer(read_digits())));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string digits = read_digits();
      if (digits.empty()) fail("variable name needs a 1-based index");
      const std::size_t index = std::stoul(digits);
      if (index == 0 || index > n_) fail("variable index " + digits + " out of range");
      return RationalFunction::variable(n_, index - 1);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational_function(std::string_view text, std::size_t num_vars) {
  return Parser(text, num_vars).parse();
}

std::size_t infer_num_vars(std::span<const std::string> texts) {
  std::size_t best = 0;
  for (const auto& t : texts) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!(std::isalpha(static_cast<unsigned char>(t[i])) || t[i] == '_')) continue;
      std::size_t j = i;
      while (j < t.size() && (std::isalpha(static_cast<unsigned char>(t[j])) || t[j] == '_')) ++j;
      std::size_t k = j;
      while (k < t.size() && std::isdigit(static_cast<unsigned char>(t[k]))) ++k;
      if (k > j) best = std::max<std::size_t>(best, std::stoul(t.substr(j, k - j)));
      i = k == i ? i : k - 1;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Brackets

LaurentPoly log_canonical_bracket(const LaurentPoly& f, const LaurentPoly& g, const IntMatrix& c) {
  const std::size_t n = f.num_vars();
  if (g.num_vars() != n || c.rows() != n || c.cols() != n) throw DimensionMismatch("bracket: dimensions differ");
  LaurentPoly out(n);
  std::vector<LaurentPoly> df, dg;
  for (std::size_t i = 0; i < n; ++i) {
    df.push_back(f.derivative(i));
    dg.push_back(g.derivative(i));
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      if (c(k, l) == 0) continue;
      Exponent e(n, 0);
      e[k] = 1;
      e[l] = 1;
      const LaurentPoly xkxl = LaurentPoly::monomial(n, e, Rational(c(k, l)));
      out += xkxl * (df[k] * dg[l] - df[l] * dg[k]);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Maps

BirationalMap::BirationalMap(std::size_t dim_in, std::vector<RationalFunction> components)
    : dim_in_(dim_in), components_(std::move(components)) {
  for (const auto& c : components_)
    if (c.num_vars() != dim_in_) throw DimensionMismatch("map component uses the wrong number of variables");
}

BirationalMap BirationalMap::identity(std::size_t n) {
  std::vector<RationalFunction> comps;
  for (std::size_t i = 0; i < n; ++i) comps.push_back(RationalFunction::variable(n, i));
  return {n, std::move(comps)};
}

BirationalMap BirationalMap::parse(std::span<const std::string> components, std::size_t dim_in) {
  if (dim_in == 0) dim_in = std::max(infer_num_vars(components), components.size());
  std::vector<RationalFunction> comps;
  for (const auto& c : components) comps.push_back(parse_rational_function(c, dim_in));
  return {dim_in, std::move(comps)};
}

std::vector<std::string> BirationalMap::to_strings(std::string_view prefix) const {
  std::vector<std::string> out;
  for (const auto& c : components_) out.push_back(c.to_string(prefix));
  return out;
}

BirationalMap compose(const BirationalMap& g, const BirationalMap& f) {
  if (f.dim_out() != g.dim_in()) throw DimensionMismatch("compose: output dimension of f differs from input of g");
  std::vector<RationalFunction> comps;
  comps.reserve(g.dim_out());
  for (const auto& c : g.components()) comps.push_back(compose(c, f.components()));
  return {f.dim_in(), std::move(comps)};
}

BirationalMap iterate_map(const BirationalMap& f, unsigned p) {
  if (f.dim_in() != f.dim_out()) throw DimensionMismatch("iterate_map: map is not a self-map");
  BirationalMap acc = BirationalMap::identity(f.dim_in());
  for (unsigned k = 0; k < p; ++k) acc = compose(f, acc);
  return acc;
}

MonomialMap::MonomialMap(IntMatrix exponents) : exponents_(std::move(exponents)) {
  for (const auto& x : exponents_.data())
    if (!x.fits_slong_p()) throw Error("monomial exponent does not fit in a machine integer");
}

MonomialMap MonomialMap::identity(std::size_t n) { return MonomialMap(IntMatrix::identity(n)); }

Exponent MonomialMap::exponent(std::size_t i) const {
  Exponent e(dim_in());
  for (std::size_t j = 0; j < dim_in(); ++j) e[j] = exponents_(i, j).get_si();
  return e;
}

RationalFunction MonomialMap::component(std::size_t i) const {
  return RationalFunction(LaurentPoly::monomial(dim_in(), exponent(i)));
}

BirationalMap MonomialMap::to_birational() const {
  std::vector<RationalFunction> comps;
  for (std::size_t i = 0; i < dim_out(); ++i) comps.push_back(component(i));
  return {dim_in(), std::move(comps)};
}

MonomialMap compose(const MonomialMap& g, const MonomialMap& f) {
  if (f.dim_out() != g.dim_in()) throw DimensionMismatch("compose: monomial map dimensions differ");
  return MonomialMap(g.exponents() * f.exponents());
}

MapJacobian::MapJacobian(const BirationalMap& f) : dim_in_(f.dim_in()) {
  for (const auto& c : f.components()) {
    Component part{c.numerator(), c.denominator(), {}, {}};
    for (std::size_t j = 0; j < dim_in_; ++j) {
      part.dnum.push_back(part.num.derivative(j));
      part.dden.push_back(part.den.derivative(j));
    }
    parts_.push_back(std::move(part));
  }
}

}  // namespace cluster_reduce
