#pragma once

// Quotients of sparse polynomials over Z_p, plus a small expression parser.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clustercrypt/error.hpp"
#include "clustercrypt/fields.hpp"
#include "clustercrypt/polynomial.hpp"

namespace clustercrypt {

class RationalFunction {
 public:
  RationalFunction() = default;

  /// Polynomial as a fraction with denominator 1.
  explicit RationalFunction(Polynomial num)
      : num_(std::move(num)), den_(Polynomial::constant(num_.modulus(), num_.variable_count(), 1)) {}

  /// Cancels common monomial content and makes the denominator monic.
  /// Does not attempt a full gcd; see reduce_fraction.
  RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    normalize();
  }

  static RationalFunction constant(Residue p, int nvars, Residue c) {
    return RationalFunction(Polynomial::constant(p, nvars, c));
  }
  static RationalFunction variable(Residue p, int nvars, int index) {
    return RationalFunction(Polynomial::variable(p, nvars, index));
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  Residue modulus() const { return num_.modulus(); }
  int variable_count() const { return num_.variable_count(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }

  /// Structural equality of the stored forms.
  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

  RationalFunction operator-() const { return RationalFunction(-num_, den_); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    if (a.den_.is_monomial() && b.den_.is_monomial()) {
      // Common denominator is the monomial lcm, which keeps Laurent forms small.
      Exponents l = a.den_.leading_term().exps;
      const Exponents& e = b.den_.leading_term().exps;
      for (std::size_t i = 0; i < l.size(); ++i) l[i] = std::max(l[i], e[i]);
      const Residue p = a.modulus();
      auto cofactor = [&](const Polynomial& d) {
        Exponents c = l;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= d.leading_term().exps[i];
        return Term{c, 1};
      };
      return RationalFunction(a.num_.times_term(cofactor(a.den_)) + b.num_.times_term(cofactor(b.den_)),
                              Polynomial::monomial(p, l, 1));
    }
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }

  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }

  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }

  RationalFunction pow(std::uint32_t e) const { return RationalFunction(num_.pow(e), den_.pow(e)); }

  std::string to_string() const {
    if (is_polynomial()) return num_.to_string();
    auto wrap = [](const Polynomial& q) {
      return q.terms().size() > 1 ? "(" + q.to_string() + ")" : q.to_string();
    };
    return wrap(num_) + "/" + wrap(den_);
  }

 private:
  void normalize() {
    const Residue p = num_.modulus();
    const int n = num_.variable_count();
    if (den_.modulus() != p || den_.variable_count() != n) {
      throw Error(ErrorCode::InvalidInput, "numerator and denominator over different rings");
    }
    if (num_.is_zero()) {
      den_ = Polynomial::constant(p, n, 1);
      return;
    }
    Exponents m = num_.monomial_content();
    const Exponents md = den_.monomial_content();
    bool any = false;
    for (int i = 0; i < n; ++i) {
      m[i] = std::min(m[i], md[i]);
      any = any || m[i] > 0;
    }
    if (any) {
      num_ = num_.divided_by_monomial(m);
      den_ = den_.divided_by_monomial(m);
    }
    const Residue lead = den_.leading_term().coef;
    if (lead != 1) {
      const Residue inv = fp_inv(lead, p);
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  Polynomial num_;
  Polynomial den_;
};

/// Same function: a.num * b.den == b.num * a.den.
inline bool equivalent(const RationalFunction& a, const RationalFunction& b) {
  return a.num() * b.den() == b.num() * a.den();
}

/// Divides numerator and denominator by their gcd.
inline RationalFunction reduce_fraction(const RationalFunction& rf) {
  if (rf.is_zero() || rf.den().is_constant()) return rf;
  const Polynomial g = gcd(rf.num(), rf.den());
  if (g.is_one()) return rf;
  return RationalFunction(divide_exact(rf.num(), g), divide_exact(rf.den(), g));
}

/// Replaces x_var by `replacement` in one pass. With replacement R = Rn/Rd and
/// F = N/D, both N and D are homogenized by powers of Rd so no nested
/// fractions appear.
inline RationalFunction substitute(const RationalFunction& rf, int var, const RationalFunction& replacement) {
  if (rf.modulus() != replacement.modulus() || rf.variable_count() != replacement.variable_count()) {
    throw Error(ErrorCode::InvalidInput, "substitution across different rings");
  }
  if (var < 0 || var >= rf.variable_count()) throw Error(ErrorCode::InvalidInput, "variable index out of range");
  const Residue p = rf.modulus();
  const int n = rf.variable_count();
  const Polynomial& rn = replacement.num();
  const Polynomial& rd = replacement.den();

  auto homogenize = [&](const Polynomial& a, std::uint32_t top) {
    Polynomial out(p, n);
    std::vector<Polynomial> rn_pows{Polynomial::constant(p, n, 1)};
    for (const auto& [d, c] : a.coefficients_in(var)) {
      while (rn_pows.size() <= d) rn_pows.push_back(rn_pows.back() * rn);
      out = out + c * rn_pows[d] * rd.pow(top - d);
    }
    return out;
  };

  const std::uint32_t dn = rf.num().degree_in(var), dd = rf.den().degree_in(var);
  Polynomial num = homogenize(rf.num(), dn);
  Polynomial den = homogenize(rf.den(), dd);
  if (dd > dn) num = num * rd.pow(dd - dn);
  if (dn > dd) den = den * rd.pow(dn - dd);
  if (den.is_zero()) throw Error(ErrorCode::DegenerateSubstitution, "denominator vanishes identically");
  return RationalFunction(std::move(num), std::move(den));
}

namespace detail {

/// Evaluates with per-variable power tables built on demand.
template <class V, class Mul, class Scale, class Add>
V evaluate_polynomial(const Polynomial& poly, const std::vector<V>& point, const V& zero, const V& one, Mul mul,
                      Scale scale, Add add) {
  const int n = poly.variable_count();
  std::vector<std::vector<V>> powers(n);
  V acc = zero;
  for (const auto& t : poly.terms()) {
    V term = one;
    for (int i = 0; i < n; ++i) {
      const std::uint32_t e = t.exps[i];
      if (e == 0) continue;
      auto& table = powers[i];
      if (table.empty()) table.push_back(point[i]);
      while (table.size() < e) table.push_back(mul(table.back(), point[i]));
      term = mul(term, table[e - 1]);
    }
    acc = add(acc, scale(term, t.coef));
  }
  return acc;
}

}  // namespace detail

inline FieldElement evaluate(const Polynomial& poly, const std::vector<FieldElement>& point,
                             const FieldParams& params) {
  if (poly.modulus() != params.p) throw Error(ErrorCode::InvalidInput, "polynomial characteristic differs from field");
  if (static_cast<int>(point.size()) != poly.variable_count()) {
    throw Error(ErrorCode::InvalidInput, "evaluation point has wrong length");
  }
  return detail::evaluate_polynomial<FieldElement>(
      poly, point, ext_zero(params), ext_one(params),
      [&](const FieldElement& a, const FieldElement& b) { return ext_mul(a, b, params); },
      [&](const FieldElement& a, Residue c) { return ext_scale(a, c, params); },
      [&](const FieldElement& a, const FieldElement& b) { return ext_add(a, b, params); });
}

/// num(point) / den(point) in GF(p^r).
inline FieldElement evaluate(const RationalFunction& rf, const std::vector<FieldElement>& point,
                             const FieldParams& params) {
  const FieldElement den = evaluate(rf.den(), point, params);
  if (is_zero(den)) throw Error(ErrorCode::DenominatorVanishes, "denominator vanishes at the evaluation point");
  return ext_div(evaluate(rf.num(), point, params), den, params);
}

inline Residue evaluate(const Polynomial& poly, const std::vector<Residue>& point) {
  const Residue p = poly.modulus();
  if (static_cast<int>(point.size()) != poly.variable_count()) {
    throw Error(ErrorCode::InvalidInput, "evaluation point has wrong length");
  }
  return detail::evaluate_polynomial<Residue>(
      poly, point, 0, 1 % p, [p](Residue a, Residue b) { return mul_mod(a, b, p); },
      [p](Residue a, Residue c) { return mul_mod(a, c, p); }, [p](Residue a, Residue b) { return add_mod(a, b, p); });
}

/// Evaluation in the prime field Z_p of the function's own characteristic.
inline Residue evaluate(const RationalFunction& rf, const std::vector<Residue>& point) {
  const Residue den = evaluate(rf.den(), point);
  if (den == 0) throw Error(ErrorCode::DenominatorVanishes, "denominator vanishes at the evaluation point");
  return mul_mod(evaluate(rf.num(), point), fp_inv(den, rf.modulus()), rf.modulus());
}

/// Exponents of the monomial denominator of a cluster variable. The initial
/// variable x_i reports -e_i.
inline std::vector<long> denominator_vector(const RationalFunction& rf) {
  const RationalFunction reduced = reduce_fraction(rf);
  const int n = reduced.variable_count();
  std::vector<long> out(n, 0);
  const Polynomial& num = reduced.num();
  if (reduced.is_polynomial() && num.is_monomial() && num.leading_term().coef == 1 &&
      total_degree(num.leading_term().exps) == 1) {
    for (int i = 0; i < n; ++i) out[i] = -static_cast<long>(num.leading_term().exps[i]);
    return out;
  }
  if (!reduced.den().is_monomial()) {
    throw Error(ErrorCode::NotClusterShaped, "denominator " + reduced.den().to_string() + " is not a monomial");
  }
  for (int i = 0; i < n; ++i) out[i] = static_cast<long>(reduced.den().leading_term().exps[i]);
  return out;
}

namespace detail {

/// Recursive descent over
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
///   unary  := '-' unary | power
///   power  := atom ('^' integer)?
///   atom   := integer | 'x' integer | '(' expr ')'
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, Residue p, int nvars) : text_(text), p_(p), n_(nvars) {}

  RationalFunction parse() {
    RationalFunction out = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return out;
  }

 private:
  RationalFunction expr() {
    RationalFunction acc = term();
    while (true) {
      skip_space();
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RationalFunction term() {
    RationalFunction acc = unary();
    while (true) {
      skip_space();
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        RationalFunction d = unary();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc = acc / d;
      } else if (pos_ < text_.size() && starts_atom(text_[pos_])) {
        acc = acc * unary();
      } else {
        return acc;
      }
    }
  }

  RationalFunction unary() {
    skip_space();
    if (accept('-')) return -unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = atom();
    skip_space();
    if (accept('^')) {
      skip_space();
      const std::uint64_t e = integer();
      if (e > 1000000) fail("exponent too large");
      base = base.pow(static_cast<std::uint32_t>(e));
    }
    return base;
  }

  RationalFunction atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction inner = expr();
      skip_space();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x') {
      const std::size_t at = pos_++;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected variable index");
      const std::uint64_t index = integer();
      if (index >= static_cast<std::uint64_t>(n_)) {
        pos_ = at;
        fail("variable index out of range");
      }
      return RationalFunction::variable(p_, n_, static_cast<int>(index));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RationalFunction::constant(p_, n_, integer_mod_p());
    fail("unexpected character");
  }

  static bool starts_atom(char c) { return c == '(' || c == 'x' || std::isdigit(static_cast<unsigned char>(c)); }

  std::uint64_t integer() {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (UINT64_MAX - 9) / 10) fail("integer too large");
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
    }
    if (pos_ == start) fail("expected integer");
    return v;
  }

  Residue integer_mod_p() {
    const std::size_t start = pos_;
    Residue v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = add_mod(mul_mod(v, 10 % p_, p_), static_cast<Residue>(text_[pos_++] - '0') % p_, p_);
    }
    if (pos_ == start) fail("expected integer");
    return v;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(std::to_string(pos_), what); }

  std::string_view text_;
  Residue p_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses text such as "(x0*x2 + x1 + 1)/(x1*x2)" or "(x0x2+1)/x1" over Z_p
/// in the variables x0 .. x{nvars-1}. Accepts everything to_string emits.
inline RationalFunction parse_rational(std::string_view text, Residue p, int nvars) {
  return detail::ExpressionParser(text, p, nvars).parse();
}

inline Polynomial parse_polynomial(std::string_view text, Residue p, int nvars) {
  RationalFunction rf = parse_rational(text, p, nvars);
  if (!rf.den().is_constant()) throw ParseError("0", "expression is not a polynomial");
  return rf.num();  // a constant denominator is 1 after normalization
}

}  // namespace clustercrypt
