#pragma once

// Sparse multivariate polynomials over Z_p.
//
// Terms are kept sorted by graded lexicographic order with x0 the highest
// variable, leading term first, and never store a zero coefficient.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "clustercrypt/error.hpp"
#include "clustercrypt/modular.hpp"

namespace clustercrypt {

using Exponents = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Exponents& e) {
  std::uint64_t d = 0;
  for (auto x : e) d += x;
  return d;
}

/// Strict "a comes before b" in descending graded lexicographic order.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

struct Term {
  Exponents exps;
  Residue coef;

  friend bool operator==(const Term&, const Term&) = default;
};

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Residue p, int nvars) : p_(p), nvars_(nvars) {}

  static Polynomial constant(Residue p, int nvars, Residue c) {
    Polynomial out(p, nvars);
    if (c % p != 0) out.terms_.push_back({Exponents(nvars, 0), c % p});
    return out;
  }

  static Polynomial variable(Residue p, int nvars, int index) {
    if (index < 0 || index >= nvars) throw Error(ErrorCode::InvalidInput, "variable index out of range");
    Exponents e(nvars, 0);
    e[index] = 1;
    return monomial(p, e, 1);
  }

  static Polynomial monomial(Residue p, Exponents exps, Residue c) {
    Polynomial out(p, static_cast<int>(exps.size()));
    if (c % p != 0) out.terms_.push_back({std::move(exps), c % p});
    return out;
  }

  /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
  static Polynomial from_terms(Residue p, int nvars, std::vector<Term> terms) {
    std::map<Exponents, Residue, GrlexGreater> acc;
    for (auto& t : terms) {
      if (static_cast<int>(t.exps.size()) != nvars) throw Error(ErrorCode::InvalidInput, "exponent length mismatch");
      auto& slot = acc[t.exps];
      slot = add_mod(slot, t.coef % p, p);
    }
    return from_map(p, nvars, acc);
  }

  Residue modulus() const { return p_; }
  int variable_count() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].exps) == 0); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const { return is_constant() && !is_zero() && terms_[0].coef == 1; }

  const Term& leading_term() const { return terms_.front(); }

  Residue constant_term() const {
    if (!terms_.empty() && total_degree(terms_.back().exps) == 0) return terms_.back().coef;
    return 0;
  }

  std::uint32_t degree_in(int v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exps[v]);
    return d;
  }

  bool involves(int v) const { return degree_in(v) > 0; }

  /// Minimum exponent of each variable over all terms.
  Exponents monomial_content() const {
    if (terms_.empty()) return Exponents(nvars_, 0);
    Exponents m = terms_.front().exps;
    for (const auto& t : terms_)
      for (int i = 0; i < nvars_; ++i) m[i] = std::min(m[i], t.exps[i]);
    return m;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.p_ == b.p_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial operator-() const {
    Polynomial out = *this;
    for (auto& t : out.terms_) t.coef = neg_mod(t.coef, p_);
    return out;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_compatible(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.p_, a.nvars_);
    if (b.terms_.size() == 1) return a.times_term(b.terms_[0]);
    if (a.terms_.size() == 1) return b.times_term(a.terms_[0]);
    std::map<Exponents, Residue, GrlexGreater> acc;
    Exponents e(a.nvars_);
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        for (int i = 0; i < a.nvars_; ++i) e[i] = ta.exps[i] + tb.exps[i];
        auto& slot = acc[e];
        slot = add_mod(slot, mul_mod(ta.coef, tb.coef, a.p_), a.p_);
      }
    }
    return from_map(a.p_, a.nvars_, acc);
  }

  Polynomial scaled(Residue c) const { return times_term({Exponents(nvars_, 0), c % p_}); }

  Polynomial times_term(const Term& t) const {
    Polynomial out(p_, nvars_);
    if (t.coef % p_ == 0) return out;
    out.terms_.reserve(terms_.size());
    // Multiplying by a monomial preserves a monomial order.
    for (const auto& mine : terms_) {
      Term r{mine.exps, mul_mod(mine.coef, t.coef, p_)};
      for (int i = 0; i < nvars_; ++i) r.exps[i] += t.exps[i];
      out.terms_.push_back(std::move(r));
    }
    return out;
  }

  Polynomial pow(std::uint32_t e) const {
    Polynomial result = constant(p_, nvars_, 1);
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1U) result = result * base;
      e >>= 1U;
      if (e) base = base * base;
    }
    return result;
  }

  /// Scales so the leading coefficient is 1 (zero stays zero).
  Polynomial monic() const {
    if (terms_.empty() || terms_.front().coef == 1) return *this;
    return scaled(fp_inv(terms_.front().coef, p_));
  }

  /// Divides every term by the monomial x^m (must divide each term).
  Polynomial divided_by_monomial(const Exponents& m) const {
    Polynomial out = *this;
    for (auto& t : out.terms_)
      for (int i = 0; i < nvars_; ++i) t.exps[i] -= m[i];
    return out;
  }

  /// Coefficients when viewed as a polynomial in x_v: degree -> coefficient
  /// (which no longer involves x_v).
  std::map<std::uint32_t, Polynomial> coefficients_in(int v) const {
    std::map<std::uint32_t, std::vector<Term>> buckets;
    for (const auto& t : terms_) {
      Term stripped = t;
      stripped.exps[v] = 0;
      buckets[t.exps[v]].push_back(std::move(stripped));
    }
    std::map<std::uint32_t, Polynomial> out;
    for (auto& [d, ts] : buckets) {
      Polynomial c(p_, nvars_);
      c.terms_ = std::move(ts);
      std::sort(c.terms_.begin(), c.terms_.end(),
                [](const Term& a, const Term& b) { return GrlexGreater{}(a.exps, b.exps); });
      out.emplace(d, std::move(c));
    }
    return out;
  }

  std::string to_string() const;

 private:
  static void check_compatible(const Polynomial& a, const Polynomial& b) {
    if (a.p_ != b.p_ || a.nvars_ != b.nvars_) {
      throw Error(ErrorCode::InvalidInput, "polynomials over different rings");
    }
  }

  static Polynomial from_map(Residue p, int nvars, const std::map<Exponents, Residue, GrlexGreater>& acc) {
    Polynomial out(p, nvars);
    out.terms_.reserve(acc.size());
    for (const auto& [e, c] : acc)
      if (c != 0) out.terms_.push_back({e, c});
    return out;
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    check_compatible(a, b);
    Polynomial out(a.p_, a.nvars_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    const GrlexGreater before;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && before(a.terms_[i].exps, b.terms_[j].exps))) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || before(b.terms_[j].exps, a.terms_[i].exps)) {
        Term t = b.terms_[j++];
        if (subtract) t.coef = neg_mod(t.coef, a.p_);
        out.terms_.push_back(std::move(t));
      } else {
        const Residue c = subtract ? sub_mod(a.terms_[i].coef, b.terms_[j].coef, a.p_)
                                   : add_mod(a.terms_[i].coef, b.terms_[j].coef, a.p_);
        if (c != 0) out.terms_.push_back({a.terms_[i].exps, c});
        ++i;
        ++j;
      }
    }
    return out;
  }

  Residue p_ = 2;
  int nvars_ = 0;
  std::vector<Term> terms_;
};

inline std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    const bool constant_term = total_degree(t.exps) == 0;
    bool need_star = false;
    if (t.coef != 1 || constant_term) {
      os << t.coef;
      need_star = true;
    }
    for (int i = 0; i < nvars_; ++i) {
      if (t.exps[i] == 0) continue;
      if (need_star) os << '*';
      os << 'x' << i;
      if (t.exps[i] > 1) os << '^' << t.exps[i];
      need_star = true;
    }
  }
  return os.str();
}

/// Quotient a / b when b divides a exactly; nullopt otherwise.
inline std::optional<Polynomial> try_divide(Polynomial a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::NotDivisible, "division by the zero polynomial");
  const Residue p = a.modulus();
  const int n = a.variable_count();
  if (b.is_constant()) return a.scaled(fp_inv(b.leading_term().coef, p));
  const Term& lb = b.leading_term();
  const Residue lb_inv = fp_inv(lb.coef, p);
  std::vector<Term> quotient;
  while (!a.is_zero()) {
    const Term& la = a.leading_term();
    Term q{Exponents(n), mul_mod(la.coef, lb_inv, p)};
    for (int i = 0; i < n; ++i) {
      if (la.exps[i] < lb.exps[i]) return std::nullopt;
      q.exps[i] = la.exps[i] - lb.exps[i];
    }
    a = a - b.times_term(q);
    quotient.push_back(std::move(q));
  }
  return Polynomial::from_terms(p, n, std::move(quotient));
}

inline Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  auto q = try_divide(a, b);
  if (!q) throw Error(ErrorCode::NotDivisible, "(" + a.to_string() + ") is not divisible by (" + b.to_string() + ")");
  return *q;
}

inline Polynomial gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

inline Polynomial from_coefficients(const std::map<std::uint32_t, Polynomial>& coeffs, int v, Residue p, int n) {
  Polynomial out(p, n);
  for (const auto& [d, c] : coeffs) {
    Exponents e(n, 0);
    e[v] = d;
    out = out + c.times_term({e, 1});
  }
  return out;
}

inline Polynomial content_in(const Polynomial& a, int v) {
  Polynomial g(a.modulus(), a.variable_count());
  for (const auto& [d, c] : a.coefficients_in(v)) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

inline Polynomial primitive_part_in(const Polynomial& a, int v) {
  if (a.is_zero()) return a;
  return divide_exact(a, content_in(a, v));
}

/// Pseudo-remainder of a by b as polynomials in x_v.
inline Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, int v) {
  const std::uint32_t db = b.degree_in(v);
  const auto b_coeffs = b.coefficients_in(v);
  const Polynomial& lb = b_coeffs.rbegin()->second;
  while (!a.is_zero() && a.degree_in(v) >= db) {
    const std::uint32_t da = a.degree_in(v);
    const Polynomial la = a.coefficients_in(v).rbegin()->second;
    Exponents shift(a.variable_count(), 0);
    shift[v] = da - db;
    a = lb * a - (la * b).times_term({shift, 1});
  }
  return a;
}

inline Polynomial monomial_gcd(const Polynomial& mono, const Polynomial& other) {
  Exponents m = mono.leading_term().exps;
  const Exponents c = other.monomial_content();
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], c[i]);
  return Polynomial::monomial(mono.modulus(), m, 1);
}

}  // namespace detail

/// Monic greatest common divisor. Recursive in the variables: contents are
/// split off with respect to a main variable and the primitive parts go
/// through a primitive pseudo-remainder sequence.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const Residue p = a.modulus();
  const int n = a.variable_count();
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(p, n, 1);
  if (a.is_monomial()) return detail::monomial_gcd(a, b);
  if (b.is_monomial()) return detail::monomial_gcd(b, a);

  int shared = -1, any = -1;
  for (int v = 0; v < n; ++v) {
    const bool in_a = a.involves(v), in_b = b.involves(v);
    if (in_a && in_b && shared < 0) shared = v;
    if ((in_a || in_b) && any < 0) any = v;
  }
  if (shared < 0) {
    // The main variable occurs on one side only, so the gcd divides every
    // coefficient of that side.
    const int v = any;
    return a.involves(v) ? gcd(detail::content_in(a, v), b) : gcd(a, detail::content_in(b, v));
  }

  const int v = shared;
  const Polynomial ca = detail::content_in(a, v), cb = detail::content_in(b, v);
  const Polynomial content = gcd(ca, cb);
  Polynomial f = divide_exact(a, ca), g = divide_exact(b, cb);
  if (f.degree_in(v) < g.degree_in(v)) std::swap(f, g);
  while (true) {
    Polynomial r = detail::pseudo_remainder(f, g, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      g = Polynomial::constant(p, n, 1);
      break;
    }
    f = std::move(g);
    g = detail::primitive_part_in(r, v);
  }
  return (content * detail::primitive_part_in(g, v)).monic();
}

}  // namespace clustercrypt
