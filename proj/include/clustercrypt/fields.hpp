#pragma once

// Arithmetic in Z_p and GF(p^r) = Z_p[x]/<f>, plus the integer codecs used by
// the cipher. Elements are coordinate vectors (a_0, ..., a_{r-1}) in the basis
// {1, alpha, ..., alpha^{r-1}} where alpha is the class of x.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "clustercrypt/error.hpp"
#include "clustercrypt/modular.hpp"

namespace clustercrypt {

namespace upoly {

// Dense univariate polynomials over Z_p, ascending coefficients, no trailing zeros.
using Dense = std::vector<Residue>;

inline void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Dense& a) { return static_cast<int>(a.size()) - 1; }

inline Dense sub(Dense a, const Dense& b, Residue p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = sub_mod(a[i], b[i], p);
  trim(a);
  return a;
}

inline Dense mul(const Dense& a, const Dense& b, Residue p) {
  if (a.empty() || b.empty()) return {};
  Dense out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = add_mod(out[i + j], mul_mod(a[i], b[j], p), p);
  }
  trim(out);
  return out;
}

/// Quotient and remainder of a by nonzero b.
inline std::pair<Dense, Dense> divmod(Dense a, const Dense& b, Residue p) {
  trim(a);
  const int db = degree(b);
  if (db < 0) throw Error(ErrorCode::NonInvertible, "polynomial division by zero");
  const Residue lead_inv = fp_inv(b.back(), p);
  Dense q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    const Residue c = mul_mod(a.back(), lead_inv, p);
    q[shift] = c;
    for (int i = 0; i <= db; ++i) a[shift + i] = sub_mod(a[shift + i], mul_mod(c, b[i], p), p);
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline Dense mod(const Dense& a, const Dense& m, Residue p) { return divmod(a, m, p).second; }

inline Dense gcd(Dense a, Dense b, Residue p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Dense r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Residue inv = fp_inv(a.back(), p);
    for (auto& c : a) c = mul_mod(c, inv, p);
  }
  return a;
}

inline Dense mulmod(const Dense& a, const Dense& b, const Dense& m, Residue p) { return mod(mul(a, b, p), m, p); }

inline Dense powmod(Dense base, std::uint64_t exp, const Dense& m, Residue p) {
  Dense result{1};
  result = mod(result, m, p);
  base = mod(base, m, p);
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m, p);
    base = mulmod(base, base, m, p);
    exp >>= 1U;
  }
  return result;
}

}  // namespace upoly

/// Description of GF(p^r): prime p, degree r and the monic irreducible modulus f
/// (ascending coefficients, length r + 1).
struct FieldParams {
  Residue p = 2;
  int r = 1;
  std::vector<Residue> f{0, 1};

  /// Validates every invariant (primality, monic, reduced, irreducible).
  static FieldParams make(Residue p, std::vector<Residue> f);

  mpz_class order() const {
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(r));
    return q;
  }

  friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

/// f irreducible over Z_p. Uses Rabin's criterion: x^(p^n) = x mod f and
/// gcd(x^(p^(n/q)) - x, f) = 1 for every prime q dividing n = deg f.
inline bool is_irreducible(std::vector<Residue> f, Residue p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidParams, "modulus " + std::to_string(p) + " is not prime");
  for (auto& c : f) c %= p;
  upoly::trim(f);
  const int n = upoly::degree(f);
  if (n < 1) throw Error(ErrorCode::InvalidDegree, "irreducibility needs degree >= 1");
  if (n == 1) return true;
  const Residue inv = fp_inv(f.back(), p);
  for (auto& c : f) c = mul_mod(c, inv, p);

  const upoly::Dense x = upoly::mod({0, 1}, f, p);
  std::vector<upoly::Dense> frobenius{x};  // frobenius[i] = x^(p^i) mod f
  for (int i = 1; i <= n; ++i) frobenius.push_back(upoly::powmod(frobenius.back(), p, f, p));
  if (frobenius[n] != x) return false;

  int m = n;
  for (int q = 2; q <= m; ++q) {
    if (m % q != 0) continue;
    while (m % q == 0) m /= q;
    const upoly::Dense g = upoly::gcd(upoly::sub(frobenius[n / q], x, p), f, p);
    if (upoly::degree(g) > 0) return false;
  }
  return true;
}

inline FieldParams FieldParams::make(Residue p, std::vector<Residue> f) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidParams, "p = " + std::to_string(p) + " is not prime");
  if (p >= (Residue{1} << 62)) throw Error(ErrorCode::InvalidParams, "p must fit in 62 bits");
  if (f.size() < 2) throw Error(ErrorCode::InvalidDegree, "modulus must have degree >= 1");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] >= p) {
      throw Error(ErrorCode::InvalidParams, "coefficient f[" + std::to_string(i) + "] not reduced mod p");
    }
  }
  if (f.back() != 1) throw Error(ErrorCode::InvalidParams, "modulus must be monic");
  if (!is_irreducible(f, p)) throw Error(ErrorCode::InvalidParams, "modulus is reducible over Z_p");
  FieldParams out;
  out.p = p;
  out.r = static_cast<int>(f.size()) - 1;
  out.f = std::move(f);
  return out;
}

/// First monic irreducible polynomial of degree r over Z_p, in the order that
/// reads the lower coefficients (f_0, ..., f_{r-1}) as a base-p counter.
inline std::vector<Residue> find_irreducible(Residue p, int r) {
  if (r < 1) throw Error(ErrorCode::InvalidDegree, "degree must be >= 1");
  std::vector<Residue> f(static_cast<std::size_t>(r) + 1, 0);
  f[static_cast<std::size_t>(r)] = 1;
  while (true) {
    if (f[0] != 0 || r == 1) {
      if (is_irreducible(f, p)) return f;
    }
    std::size_t i = 0;
    while (i < static_cast<std::size_t>(r) && ++f[i] == p) f[i++] = 0;
    if (i == static_cast<std::size_t>(r)) break;
  }
  throw Error(ErrorCode::InvalidParams, "no irreducible polynomial found");
}

struct FieldElement {
  std::vector<Residue> coords;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

inline bool is_valid_element(const FieldElement& a, const FieldParams& params) {
  return a.coords.size() == static_cast<std::size_t>(params.r) &&
         std::all_of(a.coords.begin(), a.coords.end(), [&](Residue c) { return c < params.p; });
}

inline FieldElement ext_zero(const FieldParams& params) {
  return {std::vector<Residue>(static_cast<std::size_t>(params.r), 0)};
}

inline FieldElement ext_one(const FieldParams& params) {
  FieldElement one = ext_zero(params);
  one.coords[0] = 1 % params.p;
  return one;
}

inline bool is_zero(const FieldElement& a) {
  return std::all_of(a.coords.begin(), a.coords.end(), [](Residue c) { return c == 0; });
}

inline FieldElement ext_add(const FieldElement& a, const FieldElement& b, const FieldParams& params) {
  FieldElement out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] = add_mod(a.coords[i], b.coords[i], params.p);
  return out;
}

inline FieldElement ext_sub(const FieldElement& a, const FieldElement& b, const FieldParams& params) {
  FieldElement out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] = sub_mod(a.coords[i], b.coords[i], params.p);
  return out;
}

inline FieldElement ext_scale(const FieldElement& a, Residue c, const FieldParams& params) {
  FieldElement out = a;
  for (auto& x : out.coords) x = mul_mod(x, c % params.p, params.p);
  return out;
}

inline FieldElement ext_mul(const FieldElement& a, const FieldElement& b, const FieldParams& params) {
  const std::size_t r = static_cast<std::size_t>(params.r);
  const Residue p = params.p;
  std::vector<Residue> prod(2 * r - 1, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (a.coords[i] == 0) continue;
    for (std::size_t j = 0; j < r; ++j) {
      prod[i + j] = add_mod(prod[i + j], mul_mod(a.coords[i], b.coords[j], p), p);
    }
  }
  // alpha^d = -(f_0 + ... + f_{r-1} alpha^{r-1}) alpha^{d-r}
  for (std::size_t d = prod.size(); d-- > r;) {
    const Residue c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (std::size_t i = 0; i < r; ++i) prod[d - r + i] = sub_mod(prod[d - r + i], mul_mod(c, params.f[i], p), p);
  }
  prod.resize(r);
  return {std::move(prod)};
}

/// Multiplicative inverse via the extended Euclidean algorithm on Z_p[x] mod f.
inline FieldElement ext_inv(const FieldElement& a, const FieldParams& params) {
  const Residue p = params.p;
  upoly::Dense r0 = params.f, r1 = a.coords;
  upoly::trim(r1);
  if (r1.empty()) throw Error(ErrorCode::NonInvertible, "zero element has no inverse");
  upoly::Dense s0{}, s1{1};
  while (!r1.empty()) {
    auto [q, rem] = upoly::divmod(r0, r1, p);
    upoly::Dense s2 = upoly::sub(s0, upoly::mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant because f is irreducible.
  const Residue scale = fp_inv(r0[0], p);
  FieldElement out = ext_zero(params);
  for (std::size_t i = 0; i < s0.size() && i < out.coords.size(); ++i) out.coords[i] = mul_mod(s0[i], scale, p);
  return out;
}

inline FieldElement ext_div(const FieldElement& a, const FieldElement& b, const FieldParams& params) {
  return ext_mul(a, ext_inv(b, params), params);
}

inline FieldElement ext_pow(FieldElement base, mpz_class exp, const FieldParams& params) {
  FieldElement result = ext_one(params);
  while (exp > 0) {
    if (mpz_odd_p(exp.get_mpz_t())) result = ext_mul(result, base, params);
    base = ext_mul(base, base, params);
    exp >>= 1;
  }
  return result;
}

/// alpha^i for i >= 0.
inline FieldElement ext_alpha_pow(int i, const FieldParams& params) {
  FieldElement alpha = ext_zero(params);
  if (params.r == 1) {
    alpha.coords[0] = neg_mod(params.f[0], params.p);
  } else {
    alpha.coords[1] = 1;
  }
  return ext_pow(alpha, i, params);
}

/// Canonical integer sum a_i p^i.
inline mpz_class element_to_int(const FieldElement& a, const FieldParams& params) {
  mpz_class value = 0;
  for (std::size_t i = a.coords.size(); i-- > 0;) {
    value *= static_cast<unsigned long>(params.p);
    value += static_cast<unsigned long>(a.coords[i]);
  }
  return value;
}

inline std::string element_to_decimal(const FieldElement& a, const FieldParams& params) {
  return element_to_int(a, params).get_str();
}

inline FieldElement int_to_element(mpz_class n, const FieldParams& params) {
  if (n < 0 || n >= params.order()) {
    throw Error(ErrorCode::OutOfRange, n.get_str() + " is outside [0, p^r)");
  }
  FieldElement out = ext_zero(params);
  const mpz_class p = static_cast<unsigned long>(params.p);
  for (auto& c : out.coords) {
    mpz_class digit = n % p;
    c = digit.get_ui();
    n /= p;
  }
  return out;
}

/// Adapter exposing GF(p^r) to the generic seed mutation engine.
class ExtensionField {
 public:
  using value_type = FieldElement;

  explicit ExtensionField(FieldParams params) : params_(std::move(params)) {}

  const FieldParams& params() const { return params_; }
  FieldElement one() const { return ext_one(params_); }
  bool is_zero(const FieldElement& a) const { return clustercrypt::is_zero(a); }
  FieldElement add(const FieldElement& a, const FieldElement& b) const { return ext_add(a, b, params_); }
  FieldElement mul(const FieldElement& a, const FieldElement& b) const { return ext_mul(a, b, params_); }
  FieldElement divide(const FieldElement& a, const FieldElement& b) const { return ext_div(a, b, params_); }

 private:
  FieldParams params_;
};

/// The prime field Z_p as a mutation ring; used for fingerprinting seeds.
class PrimeField {
 public:
  using value_type = Residue;

  explicit PrimeField(Residue p) : p_(p) {}

  Residue modulus() const { return p_; }
  Residue one() const { return 1 % p_; }
  bool is_zero(Residue a) const { return a == 0; }
  Residue add(Residue a, Residue b) const { return add_mod(a, b, p_); }
  Residue mul(Residue a, Residue b) const { return mul_mod(a, b, p_); }
  Residue divide(Residue a, Residue b) const { return mul_mod(a, fp_inv(b, p_), p_); }

 private:
  Residue p_;
};

}  // namespace clustercrypt
