#pragma once

#include <cstdint>

#include "clustercrypt/error.hpp"

namespace clustercrypt {

using Residue = std::uint64_t;

namespace detail {
using u128 = unsigned __int128;
}

inline Residue add_mod(Residue a, Residue b, Residue p) {
  Residue s = a + b;
  if (s < a || s >= p) s -= p;
  return s;
}

inline Residue sub_mod(Residue a, Residue b, Residue p) { return a >= b ? a - b : a + (p - b); }

inline Residue neg_mod(Residue a, Residue p) { return a == 0 ? 0 : p - a; }

inline Residue mul_mod(Residue a, Residue b, Residue p) {
  return static_cast<Residue>(static_cast<detail::u128>(a) * b % p);
}

inline Residue pow_mod(Residue base, std::uint64_t exp, Residue p) {
  Residue result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1U;
  }
  return result;
}

/// Inverse of a modulo prime p by the extended Euclidean algorithm.
inline Residue fp_inv(Residue a, Residue p) {
  a %= p;
  if (a == 0) throw Error(ErrorCode::NonInvertible, "zero has no inverse modulo " + std::to_string(p));
  // Signed 128-bit Bezout coefficients; |t| stays below p.
  __int128 t = 0, new_t = 1;
  __int128 r = p, new_r = a;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw Error(ErrorCode::NonInvertible, "modulus is not prime");
  if (t < 0) t += p;
  return static_cast<Residue>(t);
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    Residue x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace clustercrypt
