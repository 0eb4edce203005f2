#pragma once

#include <optional>
#include <span>
#include <vector>

#include "clustercrypt/rational_function.hpp"
#include "clustercrypt/seed.hpp"

namespace clustercrypt {

using SymbolicSeed = Seed<RationalFunction>;

/// Rational functions over Z_p in a fixed number of variables, as a mutation
/// ring. Division first tries to cancel the divisor's numerator exactly and
/// only falls back to a gcd when that fails.
class RationalRing {
 public:
  using value_type = RationalFunction;

  RationalRing(Residue p, int nvars) : p_(p), n_(nvars) {}

  RationalFunction one() const { return RationalFunction::constant(p_, n_, 1); }
  bool is_zero(const RationalFunction& a) const { return a.is_zero(); }
  RationalFunction add(const RationalFunction& a, const RationalFunction& b) const { return a + b; }
  RationalFunction mul(const RationalFunction& a, const RationalFunction& b) const { return a * b; }

  RationalFunction divide(const RationalFunction& a, const RationalFunction& b) const {
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero rational function");
    const Polynomial top = a.num() * b.den();
    if (b.num().is_monomial()) return RationalFunction(top, a.den() * b.num());
    if (auto q = try_divide(top, b.num())) return RationalFunction(*q, a.den());
    return reduce_fraction(RationalFunction(top, a.den() * b.num()));
  }

 private:
  Residue p_;
  int n_;
};

/// Seed (x_0, ..., x_{n-1}; B) over Z_p.
inline SymbolicSeed initial_symbolic_seed(const ExchangeMatrix& b, Residue p) {
  SymbolicSeed seed{{}, b};
  for (int i = 0; i < b.rank(); ++i) seed.values.push_back(RationalFunction::variable(p, b.rank(), i));
  return seed;
}

inline SymbolicSeed rf_mutate(const SymbolicSeed& seed, int k, int step = 0) {
  const RationalFunction& any = seed.values.at(0);
  return mutate(seed, k, RationalRing(any.modulus(), any.variable_count()), step);
}

inline SymbolicSeed rf_apply_sequence(SymbolicSeed seed, std::span<const int> ks) {
  for (std::size_t i = 0; i < ks.size(); ++i) seed = rf_mutate(seed, ks[i], static_cast<int>(i));
  return seed;
}

}  // namespace clustercrypt
