#pragma once

#include <concepts>
#include <cstdlib>
#include <optional>
#include <span>
#include <vector>

#include "clustercrypt/error.hpp"
#include "clustercrypt/exchange_matrix.hpp"
#include "clustercrypt/fields.hpp"

namespace clustercrypt {

/// A cluster (ordered values) paired with an exchange matrix of the same rank.
template <class T>
struct Seed {
  std::vector<T> values;
  ExchangeMatrix matrix;

  int rank() const { return matrix.rank(); }

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// Arithmetic needed to evaluate an exchange relation.
template <class R>
concept MutationRing = requires(const R& ring, const typename R::value_type& a) {
  { ring.one() } -> std::convertible_to<typename R::value_type>;
  { ring.is_zero(a) } -> std::convertible_to<bool>;
  { ring.add(a, a) } -> std::convertible_to<typename R::value_type>;
  { ring.mul(a, a) } -> std::convertible_to<typename R::value_type>;
  { ring.divide(a, a) } -> std::convertible_to<typename R::value_type>;
};

template <MutationRing R>
typename R::value_type ring_pow(const R& ring, const typename R::value_type& base, long exp) {
  auto result = ring.one();
  for (long i = 0; i < exp; ++i) result = ring.mul(result, base);
  return result;
}

/// prod_{b_kj > 0} v_j^{b_kj} + prod_{b_kj < 0} v_j^{-b_kj}, reading row k.
template <MutationRing R>
typename R::value_type exchange_binomial(const R& ring, const std::vector<typename R::value_type>& values,
                                         const ExchangeMatrix& b, int k) {
  auto positive = ring.one();
  auto negative = ring.one();
  for (int j = 0; j < b.rank(); ++j) {
    const long e = b(k, j);
    if (e > 0) positive = ring.mul(positive, ring_pow(ring, values[j], e));
    if (e < 0) negative = ring.mul(negative, ring_pow(ring, values[j], -e));
  }
  return ring.add(positive, negative);
}

/// Seed mutation in direction k: only position k of the cluster changes.
/// `step` is reported in the DivisionByZero error when v_k vanishes.
template <MutationRing R>
Seed<typename R::value_type> mutate(const Seed<typename R::value_type>& seed, int k, const R& ring, int step = 0) {
  check_vertex(k, seed.rank());
  if (static_cast<int>(seed.values.size()) != seed.rank()) {
    throw Error(ErrorCode::InvalidInput, "cluster size differs from matrix rank");
  }
  if (ring.is_zero(seed.values[k])) {
    throw MutationError(ErrorCode::DivisionByZero, k, step, "cluster variable to exchange is zero");
  }
  Seed<typename R::value_type> out{seed.values, matrix_mutate(seed.matrix, k)};
  out.values[k] = ring.divide(exchange_binomial(ring, seed.values, seed.matrix, k), seed.values[k]);
  return out;
}

/// Applies mutations left to right, failing on the first zero denominator.
template <MutationRing R>
Seed<typename R::value_type> apply_sequence(Seed<typename R::value_type> seed, std::span<const int> ks,
                                            const R& ring) {
  for (std::size_t i = 0; i < ks.size(); ++i) seed = mutate(seed, ks[i], ring, static_cast<int>(i));
  return seed;
}

using NumericSeed = Seed<FieldElement>;

inline NumericSeed numeric_mutate(const NumericSeed& seed, int k, const FieldParams& params, int step = 0) {
  return mutate(seed, k, ExtensionField(params), step);
}

/// Permutation pi with other.values[i] == seed.values[pi[i]] and
/// other.matrix(i, j) == seed.matrix(pi[i], pi[j]), if one exists.
template <class T>
std::optional<std::vector<int>> seeds_equivalent(const Seed<T>& seed, const Seed<T>& other) {
  const int n = seed.rank();
  if (other.rank() != n || seed.values.size() != other.values.size()) {
    throw Error(ErrorCode::InvalidInput, "seeds have different rank");
  }
  std::vector<int> pi(n, -1);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, int i) -> bool {
    if (i == n) return true;
    for (int cand = 0; cand < n; ++cand) {
      if (used[cand] || !(other.values[i] == seed.values[cand])) continue;
      bool consistent = other.matrix(i, i) == seed.matrix(cand, cand);
      for (int j = 0; j < i && consistent; ++j) {
        consistent = other.matrix(i, j) == seed.matrix(cand, pi[j]) && other.matrix(j, i) == seed.matrix(pi[j], cand);
      }
      if (!consistent) continue;
      used[cand] = true;
      pi[i] = cand;
      if (self(self, i + 1)) return true;
      used[cand] = false;
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  return pi;
}

}  // namespace clustercrypt
