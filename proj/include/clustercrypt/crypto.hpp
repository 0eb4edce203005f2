#pragma once

// Symmetric cipher: a message in GF(p^r) is hidden at position k0 of the seed
// (alpha^0, ..., alpha^{r-1}; B) and the seed is mutated along a secret
// sequence. Decryption mutates back along the reversed sequence.

#include <cctype>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "clustercrypt/dynkin.hpp"
#include "clustercrypt/error.hpp"
#include "clustercrypt/fields.hpp"
#include "clustercrypt/seed.hpp"
#include "clustercrypt/symbolic.hpp"

namespace clustercrypt {

/// A=1 ... Z=26, and 27..31 read back as X, Y, Z, X, Y.
struct Alphabet {
  static constexpr int kLetters = 26;
  static constexpr int kTableSize = 31;

  static std::optional<int> letter_to_number(char c) {
    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (u < 'A' || u > 'Z') return std::nullopt;
    return u - 'A' + 1;
  }

  static std::optional<char> number_to_letter(const mpz_class& n) {
    if (n < 1 || n > kTableSize) return std::nullopt;
    static constexpr char kExtension[] = {'X', 'Y', 'Z', 'X', 'Y'};
    const long v = n.get_si();
    return v <= kLetters ? static_cast<char>('A' + v - 1) : kExtension[v - kLetters - 1];
  }
};

struct SystemParams {
  FieldParams field;
  DynkinSpec diagram;

  /// Checks rank == r and p^r >= 26.
  static SystemParams make(FieldParams field, DynkinSpec diagram) {
    validate_rank(diagram.family, diagram.rank);
    if (diagram.rank != field.r) {
      throw Error(ErrorCode::InvalidParams, "diagram rank " + std::to_string(diagram.rank) +
                                                " differs from field degree " + std::to_string(field.r));
    }
    if (field.order() < Alphabet::kLetters) {
      throw Error(ErrorCode::InvalidParams, "p^r must be at least " + std::to_string(Alphabet::kLetters));
    }
    dynkin_exchange_matrix(diagram);
    return {std::move(field), std::move(diagram)};
  }

  int rank() const { return diagram.rank; }
  ExchangeMatrix matrix() const { return dynkin_exchange_matrix(diagram); }
};

/// k = {k0, k_1, ..., k_t}: k0 is where the message sits, the tail is the
/// mutation sequence. k0 itself is not a mutation.
struct SecretKey {
  int k0 = 0;
  std::vector<int> seq;

  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

struct CiphertextSeed {
  std::vector<FieldElement> values;
  ExchangeMatrix matrix;

  friend bool operator==(const CiphertextSeed&, const CiphertextSeed&) = default;
};

enum class KeyViolation {
  EmptySequence,
  VertexOutOfRange,
  ConsecutiveRepeat,
  HideVertexAbsent,
  NoAdjacentBeforeHide,
};

inline const char* to_string(KeyViolation v) {
  switch (v) {
    case KeyViolation::EmptySequence: return "EmptySequence";
    case KeyViolation::VertexOutOfRange: return "VertexOutOfRange";
    case KeyViolation::ConsecutiveRepeat: return "ConsecutiveRepeat";
    case KeyViolation::HideVertexAbsent: return "HideVertexAbsent";
    case KeyViolation::NoAdjacentBeforeHide: return "NoAdjacentBeforeHide";
  }
  return "Unknown";
}

/// Every violated constraint, each reported once, in enum order.
inline std::vector<KeyViolation> validate_key(const SecretKey& key, const ExchangeMatrix& b) {
  const int n = b.rank();
  std::vector<KeyViolation> out;
  if (key.seq.empty()) out.push_back(KeyViolation::EmptySequence);

  bool in_range = key.k0 >= 0 && key.k0 < n;
  for (int k : key.seq) in_range = in_range && k >= 0 && k < n;
  if (!in_range) out.push_back(KeyViolation::VertexOutOfRange);

  for (std::size_t i = 1; i < key.seq.size(); ++i) {
    if (key.seq[i] == key.seq[i - 1]) {
      out.push_back(KeyViolation::ConsecutiveRepeat);
      break;
    }
  }

  std::size_t first = key.seq.size();
  for (std::size_t i = 0; i < key.seq.size(); ++i) {
    if (key.seq[i] == key.k0) {
      first = i;
      break;
    }
  }
  if (first == key.seq.size()) {
    out.push_back(KeyViolation::HideVertexAbsent);
    return out;
  }
  bool adjacent = false;
  if (in_range) {
    for (std::size_t i = 0; i < first && !adjacent; ++i) adjacent = b(key.seq[i], key.k0) != 0;
  }
  if (in_range && !adjacent) out.push_back(KeyViolation::NoAdjacentBeforeHide);
  return out;
}

inline std::string describe(const std::vector<KeyViolation>& vs) {
  std::string out;
  for (auto v : vs) out += (out.empty() ? "" : ", ") + std::string(to_string(v));
  return out;
}

inline void require_valid_key(const SecretKey& key, const ExchangeMatrix& b) {
  const auto violations = validate_key(key, b);
  if (!violations.empty()) throw Error(ErrorCode::InvalidKey, describe(violations));
}

namespace detail {

/// Uniform integer in [0, n) by rejection, identical on every platform.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  while (true) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

}  // namespace detail

/// Samples k0 and a sequence without consecutive repeats uniformly, keeping
/// the first candidate that validates. The result is uniform over valid keys
/// of length t and depends only on the seed.
inline SecretKey keygen(std::uint64_t rng_seed, const SystemParams& params, int t) {
  const int n = params.rank();
  if (t < 2 || n < 2) {
    throw Error(ErrorCode::Infeasible, "a valid key needs a sequence of length >= 2 on a rank >= 2 diagram");
  }
  const ExchangeMatrix b = params.matrix();
  std::mt19937_64 rng(rng_seed);
  constexpr int kAttempts = 1000000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    SecretKey key;
    key.k0 = static_cast<int>(detail::uniform_below(rng, n));
    key.seq.resize(t);
    key.seq[0] = static_cast<int>(detail::uniform_below(rng, n));
    for (int i = 1; i < t; ++i) {
      const int step = 1 + static_cast<int>(detail::uniform_below(rng, n - 1));
      key.seq[i] = (key.seq[i - 1] + step) % n;
    }
    if (validate_key(key, b).empty()) return key;
  }
  throw Error(ErrorCode::Infeasible, "no valid key found");
}

/// Integer or single letter into GF(p^r). Digits-only text is an integer.
inline FieldElement encode_number(const mpz_class& n, const FieldParams& params) {
  if (n == 0) throw Error(ErrorCode::ZeroMessage, "the message must be nonzero");
  return int_to_element(n, params);
}

inline FieldElement encode_message(const std::string& input, const FieldParams& params) {
  if (input.empty()) throw Error(ErrorCode::UnknownSymbol, "empty message");
  bool digits = true;
  for (char c : input) digits = digits && std::isdigit(static_cast<unsigned char>(c));
  if (digits) return encode_number(mpz_class(input), params);
  if (input.size() == 1) {
    if (auto n = Alphabet::letter_to_number(input[0])) return encode_number(*n, params);
  }
  throw Error(ErrorCode::UnknownSymbol, "'" + input + "' is neither a letter nor a nonnegative integer");
}

struct Plaintext {
  mpz_class value;
  std::optional<char> letter;

  std::string to_string() const {
    std::string out = value.get_str();
    if (letter) out += std::string(" (") + *letter + ")";
    return out;
  }
};

inline Plaintext decode_message(const FieldElement& m, const FieldParams& params) {
  if (!is_valid_element(m, params)) throw Error(ErrorCode::InvalidInput, "element does not belong to the field");
  if (is_zero(m)) throw Error(ErrorCode::ZeroMessage, "zero element carries no message");
  Plaintext out{element_to_int(m, params), std::nullopt};
  out.letter = Alphabet::number_to_letter(out.value);
  return out;
}

/// (alpha^0, ..., alpha^{r-1}) with position k0 replaced by m.
inline NumericSeed hidden_seed(const SystemParams& params, int k0, const FieldElement& m) {
  NumericSeed seed{{}, params.matrix()};
  for (int i = 0; i < params.rank(); ++i) seed.values.push_back(ext_alpha_pow(i, params.field));
  seed.values.at(k0) = m;
  return seed;
}

namespace detail {

inline void check_message(const FieldElement& m, const FieldParams& field) {
  if (!is_valid_element(m, field)) throw Error(ErrorCode::InvalidInput, "message is not a field element");
  if (is_zero(m)) throw Error(ErrorCode::ZeroMessage, "the message must be nonzero");
}

}  // namespace detail

/// Mutates the seed with m already in place; evaluation commutes with the
/// exchange relations, so this equals mutating symbolically, substituting
/// x_{k0} = m, and evaluating at x_i = alpha^i. Fails when any step divides by
/// zero or creates a zero value, i.e. exactly when decryption would fail.
inline CiphertextSeed encrypt(const SystemParams& params, const SecretKey& key, const FieldElement& m) {
  const ExchangeMatrix b = params.matrix();
  require_valid_key(key, b);
  detail::check_message(m, params.field);
  const ExtensionField ring(params.field);
  NumericSeed seed = hidden_seed(params, key.k0, m);
  for (std::size_t i = 0; i < key.seq.size(); ++i) {
    const int k = key.seq[i];
    const int step = static_cast<int>(i);
    try {
      seed = mutate(seed, k, ring, step);
    } catch (const MutationError& e) {
      throw MutationError(ErrorCode::EncryptionFailed, k, step, "exchange relation divides by zero; choose a new key");
    }
    // Decryption divides by this value when it undoes the step.
    if (is_zero(seed.values[k])) {
      throw MutationError(ErrorCode::EncryptionFailed, k, step,
                          "mutation produced zero, so the ciphertext could not be decrypted; choose a new key");
    }
  }
  return {std::move(seed.values), std::move(seed.matrix)};
}

/// Symbolic seed after the key's mutations, before the message is inserted.
/// Independent of the message, so it can be reused across messages.
inline SymbolicSeed symbolic_ciphertext(const SystemParams& params, const SecretKey& key) {
  const ExchangeMatrix b = params.matrix();
  require_valid_key(key, b);
  return rf_apply_sequence(initial_symbolic_seed(b, params.field.p), key.seq);
}

/// Reference path: substitute x_{k0} = sum a_i x_i into each cluster variable
/// and evaluate at x_i = alpha^i.
inline CiphertextSeed encrypt_reference(const SystemParams& params, const SecretKey& key, const FieldElement& m,
                                        const SymbolicSeed& symbolic) {
  detail::check_message(m, params.field);
  const int n = params.rank();
  const Residue p = params.field.p;
  Polynomial lin(p, n);
  for (int i = 0; i < n; ++i) lin = lin + Polynomial::variable(p, n, i).scaled(m.coords[i]);
  const RationalFunction replacement(lin);
  std::vector<FieldElement> point;
  for (int i = 0; i < n; ++i) point.push_back(ext_alpha_pow(i, params.field));
  CiphertextSeed out{{}, symbolic.matrix};
  for (const auto& v : symbolic.values) {
    try {
      out.values.push_back(evaluate(substitute(v, key.k0, replacement), point, params.field));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DenominatorVanishes && e.code() != ErrorCode::DegenerateSubstitution) throw;
      throw MutationError(ErrorCode::EncryptionFailed, key.k0, static_cast<int>(key.seq.size()),
                          "denominator vanishes after inserting the message; choose a new key");
    }
  }
  return out;
}

inline CiphertextSeed encrypt_reference(const SystemParams& params, const SecretKey& key, const FieldElement& m) {
  return encrypt_reference(params, key, m, symbolic_ciphertext(params, key));
}

inline FieldElement decrypt(const SystemParams& params, const SecretKey& key, const CiphertextSeed& ct) {
  const ExchangeMatrix b = params.matrix();
  require_valid_key(key, b);
  const int n = params.rank();
  if (static_cast<int>(ct.values.size()) != n || ct.matrix.rank() != n) {
    throw Error(ErrorCode::InvalidInput, "ciphertext rank differs from the parameters");
  }
  for (const auto& v : ct.values) {
    if (!is_valid_element(v, params.field)) throw Error(ErrorCode::InvalidInput, "ciphertext value outside the field");
  }
  const std::vector<int> reversed(key.seq.rbegin(), key.seq.rend());
  NumericSeed seed{ct.values, ct.matrix};
  try {
    seed = apply_sequence(std::move(seed), std::span<const int>(reversed), ExtensionField(params.field));
  } catch (const MutationError& e) {
    throw MutationError(ErrorCode::DecryptionFailed, e.vertex(), e.step(), "exchange relation divides by zero");
  }
  if (seed.matrix != b) throw Error(ErrorCode::CorruptOrWrongKey, "recovered matrix differs from the initial one");
  for (int i = 0; i < n; ++i) {
    if (i != key.k0 && seed.values[i] != ext_alpha_pow(i, params.field)) {
      throw Error(ErrorCode::CorruptOrWrongKey, "position " + std::to_string(i) + " is not alpha^" + std::to_string(i));
    }
  }
  return seed.values[key.k0];
}

}  // namespace clustercrypt
