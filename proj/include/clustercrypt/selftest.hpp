#pragma once

// Replays the two worked examples and runs the property suites: involution
// of mutation, encrypt/decrypt round trips, and agreement of the fast and
// reference encryption paths. Shared by the CLI self-test and the acceptance
// runner; matrix mutation is injectable so a broken rule can be shown to fail.

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "clustercrypt/crypto.hpp"

namespace clustercrypt {

// ---------------------------------------------------------------------------
// Worked examples.

struct WorkedExample {
  std::string name;
  SystemParams params;
  SecretKey key;
  std::string message;
  std::vector<std::string> ciphertext;  // decimal values by position
  std::vector<std::vector<long>> matrix;
  std::string plaintext;  // decrypted, as printed
};

inline WorkedExample worked_example_one() {
  return {"example-1",
          SystemParams::make(FieldParams::make(2, {1, 0, 1, 0, 0, 1}), {Family::A, 5, std::nullopt}),
          {0, {1, 4, 0, 3, 1}},
          "F",
          {"11", "18", "4", "7", "25"},
          {{0, -1, 1, 0, 0}, {1, 0, -1, 0, 0}, {-1, 1, 0, -1, 1}, {0, 0, 1, 0, -1}, {0, 0, -1, 1, 0}},
          "6 (F)"};
}

inline WorkedExample worked_example_two() {
  return {"example-2",
          SystemParams::make(FieldParams::make(101, {46, 0, 1, 1, 0, 74, 0, 1}), {Family::D, 7, std::nullopt}),
          {3, {2, 3, 4, 3}},
          "38927",
          {"1", "101", "46596680922228", "12799379480831", "58938867466645", "10510100501", "1061520150601"},
          {{0, 1, 0, 0, 0, 0, 0},
           {-1, 0, 1, 0, 0, 0, 0},
           {0, -1, 0, 0, 1, 0, 0},
           {0, 0, 0, 0, 1, -1, -1},
           {0, 0, -1, -1, 0, 0, 0},
           {0, 0, 0, 1, 0, 0, 0},
           {0, 0, 0, 1, 0, 0, 0}},
          "38927"};
}

struct ExampleOutcome {
  bool ciphertext_ok = false;
  bool matrix_ok = false;
  bool reference_ok = false;
  bool plaintext_ok = false;
  std::vector<std::string> values;
  std::string plaintext;
  double encrypt_ms = 0;

  bool ok() const { return ciphertext_ok && matrix_ok && reference_ok && plaintext_ok; }
};

inline ExampleOutcome replay(const WorkedExample& ex) {
  ExampleOutcome out;
  const FieldElement m = encode_message(ex.message, ex.params.field);
  const auto start = std::chrono::steady_clock::now();
  const CiphertextSeed ct = encrypt(ex.params, ex.key, m);
  out.encrypt_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  for (const auto& v : ct.values) out.values.push_back(element_to_decimal(v, ex.params.field));
  out.ciphertext_ok = out.values == ex.ciphertext;
  out.matrix_ok = ct.matrix.rows() == ex.matrix;
  out.reference_ok = encrypt_reference(ex.params, ex.key, m) == ct;
  out.plaintext = decode_message(decrypt(ex.params, ex.key, ct), ex.params.field).to_string();
  out.plaintext_ok = out.plaintext == ex.plaintext;
  return out;
}

// ---------------------------------------------------------------------------
// Random inputs.

using MatrixMutation = std::function<ExchangeMatrix(const ExchangeMatrix&, int)>;

inline std::vector<DynkinType> finite_types(int min_rank, int max_rank, bool classical_only = false) {
  std::vector<DynkinType> out;
  for (int n = min_rank; n <= max_rank; ++n) {
    for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G}) {
      if (classical_only && f > Family::D) break;
      try {
        validate_rank(f, n);
        out.push_back({f, n});
      } catch (const Error&) {
      }
    }
  }
  return out;
}

inline std::vector<Arrow> random_orientation(std::mt19937_64& rng, Family family, int rank) {
  std::vector<Arrow> out;
  for (const auto& e : diagram_edges(family, rank)) {
    if (detail::uniform_below(rng, 2)) {
      out.push_back({e.u, e.v});
    } else {
      out.push_back({e.v, e.u});
    }
  }
  return out;
}

/// A random member of a random finite-type mutation class: random diagram,
/// random orientation, then a short random mutation walk.
inline ExchangeMatrix random_finite_type_matrix(std::mt19937_64& rng, int min_rank, int max_rank) {
  const auto types = finite_types(min_rank, max_rank);
  const DynkinType t = types[detail::uniform_below(rng, types.size())];
  ExchangeMatrix b = dynkin_exchange_matrix({t.family, t.rank, random_orientation(rng, t.family, t.rank)});
  const auto walk = detail::uniform_below(rng, 7);
  for (std::uint64_t i = 0; i < walk; ++i) b = matrix_mutate(b, static_cast<int>(detail::uniform_below(rng, t.rank)));
  return b;
}

inline FieldElement random_element(std::mt19937_64& rng, const FieldParams& f, bool nonzero) {
  while (true) {
    FieldElement e;
    for (int i = 0; i < f.r; ++i) e.coords.push_back(detail::uniform_below(rng, f.p));
    if (!nonzero || !is_zero(e)) return e;
  }
}

/// GF(p^r) with p drawn from a few small primes subject to p^r >= 26.
inline FieldParams random_field(std::mt19937_64& rng, int r) {
  static const Residue primes[] = {2, 3, 5, 7, 11, 13};
  std::vector<Residue> ok;
  for (Residue p : primes) {
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(r));
    if (q >= Alphabet::kLetters) ok.push_back(p);
  }
  const Residue p = ok[detail::uniform_below(rng, ok.size())];
  return FieldParams::make(p, find_irreducible(p, r));
}

// ---------------------------------------------------------------------------
// Suites.

namespace detail {

inline std::string key_text(const SecretKey& key) {
  std::string s = "{" + std::to_string(key.k0);
  for (int k : key.seq) s += "," + std::to_string(k);
  return s + "}";
}

}  // namespace detail

struct InvolutionStats {
  int trials = 0;
  int matrix_failures = 0;
  int seed_checks = 0;     // numeric checks where both mutations were defined
  int seed_undefined = 0;  // skipped: a zero had to be inverted
  int seed_failures = 0;
  std::string first_failure;

  bool ok() const { return matrix_failures == 0 && seed_failures == 0; }
};

/// mu_k(mu_k(B)) = B through `mutation`, and mu_k(mu_k(s)) = s on random
/// numeric seeds over small fields GF(p^d).
inline InvolutionStats run_involution_suite(int trials, std::uint64_t seed, const MatrixMutation& mutation = matrix_mutate,
                                            int min_rank = 2, int max_rank = 8) {
  std::mt19937_64 rng(seed);
  InvolutionStats st;
  std::map<std::pair<Residue, int>, FieldParams> fields;
  const Residue primes[] = {2, 3, 5, 7};
  for (int trial = 0; trial < trials; ++trial) {
    ++st.trials;
    const ExchangeMatrix b = random_finite_type_matrix(rng, min_rank, max_rank);
    const int k = static_cast<int>(detail::uniform_below(rng, b.rank()));
    if (mutation(mutation(b, k), k) != b) {
      if (st.matrix_failures++ == 0) st.first_failure = "matrix of rank " + std::to_string(b.rank()) + ", vertex " + std::to_string(k);
    }

    const Residue p = primes[detail::uniform_below(rng, 4)];
    const int d = 1 + static_cast<int>(detail::uniform_below(rng, 4));
    auto it = fields.find({p, d});
    if (it == fields.end()) it = fields.emplace(std::make_pair(p, d), FieldParams::make(p, find_irreducible(p, d))).first;
    const ExtensionField ring(it->second);
    NumericSeed s{{}, b};
    for (int i = 0; i < b.rank(); ++i) s.values.push_back(random_element(rng, it->second, false));
    try {
      const NumericSeed back = mutate(mutate(s, k, ring), k, ring);
      ++st.seed_checks;
      if (back != s) {
        if (st.seed_failures++ == 0) st.first_failure = "numeric seed, vertex " + std::to_string(k);
      }
    } catch (const MutationError&) {
      ++st.seed_undefined;
    }
  }
  return st;
}

struct RoundTripStats {
  int trials = 0;
  int encrypted = 0;
  int encryption_failures = 0;  // zero denominators or zero values; informational
  int mismatches = 0;
  int decryption_errors = 0;
  std::string first_failure;

  double failure_rate() const { return trials ? static_cast<double>(encryption_failures) / trials : 0.0; }
  bool ok() const { return mismatches == 0 && decryption_errors == 0; }
};

/// Random classical diagram of rank 2..8, field with p^r >= 26, key with a
/// sequence of length 2..max_len, nonzero message.
inline RoundTripStats run_roundtrip_suite(int trials, std::uint64_t seed, int max_len = 12) {
  std::mt19937_64 rng(seed);
  RoundTripStats st;
  const auto types = finite_types(2, 8, true);
  for (int trial = 0; trial < trials; ++trial) {
    ++st.trials;
    const DynkinType t = types[detail::uniform_below(rng, types.size())];
    const SystemParams params = SystemParams::make(random_field(rng, t.rank), {t.family, t.rank, std::nullopt});
    const int len = 2 + static_cast<int>(detail::uniform_below(rng, max_len - 1));
    const SecretKey key = keygen(rng(), params, len);
    const FieldElement m = random_element(rng, params.field, true);
    CiphertextSeed ct;
    try {
      ct = encrypt(params, key, m);
    } catch (const MutationError&) {
      ++st.encryption_failures;
      continue;
    }
    ++st.encrypted;
    try {
      if (decrypt(params, key, ct) != m) {
        if (st.mismatches++ == 0) st.first_failure = t.name() + " key " + detail::key_text(key);
      }
    } catch (const Error& e) {
      if (st.decryption_errors++ == 0) st.first_failure = t.name() + ": " + e.what();
    }
  }
  return st;
}

struct OracleStats {
  int comparisons = 0;      // both paths succeeded
  int mismatches = 0;
  int fast_only_failures = 0;
  int reference_only_failures = 0;
  int both_failed = 0;
  std::string first_failure;

  bool ok() const { return mismatches == 0; }
};

/// Fast numeric encryption against substitute-then-evaluate on the symbolic
/// ciphertext, `keys` random keys times `messages` random nonzero messages.
inline OracleStats run_oracle_suite(const SystemParams& params, int keys, int messages, std::uint64_t seed,
                                    int max_len = 6) {
  std::mt19937_64 rng(seed);
  OracleStats st;
  for (int i = 0; i < keys; ++i) {
    const int len = 2 + static_cast<int>(detail::uniform_below(rng, max_len - 1));
    const SecretKey key = keygen(rng(), params, len);
    const SymbolicSeed symbolic = symbolic_ciphertext(params, key);
    for (int j = 0; j < messages; ++j) {
      const FieldElement m = random_element(rng, params.field, true);
      std::optional<CiphertextSeed> fast, ref;
      try {
        fast = encrypt(params, key, m);
      } catch (const MutationError&) {
      }
      try {
        ref = encrypt_reference(params, key, m, symbolic);
      } catch (const MutationError&) {
      }
      if (fast && ref) {
        ++st.comparisons;
        if (*fast != *ref && st.mismatches++ == 0) st.first_failure = "key " + detail::key_text(key);
      } else if (fast) {
        ++st.reference_only_failures;
      } else if (ref) {
        ++st.fast_only_failures;
      } else {
        ++st.both_failed;
      }
    }
  }
  return st;
}

// ---------------------------------------------------------------------------
// The self-test proper.

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double ms = 0;
};

struct SelftestOptions {
  int involution_trials = 200;
  int roundtrip_trials = 200;
  int oracle_keys = 5;
  int oracle_messages = 5;
  std::uint64_t seed = 1;
  MatrixMutation mutation = matrix_mutate;
};

namespace detail {

template <class F>
CheckResult timed_check(const std::string& name, F&& body) {
  CheckResult r{name, false, "", 0};
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace detail

inline std::vector<CheckResult> run_selftest(const SelftestOptions& opts = {}) {
  std::vector<CheckResult> out;
  for (const auto& ex : {worked_example_one(), worked_example_two()}) {
    out.push_back(detail::timed_check(ex.name, [&](CheckResult& r) {
      const auto o = replay(ex);
      r.passed = o.ok();
      std::string values;
      for (const auto& v : o.values) values += (values.empty() ? "" : ",") + v;
      r.detail = "ciphertext {" + values + "}, decrypts to " + o.plaintext;
    }));
  }
  out.push_back(detail::timed_check("involution", [&](CheckResult& r) {
    const auto st = run_involution_suite(opts.involution_trials, opts.seed, opts.mutation);
    r.passed = st.ok();
    r.detail = std::to_string(st.trials) + " trials, " + std::to_string(st.matrix_failures) + " matrix failures, " +
               std::to_string(st.seed_failures) + " seed failures over " + std::to_string(st.seed_checks) +
               " defined seeds";
    if (!st.first_failure.empty()) r.detail += "; first: " + st.first_failure;
  }));
  out.push_back(detail::timed_check("round-trip", [&](CheckResult& r) {
    const auto st = run_roundtrip_suite(opts.roundtrip_trials, opts.seed);
    r.passed = st.ok();
    r.detail = std::to_string(st.encrypted) + "/" + std::to_string(st.trials) + " encrypted, " +
               std::to_string(st.mismatches + st.decryption_errors) + " failed round trips";
    if (!st.first_failure.empty()) r.detail += "; first: " + st.first_failure;
  }));
  out.push_back(detail::timed_check("reference-path", [&](CheckResult& r) {
    const auto params = SystemParams::make(FieldParams::make(5, find_irreducible(5, 3)), {Family::A, 3, std::nullopt});
    const auto st = run_oracle_suite(params, opts.oracle_keys, opts.oracle_messages, opts.seed);
    r.passed = st.ok();
    r.detail = std::to_string(st.comparisons) + " comparisons, " + std::to_string(st.mismatches) + " mismatches";
  }));
  return out;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace clustercrypt
