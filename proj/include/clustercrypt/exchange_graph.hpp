#pragma once

// Exchange graphs of finite-type seeds. A vertex is a seed up to simultaneous
// permutation of cluster and matrix. Cluster variables are identified by a
// fingerprint: their value at a fixed random point of Z_P, P = 2^61 - 1,
// obtained by running the exchange relations numerically.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "clustercrypt/dynkin.hpp"
#include "clustercrypt/error.hpp"
#include "clustercrypt/seed.hpp"
#include "clustercrypt/symbolic.hpp"

namespace clustercrypt {

inline constexpr Residue kFingerprintPrime = (Residue{1} << 61) - 1;
inline constexpr std::uint64_t kFingerprintSeed = 0x5eedc1a5fe11ULL;

/// The recorded evaluation point: r values drawn from mt19937_64(seed) in [1, P).
inline std::vector<Residue> fingerprint_point(int rank, std::uint64_t seed = kFingerprintSeed) {
  std::mt19937_64 rng(seed);
  std::vector<Residue> out;
  for (int i = 0; i < rank; ++i) out.push_back(1 + rng() % (kFingerprintPrime - 1));
  return out;
}

struct GraphVertex {
  std::vector<Residue> fingerprints;  // ascending
  ExchangeMatrix matrix;              // rows/columns in fingerprint order
  std::vector<RationalFunction> cluster;  // same order; only when requested
};

struct ExchangeGraph {
  int rank = 0;
  std::vector<GraphVertex> vertices;
  /// neighbors[v][k]: vertex reached by mutating v's canonical seed at k.
  std::vector<std::vector<int>> neighbors;
  std::vector<Residue> point;
  Residue prime = kFingerprintPrime;

  std::size_t size() const { return vertices.size(); }

  mpz_class labeled_seed_count() const {
    mpz_class f = 1;
    for (int i = 2; i <= rank; ++i) f *= i;
    return f * static_cast<unsigned long>(vertices.size());
  }

  /// Simple undirected adjacency, ascending.
  std::vector<int> adjacent(int v) const {
    std::vector<int> out = neighbors[v];
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

struct EnumerateOptions {
  std::size_t budget = kDefaultFiniteTypeBudget;
  bool symbolic = false;  // also carry reduced cluster variables over Z_P
  std::uint64_t point_seed = kFingerprintSeed;
};

namespace detail {

struct LabeledSeed {
  std::vector<Residue> values;
  ExchangeMatrix matrix;
  std::vector<RationalFunction> cluster;
};

/// Sorts by fingerprint; equal fingerprints are ordered to give the
/// lexicographically smallest permuted matrix.
inline std::vector<int> canonical_order(const std::vector<Residue>& values, const ExchangeMatrix& b) {
  const int n = static_cast<int>(values.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int c) { return values[a] < values[c]; });
  bool ties = false;
  for (int i = 1; i < n; ++i) ties = ties || values[perm[i]] == values[perm[i - 1]];
  if (!ties) return perm;
  std::vector<int> best = perm;
  ExchangeMatrix best_m = b.permuted(perm);
  // Enumerate permutations inside each run of equal fingerprints.
  std::vector<std::pair<int, int>> runs;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && values[perm[j]] == values[perm[i]]) ++j;
    if (j - i > 1) runs.push_back({i, j});
    i = j;
  }
  auto search = [&](auto&& self, std::size_t r, std::vector<int>& cur) -> void {
    if (r == runs.size()) {
      ExchangeMatrix m = b.permuted(cur);
      if (m < best_m) {
        best_m = std::move(m);
        best = cur;
      }
      return;
    }
    auto [lo, hi] = runs[r];
    std::sort(cur.begin() + lo, cur.begin() + hi);
    do {
      self(self, r + 1, cur);
    } while (std::next_permutation(cur.begin() + lo, cur.begin() + hi));
  };
  search(search, 0, perm);
  return best;
}

inline LabeledSeed canonicalize(const LabeledSeed& s) {
  const auto perm = canonical_order(s.values, s.matrix);
  LabeledSeed out{{}, s.matrix.permuted(perm), {}};
  for (int i : perm) out.values.push_back(s.values[i]);
  if (!s.cluster.empty())
    for (int i : perm) out.cluster.push_back(s.cluster[i]);
  return out;
}

}  // namespace detail

/// Breadth-first enumeration from the seed (x_0, ..., x_{n-1}; B).
inline ExchangeGraph enumerate_exchange_graph(const ExchangeMatrix& b, const EnumerateOptions& opts = {}) {
  const auto verdict = is_finite_type(b, opts.budget);
  if (verdict.status == FiniteTypeVerdict::Status::NotFinite) {
    throw Error(ErrorCode::NotFiniteType, "matrix is not of finite type");
  }
  if (verdict.status == FiniteTypeVerdict::Status::Unknown) {
    throw Error(ErrorCode::BudgetExceeded, "finite type could not be established within the budget");
  }
  const int n = b.rank();
  ExchangeGraph g;
  g.rank = n;
  g.point = fingerprint_point(n, opts.point_seed);
  const PrimeField field(kFingerprintPrime);
  const RationalRing ring(kFingerprintPrime, n);

  detail::LabeledSeed start{g.point, b, {}};
  if (opts.symbolic) start.cluster = initial_symbolic_seed(b, kFingerprintPrime).values;

  std::map<std::pair<std::vector<Residue>, ExchangeMatrix>, int> index;
  std::vector<detail::LabeledSeed> reps;
  auto intern = [&](detail::LabeledSeed s) -> int {
    s = detail::canonicalize(s);
    auto key = std::make_pair(s.values, s.matrix);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (reps.size() >= opts.budget) throw Error(ErrorCode::BudgetExceeded, "vertex budget exhausted");
    const int id = static_cast<int>(reps.size());
    index.emplace(std::move(key), id);
    reps.push_back(std::move(s));
    g.neighbors.emplace_back(n, -1);
    return id;
  };

  intern(start);
  for (std::size_t v = 0; v < reps.size(); ++v) {
    for (int k = 0; k < n; ++k) {
      const detail::LabeledSeed& cur = reps[v];
      detail::LabeledSeed next;
      try {
        const auto m = mutate(Seed<Residue>{cur.values, cur.matrix}, k, field);
        next.values = m.values;
        next.matrix = m.matrix;
      } catch (const MutationError&) {
        throw Error(ErrorCode::InvalidInput, "fingerprint point hits a zero; choose another point seed");
      }
      if (opts.symbolic) {
        auto sym = mutate(Seed<RationalFunction>{cur.cluster, cur.matrix}, k, ring);
        next.cluster = std::move(sym.values);
      }
      const int w = intern(std::move(next));
      g.neighbors[v][k] = w;
    }
  }
  for (auto& s : reps) g.vertices.push_back({std::move(s.values), std::move(s.matrix), std::move(s.cluster)});
  return g;
}

/// Every vertex has `rank` distinct neighbours and adjacency is symmetric.
inline bool is_regular(const ExchangeGraph& g) {
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto adj = g.adjacent(static_cast<int>(v));
    if (static_cast<int>(adj.size()) != g.rank) return false;
    for (int w : adj) {
      if (w == static_cast<int>(v)) return false;
      const auto back = g.adjacent(w);
      if (!std::binary_search(back.begin(), back.end(), static_cast<int>(v))) return false;
    }
  }
  return true;
}

inline bool is_connected(const ExchangeGraph& g) {
  if (g.size() == 0) return true;
  std::vector<bool> seen(g.size(), false);
  std::deque<int> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : g.adjacent(v)) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        queue.push_back(w);
      }
    }
  }
  return count == g.size();
}

/// Distinct cluster variables, keyed by fingerprint.
inline std::map<Residue, RationalFunction> cluster_variables(const ExchangeGraph& g) {
  std::map<Residue, RationalFunction> out;
  for (const auto& v : g.vertices)
    for (std::size_t i = 0; i < v.cluster.size(); ++i) out.emplace(v.fingerprints[i], v.cluster[i]);
  return out;
}

/// Checks that equal fingerprints always belong to equal rational functions
/// and that each stored function evaluates to its fingerprint. Needs a graph
/// enumerated with symbolic clusters.
inline bool fingerprint_certificate(const ExchangeGraph& g) {
  std::map<Residue, RationalFunction> first;
  for (const auto& v : g.vertices) {
    if (v.cluster.size() != static_cast<std::size_t>(g.rank)) return false;
    for (int i = 0; i < g.rank; ++i) {
      if (evaluate(v.cluster[i], g.point) != v.fingerprints[i]) return false;
      auto [it, inserted] = first.emplace(v.fingerprints[i], v.cluster[i]);
      if (!inserted && !equivalent(it->second, v.cluster[i])) return false;
    }
  }
  return true;
}

using BigMatrix = std::vector<std::vector<mpz_class>>;

inline BigMatrix adjacency_matrix(const ExchangeGraph& g) {
  const std::size_t n = g.size();
  BigMatrix m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t v = 0; v < n; ++v)
    for (int w : g.neighbors[v]) m[v][w] += 1;
  return m;
}

inline BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
  const std::size_t n = a.size();
  BigMatrix c(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

/// M^t by repeated squaring.
inline BigMatrix matrix_power(BigMatrix m, std::uint64_t t) {
  const std::size_t n = m.size();
  BigMatrix result(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) result[i][i] = 1;
  while (t > 0) {
    if (t & 1U) result = multiply(result, m);
    t >>= 1U;
    if (t) m = multiply(m, m);
  }
  return result;
}

/// Row u of M^t, by t sparse vector-matrix products.
inline std::vector<mpz_class> walk_counts_from(const ExchangeGraph& g, int u, std::uint64_t t) {
  std::vector<mpz_class> cur(g.size(), 0);
  cur.at(u) = 1;
  for (std::uint64_t step = 0; step < t; ++step) {
    std::vector<mpz_class> next(g.size(), 0);
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (cur[v] == 0) continue;
      for (int w : g.neighbors[v]) next[w] += cur[v];
    }
    cur = std::move(next);
  }
  return cur;
}

/// Number of walks of length t from u to v, (M^t)_{uv}. Dense repeated
/// squaring on graphs up to `dense_limit` vertices, sparse iteration above.
inline mpz_class path_count(const ExchangeGraph& g, int u, int v, std::uint64_t t, std::size_t dense_limit = 256) {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= g.size() || static_cast<std::size_t>(v) >= g.size()) {
    throw Error(ErrorCode::InvalidVertex, "vertex outside the graph");
  }
  if (g.size() <= dense_limit) return matrix_power(adjacency_matrix(g), t)[u][v];
  return walk_counts_from(g, u, t)[v];
}

struct PathList {
  std::vector<std::vector<int>> paths;  // vertex sequences from u to v
  bool truncated = false;
};

inline constexpr int kDefaultDfsMaxLength = 12;

/// All simple paths from u to v with at most max_len edges, found by a
/// depth-first search visiting neighbours in ascending order. Stops after
/// max_paths paths and sets `truncated`.
inline PathList dfs_paths(const ExchangeGraph& g, int u, int v, int max_len = kDefaultDfsMaxLength,
                          std::size_t max_paths = 100000) {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= g.size() || static_cast<std::size_t>(v) >= g.size()) {
    throw Error(ErrorCode::InvalidVertex, "vertex outside the graph");
  }
  PathList out;
  if (u == v) {
    out.paths.push_back({u});
    return out;
  }
  std::vector<bool> on_path(g.size(), false);
  std::vector<int> path{u};
  on_path[u] = true;
  auto walk = [&](auto&& self, int at) -> void {
    if (out.truncated) return;
    if (at == v) {
      if (out.paths.size() == max_paths) {
        out.truncated = true;
        return;
      }
      out.paths.push_back(path);
      return;
    }
    if (static_cast<int>(path.size()) - 1 == max_len) return;
    for (int w : g.adjacent(at)) {
      if (on_path[w]) continue;
      on_path[w] = true;
      path.push_back(w);
      self(self, w);
      path.pop_back();
      on_path[w] = false;
    }
  };
  walk(walk, u);
  return out;
}

}  // namespace clustercrypt
