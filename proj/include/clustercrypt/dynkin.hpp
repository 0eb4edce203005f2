#pragma once

// Dynkin diagrams as exchange matrices, and recognition of finite type through
// the Cartan counterpart of some matrix in the mutation class.
//
// Cartan convention: a_ij = <alpha_i, alpha_j> = 2(alpha_i, alpha_j)/(alpha_j, alpha_j).
// Under it the valued edge of B_r carries a_{r-2,r-1} = -2 and C_r is the
// transpose. Exchange matrices put |b_ij| = -a_ij.

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "clustercrypt/error.hpp"
#include "clustercrypt/exchange_matrix.hpp"

namespace clustercrypt {

enum class Family { A, B, C, D, E, F, G };

inline char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

inline Family parse_family(const std::string& s) {
  if (s.size() == 1 && s[0] >= 'A' && s[0] <= 'G') return static_cast<Family>(s[0] - 'A');
  throw Error(ErrorCode::InvalidSpec, "unknown Dynkin family '" + s + "'");
}

struct DynkinType {
  Family family;
  int rank;

  std::string name() const { return std::string(1, family_letter(family)) + std::to_string(rank); }
  friend bool operator==(const DynkinType&, const DynkinType&) = default;
};

struct Arrow {
  int from;
  int to;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// A Dynkin diagram plus an orientation. Without an explicit arrow list the
/// default bipartite orientation is used: vertices at even distance from x0
/// are sources. It reproduces both matrices displayed for A_5 and D_7.
struct DynkinSpec {
  Family family = Family::A;
  int rank = 1;
  std::optional<std::vector<Arrow>> orientation;

  DynkinType type() const { return {family, rank}; }
};

/// An undirected edge u - v with |b_uv| = weight_uv and |b_vu| = weight_vu.
struct DiagramEdge {
  int u;
  int v;
  long weight_uv;
  long weight_vu;
};

inline void validate_rank(Family family, int rank) {
  bool ok = false;
  switch (family) {
    case Family::A: ok = rank >= 1; break;
    case Family::B:
    case Family::C: ok = rank >= 2; break;
    case Family::D: ok = rank >= 4; break;
    case Family::E: ok = rank >= 6 && rank <= 8; break;
    case Family::F: ok = rank == 4; break;
    case Family::G: ok = rank == 2; break;
  }
  if (!ok) {
    throw Error(ErrorCode::InvalidSpec,
                std::string("rank ") + std::to_string(rank) + " is invalid for family " + family_letter(family));
  }
}

inline std::vector<DiagramEdge> diagram_edges(Family family, int rank) {
  validate_rank(family, rank);
  std::vector<DiagramEdge> edges;
  auto chain = [&](int last) {
    for (int i = 0; i < last; ++i) edges.push_back({i, i + 1, 1, 1});
  };
  switch (family) {
    case Family::A: chain(rank - 1); break;
    case Family::B:
      chain(rank - 2);
      edges.push_back({rank - 2, rank - 1, 2, 1});
      break;
    case Family::C:
      chain(rank - 2);
      edges.push_back({rank - 2, rank - 1, 1, 2});
      break;
    case Family::D:
      chain(rank - 3);
      edges.push_back({rank - 3, rank - 2, 1, 1});
      edges.push_back({rank - 3, rank - 1, 1, 1});
      break;
    case Family::E:
      chain(rank - 2);
      edges.push_back({2, rank - 1, 1, 1});
      break;
    case Family::F:
      edges = {{0, 1, 1, 1}, {1, 2, 2, 1}, {2, 3, 1, 1}};
      break;
    case Family::G: edges = {{0, 1, 1, 3}}; break;
  }
  return edges;
}

/// Standard Cartan matrix of the family in the labelling used by diagram_edges.
inline std::vector<std::vector<long>> standard_cartan(Family family, int rank) {
  std::vector<std::vector<long>> a(rank, std::vector<long>(rank, 0));
  for (int i = 0; i < rank; ++i) a[i][i] = 2;
  for (const auto& e : diagram_edges(family, rank)) {
    a[e.u][e.v] = -e.weight_uv;
    a[e.v][e.u] = -e.weight_vu;
  }
  return a;
}

inline std::vector<Arrow> default_orientation(Family family, int rank) {
  const auto edges = diagram_edges(family, rank);
  std::vector<int> dist(rank, -1);
  dist[0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& e : edges) {
      for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        if (a == u && dist[b] < 0) {
          dist[b] = dist[u] + 1;
          queue.push_back(b);
        }
      }
    }
  }
  std::vector<Arrow> arrows;
  for (const auto& e : edges) {
    if (dist[e.u] % 2 == 0) {
      arrows.push_back({e.u, e.v});
    } else {
      arrows.push_back({e.v, e.u});
    }
  }
  return arrows;
}

inline ExchangeMatrix dynkin_exchange_matrix(const DynkinSpec& spec) {
  const auto edges = diagram_edges(spec.family, spec.rank);
  const std::vector<Arrow> arrows = spec.orientation ? *spec.orientation : default_orientation(spec.family, spec.rank);
  if (arrows.size() != edges.size()) {
    throw Error(ErrorCode::InvalidSpec, "orientation must give exactly one arrow per diagram edge");
  }
  std::vector<std::vector<long>> rows(spec.rank, std::vector<long>(spec.rank, 0));
  std::vector<bool> used(edges.size(), false);
  for (const auto& arrow : arrows) {
    bool matched = false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& e = edges[i];
      const bool forward = arrow.from == e.u && arrow.to == e.v;
      const bool backward = arrow.from == e.v && arrow.to == e.u;
      if (used[i] || !(forward || backward)) continue;
      used[i] = matched = true;
      const long sign = forward ? 1 : -1;
      rows[e.u][e.v] = sign * e.weight_uv;
      rows[e.v][e.u] = -sign * e.weight_vu;
      break;
    }
    if (!matched) {
      throw Error(ErrorCode::InvalidSpec, "arrow " + std::to_string(arrow.from) + "->" + std::to_string(arrow.to) +
                                              " is not an unused diagram edge");
    }
  }
  return ExchangeMatrix::from_rows(rows);
}

/// Identifies a Cartan-like matrix (2 on the diagonal, nonpositive elsewhere)
/// as a finite-type Cartan matrix up to simultaneous permutation. Returns the
/// types of the connected components in order of their smallest vertex, or
/// nullopt when some component is not of finite type.
inline std::optional<std::vector<DynkinType>> classify_cartan(const std::vector<std::vector<long>>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<int> component(n, -1);
  std::vector<DynkinType> types;
  for (int start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    std::vector<int> verts{start};
    component[start] = start;
    for (std::size_t head = 0; head < verts.size(); ++head) {
      for (int w = 0; w < n; ++w) {
        if (w != verts[head] && a[verts[head]][w] != 0 && component[w] < 0) {
          component[w] = start;
          verts.push_back(w);
        }
      }
    }
    const int size = static_cast<int>(verts.size());
    std::vector<int> degree(n, 0);
    int edge_count = 0;
    std::vector<std::pair<int, int>> heavy;  // edges with a_uv * a_vu > 1
    for (int u : verts) {
      for (int v : verts) {
        if (u >= v || a[u][v] == 0) continue;
        const long w = a[u][v] * a[v][u];
        if (w < 1 || w > 3) return std::nullopt;
        ++edge_count;
        ++degree[u];
        ++degree[v];
        if (w > 1) heavy.emplace_back(u, v);
      }
    }
    if (edge_count != size - 1) return std::nullopt;  // not a tree
    const int max_degree = *std::max_element(degree.begin(), degree.end());

    if (heavy.empty()) {
      if (max_degree <= 2) {
        types.push_back({Family::A, size});
        continue;
      }
      const auto branch = std::count_if(verts.begin(), verts.end(), [&](int v) { return degree[v] == 3; });
      if (max_degree > 3 || branch != 1) return std::nullopt;
      const int center = *std::find_if(verts.begin(), verts.end(), [&](int v) { return degree[v] == 3; });
      std::vector<int> legs;
      for (int first = 0; first < n; ++first) {
        if (first == center || a[center][first] == 0) continue;
        int length = 1, prev = center, cur = first;
        while (degree[cur] == 2) {
          int next = -1;
          for (int w = 0; w < n; ++w)
            if (w != cur && w != prev && a[cur][w] != 0) next = w;
          prev = cur;
          cur = next;
          ++length;
        }
        legs.push_back(length);
      }
      std::sort(legs.begin(), legs.end());
      if (legs[0] == 1 && legs[1] == 1) {
        types.push_back({Family::D, size});
      } else if (legs[0] == 1 && legs[1] == 2 && legs[2] >= 2 && legs[2] <= 4) {
        types.push_back({Family::E, size});
      } else {
        return std::nullopt;
      }
      continue;
    }

    if (heavy.size() > 1 || max_degree > 2) return std::nullopt;
    const auto [u, v] = heavy.front();
    const long w = a[u][v] * a[v][u];
    if (w == 3) {
      if (size != 2) return std::nullopt;
      types.push_back({Family::G, 2});
    } else if (degree[u] == 1 || degree[v] == 1) {
      // Valued edge at an end of the path: leaf plus its interior neighbour.
      const int leaf = degree[v] == 1 ? v : u;
      const int inner = leaf == v ? u : v;
      types.push_back({(size == 2 || a[inner][leaf] == -2) ? Family::B : Family::C, size});
    } else if (size == 4) {
      types.push_back({Family::F, 4});
    } else {
      return std::nullopt;
    }
  }
  return types;
}

struct FiniteTypeVerdict {
  enum class Status { Finite, NotFinite, Unknown };

  Status status = Status::Unknown;
  std::vector<DynkinType> types;        // populated when Finite
  std::optional<ExchangeMatrix> witness;  // a class member with Dynkin counterpart
  std::size_t explored = 0;

  bool finite() const { return status == Status::Finite; }

  std::string name() const {
    if (status == Status::NotFinite) return "not finite";
    if (status == Status::Unknown) return "unknown";
    std::string out;
    for (const auto& t : types) out += (out.empty() ? "" : "+") + t.name();
    return out;
  }
};

/// Largest exchange graph among finite types of rank <= 8 (E_8).
inline constexpr std::size_t kLargestFiniteSeedCount = 25080;
inline constexpr std::size_t kDefaultFiniteTypeBudget = 10 * kLargestFiniteSeedCount;

/// Breadth-first search of the matrix mutation class for a member whose Cartan
/// counterpart is a finite-type Cartan matrix. An entry pair with
/// |b_ij b_ji| >= 4 anywhere in the class rules out finite type immediately.
inline FiniteTypeVerdict is_finite_type(const ExchangeMatrix& b, std::size_t budget = kDefaultFiniteTypeBudget) {
  b.validate();
  FiniteTypeVerdict verdict;
  std::set<std::vector<long>> seen{b.entries()};
  std::deque<ExchangeMatrix> queue{b};
  const int n = b.rank();
  while (!queue.empty()) {
    ExchangeMatrix cur = std::move(queue.front());
    queue.pop_front();
    ++verdict.explored;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::labs(cur(i, j) * cur(j, i)) >= 4) {
          verdict.status = FiniteTypeVerdict::Status::NotFinite;
          return verdict;
        }
    if (auto types = classify_cartan(cartan_counterpart(cur))) {
      verdict.status = FiniteTypeVerdict::Status::Finite;
      verdict.types = std::move(*types);
      verdict.witness = cur;
      return verdict;
    }
    for (int k = 0; k < n; ++k) {
      ExchangeMatrix next = matrix_mutate(cur, k);
      if (seen.insert(next.entries()).second) queue.push_back(std::move(next));
    }
    if (seen.size() > budget) {
      verdict.status = FiniteTypeVerdict::Status::Unknown;
      return verdict;
    }
  }
  verdict.status = FiniteTypeVerdict::Status::NotFinite;
  return verdict;
}

}  // namespace clustercrypt
