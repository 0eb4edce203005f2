#pragma once

// Root systems in simple-root coordinates, generated from a Cartan matrix by
// closing the simple roots under the simple reflections
//   s_i(beta) = beta - <beta, alpha_i> alpha_i,  <beta, alpha_i> = sum_j beta_j a_ji.
// The invariant form is (alpha_i, alpha_j) = a_ij d_j with d a symmetrizer.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "clustercrypt/error.hpp"
#include "clustercrypt/exchange_graph.hpp"

namespace clustercrypt {

using Root = std::vector<long>;
using CartanMatrix = std::vector<std::vector<long>>;

struct RootSystem {
  CartanMatrix cartan;
  std::vector<Root> roots;      // sorted
  std::vector<Root> positive;   // sorted
  std::vector<Root> negative;   // sorted
  std::vector<Root> almost_positive;  // R+ together with -Delta, sorted
  std::vector<mpq_class> symmetrizer;  // d_i = (alpha_i, alpha_i) / 2

  int rank() const { return static_cast<int>(cartan.size()); }
};

/// Largest finite root system of rank <= 8 has 240 roots (E_8).
inline constexpr std::size_t kRootClosureBound = 4096;

namespace detail {

inline Root simple_root(int n, int i, long sign = 1) {
  Root r(n, 0);
  r[i] = sign;
  return r;
}

inline Root negate(Root r) {
  for (auto& c : r) c = -c;
  return r;
}

inline bool nonnegative(const Root& r) {
  return std::all_of(r.begin(), r.end(), [](long c) { return c >= 0; });
}

inline bool nonpositive(const Root& r) {
  return std::all_of(r.begin(), r.end(), [](long c) { return c <= 0; });
}

/// d with a_ij d_j = a_ji d_i, one component at a time, each normalized to
/// have smallest entry 1. Empty when no symmetrizer exists.
inline std::optional<std::vector<mpq_class>> symmetrize(const CartanMatrix& a) {
  const int n = static_cast<int>(a.size());
  std::vector<mpq_class> d(n, 0);
  for (int s = 0; s < n; ++s) {
    if (d[s] != 0) continue;
    std::vector<int> comp{s};
    d[s] = 1;
    for (std::size_t q = 0; q < comp.size(); ++q) {
      const int i = comp[q];
      for (int j = 0; j < n; ++j) {
        if (j == i || a[i][j] == 0) continue;
        if (a[j][i] == 0) return std::nullopt;
        const mpq_class dj = d[i] * a[j][i] / mpq_class(a[i][j]);
        if (d[j] == 0) {
          d[j] = dj;
          comp.push_back(j);
        } else if (d[j] != dj) {
          return std::nullopt;
        }
      }
    }
    mpq_class lo = d[s];
    for (int i : comp) lo = std::min(lo, d[i]);
    for (int i : comp) d[i] /= lo;
  }
  return d;
}

}  // namespace detail

/// <beta, alpha_i> for a root in simple-root coordinates.
inline long pairing_with_simple(const CartanMatrix& a, const Root& beta, int i) {
  long s = 0;
  for (std::size_t j = 0; j < beta.size(); ++j) s += beta[j] * a[j][i];
  return s;
}

inline Root simple_reflection(const CartanMatrix& a, const Root& beta, int i) {
  Root out = beta;
  out[i] -= pairing_with_simple(a, beta, i);
  return out;
}

/// (beta, gamma) under the invariant form.
inline mpq_class inner_product(const RootSystem& rs, const Root& beta, const Root& gamma) {
  mpq_class s = 0;
  for (int i = 0; i < rs.rank(); ++i)
    for (int j = 0; j < rs.rank(); ++j) {
      if (beta[i] == 0 || gamma[j] == 0) continue;
      s += mpq_class(beta[i] * gamma[j] * rs.cartan[i][j]) * rs.symmetrizer[j];
    }
  return s;
}

/// <beta, alpha> = 2 (beta, alpha) / (alpha, alpha).
inline mpq_class pairing(const RootSystem& rs, const Root& beta, const Root& alpha) {
  return 2 * inner_product(rs, beta, alpha) / inner_product(rs, alpha, alpha);
}

inline RootSystem generate_root_system(const CartanMatrix& a, std::size_t bound = kRootClosureBound) {
  const int n = static_cast<int>(a.size());
  if (n == 0) throw Error(ErrorCode::InvalidMatrix, "empty Cartan matrix");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(a[i].size()) != n) throw Error(ErrorCode::InvalidMatrix, "Cartan matrix is not square");
    if (a[i][i] != 2) throw Error(ErrorCode::InvalidMatrix, "Cartan diagonal must be 2");
    for (int j = 0; j < n; ++j)
      if (i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0))) {
        throw Error(ErrorCode::InvalidMatrix, "off-diagonal Cartan entries must be nonpositive and paired");
      }
  }
  auto d = detail::symmetrize(a);
  if (!d) throw Error(ErrorCode::NotFiniteType, "Cartan matrix is not symmetrizable");

  RootSystem rs;
  rs.cartan = a;
  rs.symmetrizer = std::move(*d);
  std::set<Root> seen;
  std::deque<Root> queue;
  for (int i = 0; i < n; ++i)
    for (long sign : {1L, -1L}) {
      Root r = detail::simple_root(n, i, sign);
      if (seen.insert(r).second) queue.push_back(r);
    }
  while (!queue.empty()) {
    const Root beta = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      Root next = simple_reflection(a, beta, i);
      if (seen.insert(next).second) {
        if (seen.size() > bound) throw Error(ErrorCode::NotFiniteType, "reflection closure exceeds the bound");
        queue.push_back(std::move(next));
      }
    }
  }
  rs.roots.assign(seen.begin(), seen.end());
  for (const auto& r : rs.roots) {
    if (detail::nonnegative(r)) rs.positive.push_back(r);
    if (detail::nonpositive(r)) rs.negative.push_back(r);
  }
  rs.almost_positive = rs.positive;
  for (int i = 0; i < n; ++i) rs.almost_positive.push_back(detail::simple_root(n, i, -1));
  std::sort(rs.almost_positive.begin(), rs.almost_positive.end());
  return rs;
}

struct RootAxiomReport {
  bool r1 = false;  // finite, spans, no zero
  bool r2 = false;  // only +-alpha are multiples of alpha
  bool r3 = false;  // every s_alpha permutes R
  bool r4 = false;  // <beta, alpha> integral
  bool finiteness = false;  // <a,b><b,a> in {0,1,2,3} for b != +-a
  bool sign_split = false;  // R = R+ u -R+, every root of constant sign
  std::vector<std::string> failures;

  bool ok() const { return r1 && r2 && r3 && r4 && finiteness && sign_split && failures.empty(); }
};

namespace detail {

inline std::string show(const Root& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + ")";
}

/// beta = c alpha for some rational c; returns c.
inline std::optional<mpq_class> proportion(const Root& beta, const Root& alpha) {
  std::optional<mpq_class> c;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) {
      if (beta[i] != 0) return std::nullopt;
      continue;
    }
    mpq_class ci(beta[i], alpha[i]);
    ci.canonicalize();
    if (c && *c != ci) return std::nullopt;
    c = ci;
  }
  return c;
}

}  // namespace detail

/// Checks every axiom literally over all root pairs.
inline RootAxiomReport check_root_axioms(const RootSystem& rs) {
  RootAxiomReport rep;
  const std::set<Root> all(rs.roots.begin(), rs.roots.end());
  const int n = rs.rank();

  rep.r1 = !rs.roots.empty() && !all.count(Root(n, 0));
  for (int i = 0; i < n; ++i) rep.r1 = rep.r1 && all.count(detail::simple_root(n, i));
  if (!rep.r1) rep.failures.push_back("R1: zero root or simple root missing");

  rep.r2 = rep.r3 = rep.r4 = rep.finiteness = true;
  for (const auto& alpha : rs.roots) {
    const mpq_class aa = inner_product(rs, alpha, alpha);
    if (aa <= 0) {
      rep.r1 = false;
      rep.failures.push_back("form not positive on " + detail::show(alpha));
      continue;
    }
    for (const auto& beta : rs.roots) {
      if (auto c = detail::proportion(beta, alpha); c && *c != 1 && *c != -1) {
        rep.r2 = false;
        rep.failures.push_back("R2: " + detail::show(beta) + " is a multiple of " + detail::show(alpha));
      }
      const mpq_class ba = pairing(rs, beta, alpha);
      if (ba.get_den() != 1) {
        rep.r4 = false;
        rep.failures.push_back("R4: <" + detail::show(beta) + "," + detail::show(alpha) + "> not integral");
        continue;
      }
      const long k = ba.get_num().get_si();
      Root image = beta;
      for (int i = 0; i < n; ++i) image[i] -= k * alpha[i];
      if (!all.count(image)) {
        rep.r3 = false;
        rep.failures.push_back("R3: reflection in " + detail::show(alpha) + " leaves R");
      }
      if (beta != alpha && beta != detail::negate(alpha)) {
        const mpq_class prod = ba * pairing(rs, alpha, beta);
        if (prod != 0 && prod != 1 && prod != 2 && prod != 3) {
          rep.finiteness = false;
          rep.failures.push_back("finiteness: product " + prod.get_str() + " for " + detail::show(alpha) + "," +
                                 detail::show(beta));
        }
      }
    }
  }

  rep.sign_split = rs.positive.size() + rs.negative.size() == rs.roots.size();
  for (const auto& r : rs.positive) rep.sign_split = rep.sign_split && all.count(detail::negate(r));
  if (!rep.sign_split) rep.failures.push_back("R is not R+ u -R+");
  return rep;
}

/// One cluster variable matched against an almost positive root.
struct DenominatorEntry {
  RationalFunction variable;
  Root denominator;
  bool constant_term = false;  // P_alpha(0) != 0
};

struct BijectionReport {
  std::string type;
  std::size_t cluster_variables = 0;
  std::size_t almost_positive_roots = 0;
  std::vector<DenominatorEntry> entries;
  std::vector<Root> unmatched_roots;       // in R>=-1 but no variable
  std::vector<Root> unexplained_vectors;   // a variable's vector outside R>=-1 or repeated
  std::vector<int> initial_mismatches;     // x_i not mapped to -alpha_i
  std::vector<std::string> zero_constant_terms;

  bool ok() const {
    return cluster_variables == almost_positive_roots && unmatched_roots.empty() && unexplained_vectors.empty() &&
           initial_mismatches.empty() && zero_constant_terms.empty();
  }

  std::string to_string() const {
    std::string s = type + ": " + std::to_string(cluster_variables) + " cluster variables, " +
                    std::to_string(almost_positive_roots) + " almost positive roots, " +
                    (ok() ? "bijection holds" : "counterexample") + "\n";
    for (const auto& r : unmatched_roots) s += "  root without variable " + detail::show(r) + "\n";
    for (const auto& r : unexplained_vectors) s += "  denominator vector not matched " + detail::show(r) + "\n";
    for (int i : initial_mismatches) s += "  x" + std::to_string(i) + " does not map to -alpha_" + std::to_string(i) + "\n";
    for (const auto& v : zero_constant_terms) s += "  zero constant term in " + v + "\n";
    return s;
  }
};

/// Compares the denominator vectors of all cluster variables of the seed
/// (x; B) with the almost positive roots of the Cartan counterpart of B.
inline BijectionReport check_denominator_bijection(const ExchangeMatrix& b, std::size_t budget = kDefaultFiniteTypeBudget) {
  EnumerateOptions opts;
  opts.symbolic = true;
  opts.budget = budget;
  const ExchangeGraph g = enumerate_exchange_graph(b, opts);
  const RootSystem rs = generate_root_system(cartan_counterpart(b));
  const int n = b.rank();

  BijectionReport rep;
  rep.type = is_finite_type(b).name();
  rep.almost_positive_roots = rs.almost_positive.size();
  std::multiset<Root> found;
  for (const auto& [fp, rf] : cluster_variables(g)) {
    DenominatorEntry e{reduce_fraction(rf), denominator_vector(rf), false};
    const bool initial = std::all_of(e.denominator.begin(), e.denominator.end(), [](long c) { return c <= 0; });
    if (initial) {
      e.constant_term = true;  // x_i has no P_alpha to test
      for (int i = 0; i < n; ++i)
        if (e.variable == RationalFunction::variable(rf.modulus(), n, i) && e.denominator != detail::simple_root(n, i, -1)) {
          rep.initial_mismatches.push_back(i);
        }
    } else {
      e.constant_term = evaluate(e.variable.num(), std::vector<Residue>(n, 0)) != 0;
      if (!e.constant_term) rep.zero_constant_terms.push_back(e.variable.to_string());
    }
    found.insert(e.denominator);
    rep.entries.push_back(std::move(e));
  }
  rep.cluster_variables = rep.entries.size();
  for (int i = 0; i < n; ++i) {
    const bool present = std::any_of(rep.entries.begin(), rep.entries.end(), [&](const DenominatorEntry& e) {
      return e.variable == RationalFunction::variable(kFingerprintPrime, n, i);
    });
    if (!present) rep.initial_mismatches.push_back(i);
  }
  const std::multiset<Root> expected(rs.almost_positive.begin(), rs.almost_positive.end());
  std::set_difference(expected.begin(), expected.end(), found.begin(), found.end(),
                      std::back_inserter(rep.unmatched_roots));
  std::set_difference(found.begin(), found.end(), expected.begin(), expected.end(),
                      std::back_inserter(rep.unexplained_vectors));
  return rep;
}

inline BijectionReport check_denominator_bijection(Family family, int rank) {
  return check_denominator_bijection(dynkin_exchange_matrix(DynkinSpec{family, rank, std::nullopt}));
}

}  // namespace clustercrypt
