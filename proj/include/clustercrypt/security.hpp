#pragma once

// Key-recovery counting: an attacker who knows the diagram must pick the right
// vertex of the exchange graph and the right labeling of it, so the chance is
// 1/(N_C r!). Closed forms quoted for the classical families are compared with
// enumeration; disagreements become report rows, not errors.

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "clustercrypt/dynkin.hpp"
#include "clustercrypt/exchange_graph.hpp"
#include "clustercrypt/rational_function.hpp"

namespace clustercrypt {

inline mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

/// Published closed form for the probability of guessing the initial seed.
/// Exists for A, B, C, D only.
inline std::optional<mpq_class> closed_form_probability(Family family, int r) {
  const auto ur = static_cast<unsigned long>(r);
  mpq_class q;
  switch (family) {
    case Family::A:
      q = mpq_class(mpz_class(r) * (r + 2), factorial(2 * ur + 2));
      break;
    case Family::B:
    case Family::C:
      q = mpq_class(factorial(ur), factorial(2 * ur));
      break;
    case Family::D:
      q = mpq_class(factorial(ur - 1), mpz_class(3 * r - 2) * factorial(2 * ur - 2));
      break;
    default:
      return std::nullopt;
  }
  q.canonicalize();
  return q;
}

/// The value printed in the published table for E, F, G, keyed by type.
struct PublishedTableEntry {
  DynkinType type;
  std::string value;  // as printed, under the heading "1/(N_c r)"
};

inline const std::vector<PublishedTableEntry>& published_exceptional_table() {
  static const std::vector<PublishedTableEntry> table{
      {{Family::E, 6}, "1.66"}, {{Family::E, 7}, "4.76"}, {{Family::E, 8}, "9.88"},
      {{Family::F, 4}, "3.9"},  {{Family::G, 2}, "0.0625"},
  };
  return table;
}

struct ProbabilityRow {
  DynkinType type;
  std::optional<mpz_class> nc_enumerated;
  std::optional<mpq_class> nc_closed_form;  // N_C implied by the closed form
  std::optional<mpz_class> labeled_seeds;
  std::optional<mpq_class> probability;     // 1/(N_C r!) from enumeration
  std::optional<mpq_class> closed_form;
  std::optional<std::string> published;     // exceptional table value, verbatim
  std::vector<std::string> flags;
  std::vector<std::string> notes;

  /// Enumeration and closed form agree; empty when either is missing.
  std::optional<bool> match() const {
    if (!probability || !closed_form) return std::nullopt;
    return *probability == *closed_form;
  }
};

inline constexpr const char* kClosedFormMismatchFlag = "closed form disagrees with enumeration";
inline constexpr const char* kNotAProbabilityFlag = "not a probability, exceeds 1";

namespace detail {

/// "1.66" -> 166/100.
inline mpq_class parse_decimal(const std::string& text, int& decimals) {
  const auto dot = text.find('.');
  decimals = dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
  std::string digits = text;
  if (dot != std::string::npos) digits.erase(dot, 1);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
  mpq_class q(mpz_class(digits, 10), scale);
  q.canonicalize();
  return q;
}

/// Power of ten e with the published digits equal to q * 10^e truncated to
/// the same number of decimals, if any.
inline std::optional<int> shifted_agreement(const std::string& published, const mpq_class& q) {
  int decimals = 0;
  const mpq_class value = parse_decimal(published, decimals);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
  for (int e = 0; e <= 40; ++e) {
    mpz_class ten_e;
    mpz_ui_pow_ui(ten_e.get_mpz_t(), 10, static_cast<unsigned long>(e));
    const mpq_class shifted = q * ten_e * scale;
    const mpz_class truncated = shifted.get_num() / shifted.get_den();
    mpq_class candidate(truncated, scale);
    candidate.canonicalize();
    if (candidate == value) return e;
  }
  return std::nullopt;
}

}  // namespace detail

/// Enumerates the graph of the default orientation unless one is supplied.
inline ProbabilityRow key_recovery_probability(Family family, int r, const ExchangeGraph* graph) {
  validate_rank(family, r);
  ProbabilityRow row;
  row.type = {family, r};
  const mpz_class rf = factorial(static_cast<unsigned long>(r));
  if (graph) {
    if (graph->rank != r) throw Error(ErrorCode::InvalidInput, "graph rank differs from the requested rank");
    row.nc_enumerated = mpz_class(static_cast<unsigned long>(graph->size()));
    row.labeled_seeds = graph->labeled_seed_count();
    row.probability = mpq_class(1, *row.labeled_seeds);
    row.probability->canonicalize();
  }
  row.closed_form = closed_form_probability(family, r);
  if (row.closed_form) {
    row.nc_closed_form = 1 / (*row.closed_form * rf);
    row.nc_closed_form->canonicalize();
  }
  for (const auto& e : published_exceptional_table()) {
    if (e.type == row.type) {
      row.published = e.value;
      if (std::stod(e.value) > 1.0) row.flags.push_back(kNotAProbabilityFlag);
      if (row.probability) {
        const auto e10 = detail::shifted_agreement(e.value, *row.probability);
        if (e10 == 0) {
          row.notes.push_back("published value equals the enumerated probability");
        } else if (e10) {
          row.notes.push_back("published value equals the enumerated probability times 10^" + std::to_string(*e10) +
                              ", truncated");
        }
      }
    }
  }
  if (row.match() == false) row.flags.push_back(kClosedFormMismatchFlag);
  return row;
}

inline ProbabilityRow key_recovery_probability(Family family, int r, bool enumerate = true) {
  if (!enumerate) return key_recovery_probability(family, r, nullptr);
  const auto g = enumerate_exchange_graph(dynkin_exchange_matrix(DynkinSpec{family, r, std::nullopt}));
  return key_recovery_probability(family, r, &g);
}

namespace detail {

inline std::string show(const std::optional<mpz_class>& v) { return v ? v->get_str() : "-"; }
inline std::string show(const std::optional<mpq_class>& v) { return v ? v->get_str() : "-"; }

inline std::string decimal(const std::optional<mpq_class>& v) {
  if (!v) return "-";
  std::ostringstream os;
  os << std::setprecision(6) << v->get_d();
  return os.str();
}

inline std::string show_match(const ProbabilityRow& row) {
  const auto m = row.match();
  return m ? (*m ? "yes" : "no") : "-";
}

inline std::string join_flags(const ProbabilityRow& row) {
  std::string s;
  for (const auto& f : row.flags) s += (s.empty() ? "" : "; ") + f;
  return s;
}

}  // namespace detail

inline std::string probability_report_text(const std::vector<ProbabilityRow>& rows) {
  std::ostringstream os;
  os << "Key recovery probability 1/(N_C r!)\n";
  os << "fingerprint prime " << kFingerprintPrime << ", point seed " << kFingerprintSeed << "\n\n";
  for (const auto& row : rows) {
    os << row.type.name() << ": N_C enumerated " << detail::show(row.nc_enumerated) << ", labeled seeds "
       << detail::show(row.labeled_seeds) << ", probability " << detail::show(row.probability) << " ("
       << detail::decimal(row.probability) << ")\n";
    if (row.closed_form) {
      os << "  closed form " << detail::show(row.closed_form) << " (" << detail::decimal(row.closed_form)
         << "), implied N_C " << detail::show(row.nc_closed_form) << ", match " << detail::show_match(row) << "\n";
    }
    if (row.published) os << "  published table value " << *row.published << "\n";
    for (const auto& f : row.flags) os << "  FLAG: " << f << "\n";
    for (const auto& n : row.notes) os << "  note: " << n << "\n";
  }
  return os.str();
}

inline std::string probability_report_csv(const std::vector<ProbabilityRow>& rows) {
  std::ostringstream os;
  os << "family,rank,nc_enumerated,nc_closed_form,labeled_seeds,probability,closed_form,match,published,flags\n";
  for (const auto& row : rows) {
    os << family_letter(row.type.family) << ',' << row.type.rank << ',' << detail::show(row.nc_enumerated) << ','
       << detail::show(row.nc_closed_form) << ',' << detail::show(row.labeled_seeds) << ','
       << detail::show(row.probability) << ',' << detail::show(row.closed_form) << ',' << detail::show_match(row)
       << ',' << row.published.value_or("-") << ",\"" << detail::join_flags(row) << "\"\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// The published list of A_3 clusters.

inline const std::vector<std::vector<std::string>>& published_a3_clusters() {
  static const std::vector<std::vector<std::string>> list{
      {"x0", "x1", "x2"},
      {"x0", "x1", "(x1+1)/x2"},
      {"x0", "(x0x2+1)/x1", "x2"},
      {"(x1+1)/x0", "x1", "x2"},
      {"x0", "(x0x2+x1+1)/(x1x2)", "(x1+1)/x2"},
      {"(x1+1)/x0", "x1", "(x1+1)/x2"},
      {"(x1+1)/x0", "(x0x2+x1+1)/(x0x1)", "x2"},
      {"x0", "(x0x2+1)/x1", "(x0x2+x1+1)/(x1x2)"},
      {"(x0x2+x1+1)/(x0x1)", "(x0x2+1)/x1", "x2"},
      {"(x1+1)/x0", "(x1^2+x0x2+2x1+1)/(x0x1x2)", "(x1+1)/x2"},
      {"(x1+1)/x0", "(x0x2+x1+1)/(x0x1)", "(x1^2+x0x2+2x1+1)/(x0x1x2)"},
      {"(x1^2+x0x2+2x1+1)/(x0x1x2)", "(x0x2+x1+1)/(x1x2)", "(x1+1)/x2"},
      {"(x0x2+x1+1)/(x0x1)", "(x0x2+1)/x1", "(x0x2+x1+1)/(x1x2)"},
      {"(x0x2+x1+1)/(x1x2)", "(x0x2+x1+1)/(x0x1)", "(x1^2+x0x2+2x1+1)/(x0x1x2)"},
  };
  return list;
}

/// The permuted listing of the second cluster, given with its own matrix.
inline std::vector<std::string> published_a3_permuted_second() { return {"(x1+1)/x2", "x0", "x1"}; }

inline std::vector<std::vector<long>> published_a3_permuted_second_matrix() {
  return {{0, 0, -1}, {0, 0, 1}, {1, -1, 0}};
}

using Cluster = std::vector<RationalFunction>;

inline Cluster parse_cluster(const std::vector<std::string>& texts, Residue p, int nvars) {
  Cluster out;
  for (const auto& t : texts) out.push_back(parse_rational(t, p, nvars));
  return out;
}

/// Same set of rational functions, in any order.
inline bool same_cluster(const Cluster& a, const Cluster& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    bool hit = false;
    for (std::size_t j = 0; j < b.size() && !hit; ++j) {
      if (!used[j] && equivalent(x, b[j])) used[j] = hit = true;
    }
    if (!hit) return false;
  }
  return true;
}

/// Vertex whose cluster equals `cluster` as a set; needs symbolic clusters.
inline std::optional<int> find_cluster(const ExchangeGraph& g, const Cluster& cluster) {
  for (std::size_t v = 0; v < g.size(); ++v)
    if (same_cluster(g.vertices[v].cluster, cluster)) return static_cast<int>(v);
  return std::nullopt;
}

struct SeedListReport {
  bool bijection = false;
  std::vector<int> listed_of_vertex;     // vertex -> list index, -1 unmatched
  std::vector<int> unmatched_vertices;
  std::vector<int> unmatched_listed;
  std::string reason;

  std::string to_string() const {
    std::ostringstream os;
    if (bijection) {
      os << "bijection with the published list:";
      for (std::size_t v = 0; v < listed_of_vertex.size(); ++v) os << " v" << v << "=C" << listed_of_vertex[v] + 1;
      os << "\n";
      return os.str();
    }
    os << "mismatch: " << reason << "\n";
    for (int v : unmatched_vertices) os << "  vertex " << v << " has no listed cluster\n";
    for (int i : unmatched_listed) os << "  C" << i + 1 << " is not an enumerated cluster\n";
    return os.str();
  }
};

/// Matches every enumerated cluster with exactly one listed cluster.
inline SeedListReport verify_seed_list_A3(const ExchangeGraph& g) {
  SeedListReport rep;
  const auto& list = published_a3_clusters();
  if (g.rank != 3) {
    rep.reason = "graph has rank " + std::to_string(g.rank) + ", the list has rank 3";
    for (std::size_t i = 0; i < list.size(); ++i) rep.unmatched_listed.push_back(static_cast<int>(i));
    return rep;
  }
  for (const auto& v : g.vertices) {
    if (v.cluster.size() != 3) {
      rep.reason = "graph was enumerated without symbolic clusters";
      return rep;
    }
  }
  std::vector<Cluster> parsed;
  for (const auto& c : list) parsed.push_back(parse_cluster(c, g.prime, 3));
  std::vector<int> hits(list.size(), 0);
  rep.listed_of_vertex.assign(g.size(), -1);
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      if (same_cluster(g.vertices[v].cluster, parsed[i])) {
        rep.listed_of_vertex[v] = static_cast<int>(i);
        ++hits[i];
        break;
      }
    }
    if (rep.listed_of_vertex[v] < 0) rep.unmatched_vertices.push_back(static_cast<int>(v));
  }
  for (std::size_t i = 0; i < hits.size(); ++i)
    if (hits[i] != 1) rep.unmatched_listed.push_back(static_cast<int>(i));
  rep.bijection = g.size() == list.size() && rep.unmatched_vertices.empty() && rep.unmatched_listed.empty();
  if (!rep.bijection) rep.reason = "enumerated clusters and listed clusters differ";
  return rep;
}

}  // namespace clustercrypt
