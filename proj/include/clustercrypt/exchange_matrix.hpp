#pragma once

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "clustercrypt/error.hpp"

namespace clustercrypt {

/// Square sign-skew-symmetric integer matrix (b_ij), stored row-major.
/// Frozen rows are not supported: the matrix is always n x n.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;

  /// Zero matrix of rank n.
  explicit ExchangeMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 0) throw Error(ErrorCode::InvalidMatrix, "negative rank");
  }

  static ExchangeMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    const int n = static_cast<int>(rows.size());
    ExchangeMatrix b(n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) {
        throw Error(ErrorCode::InvalidMatrix, "row " + std::to_string(i) + " has wrong length (frozen rows unsupported)");
      }
      for (int j = 0; j < n; ++j) b.at(i, j) = rows[i][j];
    }
    b.validate();
    return b;
  }

  int rank() const { return n_; }

  long operator()(int i, int j) const { return entries_[index(i, j)]; }

  std::vector<std::vector<long>> rows() const {
    std::vector<std::vector<long>> out(n_, std::vector<long>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  /// Throws InvalidMatrix unless sign-skew-symmetric with zero diagonal.
  void validate() const {
    for (int i = 0; i < n_; ++i) {
      if ((*this)(i, i) != 0) throw Error(ErrorCode::InvalidMatrix, "nonzero diagonal entry");
      for (int j = i + 1; j < n_; ++j) {
        const long a = (*this)(i, j), b = (*this)(j, i);
        const bool ok = (a == 0 && b == 0) || (a > 0 && b < 0) || (a < 0 && b > 0);
        if (!ok) {
          throw Error(ErrorCode::InvalidMatrix,
                      "entries (" + std::to_string(i) + "," + std::to_string(j) + ") not sign-skew-symmetric");
        }
      }
    }
  }

  bool is_skew_symmetric() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if ((*this)(i, j) != -(*this)(j, i)) return false;
    return true;
  }

  /// Simultaneous row/column permutation: result(i, j) = this(perm[i], perm[j]).
  ExchangeMatrix permuted(const std::vector<int>& perm) const {
    ExchangeMatrix out(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out.at(i, j) = (*this)(perm[i], perm[j]);
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (int i = 0; i < n_; ++i) {
      os << '[';
      for (int j = 0; j < n_; ++j) os << (j ? " " : "") << (*this)(i, j);
      os << "]\n";
    }
    return os.str();
  }

  friend bool operator==(const ExchangeMatrix&, const ExchangeMatrix&) = default;
  friend auto operator<=>(const ExchangeMatrix& a, const ExchangeMatrix& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.entries_ <=> b.entries_;
  }

  const std::vector<long>& entries() const { return entries_; }

 private:
  friend ExchangeMatrix matrix_mutate(const ExchangeMatrix&, int);

  long& at(int i, int j) { return entries_[index(i, j)]; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  int n_ = 0;
  std::vector<long> entries_;
};

inline void check_vertex(int k, int n) {
  if (k < 0 || k >= n) {
    throw Error(ErrorCode::InvalidVertex, "vertex " + std::to_string(k) + " outside [0, " + std::to_string(n) + ")");
  }
}

/// Fomin-Zelevinsky matrix mutation in direction k.
inline ExchangeMatrix matrix_mutate(const ExchangeMatrix& b, int k) {
  const int n = b.rank();
  check_vertex(k, n);
  ExchangeMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == k || j == k) {
        out.at(i, j) = -b(i, j);
      } else {
        const long bik = b(i, k), bkj = b(k, j);
        out.at(i, j) = b(i, j) + (std::labs(bik) * bkj + bik * std::labs(bkj)) / 2;
      }
    }
  }
  return out;
}

/// Cartan counterpart: 2 on the diagonal, -|b_ij| elsewhere.
inline std::vector<std::vector<long>> cartan_counterpart(const ExchangeMatrix& b) {
  const int n = b.rank();
  std::vector<std::vector<long>> a(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = i == j ? 2 : -std::labs(b(i, j));
  return a;
}

/// Quiver without loops or 2-cycles; arrows[i][j] is the number of arrows i -> j.
class Quiver {
 public:
  explicit Quiver(int n = 0) : arrows_(n, std::vector<long>(n, 0)) {}

  static Quiver from_matrix(const ExchangeMatrix& b) {
    if (!b.is_skew_symmetric()) throw Error(ErrorCode::InvalidMatrix, "quivers need a skew-symmetric matrix");
    Quiver q(b.rank());
    for (int i = 0; i < b.rank(); ++i)
      for (int j = 0; j < b.rank(); ++j)
        if (b(i, j) > 0) q.arrows_[i][j] = b(i, j);
    return q;
  }

  int vertex_count() const { return static_cast<int>(arrows_.size()); }
  long arrows(int from, int to) const { return arrows_[from][to]; }

  void add_arrows(int from, int to, long count) {
    check_vertex(from, vertex_count());
    check_vertex(to, vertex_count());
    if (from == to) throw Error(ErrorCode::InvalidInput, "loops are not allowed");
    arrows_[from][to] += count;
    cancel_two_cycle(from, to);
  }

  ExchangeMatrix to_matrix() const {
    const int n = vertex_count();
    std::vector<std::vector<long>> rows(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rows[i][j] = arrows_[i][j] - arrows_[j][i];
    return ExchangeMatrix::from_rows(rows);
  }

  /// Edge list in DOT syntax, one line per arrow multiplicity group.
  std::string to_dot(const std::string& name = "Q") const {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (int i = 0; i < vertex_count(); ++i) os << "  x" << i << ";\n";
    for (int i = 0; i < vertex_count(); ++i)
      for (int j = 0; j < vertex_count(); ++j)
        if (arrows_[i][j] > 0) {
          os << "  x" << i << " -> x" << j;
          if (arrows_[i][j] > 1) os << " [label=\"" << arrows_[i][j] << "\"]";
          os << ";\n";
        }
    os << "}\n";
    return os.str();
  }

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  friend Quiver quiver_mutate(const Quiver&, int);

  void cancel_two_cycle(int i, int j) {
    const long both = std::min(arrows_[i][j], arrows_[j][i]);
    arrows_[i][j] -= both;
    arrows_[j][i] -= both;
  }

  std::vector<std::vector<long>> arrows_;
};

/// Three-step quiver mutation at k: compose paths through k, cancel 2-cycles,
/// reverse the arrows incident with k.
inline Quiver quiver_mutate(const Quiver& q, int k) {
  const int n = q.vertex_count();
  check_vertex(k, n);
  Quiver out = q;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == k || j == k || i == j) continue;
      const long through = q.arrows_[i][k] * q.arrows_[k][j];
      if (through > 0) out.arrows_[i][j] += through;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.cancel_two_cycle(i, j);
  for (int i = 0; i < n; ++i) std::swap(out.arrows_[i][k], out.arrows_[k][i]);
  return out;
}

}  // namespace clustercrypt
