#pragma once

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fwtsp/permutation.hpp"
#include "fwtsp/value.hpp"

namespace fwtsp {

// Dense n x n grid of extended integers, 1-based like everything else.
class ValueMatrix {
 public:
  ValueMatrix() = default;
  ValueMatrix(int n, Value fill) : n_(n), d_(static_cast<std::size_t>(n) * n, fill) {
    if (n < 1) throw std::invalid_argument("matrix size must be positive");
  }

  int n() const { return n_; }
  Value operator()(int i, int j) const { return d_[idx(i, j)]; }
  Value& operator()(int i, int j) { return d_[idx(i, j)]; }

  friend bool operator==(const ValueMatrix& a, const ValueMatrix& b) {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
  }

  int n_ = 0;
  std::vector<Value> d_;
};

// Asymmetric cost matrix with an infinite diagonal (no vertex loops).
class CostMatrix {
 public:
  CostMatrix() = default;

  explicit CostMatrix(int n) : d_(n, kInf) {
    if (n < 2) throw std::invalid_argument("cost matrix needs n >= 2");
  }

  static CostMatrix from_rows(const std::vector<std::vector<Value>>& rows) {
    CostMatrix m(static_cast<int>(rows.size()));
    for (int i = 1; i <= m.n(); ++i) {
      if (static_cast<int>(rows[i - 1].size()) != m.n())
        throw std::invalid_argument("row " + std::to_string(i) + " has wrong length");
      for (int j = 1; j <= m.n(); ++j) m.set(i, j, rows[i - 1][j - 1]);
    }
    for (int i = 1; i <= m.n(); ++i)
      if (m(i, i) < kInf) throw std::invalid_argument("diagonal must be INF");
    return m;
  }

  int n() const { return d_.n(); }
  Value operator()(int i, int j) const { return d_(i, j); }

  void set(int i, int j, Value v) {
    if (i == j && v < kInf) throw std::invalid_argument("diagonal must stay INF");
    if (v < kInf && (v > kMaxCost || v < -kMaxCost))
      throw std::invalid_argument("cost magnitude too large");
    d_(i, j) = v;
  }

  const ValueMatrix& values() const { return d_; }

 private:
  ValueMatrix d_;
};

// File format: first line n, then n whitespace-separated rows whose entries
// are integers or the token INF; the diagonal must be INF.
inline CostMatrix read_cost_matrix(std::istream& in) {
  std::string token;
  long line = 1;
  if (!(in >> token)) throw std::invalid_argument("line 1: missing size");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument("");
  } catch (...) {
    throw std::invalid_argument("line 1: size is not an integer: '" + token + "'");
  }
  if (n < 2 || n > 10000) throw std::invalid_argument("line 1: size out of range");
  CostMatrix m(n);
  for (int i = 1; i <= n; ++i) {
    line = i + 1;
    for (int j = 1; j <= n; ++j) {
      if (!(in >> token))
        throw std::invalid_argument("line " + std::to_string(line) + ", column " +
                                    std::to_string(j) + ": missing entry");
      const std::string where =
          "line " + std::to_string(line) + ", column " + std::to_string(j) + ": ";
      if (token == "INF") {
        if (i != j) m.set(i, j, kInf);
        continue;
      }
      Value v = 0;
      try {
        std::size_t used = 0;
        v = std::stoll(token, &used);
        if (used != token.size()) throw std::invalid_argument("");
      } catch (...) {
        throw std::invalid_argument(where + "not an integer or INF: '" + token + "'");
      }
      if (i == j) throw std::invalid_argument(where + "diagonal must be INF");
      if (v > kMaxCost || v < -kMaxCost)
        throw std::invalid_argument(where + "cost magnitude too large");
      m.set(i, j, v);
    }
  }
  return m;
}

inline CostMatrix read_cost_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_cost_matrix(in);
}

inline void write_cost_matrix(std::ostream& out, const CostMatrix& m) {
  out << m.n() << '\n';
  for (int i = 1; i <= m.n(); ++i) {
    for (int j = 1; j <= m.n(); ++j) {
      if (j > 1) out << ' ';
      out << value_to_string(m(i, j));
    }
    out << '\n';
  }
}

inline std::string write_cost_matrix(const CostMatrix& m) {
  std::ostringstream out;
  write_cost_matrix(out, m);
  return out.str();
}

// Row-wise candidate order: order(i, r) is the column with the r-th smallest
// cost in row i (diagonal excluded, ties by smaller column index).  Adding a
// constant to a row leaves its order unchanged, so the table serves the cost
// matrix and every reduced matrix derived from it alike.
class MinOrderTable {
 public:
  MinOrderTable() = default;

  explicit MinOrderTable(const CostMatrix& m) : n_(m.n()) {
    order_.resize(static_cast<std::size_t>(n_) * (n_ - 1));
    rank_.assign(static_cast<std::size_t>(n_) * n_, 0);
    std::vector<int> cols(n_ - 1);
    for (int i = 1; i <= n_; ++i) {
      int k = 0;
      for (int j = 1; j <= n_; ++j)
        if (j != i) cols[k++] = j;
      std::stable_sort(cols.begin(), cols.end(),
                       [&](int a, int b) { return m(i, a) < m(i, b); });
      for (int r = 1; r < n_; ++r) {
        order_[static_cast<std::size_t>(i - 1) * (n_ - 1) + (r - 1)] = cols[r - 1];
        rank_[static_cast<std::size_t>(i - 1) * n_ + (cols[r - 1] - 1)] = r;
      }
    }
  }

  int n() const { return n_; }

  // r in 1..n-1.
  int order(int i, int r) const {
    return order_[static_cast<std::size_t>(i - 1) * (n_ - 1) + (r - 1)];
  }

  // Rank of column j in row i (1 = cheapest); j == i has no rank.
  int rank(int i, int j) const {
    return rank_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)];
  }

 private:
  int n_ = 0;
  std::vector<int> order_;
  std::vector<int> rank_;
};

inline Value permutation_cost(const Permutation& p, const CostMatrix& m) {
  if (p.n() != m.n()) throw std::invalid_argument("permutation/matrix size mismatch");
  Value total = 0;
  for (int i = 1; i <= m.n(); ++i) total = vadd(total, m(i, p(i)));
  return total;
}

// Cost change on row i of replacing the current assignment arc (i, p(i)) by
// the arc (i, p(j)): the (i, j) entry of the reduced matrix at derangement p.
inline Value reduced_value(const CostMatrix& m, const Permutation& p, int i, int j) {
  return vsub(m(i, p(j)), m(i, p(i)));
}

// Total cost change of applying cycle c (as compose(p, c)) to p.
inline Value reduced_cycle_value(const CostMatrix& m, const Permutation& p,
                                 const std::vector<int>& c) {
  Value total = 0;
  for (std::size_t k = 0; k < c.size(); ++k)
    total = vadd(total, reduced_value(m, p, c[k], c[(k + 1) % c.size()]));
  return total;
}

// Materialized reduced matrix: r(i, j) = d(i, p(j)) - d(i, p(i)).  The
// diagonal is zero; the forbidden arc of each row (the one that would map a
// vertex to itself under composition) is infinite because it points at the
// diagonal of the cost matrix.
struct ReducedMatrix {
  ReducedMatrix(const CostMatrix& m, const Permutation& p)
      : base(&m), perm(p), values(m.n(), 0) {
    if (m.n() != p.n()) throw std::invalid_argument("permutation/matrix size mismatch");
    for (int i = 1; i <= m.n(); ++i)
      for (int j = 1; j <= m.n(); ++j) values(i, j) = reduced_value(m, p, i, j);
  }

  int n() const { return values.n(); }
  Value operator()(int i, int j) const { return values(i, j); }

  const CostMatrix* base;
  Permutation perm;
  ValueMatrix values;
};

struct DiffEntry {
  Value value = 0;  // cost(best candidate) - cost(current arc), never > 0
  int column = 0;   // column attaining the row minimum
};

// Row improvement potential: how much row i gains by switching to its
// cheapest column.  Zero when the current arc already is the row minimum.
inline DiffEntry diff(const CostMatrix& m, const Permutation& p,
                      const MinOrderTable& min_order, int i) {
  const int c = min_order.order(i, 1);
  const Value v = vsub(m(i, c), m(i, p(i)));
  if (v >= kInf) return {0, p(i)};  // row has no usable candidate
  return {std::min<Value>(v, 0), c};
}

}  // namespace fwtsp
