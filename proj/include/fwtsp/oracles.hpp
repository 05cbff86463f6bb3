#pragma once

#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fwtsp/cost_matrix.hpp"
#include "fwtsp/permutation.hpp"

// Reference implementations used only to check the solver.  They are written
// for clarity, not speed, and refuse sizes they cannot handle exactly.

namespace fwtsp {

struct OracleReport {
  Value optimum = kInf;
  Permutation optimizer;
  long long examined = 0;  // permutations / states visited
  double elapsed_ms = 0;
};

namespace detail {

class StopWatch {
 public:
  StopWatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// Exact assignment optimum by full permutation enumeration.  n <= 10.
inline OracleReport brute_ap(const CostMatrix& m) {
  if (m.n() > 10) throw std::invalid_argument("brute_ap: n > 10");
  detail::StopWatch watch;
  OracleReport report;
  std::vector<int> row(m.n());
  std::iota(row.begin(), row.end(), 1);
  do {
    ++report.examined;
    Value total = 0;
    for (int i = 1; i <= m.n() && total < kInf; ++i) total = vadd(total, m(i, row[i - 1]));
    if (total < report.optimum) {
      report.optimum = total;
      report.optimizer = Permutation::from_row(row);
    }
  } while (std::next_permutation(row.begin(), row.end()));
  report.elapsed_ms = watch.ms();
  return report;
}

// Exact assignment optimum via shortest augmenting paths (Jonker-Volgenant
// flavour).  Missing arcs become a finite big-M so the potentials stay
// finite; a result at or above big-M means no finite assignment exists.
inline OracleReport hungarian_ap(const CostMatrix& m) {
  detail::StopWatch watch;
  const int n = m.n();
  Value max_abs = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && is_finite(m(i, j))) max_abs = std::max(max_abs, std::abs(m(i, j)));
  const Value big = max_abs * (2 * static_cast<Value>(n) + 2) + 1;
  const auto cost = [&](int i, int j) { return is_finite(m(i, j)) ? m(i, j) : big; };

  // match_col[j] = row assigned to column j; index 0 is the working slot.
  std::vector<int> match_col(n + 1, 0);
  std::vector<Value> pot_row(n + 1, 0), pot_col(n + 1, 0), min_value(n + 1);
  std::vector<int> from(n + 1);
  std::vector<char> used(n + 1);
  OracleReport report;
  for (int i = 1; i <= n; ++i) {
    match_col[0] = i;
    int j0 = 0;
    std::fill(min_value.begin(), min_value.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = match_col[j0];
      int j1 = -1;
      Value delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        ++report.examined;
        const Value cur = cost(i0, j) - pot_row[i0] - pot_col[j];
        if (cur < min_value[j]) {
          min_value[j] = cur;
          from[j] = j0;
        }
        if (min_value[j] < delta) {
          delta = min_value[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          pot_row[match_col[j]] += delta;
          pot_col[j] -= delta;
        } else {
          min_value[j] -= delta;
        }
      }
      j0 = j1;
    } while (match_col[j0] != 0);
    do {
      const int j1 = from[j0];
      match_col[j0] = match_col[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> row(n);
  for (int j = 1; j <= n; ++j) row[match_col[j] - 1] = j;
  report.optimizer = Permutation::from_row(row);
  Value total = 0;
  bool broken = false;
  for (int i = 1; i <= n; ++i) {
    const int j = report.optimizer(i);
    if (!is_finite(m(i, j))) broken = true;
    total = vadd(total, m(i, j));
  }
  report.optimum = broken ? kInf : total;
  report.elapsed_ms = watch.ms();
  return report;
}

// Exact tour optimum by dynamic programming over subsets.  n <= 15.
inline OracleReport held_karp_tsp(const CostMatrix& m) {
  if (m.n() > 15) throw std::invalid_argument("held_karp_tsp: n > 15");
  detail::StopWatch watch;
  const int n = m.n();
  OracleReport report;
  if (n == 2) {
    report.optimizer = Permutation::from_row({2, 1});
    report.optimum = vadd(m(1, 2), m(2, 1));
    report.examined = 1;
    report.elapsed_ms = watch.ms();
    return report;
  }
  // States are paths that start at city 1 and end at city j in 2..n; the
  // mask ranges over subsets of {2..n}, bit k-2 standing for city k.
  const int bits = n - 1;
  const std::size_t full = std::size_t{1} << bits;
  std::vector<Value> dp(full * bits, kInf);
  std::vector<int> parent(full * bits, 0);
  const auto at = [bits](std::size_t mask, int j) { return mask * bits + (j - 2); };
  for (int j = 2; j <= n; ++j) dp[at(std::size_t{1} << (j - 2), j)] = m(1, j);
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (int j = 2; j <= n; ++j) {
      if (!(mask >> (j - 2) & 1)) continue;
      const Value base = dp[at(mask, j)];
      if (base >= kInf) continue;
      ++report.examined;
      for (int k = 2; k <= n; ++k) {
        if (mask >> (k - 2) & 1) continue;
        const Value candidate = vadd(base, m(j, k));
        if (candidate < dp[at(mask | std::size_t{1} << (k - 2), k)]) {
          dp[at(mask | std::size_t{1} << (k - 2), k)] = candidate;
          parent[at(mask | std::size_t{1} << (k - 2), k)] = j;
        }
      }
    }
  }
  int best_end = 0;
  for (int j = 2; j <= n; ++j) {
    const Value candidate = vadd(dp[at(full - 1, j)], m(j, 1));
    if (candidate < report.optimum) {
      report.optimum = candidate;
      best_end = j;
    }
  }
  if (best_end) {
    std::vector<int> order;  // cities in visit order, starting at 1
    std::size_t mask = full - 1;
    for (int j = best_end; j != 0;) {
      order.push_back(j);
      const int prev = parent[at(mask, j)];
      mask ^= std::size_t{1} << (j - 2);
      j = prev;
    }
    order.push_back(1);
    std::reverse(order.begin(), order.end());
    report.optimizer = Permutation::from_single_cycle(order);
  }
  report.elapsed_ms = watch.ms();
  return report;
}

// Exact tour optimum by enumerating all (n-1)! cyclic orders.  n <= 10.
inline OracleReport exhaustive_tsp(const CostMatrix& m) {
  if (m.n() > 10) throw std::invalid_argument("exhaustive_tsp: n > 10");
  detail::StopWatch watch;
  const int n = m.n();
  OracleReport report;
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 2);
  do {
    ++report.examined;
    Value total = m(1, rest[0]);
    for (int k = 0; k + 1 < n - 1 && total < kInf; ++k)
      total = vadd(total, m(rest[k], rest[k + 1]));
    total = vadd(total, m(rest[n - 2], 1));
    if (total < report.optimum) {
      report.optimum = total;
      std::vector<int> order{1};
      order.insert(order.end(), rest.begin(), rest.end());
      report.optimizer = Permutation::from_single_cycle(order);
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  report.elapsed_ms = watch.ms();
  return report;
}

struct BellmanFordResult {
  std::vector<Value> dist;  // dist[0] unused
  bool negative_cycle = false;  // a negative cycle is reachable from source
};

// Textbook relaxation on the complete digraph whose arc weights are the
// finite entries of a (i != j).  Runs n-1 passes, then flags pass n.
inline BellmanFordResult bellman_ford(const ValueMatrix& a, int source) {
  const int n = a.n();
  BellmanFordResult result;
  result.dist.assign(n + 1, kInf);
  result.dist[source] = 0;
  for (int pass = 1; pass <= n; ++pass) {
    bool changed = false;
    for (int i = 1; i <= n; ++i) {
      if (result.dist[i] >= kInf) continue;
      for (int j = 1; j <= n; ++j) {
        if (i == j || a(i, j) >= kInf) continue;
        const Value candidate = vadd(result.dist[i], a(i, j));
        if (candidate < result.dist[j]) {
          result.dist[j] = candidate;
          changed = true;
        }
      }
    }
    if (pass == n && changed) result.negative_cycle = true;
    if (!changed) break;
  }
  return result;
}

// True iff the digraph of a contains any negative cycle (virtual source
// reaching every vertex at distance zero).
inline bool has_negative_cycle(const ValueMatrix& a) {
  const int n = a.n();
  std::vector<Value> dist(n + 1, 0);
  for (int pass = 1; pass <= n; ++pass) {
    bool changed = false;
    for (int i = 1; i <= n; ++i) {
      if (dist[i] <= kNegInf) continue;
      for (int j = 1; j <= n; ++j) {
        if (i == j || a(i, j) >= kInf) continue;
        const Value candidate = vadd(dist[i], a(i, j));
        if (candidate < dist[j]) {
          dist[j] = candidate;
          changed = true;
        }
      }
    }
    if (pass == n && changed) return true;
    if (!changed) break;
  }
  return false;
}

// Extracts some negative cycle as a vertex list, or nullopt when none exists.
// Tracks predecessors over the same all-zero start as has_negative_cycle; a
// vertex relaxed on pass n must lie on or downstream of a negative cycle, so
// walking n predecessor steps lands inside the cycle.
inline std::optional<std::vector<int>> find_negative_cycle_bf(const ValueMatrix& a) {
  const int n = a.n();
  std::vector<Value> dist(n + 1, 0);
  std::vector<int> pred(n + 1, 0);
  int touched = 0;
  for (int pass = 1; pass <= n; ++pass) {
    bool changed = false;
    for (int i = 1; i <= n; ++i) {
      if (dist[i] <= kNegInf) continue;
      for (int j = 1; j <= n; ++j) {
        if (i == j || a(i, j) >= kInf) continue;
        const Value candidate = vadd(dist[i], a(i, j));
        if (candidate < dist[j]) {
          dist[j] = candidate;
          pred[j] = i;
          changed = true;
          if (pass == n) touched = j;
        }
      }
    }
    if (!changed) return std::nullopt;
  }
  if (!touched) return std::nullopt;
  int v = touched;
  for (int step = 0; step < n; ++step) v = pred[v];
  std::vector<int> cycle;
  for (int u = v;;) {
    cycle.push_back(u);
    u = pred[u];
    if (u == v) break;
  }
  std::reverse(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

struct SimpleCycle {
  std::vector<int> vertices;  // rotated so the smallest vertex comes first
  Value total = 0;
};

namespace detail {

inline void cycle_dfs(const ValueMatrix& a, Value bound, int max_len, int root, int at,
                      Value sum, std::vector<int>& path, std::vector<char>& on_path,
                      std::vector<SimpleCycle>& out) {
  if (static_cast<int>(path.size()) >= 2 && at != root) {
    const Value closing = a(at, root);
    if (closing < kInf) {
      const Value total = vadd(sum, closing);
      if (total < bound) out.push_back({path, total});
    }
  }
  if (static_cast<int>(path.size()) == max_len) return;
  for (int next = root + 1; next <= a.n(); ++next) {
    if (on_path[next] || a(at, next) >= kInf) continue;
    on_path[next] = 1;
    path.push_back(next);
    cycle_dfs(a, bound, max_len, root, next, vadd(sum, a(at, next)), path, on_path, out);
    path.pop_back();
    on_path[next] = 0;
  }
}

}  // namespace detail

// Every simple cycle (length 2..max_len) of total value < bound, each listed
// once with its smallest vertex first.  Exhaustive, so n <= 8.
inline std::vector<SimpleCycle> enumerate_cycles_upto(const ValueMatrix& a, Value bound,
                                                      int max_len) {
  if (a.n() > 8) throw std::invalid_argument("enumerate_cycles_upto: n > 8");
  std::vector<SimpleCycle> out;
  std::vector<int> path;
  std::vector<char> on_path(a.n() + 1, 0);
  for (int root = 1; root <= a.n(); ++root) {
    path.assign(1, root);
    on_path.assign(a.n() + 1, 0);
    on_path[root] = 1;
    detail::cycle_dfs(a, bound, std::min(max_len, a.n()), root, root, 0, path, on_path, out);
  }
  const auto key = [](const SimpleCycle& c) { return std::make_pair(c.total, c.vertices); };
  std::sort(out.begin(), out.end(),
            [&](const SimpleCycle& x, const SimpleCycle& y) { return key(x) < key(y); });
  return out;
}

// Smallest rotation offset r such that every prefix sum of the rotated arc
// value list stays strictly below bound; empty when the total does not.
// Such a rotation always exists when total < bound (take the rotation that
// starts right after the maximum prefix of the original list).
inline std::optional<int> negative_prefix_rotation(const std::vector<Value>& weights,
                                                   Value bound = 0) {
  const int len = static_cast<int>(weights.size());
  Value total = 0;
  for (const Value w : weights) total = vadd(total, w);
  if (total >= bound) return std::nullopt;
  for (int r = 0; r < len; ++r) {
    Value sum = 0;
    bool ok = true;
    for (int k = 0; k < len && ok; ++k) {
      sum = vadd(sum, weights[(r + k) % len]);
      if (sum >= bound) ok = false;
    }
    if (ok) return r;
  }
  return std::nullopt;
}

}  // namespace fwtsp
