#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fwtsp/cost_matrix.hpp"
#include "fwtsp/greedy.hpp"
#include "fwtsp/oracles.hpp"
#include "fwtsp/permutation.hpp"

namespace fwtsp {

// Grow-on-demand bitset over vertex numbers.
class VertexMask {
 public:
  void set(int v) {
    const std::size_t word = static_cast<std::size_t>(v) >> 6;
    if (word >= words_.size()) words_.resize(word + 1, 0);
    words_[word] |= 1ull << (v & 63);
  }

  bool test(int v) const {
    const std::size_t word = static_cast<std::size_t>(v) >> 6;
    return word < words_.size() && ((words_[word] >> (v & 63)) & 1);
  }

  bool intersects(const VertexMask& other) const {
    const std::size_t common = std::min(words_.size(), other.words_.size());
    for (std::size_t w = 0; w < common; ++w)
      if (words_[w] & other.words_[w]) return true;
    return false;
  }

  void clear() { words_.clear(); }

 private:
  std::vector<std::uint64_t> words_;
};

enum class FwPolicy { Full, NegativeOnly, BoundedNegative };

// Triangle-process state.  Full keeps the textbook all-pairs table with
// midpoint reconstruction; the searching policies store, for every pair,
// the best simple path below the bound together with its vertex list.
class FwState {
 public:
  FwState() = default;

  FwState(int n, FwPolicy policy, Value bound)
      : n_(n), policy_(policy), bound_(bound), values_(n, kInf),
        mid_(policy == FwPolicy::Full
                 ? static_cast<std::size_t>(n) * n
                 : 0,
             0),
        paths_(policy == FwPolicy::Full ? 0 : static_cast<std::size_t>(n) * n),
        sets_(paths_.size()) {}

  int n() const { return n_; }
  FwPolicy policy() const { return policy_; }
  Value bound() const { return bound_; }
  void set_bound(Value b) { bound_ = b; }
  int iterations() const { return iterations_; }
  void set_iterations(int t) { iterations_ = t; }

  Value value(int i, int j) const { return values_(i, j); }
  Value& value(int i, int j) { return values_(i, j); }
  const ValueMatrix& values() const { return values_; }

  int mid(int i, int j) const { return mid_[idx(i, j)]; }
  void set_mid(int i, int j, int k) { mid_[idx(i, j)] = k; }

  const std::vector<int>& path(int i, int j) const { return paths_[idx(i, j)]; }
  const VertexMask& vertex_set(int i, int j) const { return sets_[idx(i, j)]; }

  void store_path(int i, int j, Value v, std::vector<int> path) {
    const std::size_t at = idx(i, j);
    values_(i, j) = v;
    sets_[at].clear();
    for (const int u : path) sets_[at].set(u);
    paths_[at] = std::move(path);
  }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
  }

  int n_ = 0;
  FwPolicy policy_ = FwPolicy::Full;
  Value bound_ = 0;
  ValueMatrix values_;
  std::vector<int> mid_;                   // Full: midpoint, 0 = direct arc
  std::vector<std::vector<int>> paths_;    // searching: vertex list i..j
  std::vector<VertexMask> sets_;           // searching: set of path vertices
  int iterations_ = 0;
};

// Vertex sequence i .. j for a finite entry.  The searching policies return
// the stored list; Full expands midpoints and refuses tables poisoned by
// negative cycles (expansion beyond n vertices).
inline std::vector<int> reconstruct_path(const FwState& s, int i, int j) {
  if (s.value(i, j) >= kInf) throw std::invalid_argument("no stored path to expand");
  if (s.policy() != FwPolicy::Full) return s.path(i, j);
  std::vector<int> out{i};
  int expanded = 0;
  const std::function<void(int, int)> expand = [&](int a, int b) {
    if (++expanded > s.n() + 1)
      throw std::logic_error("path expansion exceeded vertex count");
    const int k = s.mid(a, b);
    if (k == 0) {
      out.push_back(b);
      return;
    }
    expand(a, k);
    expand(k, b);
  };
  expand(i, j);
  return out;
}

struct NegativePath {
  int from = 0;
  int to = 0;
  Value value = 0;
  std::vector<int> path;
};

// Every stored entry with a negative value, row-major.
inline std::vector<NegativePath> negative_paths(const FwState& s) {
  std::vector<NegativePath> out;
  for (int i = 1; i <= s.n(); ++i)
    for (int j = 1; j <= s.n(); ++j)
      if (i != j && s.value(i, j) < 0)
        out.push_back({i, j, s.value(i, j), reconstruct_path(s, i, j)});
  return out;
}

// Textbook all-pairs pass; exact when the matrix has no negative cycle.
inline FwState fw_all_pairs(const ValueMatrix& arcs) {
  const int n = arcs.n();
  FwState s(n, FwPolicy::Full, kInf);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) s.value(i, j) = i == j ? 0 : arcs(i, j);
  for (int k = 1; k <= n; ++k) {
    for (int i = 1; i <= n; ++i) {
      if (s.value(i, k) >= kInf) continue;
      for (int j = 1; j <= n; ++j) {
        const Value candidate = vadd(s.value(i, k), s.value(k, j));
        if (candidate < s.value(i, j)) {
          s.value(i, j) = candidate;
          s.set_mid(i, j, k);
        }
      }
    }
  }
  s.set_iterations(n);
  return s;
}

struct NegativeCycle {
  std::vector<int> vertices;  // rotation whose every prefix is below the bound
  Value value = 0;

  std::vector<int> canonical_vertices() const {
    std::vector<int> v = vertices;
    std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
    return v;
  }
};

struct FwSearchResult {
  std::optional<NegativeCycle> cycle;
  FwState state;
};

namespace detail {

inline std::string fw_step_line(int i, int j, int k, Value v) {
  return "      (" + std::to_string(i) + ", " + std::to_string(j) + ") + (" +
         std::to_string(j) + ", " + std::to_string(k) + ") -> (" + std::to_string(i) +
         ", " + std::to_string(k) + ")  " + value_to_string(v);
}

}  // namespace detail

// Negative-value search: keeps only path values below zero, extends each
// stored column entry by single arcs, and stops at the first negative
// closure.  Columns, rows and targets are scanned in ascending order, so the
// result is deterministic.  The cycle comes back in the rotation the search
// built, which has every prefix strictly negative.
inline FwSearchResult find_negative_cycle(const ValueMatrix& arcs, TraceFn trace = {}) {
  const int n = arcs.n();
  FwSearchResult out{std::nullopt, FwState(n, FwPolicy::NegativeOnly, 0)};
  FwState& s = out.state;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && arcs(i, j) < 0) s.store_path(i, j, arcs(i, j), {i, j});

  for (int iteration = 1; iteration <= n - 1; ++iteration) {
    s.set_iterations(iteration);
    if (trace) trace("    fw iteration " + std::to_string(iteration));
    bool changed = false;
    for (int j = 1; j <= n; ++j) {
      for (int i = 1; i <= n; ++i) {
        if (i == j || s.value(i, j) >= 0) continue;
        const Value left = s.value(i, j);
        const Value closing = vadd(left, arcs(j, i));
        if (closing < 0) {
          NegativeCycle cycle{s.path(i, j), closing};
          if (trace)
            trace("    cycle " + cycle_to_string(cycle.vertices) + "  " +
                  value_to_string(closing));
          out.cycle = std::move(cycle);
          return out;
        }
        for (int k = 1; k <= n; ++k) {
          if (k == j || k == i) continue;
          const Value candidate = vadd(left, arcs(j, k));
          if (candidate >= 0 || candidate >= s.value(i, k)) continue;
          if (s.vertex_set(i, j).test(k)) continue;  // would repeat a vertex
          std::vector<int> path = s.path(i, j);
          path.push_back(k);
          if (trace) trace(detail::fw_step_line(i, j, k, candidate));
          s.store_path(i, k, candidate, std::move(path));
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return out;
}

inline FwSearchResult find_negative_cycle(const CostMatrix& m, const Permutation& p,
                                          TraceFn trace = {}) {
  return find_negative_cycle(ReducedMatrix(m, p).values, std::move(trace));
}

// Callback for bounded enumeration; receives each newly closed cycle and
// returns the bound the search should continue with.
using CycleSink = std::function<Value(const NegativeCycle&)>;

// Bounded-value search: like the negative search but with an adjustable
// upper bound.  Every simple cycle with value below the current bound is
// reported exactly once per strict improvement of its closing pair, and the
// sink may tighten the bound mid-run.
inline FwState enumerate_bounded_cycles(const ValueMatrix& arcs, Value bound,
                                        CycleSink on_cycle, TraceFn trace = {}) {
  const int n = arcs.n();
  FwState s(n, FwPolicy::BoundedNegative, bound);
  ValueMatrix reported(n, kInf);  // best closure already sent per (i, j)
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && arcs(i, j) < s.bound()) s.store_path(i, j, arcs(i, j), {i, j});

  for (int iteration = 1; iteration <= n - 1; ++iteration) {
    s.set_iterations(iteration);
    if (trace) trace("    fw iteration " + std::to_string(iteration));
    bool changed = false;
    for (int j = 1; j <= n; ++j) {
      for (int i = 1; i <= n; ++i) {
        if (i == j || s.value(i, j) >= s.bound()) continue;
        const Value left = s.value(i, j);
        const Value closing = vadd(left, arcs(j, i));
        if (closing < s.bound() && closing < reported(i, j)) {
          reported(i, j) = closing;
          NegativeCycle cycle{s.path(i, j), closing};
          if (trace)
            trace("    cycle " + cycle_to_string(cycle.vertices) + "  " +
                  value_to_string(closing));
          const Value next = on_cycle ? on_cycle(cycle) : s.bound();
          s.set_bound(std::min(s.bound(), next));
        }
        if (s.value(i, j) >= s.bound()) continue;  // bound may have tightened
        for (int k = 1; k <= n; ++k) {
          if (k == j || k == i) continue;
          const Value candidate = vadd(left, arcs(j, k));
          if (candidate >= s.bound() || candidate >= s.value(i, k)) continue;
          if (s.vertex_set(i, j).test(k)) continue;
          std::vector<int> path = s.path(i, j);
          path.push_back(k);
          if (trace) trace(detail::fw_step_line(i, j, k, candidate));
          s.store_path(i, k, candidate, std::move(path));
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return s;
}

inline FwState enumerate_bounded_cycles(const CostMatrix& m, const Permutation& p,
                                        Value bound, CycleSink on_cycle,
                                        TraceFn trace = {}) {
  return enumerate_bounded_cycles(ReducedMatrix(m, p).values, bound,
                                  std::move(on_cycle), std::move(trace));
}

struct Phase2Result {
  Permutation assignment;  // optimal derangement for the assignment relaxation
  Value cost = 0;
  int cancellations = 0;   // cycles applied after phase 1
  FwState final_state;     // last search state (the run that found no cycle)
};

// Phase 2: cancel negative cycles found by the search until none remain.
// Each application strictly lowers the cost, so the loop terminates.  A
// reference check backs the search: if the search reports no cycle while one
// still exists (never observed), it is taken from the reference scan so the
// phase always ends at the true assignment optimum.
inline Phase2Result phase2_run(const CostMatrix& m, GreedyTrace& trace,
                               TraceFn tracefn = {}) {
  const auto emit = [&](const std::string& line) {
    if (tracefn) tracefn(line);
  };
  Permutation p = trace.last();
  const int n = p.n();
  Phase2Result out;
  emit("phase2 start " + cycle_notation(p) + "  cost " +
       value_to_string(permutation_cost(p, m)));
  for (;;) {
    FwSearchResult run = find_negative_cycle(m, p, tracefn);
    std::optional<std::vector<int>> cancel;
    Value claimed = 0;
    if (run.cycle) {
      cancel = run.cycle->vertices;
      claimed = run.cycle->value;
    } else if (auto reference = find_negative_cycle_bf(ReducedMatrix(m, p).values)) {
      cancel = *reference;  // safety net, not expected to trigger
      claimed = reduced_cycle_value(m, p, *reference);
      emit("  reference scan found a cycle the search missed");
    }
    if (!cancel) {
      out.final_state = std::move(run.state);
      break;
    }
    if (claimed >= 0 || claimed != reduced_cycle_value(m, p, *cancel))
      throw std::logic_error("negative cycle value mismatch");
    const Permutation applied =
        compose(p, Permutation::from_cycles(n, {*cancel}));
    if (!is_derangement(applied))
      throw std::logic_error("cancelled cycle was not admissible");
    p = applied;
    trace.assignment_steps.push_back(p);
    ++out.cancellations;
    emit("  cancel " + cycle_to_string(*cancel) + "  " + value_to_string(claimed) +
         "  -> cost " + value_to_string(permutation_cost(p, m)));
  }
  out.assignment = p;
  out.cost = permutation_cost(p, m);
  emit("phase2 assignment " + cycle_notation(p) + "  cost " +
       value_to_string(out.cost));
  for (const NegativePath& np : negative_paths(out.final_state)) {
    std::string line = "  path (" + std::to_string(np.from) + " -> " +
                       std::to_string(np.to) + ")  " + value_to_string(np.value) + "  [";
    for (std::size_t k = 0; k < np.path.size(); ++k)
      line += (k ? ", " : "") + std::to_string(np.path[k]);
    emit(line + "]");
  }
  return out;
}

}  // namespace fwtsp
