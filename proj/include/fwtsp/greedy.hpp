#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fwtsp/cost_matrix.hpp"
#include "fwtsp/permutation.hpp"

namespace fwtsp {

// Sink for the human-readable trial log; empty function disables tracing.
using TraceFn = std::function<void(const std::string&)>;

inline int floor_log2(int n) {
  int k = 0;
  while ((1 << (k + 1)) <= n) ++k;
  return k;
}

inline int ceil_log2(int n) {
  return (1 << floor_log2(n)) == n ? floor_log2(n) : floor_log2(n) + 1;
}

// A cycle with negative total value, stored in a rotation whose every
// partial sum is strictly negative.  Such a rotation always exists for a
// negative cycle: start right after the maximum prefix of any rotation.
struct CycleCandidate {
  std::vector<int> vertices;
  std::vector<Value> arc_values;   // arc_values[k] = value of (v_k, v_{k+1 mod L})
  std::vector<Value> partial_sums; // partial_sums[k] = sum of the first k+1 arcs
  Value total = 0;

  // Builds the candidate for the given cycle against derangement p,
  // rotating it into prefix-negative form.  Requires a negative total.
  static CycleCandidate from_vertices(const CostMatrix& m, const Permutation& p,
                                      std::vector<int> cycle) {
    const int len = static_cast<int>(cycle.size());
    if (len < 2) throw std::invalid_argument("cycle candidate needs length >= 2");
    CycleCandidate c;
    c.total = reduced_cycle_value(m, p, cycle);
    if (c.total >= 0) throw std::invalid_argument("cycle candidate must be negative");
    int shift = -1;
    for (int r = 0; r < len && shift < 0; ++r) {
      Value sum = 0;
      bool ok = true;
      for (int k = 0; k < len && ok; ++k) {
        sum = vadd(sum, reduced_value(m, p, cycle[(r + k) % len], cycle[(r + k + 1) % len]));
        if (sum >= 0) ok = false;
      }
      if (ok) shift = r;
    }
    std::rotate(cycle.begin(), cycle.begin() + shift, cycle.end());
    c.vertices = std::move(cycle);
    for (int k = 0; k < len; ++k) {
      c.arc_values.push_back(
          reduced_value(m, p, c.vertices[k], c.vertices[(k + 1) % len]));
      c.partial_sums.push_back(vadd(k ? c.partial_sums.back() : 0, c.arc_values[k]));
    }
    return c;
  }

  // Rotation starting at the smallest vertex; identity of the cycle.
  std::vector<int> canonical_vertices() const {
    std::vector<int> v = vertices;
    std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
    return v;
  }
};

// What one trial offers to apply: one cycle or a product of two disjoint
// ones found in the same walk, with the summed value.
struct GreedyApplication {
  std::vector<std::vector<int>> cycles;
  Value value = 0;
  int vertex_count = 0;

  bool better_than(const GreedyApplication& other) const {
    if (value != other.value) return value < other.value;
    if (vertex_count != other.vertex_count) return vertex_count < other.vertex_count;
    return cycles < other.cycles;
  }
};

struct WalkResult {
  std::vector<int> path;          // visited vertices; partial sums all negative
  std::vector<Value> arc_values;  // values along the path (size path-1)
  int stop_vertex = 0;            // vertex that ended the walk (not part of path)
  bool repeated = false;          // stop_vertex already occurs on the path
  std::vector<CycleCandidate> candidates;
  std::optional<GreedyApplication> best;
};

struct GreedyStep {
  int start_vertex = 0;
  int rank = 0;  // trial rank that produced the applied cycle(s)
  std::vector<std::vector<int>> cycles;
  Value value = 0;
  Permutation result;
  Value cost = 0;
};

struct GreedyParams {
  int rank_budget = 0;     // trials per start vertex; 0 = floor(log2 n) + 1
  int start_budget = 0;    // start vertices per round; 0 = ceil(log2 n)
  bool sweep_all_starts = false;  // evaluate every negative start, apply global best
};

struct GreedyTrace {
  Permutation start;
  Value start_cost = 0;
  std::vector<std::vector<Value>> diff_rounds;  // diff table at each round start
  std::vector<GreedyStep> steps;
  std::vector<CycleCandidate> bag;              // every distinct negative candidate
  std::vector<Permutation> assignment_steps;    // derangements added after phase 1

  // All derangements seen so far, in discovery order.
  std::vector<Permutation> derangements() const {
    std::vector<Permutation> out{start};
    for (const GreedyStep& s : steps) out.push_back(s.result);
    for (const Permutation& p : assignment_steps) out.push_back(p);
    return out;
  }

  const Permutation& last() const {
    if (!assignment_steps.empty()) return assignment_steps.back();
    return steps.empty() ? start : steps.back().result;
  }
};

namespace detail {

inline std::string walk_pair(int a, int b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

inline std::string path_to_string(const std::vector<int>& path, int stop_vertex) {
  std::string out = "[";
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k) out += ", ";
    out += std::to_string(path[k]);
  }
  if (stop_vertex) out += ", " + std::to_string(stop_vertex);
  return out + "]";
}

}  // namespace detail

// One deterministic walk from start using the candidate of the given rank
// for the first arc and rank-1 candidates (skipping the current assignment
// arc) afterwards.  The walk extends only while the partial sum stays
// strictly negative and stops on the first repeated vertex.
inline WalkResult greedy_walk(const CostMatrix& m, const MinOrderTable& min_order,
                              const Permutation& p, const Permutation& p_inv, int start,
                              int rank, int rank_budget, TraceFn trace = {}) {
  if (rank < 1 || rank >= m.n()) throw std::invalid_argument("walk rank out of range");
  WalkResult walk;
  const auto emit = [&](const std::string& s) {
    if (trace) trace(s);
  };

  walk.path.push_back(start);
  Value sum = 0;
  int repeat_index = -1;
  Value repeat_arc = 0;
  int v = start;
  for (;;) {
    const bool first = walk.path.size() == 1;
    int use_rank = first ? rank : 1;
    if (!first) {
      // Skip the arc of the current derangement; costs ascend with rank, so
      // at most one skip can ever be needed.
      while (use_rank < m.n() && use_rank <= rank_budget &&
             min_order.order(v, use_rank) == p(v)) {
        emit("      " + detail::walk_pair(v, p(v)) + " skip");
        ++use_rank;
      }
      if (use_rank > rank_budget || use_rank >= m.n()) break;  // no usable candidate
    }
    const int column = min_order.order(v, use_rank);
    const Value w = vsub(m(v, column), m(v, p(v)));
    const int successor = p_inv(column);
    if (first && w >= 0) {
      emit("      " + detail::walk_pair(v, column) + " dead");
      return walk;  // later ranks cost at least as much: trial is dead
    }
    emit("      " + detail::walk_pair(v, column) + " -> " + detail::walk_pair(v, successor) +
         "  " + value_to_string(w));
    if (vadd(sum, w) >= 0) {
      walk.stop_vertex = successor;
      break;
    }
    const auto seen = std::find(walk.path.begin(), walk.path.end(), successor);
    if (seen != walk.path.end()) {
      walk.stop_vertex = successor;
      walk.repeated = true;
      repeat_index = static_cast<int>(seen - walk.path.begin());
      repeat_arc = w;
      break;
    }
    sum = vadd(sum, w);
    walk.arc_values.push_back(w);
    walk.path.push_back(successor);
    v = successor;
    if (static_cast<int>(walk.path.size()) > m.n()) break;  // cannot happen: simple path
  }
  emit("      path " + detail::path_to_string(walk.path, walk.stop_vertex));

  const auto add_candidate = [&](std::vector<int> cycle) {
    CycleCandidate c = CycleCandidate::from_vertices(m, p, std::move(cycle));
    const std::vector<int> key = c.canonical_vertices();
    for (const CycleCandidate& have : walk.candidates)
      if (have.canonical_vertices() == key) return -1;
    walk.candidates.push_back(std::move(c));
    return static_cast<int>(walk.candidates.size()) - 1;
  };

  // Closing arc for every prefix of length >= 2; infinite closings are the
  // forbidden arcs and stay out.
  std::vector<int> negative_prefixes;  // candidate indices of prefix closures
  Value prefix_sum = 0;
  for (int k = 1; k < static_cast<int>(walk.path.size()); ++k) {
    prefix_sum = vadd(prefix_sum, walk.arc_values[k - 1]);
    const Value closing = reduced_value(m, p, walk.path[k], walk.path[0]);
    const Value total = vadd(prefix_sum, closing);
    std::vector<int> cycle(walk.path.begin(), walk.path.begin() + k + 1);
    emit("      close " + cycle_to_string(cycle) + "  " + value_to_string(total));
    if (total < 0) {
      const int index = add_candidate(cycle);
      if (index >= 0) negative_prefixes.push_back(index);
    }
  }
  int suffix_index = -1;
  if (walk.repeated && repeat_index >= 0) {
    std::vector<int> cycle(walk.path.begin() + repeat_index, walk.path.end());
    Value total = repeat_arc;
    for (int k = repeat_index; k + 1 < static_cast<int>(walk.path.size()); ++k)
      total = vadd(total, walk.arc_values[k]);
    emit("      cycle " + cycle_to_string(cycle) + "  " + value_to_string(total));
    if (total < 0) suffix_index = add_candidate(std::move(cycle));
  }

  // Offer the best single cycle, or a product of a prefix closure with a
  // disjoint suffix cycle when that sums lower.
  for (const CycleCandidate& c : walk.candidates) {
    GreedyApplication app{{c.canonical_vertices()}, c.total,
                          static_cast<int>(c.vertices.size())};
    if (!walk.best || app.better_than(*walk.best)) walk.best = app;
  }
  if (suffix_index >= 0) {
    for (const int index : negative_prefixes) {
      if (index == suffix_index) continue;
      const CycleCandidate& prefix = walk.candidates[index];
      const CycleCandidate& suffix = walk.candidates[suffix_index];
      bool disjoint = true;
      for (int pv : prefix.vertices)
        for (int sv : suffix.vertices)
          if (pv == sv) disjoint = false;
      if (!disjoint) continue;
      GreedyApplication app{{prefix.canonical_vertices(), suffix.canonical_vertices()},
                            vadd(prefix.total, suffix.total),
                            static_cast<int>(prefix.vertices.size() + suffix.vertices.size())};
      std::sort(app.cycles.begin(), app.cycles.end());
      if (app.better_than(*walk.best)) walk.best = app;
    }
  }
  return walk;
}

// Phase 1: repeated rounds of greedy trials.  Each round recomputes the diff
// table, tries up to start_budget negative-diff vertices in ascending diff
// order with rank_budget trials each, and applies the first start's best
// negative result.  The phase ends on the first round with no application.
inline GreedyTrace phase1_run(const CostMatrix& m, const Permutation& d0,
                              const GreedyParams& params, TraceFn trace = {}) {
  if (!is_tour(d0)) throw std::invalid_argument("phase 1 must start from a tour");
  if (m.n() != d0.n()) throw std::invalid_argument("matrix/tour size mismatch");
  const int n = m.n();
  const int rank_budget =
      std::min(n - 1, params.rank_budget > 0 ? params.rank_budget : floor_log2(n) + 1);
  const int start_budget = params.start_budget > 0 ? params.start_budget : ceil_log2(n);
  const auto emit = [&](const std::string& s) {
    if (trace) trace(s);
  };

  const MinOrderTable min_order(m);
  GreedyTrace out;
  out.start = d0;
  out.start_cost = permutation_cost(d0, m);
  emit("phase1 start D0 = " + cycle_notation(d0) + "  cost " +
       value_to_string(out.start_cost));

  Permutation p = d0;
  Permutation p_inv = inverse(d0);
  std::vector<DiffEntry> diffs(n + 1);
  for (int i = 1; i <= n; ++i) diffs[i] = diff(m, p, min_order, i);

  std::vector<std::vector<int>> bag_keys;
  const auto bag_add = [&](const CycleCandidate& c) {
    const std::vector<int> key = c.canonical_vertices();
    if (std::find(bag_keys.begin(), bag_keys.end(), key) != bag_keys.end()) return;
    bag_keys.push_back(key);
    out.bag.push_back(c);
  };

  for (int round = 1;; ++round) {
    std::vector<Value> diff_row;
    std::string diff_line = "  diff ";
    for (int i = 1; i <= n; ++i) {
      diff_row.push_back(diffs[i].value);
      diff_line += (i > 1 ? " " : "") + std::to_string(i) + ":" +
                   value_to_string(diffs[i].value);
    }
    out.diff_rounds.push_back(diff_row);
    emit("round " + std::to_string(round));
    emit(diff_line);

    std::vector<int> starts;
    for (int i = 1; i <= n; ++i)
      if (diffs[i].value < 0) starts.push_back(i);
    std::stable_sort(starts.begin(), starts.end(),
                     [&](int a, int b) { return diffs[a].value < diffs[b].value; });
    if (!params.sweep_all_starts && static_cast<int>(starts.size()) > start_budget)
      starts.resize(start_budget);

    std::optional<GreedyApplication> chosen;
    int chosen_start = 0, chosen_rank = 0;
    for (const int s : starts) {
      emit("  start " + std::to_string(s) + "  diff " + value_to_string(diffs[s].value));
      std::optional<GreedyApplication> best;
      int best_rank = 0;
      for (int rank = 1; rank <= rank_budget && rank < n; ++rank) {
        emit("    trial rank " + std::to_string(rank));
        WalkResult walk = greedy_walk(m, min_order, p, p_inv, s, rank, rank_budget, trace);
        for (const CycleCandidate& c : walk.candidates) bag_add(c);
        if (walk.best && (!best || walk.best->better_than(*best))) {
          best = walk.best;
          best_rank = rank;
        }
        if (walk.path.size() == 1 && !walk.stop_vertex) break;  // dead at the first arc
      }
      if (best && (!chosen || best->better_than(*chosen))) {
        chosen = best;
        chosen_start = s;
        chosen_rank = best_rank;
      }
      if (chosen && !params.sweep_all_starts) break;  // apply this start's best
    }

    if (!chosen) {
      emit("  no negative cycle; phase 1 ends");
      break;
    }
    GreedyStep step;
    step.start_vertex = chosen_start;
    step.rank = chosen_rank;
    step.cycles = chosen->cycles;
    step.value = chosen->value;
    step.result = compose(p, Permutation::from_cycles(n, chosen->cycles));
    step.cost = permutation_cost(step.result, m);
    std::string applied;
    for (const auto& c : step.cycles) applied += cycle_to_string(c);
    emit("  apply " + applied + "  " + value_to_string(step.value));
    p = step.result;
    p_inv = inverse(p);
    for (const auto& cyc : step.cycles)
      for (const int v : cyc) diffs[v] = diff(m, p, min_order, v);
    emit("  D" + std::to_string(out.steps.size() + 1) + " = " + cycle_notation(p) +
         "  cost " + value_to_string(step.cost));
    out.steps.push_back(std::move(step));
  }
  return out;
}

}  // namespace fwtsp
