#pragma once

#include <string>

#include "fwtsp/cost_matrix.hpp"

namespace fwtsp {

// 8-city instance used by the replay command and the golden tests.
inline const CostMatrix& example1_matrix() {
  static const CostMatrix m = CostMatrix::from_rows({
      {kInf, 23, 99, 17, 12, 99, 18, 24},
      {43, kInf, 2, 73, 15, 100, 53, 28},
      {1, 84, kInf, 19, 53, 68, 44, 34},
      {89, 41, 45, kInf, 40, 71, 79, 51},
      {83, 62, 94, 88, kInf, 36, 6, 50},
      {61, 62, 98, 50, 29, kInf, 52, 40},
      {50, 21, 53, 68, 39, 26, kInf, 25},
      {16, 42, 61, 54, 81, 34, 92, kInf},
  });
  return m;
}

// Start tour (1 2 3 4 5 6 7 8) pinning the deterministic replay.
inline const Permutation& example1_start_tour() {
  static const Permutation d0 =
      Permutation::from_single_cycle({1, 2, 3, 4, 5, 6, 7, 8});
  return d0;
}

// Full deterministic trace of the worked run (start (1 2 3 4 5 6 7 8), all
// default knobs): phase 1 rounds and walks, phase 2 search, phase 3 close.
// The replay command re-runs the pipeline and diffs against these bytes.
inline const std::string& example1_golden_trace() {
  static const std::string trace = R"TRACE(phase1 start D0 = (1 2 3 4 5 6 7 8)  cost 213
round 1
  diff 1:-11 2:0 3:-18 4:0 5:-30 6:-23 7:-4 8:0
  start 5  diff -30
    trial rank 1
      (5, 7) -> (5, 6)  -30
      (6, 5) -> (6, 4)  -23
      (4, 5) skip
      (4, 2) -> (4, 1)  1
      (1, 5) -> (1, 4)  -11
      path [5, 6, 4, 1, 4]
      close (5 6)  INF
      close (5 6 4)  -22
      close (5 6 4 1)  24
      cycle (4 1)  -10
    trial rank 2
      (5, 6) dead
  apply (4 5 6)  -22
  D1 = (1 2 3 4 6 5 7 8)  cost 191
round 2
  diff 1:-11 2:0 3:-18 4:-31 5:0 6:0 7:-4 8:0
  start 4  diff -31
    trial rank 1
      (4, 5) -> (4, 6)  -31
      (6, 5) skip
      (6, 8) -> (6, 7)  11
      (7, 2) -> (7, 1)  -4
      (1, 5) -> (1, 6)  -11
      path [4, 6, 7, 1, 6]
      close (4 6)  INF
      close (4 6 7)  -19
      close (4 6 7 1)  52
      cycle (6 7 1)  -4
    trial rank 2
      (4, 2) -> (4, 1)  -30
      (1, 5) -> (1, 6)  -11
      (6, 5) skip
      (6, 8) -> (6, 7)  11
      (7, 2) -> (7, 1)  -4
      path [4, 1, 6, 7, 1]
      close (4 1)  46
      close (4 1 6)  INF
      close (4 1 6 7)  -29
      cycle (1 6 7)  -4
    trial rank 3
      (4, 3) -> (4, 2)  -26
      (2, 3) skip
      (2, 5) -> (2, 6)  13
      (6, 5) skip
      (6, 8) -> (6, 7)  11
      (7, 2) -> (7, 1)  -4
      (1, 5) -> (1, 6)  -11
      path [4, 2, 6, 7, 1, 6]
      close (4 2)  72
      close (4 2 6)  INF
      close (4 2 6 7)  -1
      close (4 2 6 7 1)  70
      cycle (6 7 1)  -4
    trial rank 4
      (4, 8) -> (4, 7)  -20
      (7, 2) -> (7, 1)  -4
      (1, 5) -> (1, 6)  -11
      (6, 5) skip
      (6, 8) -> (6, 7)  11
      path [4, 7, 1, 6, 7]
      close (4 7)  -19
      close (4 7 1)  52
      close (4 7 1 6)  INF
      cycle (7 1 6)  -4
  apply (1 6 7 4)  -29
  D2 = (1 5 7 6 8)(2 3 4)  cost 162
round 3
  diff 1:0 2:0 3:-18 4:-1 5:0 6:-11 7:-5 8:0
  start 3  diff -18
    trial rank 1
      (3, 1) -> (3, 8)  -18
      (8, 1) skip
      (8, 6) -> (8, 7)  18
      path [3, 8, 7]
      close (3 8)  20
    trial rank 2
      (3, 4) dead
  start 6  diff -11
    trial rank 1
      (6, 5) -> (6, 1)  -11
      (1, 5) skip
      (1, 4) -> (1, 3)  5
      (3, 1) -> (3, 8)  -18
      (8, 1) skip
      (8, 6) -> (8, 7)  18
      (7, 2) -> (7, 4)  -5
      (4, 5) -> (4, 1)  -1
      path [6, 1, 3, 8, 7, 4, 1]
      close (6 1)  1
      close (6 1 3)  9
      close (6 1 3 8)  INF
      close (6 1 3 8 7)  -7
      close (6 1 3 8 7 4)  -1
      cycle (1 3 8 7 4)  -1
    trial rank 2
      (6, 8) dead
  apply (1 3 8 7 6)  -7
  D3 = (1 4 2 3)(5 7 8 6)  cost 155
round 4
  diff 1:-5 2:0 3:0 4:-1 5:0 6:0 7:-4 8:-18
  start 8  diff -18
    trial rank 1
      (8, 1) -> (8, 3)  -18
      (3, 1) skip
      (3, 4) -> (3, 1)  18
      path [8, 3, 1]
      close (8 3)  49
    trial rank 2
      (8, 6) dead
  start 1  diff -5
    trial rank 1
      (1, 5) -> (1, 6)  -5
      (6, 5) skip
      (6, 8) -> (6, 7)  11
      path [1, 6, 7]
      close (1 6)  16
    trial rank 2
      (1, 4) dead
  start 7  diff -4
    trial rank 1
      (7, 2) -> (7, 4)  -4
      (4, 5) -> (4, 6)  -1
      (6, 5) skip
      (6, 8) -> (6, 7)  11
      path [7, 4, 6, 7]
      close (7 4)  6
      close (7 4 6)  6
    trial rank 2
      (7, 8) dead
  no negative cycle; phase 1 ends
phase2 start (1 4 2 3)(5 7 8 6)  cost 155
    fw iteration 1
      (7, 4) + (4, 6) -> (7, 6)  -5
    fw iteration 2
phase2 assignment (1 4 2 3)(5 7 8 6)  cost 155
  path (1 -> 6)  -5  [1, 6]
  path (4 -> 6)  -1  [4, 6]
  path (7 -> 4)  -4  [7, 4]
  path (7 -> 6)  -5  [7, 4, 6]
  path (8 -> 3)  -18  [8, 3]
phase3 start from assignment (1 4 2 3)(5 7 8 6)  cost 155
  initial candidate from derangement 0  cost 213
  initial candidate from derangement 1  cost 191
  initial candidate from derangement 1 with cycle (4 6 7)  cost 172
  initial candidate from derangement 2 with cycle (6 1 3 8 7 4)  cost 161
  initial tour (1 4 8 6 5 7 2 3)  cost 161  gap 6
  table search with bound 6
    fw iteration 1
      (8, 3) + (3, 1) -> (8, 1)  0
      (7, 4) + (4, 2) -> (7, 2)  0
      (7, 4) + (4, 6) -> (7, 6)  -5
      (7, 8) + (8, 3) -> (7, 3)  -17
    fw iteration 2
      (8, 1) + (1, 5) -> (8, 5)  1
      (8, 1) + (1, 6) -> (8, 6)  -5
      (7, 3) + (3, 1) -> (7, 1)  1
    fw iteration 3
      (7, 1) + (1, 5) -> (7, 5)  2
    fw iteration 4
  cycle tree with bound 6
  final tour (1 4 8 6 5 7 2 3)  cost 161  gap 6  optimal-proven
)TRACE";
  return trace;
}

}  // namespace fwtsp
