#pragma once

#include <vector>

#include "fwtsp/cost_matrix.hpp"
#include "fwtsp/permutation.hpp"
#include "fwtsp/random.hpp"

namespace testutil {

// One negative cycle 6 7 13 15 19 20 18 14 of value -2 hidden behind a
// cheap entry path from vertex 1; every other arc is expensive.  Worst-case
// shape for the negative-path search: the cycle is long and its discovery
// needs entries built across iterations.
inline fwtsp::ValueMatrix planted_cascade() {
  fwtsp::ValueMatrix a(20, 1000);
  for (int i = 1; i <= 20; ++i) a(i, i) = 0;
  a(1, 3) = -20;
  a(3, 7) = 5;
  a(7, 13) = -5;
  a(13, 15) = 12;
  a(15, 19) = 1;
  a(19, 20) = 3;
  a(20, 18) = -18;
  a(18, 14) = 1;
  a(14, 6) = 1;
  a(6, 7) = 3;
  return a;
}

// Random permutation of {1..n} (not necessarily a derangement).
inline fwtsp::Permutation random_permutation(int n, fwtsp::SplitMix64& rng) {
  std::vector<int> row(n);
  for (int i = 0; i < n; ++i) row[i] = i + 1;
  for (int i = n - 1; i > 0; --i)
    std::swap(row[i], row[static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1))]);
  return fwtsp::Permutation::from_row(row);
}

// True iff applying cycle c to derangement p keeps every vertex deranged:
// no consecutive pair (a, b) of c may satisfy p(b) = a.
inline bool admissible_for(const std::vector<int>& c, const fwtsp::Permutation& p) {
  for (std::size_t k = 0; k < c.size(); ++k)
    if (p(c[(k + 1) % c.size()]) == c[k]) return false;
  return true;
}

}  // namespace testutil
