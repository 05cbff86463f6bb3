#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "fwtsp/cost_matrix.hpp"
#include "fwtsp/permutation.hpp"

namespace fwtsp {

// splitmix64: tiny, stable across platforms, good enough for test instances.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) via Lemire's multiply-shift rejection.
  std::uint64_t below(std::uint64_t bound) {
    for (;;) {
      const std::uint64_t x = next();
      const unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
      const std::uint64_t lo = static_cast<std::uint64_t>(m);
      if (lo >= bound || lo >= (0 - bound) % bound)
        return static_cast<std::uint64_t>(m >> 64);
    }
  }
};

// Complete asymmetric instance with integer costs uniform in [lo, hi].
inline CostMatrix random_instance(int n, Value lo, Value hi, std::uint64_t seed) {
  if (lo > hi) throw std::invalid_argument("cost range is empty");
  SplitMix64 rng(seed);
  CostMatrix m(n);
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) m.set(i, j, lo + static_cast<Value>(rng.below(span)));
  return m;
}

// Uniform n-cycle (Sattolo's algorithm).
inline Permutation random_n_cycle(int n, SplitMix64& rng) {
  std::vector<int> row(n);
  std::iota(row.begin(), row.end(), 1);
  for (int i = n - 1; i > 0; --i)
    std::swap(row[i], row[static_cast<int>(rng.below(static_cast<std::uint64_t>(i)))]);
  return Permutation::from_row(row);
}

// Uniform derangement by rejection (expected ~e tries).
inline Permutation random_derangement(int n, SplitMix64& rng) {
  std::vector<int> row(n);
  for (;;) {
    std::iota(row.begin(), row.end(), 1);
    for (int i = n - 1; i > 0; --i)
      std::swap(row[i], row[static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1))]);
    bool ok = true;
    for (int i = 0; i < n; ++i)
      if (row[i] == i + 1) {
        ok = false;
        break;
      }
    if (ok) return Permutation::from_row(row);
  }
}

}  // namespace fwtsp
