#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "fwtsp/example1.hpp"
#include "fwtsp/oracles.hpp"
#include "fwtsp/random.hpp"
#include "testutil.hpp"

using namespace fwtsp;

TEST_SUITE_BEGIN("oracles");

TEST_CASE("assignment oracles agree on the 8-city example") {
  const OracleReport brute = brute_ap(example1_matrix());
  CHECK(brute.optimum == 155);
  CHECK(permutation_cost(brute.optimizer, example1_matrix()) == 155);
  const OracleReport jv = hungarian_ap(example1_matrix());
  CHECK(jv.optimum == 155);
  CHECK(permutation_cost(jv.optimizer, example1_matrix()) == 155);
  CHECK(is_derangement(jv.optimizer));
}

TEST_CASE("assignment oracles agree on random instances") {
  SplitMix64 rng(31);
  for (int round = 0; round < 60; ++round) {
    const int n = 4 + static_cast<int>(rng.below(6));
    CostMatrix m = random_instance(n, 1, 100, rng.next());
    for (int k = static_cast<int>(rng.below(3)); k > 0; --k) {
      const int i = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      const int j = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (i != j) m.set(i, j, kInf);
    }
    CHECK(brute_ap(m).optimum == hungarian_ap(m).optimum);
  }
}

TEST_CASE("assignment oracle size gate") {
  CHECK_THROWS_AS(brute_ap(CostMatrix(11)), std::invalid_argument);
}

TEST_CASE("tour oracles agree on the 8-city example") {
  const OracleReport hk = held_karp_tsp(example1_matrix());
  CHECK(hk.optimum == 161);
  REQUIRE(is_tour(hk.optimizer));
  CHECK(permutation_cost(hk.optimizer, example1_matrix()) == 161);
  const OracleReport full = exhaustive_tsp(example1_matrix());
  CHECK(full.optimum == 161);
  CHECK(is_tour(full.optimizer));
}

TEST_CASE("tour oracles agree on random instances") {
  SplitMix64 rng(32);
  for (int round = 0; round < 30; ++round) {
    const int n = 4 + static_cast<int>(rng.below(6));
    const CostMatrix m = random_instance(n, 1, 100, rng.next());
    const OracleReport hk = held_karp_tsp(m);
    CHECK(hk.optimum == exhaustive_tsp(m).optimum);
    CHECK(permutation_cost(hk.optimizer, m) == hk.optimum);
  }
}

TEST_CASE("tour oracle avoids missing arcs") {
  CostMatrix m(4);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      if (i != j) m.set(i, j, 10);
  m.set(1, 2, kInf);
  m.set(2, 1, 1);
  const OracleReport hk = held_karp_tsp(m);
  CHECK(hk.optimum == exhaustive_tsp(m).optimum);
  CHECK(is_finite(hk.optimum));
  CHECK(hk.optimizer(1) != 2);
  CHECK(held_karp_tsp(CostMatrix(3)).optimum == kInf);
  CHECK_THROWS_AS(held_karp_tsp(CostMatrix(16)), std::invalid_argument);
}

TEST_CASE("relaxation distances on a sparse toy graph") {
  CostMatrix m(8);
  m.set(1, 3, 5);
  m.set(3, 7, -2);
  m.set(1, 7, 25);
  m.set(7, 8, -5);
  m.set(1, 8, 7);
  const BellmanFordResult no_cycle = bellman_ford(m.values(), 1);
  CHECK(no_cycle.dist[7] == 3);
  CHECK(no_cycle.dist[8] == -2);
  CHECK(no_cycle.dist[2] == kInf);
  CHECK_FALSE(no_cycle.negative_cycle);
  CHECK_FALSE(has_negative_cycle(m.values()));

  m.set(8, 1, 1);  // closes the cycle (1 3 7 8) of value -1
  CHECK(bellman_ford(m.values(), 1).negative_cycle);
  CHECK(has_negative_cycle(m.values()));
  const auto cycles = enumerate_cycles_upto(m.values(), 0, 8);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].vertices == std::vector<int>{1, 3, 7, 8});
  CHECK(cycles[0].total == -1);
}

TEST_CASE("negative cycle witness flags match on reduced matrices") {
  const ReducedMatrix at_start(example1_matrix(), example1_start_tour());
  CHECK(has_negative_cycle(at_start.values));
  const ReducedMatrix at_opt(example1_matrix(),
                             Permutation::from_row({4, 3, 1, 2, 7, 5, 8, 6}));
  CHECK_FALSE(has_negative_cycle(at_opt.values));
}

TEST_CASE("cycle enumeration on the example reduced matrices") {
  const ReducedMatrix at_start(example1_matrix(), example1_start_tour());
  const auto cycles = enumerate_cycles_upto(at_start.values, 0, 8);
  const auto has = [&](const std::vector<int>& v, Value total) {
    return std::any_of(cycles.begin(), cycles.end(), [&](const SimpleCycle& c) {
      return c.vertices == v && c.total == total;
    });
  };
  CHECK(has({4, 5, 6}, -22));
  CHECK(has({1, 4}, -10));
  for (const SimpleCycle& c : cycles) {
    CHECK(c.total < 0);
    CHECK(reduced_cycle_value(example1_matrix(), example1_start_tour(), c.vertices) ==
          c.total);
  }

  const ReducedMatrix at_opt(example1_matrix(),
                             Permutation::from_row({4, 3, 1, 2, 7, 5, 8, 6}));
  CHECK(enumerate_cycles_upto(at_opt.values, 0, 8).empty());
  CHECK_THROWS_AS(enumerate_cycles_upto(ValueMatrix(9, 1), 0, 9), std::invalid_argument);
}

TEST_CASE("prefix-negative rotation finder") {
  CHECK(negative_prefix_rotation({1, -11}) == 1);
  CHECK(negative_prefix_rotation({5, -2, -5, 1}) == 1);
  CHECK(negative_prefix_rotation({-3, 2}) == 0);
  CHECK_FALSE(negative_prefix_rotation({5, -2}).has_value());
  CHECK_FALSE(negative_prefix_rotation({0}).has_value());
  // Bounded variant: rotation with all prefixes < 6.
  CHECK(negative_prefix_rotation({7, -5, 3}, 6) == 1);
}

TEST_SUITE_END();
