#include <doctest.h>

#include <stdexcept>

#include "fwtsp/cost_matrix.hpp"
#include "fwtsp/example1.hpp"
#include "fwtsp/permutation.hpp"
#include "fwtsp/random.hpp"
#include "testutil.hpp"

using namespace fwtsp;

TEST_SUITE_BEGIN("permutation");

TEST_CASE("row constructor validates bijections") {
  CHECK_THROWS_AS(Permutation::from_row({1, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_row({0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_row({1, 2, 4}), std::invalid_argument);
  const Permutation p = Permutation::from_row({2, 3, 1});
  CHECK(p(1) == 2);
  CHECK(p(3) == 1);
}

TEST_CASE("compose applies the right factor first") {
  // (5 6 4) applied to the start tour of the 8-city example.
  const Permutation d0 = example1_start_tour();
  const Permutation s1 = Permutation::from_cycles(8, {{5, 6, 4}});
  const Permutation d1 = compose(d0, s1);
  CHECK(d1.row() == std::vector<int>{2, 3, 4, 6, 7, 5, 8, 1});

  // A 20-element case with fixed points on both sides.
  const Permutation p = Permutation::from_cycles(20, {{1, 7, 12, 17, 20, 15}});
  const Permutation q = Permutation::from_cycles(20, {{17, 15, 7}});
  const Permutation r = compose(p, q);
  CHECK(r == Permutation::from_cycles(20, {{1, 7, 20, 15, 12, 17}}));

  CHECK_THROWS_AS(compose(Permutation::identity(3), Permutation::identity(4)),
                  std::invalid_argument);
}

TEST_CASE("inverse") {
  const Permutation d2 = Permutation::from_row({5, 3, 4, 2, 7, 8, 6, 1});
  CHECK(inverse(d2).row() == std::vector<int>{8, 4, 2, 3, 1, 7, 5, 6});

  SplitMix64 rng(11);
  for (int round = 0; round < 50; ++round) {
    const int n = 2 + static_cast<int>(rng.below(63));
    const Permutation p = testutil::random_permutation(n, rng);
    CHECK(compose(p, inverse(p)) == Permutation::identity(n));
    CHECK(compose(inverse(p), p) == Permutation::identity(n));
  }
}

TEST_CASE("decompose and cycle notation") {
  const Permutation d3 = Permutation::from_row({4, 3, 1, 2, 7, 5, 8, 6});
  const CycleForm form = decompose(d3);
  REQUIRE(form.cycles.size() == 2);
  CHECK(form.cycles[0] == std::vector<int>{1, 4, 2, 3});
  CHECK(form.cycles[1] == std::vector<int>{5, 7, 8, 6});
  CHECK(form.fixed_points.empty());
  CHECK(cycle_notation(d3) == "(1 4 2 3)(5 7 8 6)");

  const Permutation with_fixed = Permutation::from_row({1, 3, 2, 4});
  CHECK(decompose(with_fixed).fixed_points == std::vector<int>{1, 4});
  CHECK(cycle_notation(with_fixed) == "(2 3)");
  CHECK(cycle_notation(Permutation::identity(5)) == "()");
}

TEST_CASE("multiplying the decomposition back recovers the permutation") {
  SplitMix64 rng(12);
  for (int round = 0; round < 50; ++round) {
    const int n = 2 + static_cast<int>(rng.below(31));
    const Permutation p = testutil::random_permutation(n, rng);
    CHECK(Permutation::from_cycles(n, decompose(p).cycles) == p);
    CHECK(parse_cycles(cycle_notation(p), n) == p);
  }
}

TEST_CASE("derangement and tour predicates") {
  CHECK(is_tour(example1_start_tour()));
  CHECK(is_derangement(example1_start_tour()));
  const Permutation d3 = Permutation::from_row({4, 3, 1, 2, 7, 5, 8, 6});
  CHECK(is_derangement(d3));
  CHECK_FALSE(is_tour(d3));
  const Permutation with_fixed = Permutation::from_row({1, 3, 2, 4});
  CHECK_FALSE(is_derangement(with_fixed));
  CHECK_FALSE(is_tour(with_fixed));

  SplitMix64 rng(13);
  for (int round = 0; round < 30; ++round) {
    const int n = 2 + static_cast<int>(rng.below(63));
    CHECK(is_tour(random_n_cycle(n, rng)));
    CHECK(is_derangement(random_derangement(n, rng)));
  }
}

TEST_CASE("cycle notation parser diagnostics") {
  CHECK_THROWS_AS(parse_cycles("(1 2", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("(1 9)", 8), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("(0 1)", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("(1 2)(2 3)", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("(3)", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("1 2)", 4), std::invalid_argument);
  CHECK(parse_cycles("  (1 4 2 3) (5 7 8 6) ", 8) ==
        Permutation::from_row({4, 3, 1, 2, 7, 5, 8, 6}));
  CHECK(parse_cycles("", 4) == Permutation::identity(4));
}

TEST_CASE("tour position metadata") {
  const Permutation d0 = Permutation::from_single_cycle({3, 1, 4, 2});
  CHECK(d0.tour_position(3) == 1);
  CHECK(d0.tour_position(2) == 4);
  CHECK(Permutation::from_row({2, 1}).tour_position(1) == 0);
}

TEST_CASE("permutation cost on the 8-city example") {
  CHECK(permutation_cost(example1_start_tour(), example1_matrix()) == 213);
  CHECK(permutation_cost(Permutation::from_row({4, 3, 1, 2, 7, 5, 8, 6}),
                         example1_matrix()) == 155);
  CHECK(permutation_cost(Permutation::identity(8), example1_matrix()) == kInf);
}

TEST_SUITE_END();
