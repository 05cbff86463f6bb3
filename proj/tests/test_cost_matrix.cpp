#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <string>

#include "fwtsp/cost_matrix.hpp"
#include "fwtsp/example1.hpp"
#include "fwtsp/random.hpp"
#include "testutil.hpp"

using namespace fwtsp;

namespace {

std::vector<int> order_row(const MinOrderTable& t, int i) {
  std::vector<int> row;
  for (int r = 1; r < t.n(); ++r) row.push_back(t.order(i, r));
  return row;
}

}  // namespace

TEST_SUITE_BEGIN("cost_matrix");

TEST_CASE("extended value arithmetic") {
  CHECK(vadd(kInf, -5) == kInf);
  CHECK(vadd(kNegInf, 7) == kNegInf);
  CHECK(vadd(kInf, kNegInf) == kInf);
  CHECK(vsub(3, 10) == -7);
  CHECK(vsub(kInf, 10) == kInf);
  CHECK(vsub(10, kInf) == kNegInf);
  CHECK(vsub(kInf, kInf) == kInf);
  CHECK(value_to_string(kInf) == "INF");
  CHECK(value_to_string(-42) == "-42");
}

TEST_CASE("candidate order of the 8-city example rows") {
  const MinOrderTable t(example1_matrix());
  CHECK(order_row(t, 1) == std::vector<int>{5, 4, 7, 2, 8, 3, 6});
  CHECK(order_row(t, 2) == std::vector<int>{3, 5, 8, 1, 7, 4, 6});
  CHECK(order_row(t, 3) == std::vector<int>{1, 4, 8, 7, 5, 6, 2});
  CHECK(order_row(t, 4) == std::vector<int>{5, 2, 3, 8, 6, 7, 1});
  CHECK(order_row(t, 5) == std::vector<int>{7, 6, 8, 2, 1, 4, 3});
  CHECK(order_row(t, 6) == std::vector<int>{5, 8, 4, 7, 1, 2, 3});
  CHECK(order_row(t, 7) == std::vector<int>{2, 8, 6, 5, 1, 3, 4});
  CHECK(order_row(t, 8) == std::vector<int>{1, 6, 2, 4, 3, 5, 7});
  for (int i = 1; i <= 8; ++i)
    for (int r = 1; r < 8; ++r) CHECK(t.rank(i, t.order(i, r)) == r);
}

TEST_CASE("candidate order ignores row-constant shifts") {
  SplitMix64 rng(21);
  for (int round = 0; round < 20; ++round) {
    const int n = 3 + static_cast<int>(rng.below(10));
    const CostMatrix m = random_instance(n, 1, 100, rng.next());
    CostMatrix shifted(n);
    std::vector<Value> shift(n + 1);
    for (int i = 1; i <= n; ++i) shift[i] = static_cast<Value>(rng.below(50));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (i != j) shifted.set(i, j, m(i, j) + shift[i]);
    const MinOrderTable a(m), b(shifted);
    for (int i = 1; i <= n; ++i) CHECK(order_row(a, i) == order_row(b, i));
  }
}

TEST_CASE("reduced values against the closed form") {
  const CostMatrix& m = example1_matrix();
  SplitMix64 rng(22);
  for (int round = 0; round < 10; ++round) {
    const Permutation p = random_derangement(8, rng);
    for (int i = 1; i <= 8; ++i)
      for (int j = 1; j <= 8; ++j)
        CHECK(vadd(reduced_value(m, p, i, j), m(i, p(i))) == m(i, p(j)));
  }
}

TEST_CASE("reduced matrix at the example assignment") {
  const Permutation d3 = Permutation::from_row({4, 3, 1, 2, 7, 5, 8, 6});
  const ReducedMatrix r(example1_matrix(), d3);
  const std::vector<std::vector<Value>> expected = {
      {0, 82, kInf, 6, 1, -5, 7, 82},   {71, 0, 41, kInf, 51, 13, 26, 98},
      {18, kInf, 0, 83, 43, 52, 33, 67}, {kInf, 4, 48, 0, 38, -1, 10, 30},
      {82, 88, 77, 56, 0, kInf, 44, 30}, {21, 69, 32, 33, 23, 0, 11, kInf},
      {43, 28, 25, -4, kInf, 14, 0, 1},  {20, 27, -18, 8, 58, 47, kInf, 0},
  };
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j) CHECK(r(i, j) == expected[i - 1][j - 1]);
}

TEST_CASE("reduced matrix invariants on random derangements") {
  SplitMix64 rng(23);
  for (int round = 0; round < 20; ++round) {
    const int n = 3 + static_cast<int>(rng.below(10));
    const CostMatrix m = random_instance(n, 1, 100, rng.next());
    const Permutation p = random_derangement(n, rng);
    const ReducedMatrix r(m, p);
    const Permutation p_inv = inverse(p);
    for (int i = 1; i <= n; ++i) {
      CHECK(r(i, i) == 0);
      CHECK(r(i, p_inv(i)) == kInf);  // the forbidden self-arc of row i
    }
  }
}

TEST_CASE("cycle values and cost additivity") {
  const CostMatrix& m = example1_matrix();
  const Permutation d0 = example1_start_tour();
  CHECK(reduced_cycle_value(m, d0, {5, 6, 4}) == -22);
  CHECK(reduced_cycle_value(m, d0, {1, 4}) == -10);
  const Permutation d1 = Permutation::from_row({2, 3, 4, 6, 7, 5, 8, 1});
  CHECK(reduced_cycle_value(m, d1, {4, 1, 6, 7}) == -29);

  SplitMix64 rng(24);
  int checked = 0;
  while (checked < 60) {
    const int n = 4 + static_cast<int>(rng.below(9));
    const CostMatrix rand_m = random_instance(n, 1, 200, rng.next());
    const Permutation p = random_derangement(n, rng);
    const int len = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n) - 1));
    std::vector<int> cycle;
    const Permutation shuffle = testutil::random_permutation(n, rng);
    for (int k = 1; k <= len; ++k) cycle.push_back(shuffle(k));
    if (!testutil::admissible_for(cycle, p)) continue;
    ++checked;
    const Permutation applied = compose(p, Permutation::from_cycles(n, {cycle}));
    CHECK(is_derangement(applied));
    CHECK(permutation_cost(applied, rand_m) ==
          vadd(permutation_cost(p, rand_m), reduced_cycle_value(rand_m, p, cycle)));
  }
}

TEST_CASE("row improvement potentials at the start tour") {
  const CostMatrix& m = example1_matrix();
  const MinOrderTable t(m);
  const Permutation d0 = example1_start_tour();
  const std::vector<Value> expected = {-11, 0, -18, 0, -30, -23, -4, 0};
  for (int i = 1; i <= 8; ++i) CHECK(diff(m, d0, t, i).value == expected[i - 1]);
  CHECK(diff(m, d0, t, 5).column == 7);
  CHECK(diff(m, d0, t, 1).column == 5);
  CHECK(diff(m, d0, t, 2).column == 3);  // candidate equals the current arc
}

TEST_CASE("matrix file round trip") {
  SplitMix64 rng(25);
  for (int round = 0; round < 10; ++round) {
    const int n = 2 + static_cast<int>(rng.below(12));
    CostMatrix m = random_instance(n, -50, 999, rng.next());
    if (n > 2) m.set(1, 2, kInf);  // keep a missing arc in the mix
    const std::string text = write_cost_matrix(m);
    const CostMatrix back = read_cost_matrix(text);
    CHECK(back.values() == m.values());
  }
}

TEST_CASE("matrix parser diagnostics carry line and column") {
  CHECK_THROWS_WITH_AS(read_cost_matrix("x\n"), doctest::Contains("line 1"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(read_cost_matrix("2\nINF 3\n4\n"),
                       doctest::Contains("line 3, column 2"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(read_cost_matrix("2\nINF q\n4 INF\n"),
                       doctest::Contains("line 2, column 2"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(read_cost_matrix("2\n7 3\n4 INF\n"), doctest::Contains("diagonal"),
                       std::invalid_argument);
  CHECK_THROWS_AS(read_cost_matrix("1\nINF\n"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(read_cost_matrix("2\nINF 10000000000000\n4 INF\n"),
                       doctest::Contains("magnitude"), std::invalid_argument);
}

TEST_SUITE_END();
