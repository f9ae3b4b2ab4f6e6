#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rsum/baselines.hpp"
#include "rsum/rng.hpp"
#include "test_support.hpp"

using namespace rsum;
using rsum_test::omega_of;

TEST_CASE("brute_force_rsum on hand-checked instances") {
  CHECK(brute_force_rsum(omega_of({8, -5, -3}, 3), 3) ==
        std::vector<std::vector<Ordinal>>{{0, 1, 2}});

  const auto zeros = brute_force_rsum(omega_of({0, 0, 0, 0}, 3), 3);
  CHECK(zeros == std::vector<std::vector<Ordinal>>{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});

  CHECK(brute_force_rsum(omega_of({1, 2, -3, 0}, 4), 4) ==
        std::vector<std::vector<Ordinal>>{{0, 1, 2, 3}});

  CHECK(brute_force_rsum(omega_of({1, 2, 3}, 3), 3).empty());
  CHECK_THROWS_AS(brute_force_rsum(omega_of({1, 2}, 3), 3), std::domain_error);
}

TEST_CASE("brute_force_rsum with repeated ordinals allowed") {
  // All four values are zero, so every multiset of three positions works.
  const auto all = brute_force_rsum(omega_of({0, 0, 0, 0}, 3), 3, true);
  CHECK(all.size() == 20);  // multisets of size 3 over 4 positions

  const auto some = brute_force_rsum(omega_of({0, 3, -3}, 2), 2, true);
  CHECK(some == std::vector<std::vector<Ordinal>>{{0, 0}, {1, 2}});
}

TEST_CASE("meet_in_the_middle_rsum on hand-checked instances") {
  CHECK(meet_in_the_middle_rsum(omega_of({8, -5, -3}, 3), 3) ==
        std::vector<std::vector<Ordinal>>{{0, 1, 2}});

  CHECK(meet_in_the_middle_rsum(omega_of({5, -5, 7, -7}, 2), 2) ==
        std::vector<std::vector<Ordinal>>{{0, 1}, {2, 3}});

  CHECK(meet_in_the_middle_rsum(omega_of({1, 2, -3, 0}, 4), 4) ==
        std::vector<std::vector<Ordinal>>{{0, 1, 2, 3}});

  // The same element must not be matched against itself.
  CHECK(meet_in_the_middle_rsum(omega_of({4, -2, 3}, 2), 2).empty());

  CHECK_THROWS_AS(meet_in_the_middle_rsum(omega_of({1}, 2), 2), std::domain_error);
}

TEST_CASE("brute force and meet-in-the-middle agree") {
  SplitMix64 rng(67);
  for (int arity : {2, 3, 4, 5}) {
    for (int it = 0; it < 80; ++it) {
      const std::size_t n = static_cast<std::size_t>(arity) + rng.below(12);
      std::vector<Value> values;
      for (std::size_t i = 0; i < n; ++i) values.push_back(rng.range(-12, 12));
      const auto omega = omega_of(values, arity);
      const auto brute = brute_force_rsum(omega, arity);
      const auto mitm = meet_in_the_middle_rsum(omega, arity);
      CHECK(brute == mitm);
      CHECK(std::is_sorted(brute.begin(), brute.end()));
      for (const auto& tuple : brute) {
        CHECK(std::is_sorted(tuple.begin(), tuple.end()));
        CHECK(std::adjacent_find(tuple.begin(), tuple.end()) == tuple.end());
      }
    }
  }
}
