#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "rsum/baselines.hpp"
#include "rsum/instances.hpp"
#include "rsum/solver.hpp"
#include "test_support.hpp"

using namespace rsum;

TEST_CASE("gen_uniform determinism and range") {
  const Instance a = gen_uniform(50, 1000000, 7);
  const Instance b = gen_uniform(50, 1000000, 7);
  CHECK(a == b);
  CHECK(a.values.size() == 50);
  for (Value v : a.values) CHECK(std::abs(v) <= 1000000);

  const Instance c = gen_uniform(50, 1000000, 8);
  CHECK(a.values != c.values);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (Value v : gen_uniform(30, 1, seed).values) {
      CHECK(v >= -1);
      CHECK(v <= 1);
    }
  }
  CHECK_THROWS_AS(gen_uniform(0, 10, 1), std::domain_error);
  CHECK_THROWS_AS(gen_uniform(5, 0, 1), std::domain_error);
}

TEST_CASE("gen_planted plants a verified zero-sum tuple") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int arity = 3 + static_cast<int>(seed % 3);
    const auto [instance, ordinals] = gen_planted(20, 65536, arity, seed);
    REQUIRE(ordinals.size() == static_cast<std::size_t>(arity));
    CHECK(std::is_sorted(ordinals.begin(), ordinals.end()));
    CHECK(std::adjacent_find(ordinals.begin(), ordinals.end()) == ordinals.end());
    CHECK(ordinals.back() < 20);

    const auto omega = make_bounded(instance.values, arity);
    CHECK(verify_tuple(omega, ordinals));
    const auto solutions = brute_force_rsum(omega, arity);
    CHECK(std::binary_search(solutions.begin(), solutions.end(),
                             std::vector<Ordinal>(ordinals.begin(), ordinals.end())));
    CHECK(instance.planted == ordinals);
  }
  // Tiny bounds still succeed through redraws.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [instance, ordinals] = gen_planted(5, 1, 3, seed);
    CHECK(verify_tuple(make_bounded(instance.values, 3), ordinals));
  }
}

TEST_CASE("gen_no_solution is strictly positive") {
  const Instance instance = gen_no_solution(30, 5000, 11);
  for (Value v : instance.values) {
    CHECK(v >= 1);
    CHECK(v <= 5000);
  }
  const auto omega = make_bounded(instance.values, 3);
  CHECK(brute_force_rsum(omega, 3).empty());
  CHECK(brute_force_rsum(omega, 4).empty());
}

TEST_CASE("gen_adversarial zeroes the low digits") {
  for (int arity : {3, 4, 5}) {
    const int digit_bits = 3 * ceil_log2(static_cast<std::uint64_t>(arity));
    const Instance instance = gen_adversarial(40, 1 << 16, arity, 13);
    for (Value v : instance.values) {
      CHECK(v != 0);
      CHECK(std::abs(v) <= (1 << 16));
      CHECK((static_cast<std::uint64_t>(std::abs(v)) &
             ((std::uint64_t{1} << digit_bits) - 1)) == 0);
    }
    // Every value projects to digit zero at position zero, so the strict
    // first-pass test at j = 0 accepts the all-zero multiset and nothing is
    // pruned there.
    const auto omega = make_bounded(instance.values, arity);
    const DigitParams params = DigitParams::for_omega(omega, arity);
    for (const BoundedInt& v : omega) CHECK(project_digit(v, params, 0) == 0);
  }
  // Bounds below one digit fall back to a shared magnitude.
  const Instance tiny = gen_adversarial(10, 3, 3, 17);
  for (Value v : tiny.values) CHECK(std::abs(v) == 3);
}

TEST_CASE("instance round-trip through the text format") {
  auto [instance, ordinals] = gen_planted(25, 4096, 3, 99);
  instance.poly_degree = 2;

  std::stringstream buffer;
  write_instance(instance, buffer);
  const Instance back = read_instance(buffer);
  CHECK(back == instance);

  // Deterministic bytes for identical generator arguments.
  std::stringstream again;
  auto second = gen_planted(25, 4096, 3, 99).first;
  second.poly_degree = 2;
  write_instance(second, again);
  CHECK(again.str() == buffer.str());
}

TEST_CASE("reader tolerates comments and blank lines") {
  const std::string text =
      "\n"
      "# a leading comment\n"
      "#rsum v1 n=3 bound=10 family=uniform seed=5 rng=splitmix64\n"
      "\n"
      "7\n"
      "# interior comment\n"
      "-3\n"
      "  10  \n";
  std::istringstream in(text);
  const Instance instance = read_instance(in);
  CHECK(instance.values == std::vector<Value>{7, -3, 10});
  CHECK(instance.bound == 10);
  CHECK(instance.seed == 5);
  CHECK(instance.family == "uniform");
  CHECK_FALSE(instance.planted.has_value());
}

TEST_CASE("reader rejects malformed input") {
  std::istringstream missing_header("1\n2\n");
  CHECK_THROWS(read_instance(missing_header));

  std::istringstream wrong_count("#rsum v1 n=3 bound=10 family=x seed=0\n1\n2\n");
  CHECK_THROWS(read_instance(wrong_count));

  std::istringstream over_bound("#rsum v1 n=1 bound=10 family=x seed=0\n11\n");
  CHECK_THROWS(read_instance(over_bound));

  std::istringstream bad_value("#rsum v1 n=1 bound=10 family=x seed=0\nzq\n");
  CHECK_THROWS(read_instance(bad_value));
}

TEST_CASE("file round-trip") {
  const Instance instance = gen_uniform(10, 100, 3);
  const std::string path = "/tmp/rsum_test_instance.rsum";
  write_instance_file(instance, path);
  CHECK(read_instance_file(path) == instance);
  CHECK_THROWS(read_instance_file("/nonexistent/dir/x.rsum"));
}
