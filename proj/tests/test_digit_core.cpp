#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdlib>
#include <limits>

#include "rsum/digit_core.hpp"
#include "rsum/rng.hpp"
#include "test_support.hpp"

using namespace rsum;

TEST_CASE("ceil_log2 on exact powers and in between") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(8) == 3);
  CHECK(ceil_log2(9) == 4);
  CHECK(ceil_log2((std::uint64_t{1} << 62) - 1) == 62);
  CHECK_THROWS_AS(ceil_log2(0), std::domain_error);
}

TEST_CASE("BoundedInt enforces the magnitude cap at construction") {
  const Value cap3 = BoundedInt::max_magnitude(3);
  CHECK_NOTHROW(BoundedInt(cap3, 3));
  CHECK_NOTHROW(BoundedInt(-cap3, 3));
  CHECK_THROWS_AS(BoundedInt(cap3 + 1, 3), std::domain_error);
  CHECK_THROWS_AS(BoundedInt(std::numeric_limits<Value>::min(), 3), std::domain_error);
  // Any 3-fold sum of admissible values stays inside int64.
  CHECK(cap3 <= std::numeric_limits<Value>::max() / 3);
}

TEST_CASE("DigitParams geometry") {
  const DigitParams p2(2, 10);
  CHECK(p2.log_arity == 1);
  CHECK(p2.digit_bits == 3);
  const DigitParams p3(3, 16);
  CHECK(p3.log_arity == 2);
  CHECK(p3.digit_bits == 6);
  CHECK(p3.last_digit == 3);  // floor((16 + 2) / 6)
  const DigitParams p5(5, 16);
  CHECK(p5.digit_bits == 9);

  CHECK_THROWS_AS(DigitParams(1, 4), std::domain_error);
  CHECK_THROWS_AS(DigitParams(3, -1), std::domain_error);

  // The digit range covers every magnitude bit plus carry headroom.
  SplitMix64 rng(7);
  for (int it = 0; it < 2000; ++it) {
    const int arity = 2 + static_cast<int>(rng.below(14));
    const int bit_length = static_cast<int>(rng.below(61));
    const DigitParams params(arity, bit_length);
    CHECK(params.digit_bits == 3 * params.log_arity);
    CHECK(params.last_digit * params.digit_bits + params.digit_bits >
          params.bit_length + params.log_arity);
  }
}

TEST_CASE("project_digit matches hand expansions") {
  CHECK(project_digit(Value{0}, 3, 0) == 0);
  CHECK(project_digit(Value{0}, 6, 5) == 0);
  // 13 = 1*8 + 5
  CHECK(project_digit(Value{-13}, 3, 0) == -5);
  CHECK(project_digit(Value{-13}, 3, 1) == -1);
  // 100 = 1*64 + 36
  CHECK(project_digit(Value{100}, 6, 0) == 36);
  CHECK(project_digit(Value{100}, 6, 1) == 1);
  CHECK(project_digit(Value{100}, 6, 2) == 0);
}

TEST_CASE("digit bound and sign-magnitude reconstruction") {
  SplitMix64 rng(11);
  for (int it = 0; it < 20000; ++it) {
    const int arity = std::array{2, 3, 4, 5, 8}[rng.below(5)];
    const Value cap = BoundedInt::max_magnitude(arity);
    const Value z = rng.range(-cap, cap);
    const std::array<Value, 1> single{z};
    const DigitParams params = DigitParams::for_values(single, arity);

    Value magnitude = 0;
    for (int j = 0; j <= params.last_digit; ++j) {
      const SignedDigit d = project_digit(z, params.digit_bits, j);
      CHECK(std::abs(d) < (Value{1} << params.digit_bits));
      magnitude += std::abs(d) << (j * params.digit_bits);
    }
    const Value sign = z > 0 ? 1 : (z < 0 ? -1 : 0);
    CHECK(sign * magnitude == z);
  }
}

TEST_CASE("shift_right_sign_preserving truncates the magnitude") {
  CHECK(shift_right_sign_preserving(Value{-13}, 2) == -3);
  CHECK(shift_right_sign_preserving(Value{5}, 1) == 2);
  CHECK(shift_right_sign_preserving(Value{0}, 10) == 0);
  CHECK(shift_right_sign_preserving(Value{-1}, 1) == 0);  // not two's-complement -1

  SplitMix64 rng(13);
  for (int it = 0; it < 20000; ++it) {
    const Value z = rng.range(-(Value{1} << 60), Value{1} << 60);
    const int a = static_cast<int>(rng.below(32));
    const int b = static_cast<int>(rng.below(32));
    CHECK(shift_right_sign_preserving(shift_right_sign_preserving(z, a), b) ==
          shift_right_sign_preserving(z, a + b));
  }
}

TEST_CASE("window_accepts wrapped residues") {
  const DigitParams params(3, 16);  // k = 6
  CHECK(window_accepts(2, params, false));
  CHECK(window_accepts(62, params, false));
  CHECK_FALSE(window_accepts(3, params, false));
  CHECK(window_accepts(64, params, true));
  CHECK_FALSE(window_accepts(1, params, true));
  CHECK(window_accepts(0, params, true));
  CHECK(window_accepts(-2, params, false));   // wraps to 62
  CHECK_FALSE(window_accepts(-3, params, false));

  // Digit sums of the zero-sum triple (100, -70, -30) at position 0.
  std::int64_t sum = 0;
  for (Value v : {Value{100}, Value{-70}, Value{-30}}) {
    sum += project_digit(v, params.digit_bits, 0);
  }
  CHECK(sum == 0);  // 36 - 6 - 30
  CHECK(window_accepts(sum, params, true));
  CHECK(window_accepts(sum, params, false));
}

TEST_CASE("zero-sum tuples pass the window at every digit position") {
  SplitMix64 rng(17);
  for (int arity : {2, 3, 4, 5, 8}) {
    for (int it = 0; it < 4000; ++it) {
      const auto tuple = rsum_test::random_zero_sum_tuple(rng, arity);
      const DigitParams params = DigitParams::for_values(tuple, arity);

      // Exact zero sums stay zero modulo every power of two.
      Value total = 0;
      for (Value v : tuple) total += v;
      REQUIRE(total == 0);
      for (int k = 1; k <= 62; ++k) {
        CHECK((static_cast<std::uint64_t>(total) & ((std::uint64_t{1} << k) - 1)) == 0);
      }

      for (int j = 0; j <= params.last_digit + 2; ++j) {
        std::int64_t digit_sum = 0;
        for (Value v : tuple) digit_sum += project_digit(v, params.digit_bits, j);
        CHECK(window_accepts(digit_sum, params, j == 0));
      }
    }
  }
}

TEST_CASE("zero-sum tuples pass the window after magnitude-truncating shifts") {
  SplitMix64 rng(19);
  for (int arity : {2, 3, 4, 5, 8}) {
    const int log_arity = ceil_log2(static_cast<std::uint64_t>(arity));
    for (int it = 0; it < 3000; ++it) {
      const auto tuple = rsum_test::random_zero_sum_tuple(rng, arity);
      for (int shift : {log_arity, 2 * log_arity, 7}) {
        std::vector<Value> shifted;
        for (Value v : tuple) shifted.push_back(shift_right_sign_preserving(v, shift));
        const DigitParams params = DigitParams::for_values(shifted, arity);
        for (int j = 0; j <= params.last_digit + 2; ++j) {
          std::int64_t digit_sum = 0;
          for (Value v : shifted) digit_sum += project_digit(v, params.digit_bits, j);
          CHECK(window_accepts(digit_sum, params, false));
        }
      }
    }
  }
}

// Congruence modulo 2^(max bit length + ceil(log2 r)) forces an exact zero
// sum, except in one corner: arity a power of two and all elements the same
// power of two. The exhaustive search documents that boundary precisely.
TEST_CASE("sum congruence implies zero, away from the power-of-two corner") {
  for (int arity : {2, 3, 4}) {
    const int log_arity = ceil_log2(static_cast<std::uint64_t>(arity));
    std::vector<std::vector<Value>> violations;
    std::vector<Value> tuple(static_cast<std::size_t>(arity));
    auto rec = [&](auto&& self, int position) -> void {
      if (position == arity) {
        int max_bits = 0;
        for (Value v : tuple) {
          if (v == 0) return;  // bit length undefined; outside the premise
          max_bits = std::max(max_bits, ceil_log2(static_cast<std::uint64_t>(std::abs(v))));
        }
        const int modulus_bits = max_bits + log_arity;
        Value sum = 0;
        for (Value v : tuple) sum += v;
        const bool congruent =
            (static_cast<std::uint64_t>(sum) & ((std::uint64_t{1} << modulus_bits) - 1)) == 0;
        if (congruent && sum != 0) violations.push_back(tuple);
        return;
      }
      for (Value v = -6; v <= 6; ++v) {
        tuple[static_cast<std::size_t>(position)] = v;
        self(self, position + 1);
      }
    };
    rec(rec, 0);

    if (arity == 3) {
      CHECK(violations.empty());
    } else {
      CHECK_FALSE(violations.empty());
      for (const auto& bad : violations) {
        // All elements equal, and that value is plus or minus a power of two.
        for (Value v : bad) CHECK(v == bad[0]);
        const std::uint64_t magnitude = static_cast<std::uint64_t>(std::abs(bad[0]));
        CHECK((magnitude & (magnitude - 1)) == 0);
      }
    }
  }
}
