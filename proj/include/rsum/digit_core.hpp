#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rsum {

using Value = std::int64_t;
using Ordinal = std::uint32_t;

// One digit of a sign-magnitude base-2^k expansion, always in (-2^k, 2^k).
using SignedDigit = std::int64_t;

// Smallest e with 2^e >= x. Throws std::domain_error for x == 0.
int ceil_log2(std::uint64_t x);

// Signed integer whose magnitude is capped at 2^62 / arity, so that any
// sum of `arity` of them fits in int64 without overflow.
class BoundedInt {
 public:
  BoundedInt(Value value, int arity);

  Value value() const noexcept { return value_; }
  static Value max_magnitude(int arity);

 private:
  Value value_;
};

std::vector<BoundedInt> make_bounded(std::span<const Value> values, int arity);
std::vector<Value> raw_values(std::span<const BoundedInt> omega);

// Digit geometry for one filter pass: digit width, bit length of the
// largest magnitude and the index of the last digit worth inspecting.
struct DigitParams {
  int arity = 0;       // r, >= 2
  int log_arity = 0;   // ceil(log2 r)
  int digit_bits = 0;  // k = 3 * log_arity
  int bit_length = 0;  // l = ceil(log2 zeta), 0 when all inputs are 0
  int last_digit = 0;  // j_max = floor((l + log_arity) / k)

  DigitParams() = default;
  DigitParams(int arity, int bit_length);

  // Computes bit_length from the largest magnitude in the collection.
  static DigitParams for_values(std::span<const Value> values, int arity);
  static DigitParams for_omega(std::span<const BoundedInt> omega, int arity);
};

// j-th digit of z in the sign-magnitude base-2^k system: sign(z) times
// the j-th digit of |z|. Zero for digits beyond the magnitude.
SignedDigit project_digit(Value z, int digit_bits, int digit_index) noexcept;
SignedDigit project_digit(BoundedInt z, const DigitParams& params, int digit_index) noexcept;

// sign(z) * floor(|z| / 2^bits): the magnitude is truncated toward zero,
// so negative values do NOT round toward -infinity.
Value shift_right_sign_preserving(Value z, int bits) noexcept;
BoundedInt shift_right_sign_preserving(BoundedInt z, int arity, int bits);

// Wrapped residue test for a sum of at most `arity` signed digits.
// Non-strict: accept iff digit_sum mod 2^k lands within distance
// arity-1 of zero on the cyclic group. Strict: accept iff it is 0.
bool window_accepts(std::int64_t digit_sum, const DigitParams& params, bool strict) noexcept;
bool window_accepts(std::int64_t digit_sum, int digit_bits, int arity, bool strict) noexcept;

}  // namespace rsum
