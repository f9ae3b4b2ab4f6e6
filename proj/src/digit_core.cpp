#include "rsum/digit_core.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace rsum {

int ceil_log2(std::uint64_t x) {
  if (x == 0) {
    throw std::domain_error("ceil_log2: argument must be positive");
  }
  return std::bit_width(x - 1);
}

Value BoundedInt::max_magnitude(int arity) {
  if (arity < 2) {
    throw std::domain_error("BoundedInt: arity must be at least 2");
  }
  // |v| < 2^62 / arity, conservatively rounded down.
  return ((Value{1} << 62) / arity) - 1;
}

BoundedInt::BoundedInt(Value value, int arity) : value_(value) {
  const Value cap = max_magnitude(arity);
  if (value == std::numeric_limits<Value>::min() || std::abs(value) > cap) {
    throw std::domain_error("BoundedInt: |" + std::to_string(value) +
                            "| exceeds 2^62 / " + std::to_string(arity));
  }
}

std::vector<BoundedInt> make_bounded(std::span<const Value> values, int arity) {
  std::vector<BoundedInt> out;
  out.reserve(values.size());
  for (Value v : values) out.emplace_back(v, arity);
  return out;
}

std::vector<Value> raw_values(std::span<const BoundedInt> omega) {
  std::vector<Value> out;
  out.reserve(omega.size());
  for (BoundedInt v : omega) out.push_back(v.value());
  return out;
}

DigitParams::DigitParams(int arity_in, int bit_length_in) {
  if (arity_in < 2) {
    throw std::domain_error("DigitParams: arity must be at least 2");
  }
  if (bit_length_in < 0) {
    throw std::domain_error("DigitParams: bit length must be non-negative");
  }
  arity = arity_in;
  log_arity = ceil_log2(static_cast<std::uint64_t>(arity));
  digit_bits = 3 * log_arity;
  bit_length = bit_length_in;
  last_digit = (bit_length + log_arity) / digit_bits;
}

DigitParams DigitParams::for_values(std::span<const Value> values, int arity) {
  Value zeta = 0;
  for (Value v : values) zeta = std::max(zeta, std::abs(v));
  const int l = zeta > 0 ? ceil_log2(static_cast<std::uint64_t>(zeta)) : 0;
  return DigitParams(arity, l);
}

DigitParams DigitParams::for_omega(std::span<const BoundedInt> omega, int arity) {
  Value zeta = 0;
  for (BoundedInt v : omega) zeta = std::max(zeta, std::abs(v.value()));
  const int l = zeta > 0 ? ceil_log2(static_cast<std::uint64_t>(zeta)) : 0;
  return DigitParams(arity, l);
}

SignedDigit project_digit(Value z, int digit_bits, int digit_index) noexcept {
  if (z == 0) return 0;
  const int shift = digit_bits * digit_index;
  if (shift >= 63) return 0;
  const std::uint64_t magnitude = static_cast<std::uint64_t>(z < 0 ? -z : z);
  const std::uint64_t digit = (magnitude >> shift) & ((std::uint64_t{1} << digit_bits) - 1);
  return z < 0 ? -static_cast<SignedDigit>(digit) : static_cast<SignedDigit>(digit);
}

SignedDigit project_digit(BoundedInt z, const DigitParams& params, int digit_index) noexcept {
  return project_digit(z.value(), params.digit_bits, digit_index);
}

Value shift_right_sign_preserving(Value z, int bits) noexcept {
  if (z == 0) return 0;
  if (bits >= 63) return 0;
  const Value magnitude = z < 0 ? -z : z;
  const Value shifted = magnitude >> bits;
  return z < 0 ? -shifted : shifted;
}

BoundedInt shift_right_sign_preserving(BoundedInt z, int arity, int bits) {
  // Truncation only shrinks the magnitude, so the bound is preserved.
  return BoundedInt(shift_right_sign_preserving(z.value(), bits), arity);
}

bool window_accepts(std::int64_t digit_sum, int digit_bits, int arity, bool strict) noexcept {
  const std::uint64_t base = std::uint64_t{1} << digit_bits;
  // Two's complement masking yields the residue normalized into [0, 2^k).
  const std::uint64_t wrapped = static_cast<std::uint64_t>(digit_sum) & (base - 1);
  if (strict) return wrapped == 0;
  const std::uint64_t r = static_cast<std::uint64_t>(arity);
  return wrapped < r || wrapped > base - r;
}

bool window_accepts(std::int64_t digit_sum, const DigitParams& params, bool strict) noexcept {
  return window_accepts(digit_sum, params.digit_bits, params.arity, strict);
}

}  // namespace rsum
