#include "rsum/digit_filter.hpp"

#include <algorithm>
#include <stdexcept>

namespace rsum {

std::pair<DigitTable, OrdinalIndex> build_digit_table(std::span<const BoundedInt> omega,
                                                      const DigitParams& params, int digit_index) {
  if (omega.empty()) {
    throw std::domain_error("build_digit_table: empty input");
  }
  if (digit_index < 0 || digit_index > params.last_digit) {
    throw std::domain_error("build_digit_table: digit index out of range");
  }
  OrdinalIndex index;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const SignedDigit d = project_digit(omega[i], params, digit_index);
    index.groups[d].push_back(static_cast<Ordinal>(i));
  }
  DigitTable table;
  table.entries.reserve(index.groups.size());
  for (const auto& [value, ordinals] : index.groups) {
    const int multiplicity =
        static_cast<int>(std::min<std::size_t>(ordinals.size(), static_cast<std::size_t>(params.arity)));
    table.entries.push_back({value, multiplicity});
  }
  return {std::move(table), std::move(index)};
}

namespace {

// Depth-first enumeration over the sorted table with non-decreasing entry
// choice and per-entry multiplicity budget: emits each multiset once, in
// lexicographic order.
void enumerate_rec(const DigitTable& table, const DigitParams& params, bool strict,
                   std::size_t first_entry, int remaining, std::int64_t partial_sum,
                   std::vector<SignedDigit>& current, DigitTupleSet& out) {
  if (remaining == 0) {
    if (window_accepts(partial_sum, params, strict)) {
      out.tuples.push_back(current);
    }
    return;
  }
  for (std::size_t e = first_entry; e < table.entries.size(); ++e) {
    const auto& entry = table.entries[e];
    const int take_max = std::min(entry.multiplicity, remaining);
    // Taking more copies of the smaller value sorts earlier; descend so the
    // output comes out in lexicographic order.
    for (int take = take_max; take >= 1; --take) {
      for (int c = 0; c < take; ++c) current.push_back(entry.value);
      enumerate_rec(table, params, strict, e + 1, remaining - take,
                    partial_sum + static_cast<std::int64_t>(take) * entry.value, current, out);
      for (int c = 0; c < take; ++c) current.pop_back();
    }
  }
}

}  // namespace

DigitTupleSet enumerate_accepted_tuples(const DigitTable& table, const DigitParams& params,
                                        bool strict) {
  DigitTupleSet out;
  std::vector<SignedDigit> current;
  current.reserve(static_cast<std::size_t>(params.arity));
  enumerate_rec(table, params, strict, 0, params.arity, 0, current, out);
  return out;
}

FilterPass run_filter_pass(std::span<const BoundedInt> omega, int arity, const PassConfig& config) {
  if (omega.empty()) {
    throw std::domain_error("run_filter_pass: empty input");
  }
  std::vector<BoundedInt> shifted;
  shifted.reserve(omega.size());
  for (BoundedInt v : omega) {
    shifted.push_back(shift_right_sign_preserving(v, arity, config.shift_bits));
  }

  FilterPass pass;
  pass.config = config;
  pass.params = DigitParams::for_omega(shifted, arity);
  pass.tuples.reserve(static_cast<std::size_t>(pass.params.last_digit) + 1);
  pass.indexes.reserve(static_cast<std::size_t>(pass.params.last_digit) + 1);
  for (int j = 0; j <= pass.params.last_digit; ++j) {
    auto [table, index] = build_digit_table(shifted, pass.params, j);
    const bool strict = j == 0 && config.strict_at_zero;
    pass.tuples.push_back(enumerate_accepted_tuples(table, pass.params, strict));
    pass.indexes.push_back(std::move(index));
  }
  return pass;
}

}  // namespace rsum
