#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "rsum/digit_core.hpp"

namespace rsum {

// Distinct digit values at one digit position, each with its multiplicity
// capped at the tuple arity. Entries sorted by digit value.
struct DigitTable {
  struct Entry {
    SignedDigit value;
    int multiplicity;  // in [1, arity]
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> entries;

  friend bool operator==(const DigitTable&, const DigitTable&) = default;
};

// Full preimage of each digit value: every ordinal whose projection at the
// position equals the key, ascending. Uncapped, unlike DigitTable.
struct OrdinalIndex {
  std::map<SignedDigit, std::vector<Ordinal>> groups;

  friend bool operator==(const OrdinalIndex&, const OrdinalIndex&) = default;
};

// Accepted digit multisets at one position: each a sorted r-list of digit
// values, deduplicated, in lexicographic order.
struct DigitTupleSet {
  std::vector<std::vector<SignedDigit>> tuples;

  friend bool operator==(const DigitTupleSet&, const DigitTupleSet&) = default;
};

// One filter pass over the (shifted) input. The first pass uses the exact
// zero test at digit 0; shifted passes must fall back to the window test.
struct PassConfig {
  int shift_bits = 0;
  bool strict_at_zero = true;
};

std::pair<DigitTable, OrdinalIndex> build_digit_table(std::span<const BoundedInt> omega,
                                                      const DigitParams& params, int digit_index);

DigitTupleSet enumerate_accepted_tuples(const DigitTable& table, const DigitParams& params,
                                        bool strict);

// Output of one pass: accepted digit multisets and the ordinal preimages for
// every digit position 0..params.last_digit of the shifted input.
struct FilterPass {
  PassConfig config;
  DigitParams params;  // derived from the shifted maximum magnitude
  std::vector<DigitTupleSet> tuples;    // indexed by digit position
  std::vector<OrdinalIndex> indexes;    // indexed by digit position
};

FilterPass run_filter_pass(std::span<const BoundedInt> omega, int arity, const PassConfig& config);

}  // namespace rsum
