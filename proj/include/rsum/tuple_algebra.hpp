#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rsum/digit_filter.hpp"

namespace rsum {

// A set of candidate r-tuples in product form: the m-th tuple element may be
// any ordinal of the m-th column, all elements pairwise distinct. Columns are
// sorted ascending and kept in canonical (lexicographically sorted) order so
// that structural equality is meaningful.
struct TupleTable {
  std::vector<std::vector<Ordinal>> columns;

  friend bool operator==(const TupleTable&, const TupleTable&) = default;
  friend auto operator<=>(const TupleTable&, const TupleTable&) = default;
};

struct TupleTableSet {
  std::vector<TupleTable> tables;  // deduplicated, sorted canonically

  friend bool operator==(const TupleTableSet&, const TupleTableSet&) = default;
};

// Sorts columns lexicographically; column contents must already be sorted.
TupleTable canonical(TupleTable table);

// Turns accepted digit multisets into tuple tables by attaching the full
// ordinal preimage of every digit value. Repeated digit values yield
// repeated columns.
TupleTableSet materialize(const DigitTupleSet& tuples, const OrdinalIndex& index);

// All columnwise intersections of `a` with a column permutation of `b`,
// keeping those where every column stays nonempty.
TupleTableSet intersect_tables(const TupleTable& a, const TupleTable& b);

// Pairwise table intersections, deduplicated. Represents exactly the
// intersection of the two candidate sets.
TupleTableSet intersect_sets(const TupleTableSet& a, const TupleTableSet& b);

// Blockwise confluence of per-pass, per-digit-position table sets: block s
// intersects every pass's sets for digit positions [s*h, (s+1)*h), truncated
// to the digit range shared by all passes. The trailing partial block is
// included.
std::vector<TupleTableSet> intersect_digit_blocks(
    const std::vector<std::vector<TupleTableSet>>& per_pass_per_digit, int block_width);

// Sum over tables of the product of column sizes: an upper bound on the
// number of represented candidates. Saturates at uint64 max.
std::uint64_t count_variants(const TupleTableSet& set);

// Intersects the `count` smallest sets (fewest tables, ties to the earlier
// index), folding in ascending size order.
TupleTableSet select_smallest_and_intersect(const std::vector<TupleTableSet>& sets, int count);

// Candidate enumeration and membership, shared by the solver and by tests.
std::vector<std::vector<Ordinal>> enumerate_candidates(const TupleTableSet& set,
                                                       bool allow_repeated_ordinals);
bool table_covers(const TupleTable& table, std::span<const Ordinal> tuple);
bool set_covers(const TupleTableSet& set, std::span<const Ordinal> tuple);

}  // namespace rsum
