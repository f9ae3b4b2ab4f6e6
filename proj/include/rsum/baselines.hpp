#pragma once

#include <span>
#include <vector>

#include "rsum/digit_core.hpp"

namespace rsum {

// Exhaustive enumeration of all zero-sum r-tuples; the ground-truth oracle.
// Tuples are sorted ordinal lists, deduplicated, in lexicographic order.
std::vector<std::vector<Ordinal>> brute_force_rsum(std::span<const BoundedInt> omega, int arity,
                                                   bool allow_repeated_ordinals = false);

// Classical split: index all floor(r/2)-subsets by sum, then match
// complementary ceil(r/2)-subsets, discarding ordinal collisions. Same
// output contract as brute_force_rsum with repeats disallowed.
std::vector<std::vector<Ordinal>> meet_in_the_middle_rsum(std::span<const BoundedInt> omega,
                                                          int arity);

}  // namespace rsum
