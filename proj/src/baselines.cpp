#include "rsum/baselines.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace rsum {

namespace {

void check_size(std::size_t n, int arity, bool allow_repeats) {
  if (arity < 2) {
    throw std::domain_error("rsum baseline: arity must be at least 2");
  }
  if (!allow_repeats && n < static_cast<std::size_t>(arity)) {
    throw std::domain_error("rsum baseline: fewer elements than the tuple arity");
  }
  if (n == 0) {
    throw std::domain_error("rsum baseline: empty input");
  }
}

void brute_rec(std::span<const BoundedInt> omega, int remaining, bool allow_repeats,
               std::size_t first, Value partial, std::vector<Ordinal>& picked,
               std::vector<std::vector<Ordinal>>& out) {
  if (remaining == 0) {
    if (partial == 0) out.push_back(picked);
    return;
  }
  for (std::size_t i = first; i < omega.size(); ++i) {
    picked.push_back(static_cast<Ordinal>(i));
    brute_rec(omega, remaining - 1, allow_repeats, allow_repeats ? i : i + 1,
              partial + omega[i].value(), picked, out);
    picked.pop_back();
  }
}

// Enumerates ordinal combinations of the given size in lexicographic order.
template <typename Visit>
void for_each_combination(std::size_t n, int size, Visit&& visit) {
  std::vector<Ordinal> combo(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) combo[static_cast<std::size_t>(i)] = static_cast<Ordinal>(i);
  if (static_cast<std::size_t>(size) > n) return;
  for (;;) {
    visit(combo);
    int pos = size - 1;
    while (pos >= 0 &&
           combo[static_cast<std::size_t>(pos)] == n - static_cast<std::size_t>(size - pos)) {
      --pos;
    }
    if (pos < 0) break;
    ++combo[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < size; ++q) {
      combo[static_cast<std::size_t>(q)] = combo[static_cast<std::size_t>(q - 1)] + 1;
    }
  }
}

}  // namespace

std::vector<std::vector<Ordinal>> brute_force_rsum(std::span<const BoundedInt> omega, int arity,
                                                   bool allow_repeated_ordinals) {
  check_size(omega.size(), arity, allow_repeated_ordinals);
  std::vector<std::vector<Ordinal>> out;
  std::vector<Ordinal> picked;
  picked.reserve(static_cast<std::size_t>(arity));
  brute_rec(omega, arity, allow_repeated_ordinals, 0, 0, picked, out);
  return out;  // lexicographic by construction, no duplicates
}

std::vector<std::vector<Ordinal>> meet_in_the_middle_rsum(std::span<const BoundedInt> omega,
                                                          int arity) {
  check_size(omega.size(), arity, false);
  const int low_size = arity / 2;
  const int high_size = arity - low_size;

  std::unordered_map<Value, std::vector<std::vector<Ordinal>>> by_sum;
  for_each_combination(omega.size(), low_size, [&](const std::vector<Ordinal>& combo) {
    Value sum = 0;
    for (Ordinal o : combo) sum += omega[o].value();
    by_sum[sum].push_back(combo);
  });

  std::set<std::vector<Ordinal>> found;
  for_each_combination(omega.size(), high_size, [&](const std::vector<Ordinal>& combo) {
    Value sum = 0;
    for (Ordinal o : combo) sum += omega[o].value();
    auto it = by_sum.find(-sum);
    if (it == by_sum.end()) return;
    for (const auto& partner : it->second) {
      // Reject ordinal collisions between the two halves.
      bool disjoint = true;
      for (Ordinal o : partner) {
        if (std::binary_search(combo.begin(), combo.end(), o)) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      std::vector<Ordinal> tuple;
      tuple.reserve(static_cast<std::size_t>(arity));
      std::merge(combo.begin(), combo.end(), partner.begin(), partner.end(),
                 std::back_inserter(tuple));
      found.insert(std::move(tuple));
    }
  });
  return {found.begin(), found.end()};
}

}  // namespace rsum
