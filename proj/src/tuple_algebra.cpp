#include "rsum/tuple_algebra.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rsum {

TupleTable canonical(TupleTable table) {
  std::sort(table.columns.begin(), table.columns.end());
  return table;
}

TupleTableSet materialize(const DigitTupleSet& tuples, const OrdinalIndex& index) {
  std::set<TupleTable> seen;
  for (const auto& tuple : tuples.tuples) {
    TupleTable table;
    table.columns.reserve(tuple.size());
    for (SignedDigit digit : tuple) {
      auto it = index.groups.find(digit);
      if (it == index.groups.end()) {
        throw std::logic_error("materialize: digit value missing from ordinal index");
      }
      table.columns.push_back(it->second);
    }
    seen.insert(canonical(std::move(table)));
  }
  TupleTableSet out;
  out.tables.assign(seen.begin(), seen.end());
  return out;
}

namespace {

std::vector<Ordinal> intersect_sorted(const std::vector<Ordinal>& a, const std::vector<Ordinal>& b) {
  std::vector<Ordinal> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

TupleTableSet intersect_tables(const TupleTable& a, const TupleTable& b) {
  if (a.columns.size() != b.columns.size()) {
    throw std::domain_error("intersect_tables: arity mismatch");
  }
  const std::size_t arity = a.columns.size();

  // All r^2 column intersections up front; permutations then only test
  // nonemptiness and assemble.
  std::vector<std::vector<std::vector<Ordinal>>> cell(arity);
  bool feasible = true;
  for (std::size_t m = 0; m < arity && feasible; ++m) {
    cell[m].resize(arity);
    bool any = false;
    for (std::size_t c = 0; c < arity; ++c) {
      cell[m][c] = intersect_sorted(a.columns[m], b.columns[c]);
      any = any || !cell[m][c].empty();
    }
    feasible = any;
  }

  std::set<TupleTable> seen;
  if (feasible) {
    std::vector<std::size_t> perm(arity);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool ok = true;
      for (std::size_t m = 0; m < arity; ++m) {
        if (cell[m][perm[m]].empty()) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      TupleTable table;
      table.columns.reserve(arity);
      for (std::size_t m = 0; m < arity; ++m) table.columns.push_back(cell[m][perm[m]]);
      seen.insert(canonical(std::move(table)));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  TupleTableSet out;
  out.tables.assign(seen.begin(), seen.end());
  return out;
}

TupleTableSet intersect_sets(const TupleTableSet& a, const TupleTableSet& b) {
  std::set<TupleTable> seen;
  for (const TupleTable& ta : a.tables) {
    for (const TupleTable& tb : b.tables) {
      TupleTableSet piece = intersect_tables(ta, tb);
      seen.insert(piece.tables.begin(), piece.tables.end());
    }
  }
  TupleTableSet out;
  out.tables.assign(seen.begin(), seen.end());
  return out;
}

namespace {

// Folds sets by intersection in ascending size order (ties to earlier
// position) so small sets prune early.
TupleTableSet fold_intersect(std::vector<const TupleTableSet*> parts) {
  if (parts.empty()) return {};
  std::stable_sort(parts.begin(), parts.end(),
                   [](const TupleTableSet* x, const TupleTableSet* y) {
                     return x->tables.size() < y->tables.size();
                   });
  TupleTableSet acc = *parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (acc.tables.empty()) break;
    acc = intersect_sets(acc, *parts[i]);
  }
  return acc;
}

}  // namespace

std::vector<TupleTableSet> intersect_digit_blocks(
    const std::vector<std::vector<TupleTableSet>>& per_pass_per_digit, int block_width) {
  if (block_width < 1) {
    throw std::domain_error("intersect_digit_blocks: block width must be >= 1");
  }
  if (per_pass_per_digit.empty()) return {};
  std::size_t common = std::numeric_limits<std::size_t>::max();
  for (const auto& pass : per_pass_per_digit) common = std::min(common, pass.size());
  if (common == 0) return {};

  const std::size_t width = static_cast<std::size_t>(block_width);
  const std::size_t block_count = (common + width - 1) / width;
  std::vector<TupleTableSet> blocks;
  blocks.reserve(block_count);
  for (std::size_t s = 0; s < block_count; ++s) {
    std::vector<const TupleTableSet*> parts;
    for (const auto& pass : per_pass_per_digit) {
      for (std::size_t j = s * width; j < std::min((s + 1) * width, common); ++j) {
        parts.push_back(&pass[j]);
      }
    }
    blocks.push_back(fold_intersect(std::move(parts)));
  }
  return blocks;
}

std::uint64_t count_variants(const TupleTableSet& set) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  for (const TupleTable& table : set.tables) {
    unsigned __int128 product = 1;
    for (const auto& column : table.columns) {
      product *= column.size();
      if (product > kMax) {
        product = kMax;
        break;
      }
    }
    const unsigned __int128 next = static_cast<unsigned __int128>(total) + product;
    total = next > kMax ? kMax : static_cast<std::uint64_t>(next);
  }
  return total;
}

TupleTableSet select_smallest_and_intersect(const std::vector<TupleTableSet>& sets, int count) {
  if (count < 1) {
    throw std::domain_error("select_smallest_and_intersect: count must be >= 1");
  }
  std::vector<std::size_t> order(sets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return sets[x].tables.size() < sets[y].tables.size();
  });
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(count), order.size());
  std::vector<const TupleTableSet*> parts;
  parts.reserve(take);
  for (std::size_t i = 0; i < take; ++i) parts.push_back(&sets[order[i]]);
  return fold_intersect(std::move(parts));
}

namespace {

void candidates_rec(const TupleTable& table, bool allow_repeats, std::size_t column,
                    std::vector<Ordinal>& picked, std::set<std::vector<Ordinal>>& out) {
  if (column == table.columns.size()) {
    std::vector<Ordinal> tuple = picked;
    std::sort(tuple.begin(), tuple.end());
    out.insert(std::move(tuple));
    return;
  }
  for (Ordinal o : table.columns[column]) {
    if (!allow_repeats && std::find(picked.begin(), picked.end(), o) != picked.end()) continue;
    picked.push_back(o);
    candidates_rec(table, allow_repeats, column + 1, picked, out);
    picked.pop_back();
  }
}

}  // namespace

std::vector<std::vector<Ordinal>> enumerate_candidates(const TupleTableSet& set,
                                                       bool allow_repeated_ordinals) {
  std::set<std::vector<Ordinal>> out;
  std::vector<Ordinal> picked;
  for (const TupleTable& table : set.tables) {
    picked.clear();
    candidates_rec(table, allow_repeated_ordinals, 0, picked, out);
  }
  return {out.begin(), out.end()};
}

namespace {

bool cover_rec(const TupleTable& table, std::span<const Ordinal> tuple, std::size_t position,
               std::vector<bool>& used) {
  if (position == tuple.size()) return true;
  const Ordinal o = tuple[position];
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (used[c]) continue;
    const auto& column = table.columns[c];
    if (!std::binary_search(column.begin(), column.end(), o)) continue;
    used[c] = true;
    if (cover_rec(table, tuple, position + 1, used)) return true;
    used[c] = false;
  }
  return false;
}

}  // namespace

bool table_covers(const TupleTable& table, std::span<const Ordinal> tuple) {
  if (tuple.size() != table.columns.size()) return false;
  std::vector<bool> used(table.columns.size(), false);
  return cover_rec(table, tuple, 0, used);
}

bool set_covers(const TupleTableSet& set, std::span<const Ordinal> tuple) {
  return std::any_of(set.tables.begin(), set.tables.end(),
                     [&](const TupleTable& t) { return table_covers(t, tuple); });
}

}  // namespace rsum
