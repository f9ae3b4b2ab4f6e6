#include "rsum/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "rsum/baselines.hpp"

namespace rsum {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  return a > kMax - b ? kMax : a + b;
}

// One digit position of one pass, with its acceptance mode.
struct Coordinate {
  int pass = 0;
  int digit = 0;
  bool strict = false;
};

struct PassData {
  PassConfig config;
  DigitParams params;
  // digits[j][ordinal]: projection of the shifted value at position j.
  std::vector<std::vector<SignedDigit>> digits;
  // Per position: digit value -> occurrence count (the ordinal-index sizes).
  std::vector<std::unordered_map<SignedDigit, std::uint32_t>> counts;
};

// The distinct joint digit vectors over a coordinate subset, with their
// ordinal preimages. Ids are assigned in first-seen ordinal order.
struct Alphabet {
  std::vector<std::vector<SignedDigit>> digits;     // per letter, per coordinate
  std::vector<std::vector<Ordinal>> preimages;      // ascending by construction
  std::vector<std::uint32_t> counts;                // preimage sizes
};

struct VectorHash {
  std::size_t operator()(const std::vector<SignedDigit>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (SignedDigit d : v) {
      h ^= static_cast<std::uint64_t>(d);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t d : v) {
      h ^= d;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

Alphabet build_alphabet(const std::vector<PassData>& passes, const std::vector<Coordinate>& coords,
                        std::size_t n) {
  Alphabet alphabet;
  std::unordered_map<std::vector<SignedDigit>, std::uint32_t, VectorHash> ids;
  std::vector<SignedDigit> key(coords.size());
  for (std::size_t o = 0; o < n; ++o) {
    for (std::size_t c = 0; c < coords.size(); ++c) {
      key[c] = passes[static_cast<std::size_t>(coords[c].pass)]
                   .digits[static_cast<std::size_t>(coords[c].digit)][o];
    }
    auto [it, inserted] = ids.emplace(key, static_cast<std::uint32_t>(alphabet.digits.size()));
    if (inserted) {
      alphabet.digits.push_back(key);
      alphabet.preimages.emplace_back();
      alphabet.counts.push_back(0);
    }
    alphabet.preimages[it->second].push_back(static_cast<Ordinal>(o));
    ++alphabet.counts[it->second];
  }
  return alphabet;
}

// Caps on how often one digit value may appear in an accepted multiset,
// projected per coordinate. With repeated ordinals allowed the cap is the
// arity itself and never binds.
struct CapChecker {
  const std::vector<PassData>* passes;
  const std::vector<Coordinate>* coords;
  int arity;
  bool enforce;

  int cap(std::size_t coord, SignedDigit digit) const {
    const auto& counts = (*passes)[static_cast<std::size_t>((*coords)[coord].pass)]
                             .counts[static_cast<std::size_t>((*coords)[coord].digit)];
    const auto it = counts.find(digit);
    const std::uint32_t occurrences = it == counts.end() ? 0 : it->second;
    return static_cast<int>(std::min<std::uint32_t>(occurrences, static_cast<std::uint32_t>(arity)));
  }

  // Verifies the projected multiplicity bound for a complete letter multiset.
  bool admits(const Alphabet& alphabet, std::span<const std::uint32_t> letters) const {
    if (!enforce) return true;
    for (std::size_t c = 0; c < coords->size(); ++c) {
      // r is tiny; quadratic duplicate counting is cheap.
      for (std::size_t i = 0; i < letters.size(); ++i) {
        const SignedDigit digit = alphabet.digits[letters[i]][c];
        bool counted = false;
        for (std::size_t q = 0; q < i; ++q) {
          if (alphabet.digits[letters[q]][c] == digit) {
            counted = true;
            break;
          }
        }
        if (counted) continue;
        int uses = 0;
        for (std::size_t q = i; q < letters.size(); ++q) {
          if (alphabet.digits[letters[q]][c] == digit) ++uses;
        }
        if (uses > cap(c, digit)) return false;
      }
    }
    return true;
  }
};

struct WindowSpec {
  std::uint64_t mask = 0;  // 2^k - 1
  std::uint64_t base = 0;  // 2^k
  std::uint64_t radius = 0;  // arity
  bool strict = false;

  bool accepts(std::uint64_t residue) const {
    if (strict) return residue == 0;
    return residue < radius || residue > base - radius;
  }
  std::vector<std::uint64_t> accepted_residues() const {
    if (strict) return {0};
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = 0; v < radius; ++v) out.push_back(v);
    for (std::uint64_t v = base - radius + 1; v < base; ++v) out.push_back(v);
    return out;
  }
};

std::vector<WindowSpec> make_windows(const std::vector<PassData>& passes,
                                     const std::vector<Coordinate>& coords) {
  std::vector<WindowSpec> windows;
  windows.reserve(coords.size());
  for (const Coordinate& coord : coords) {
    const DigitParams& params = passes[static_cast<std::size_t>(coord.pass)].params;
    WindowSpec w;
    w.base = std::uint64_t{1} << params.digit_bits;
    w.mask = w.base - 1;
    w.radius = static_cast<std::uint64_t>(params.arity);
    w.strict = coord.strict;
    windows.push_back(w);
  }
  return windows;
}

// Accepted letter multisets of a joint enumeration, ids ascending.
struct JointResult {
  std::vector<std::vector<std::uint32_t>> multisets;
  bool budget_exceeded = false;
};

struct Budget {
  std::uint64_t work_left;
  std::uint64_t tables_left;

  bool spend(std::uint64_t units = 1) {
    if (work_left < units) {
      work_left = 0;
      return false;
    }
    work_left -= units;
    return true;
  }
  bool emit() {
    if (tables_left == 0) return false;
    --tables_left;
    return true;
  }
};

bool joint_dfs(const Alphabet& alphabet, const std::vector<WindowSpec>& windows,
               const CapChecker& caps, std::uint32_t first, int remaining,
               std::vector<std::uint64_t>& residues, std::vector<std::uint32_t>& chosen,
               JointResult& out, Budget& budget) {
  if (remaining == 0) {
    for (std::size_t c = 0; c < windows.size(); ++c) {
      if (!windows[c].accepts(residues[c])) return true;
    }
    if (!caps.admits(alphabet, chosen)) return true;
    if (!budget.emit()) {
      out.budget_exceeded = true;
      return false;
    }
    out.multisets.push_back(chosen);
    return true;
  }
  for (std::uint32_t letter = first; letter < alphabet.digits.size(); ++letter) {
    if (!budget.spend()) {
      out.budget_exceeded = true;
      return false;
    }
    chosen.push_back(letter);
    for (std::size_t c = 0; c < windows.size(); ++c) {
      residues[c] = (residues[c] + static_cast<std::uint64_t>(alphabet.digits[letter][c])) &
                    windows[c].mask;
    }
    const bool keep_going = joint_dfs(alphabet, windows, caps, letter, remaining - 1,
                                      residues, chosen, out, budget);
    for (std::size_t c = 0; c < windows.size(); ++c) {
      residues[c] = (residues[c] - static_cast<std::uint64_t>(alphabet.digits[letter][c])) &
                    windows[c].mask;
    }
    chosen.pop_back();
    if (!keep_going) return false;
  }
  return true;
}

// Enumerates all size-`size` multisets (ids ascending) that respect the
// per-coordinate caps within the half, invoking visit(ids, residues).
template <typename Visit>
bool half_enumerate(const Alphabet& alphabet, const std::vector<WindowSpec>& windows,
                    const CapChecker& caps, std::uint32_t first, int remaining,
                    std::vector<std::uint64_t>& residues, std::vector<std::uint32_t>& chosen,
                    Budget& budget, Visit&& visit) {
  if (remaining == 0) {
    return visit(chosen, residues);
  }
  for (std::uint32_t letter = first; letter < alphabet.digits.size(); ++letter) {
    if (!budget.spend()) return false;
    chosen.push_back(letter);
    bool admissible = true;
    if (caps.enforce) {
      // Cheap incremental bound: occurrences of this letter's digits so far.
      admissible = caps.admits(alphabet, chosen);
    }
    if (admissible) {
      for (std::size_t c = 0; c < windows.size(); ++c) {
        residues[c] = (residues[c] + static_cast<std::uint64_t>(alphabet.digits[letter][c])) &
                      windows[c].mask;
      }
      const bool keep_going = half_enumerate(alphabet, windows, caps, letter, remaining - 1,
                                             residues, chosen, budget, visit);
      for (std::size_t c = 0; c < windows.size(); ++c) {
        residues[c] = (residues[c] - static_cast<std::uint64_t>(alphabet.digits[letter][c])) &
                      windows[c].mask;
      }
      if (!keep_going) {
        chosen.pop_back();
        return false;
      }
    }
    chosen.pop_back();
  }
  return true;
}

struct HalfEntry {
  std::vector<std::uint32_t> letters;  // ascending ids
};

JointResult joint_meet_in_the_middle(const Alphabet& alphabet,
                                     const std::vector<WindowSpec>& windows, const CapChecker& caps,
                                     int arity, Budget& budget) {
  JointResult out;
  const int low_size = arity / 2;
  const int high_size = arity - low_size;

  // Bucket the larger half by residue vector; buckets stay ordered by their
  // smallest letter id because enumeration is lexicographic.
  std::unordered_map<std::vector<std::uint64_t>, std::vector<HalfEntry>, VectorHash> high_by_residue;
  {
    std::vector<std::uint64_t> residues(windows.size(), 0);
    std::vector<std::uint32_t> chosen;
    const bool complete = half_enumerate(
        alphabet, windows, caps, 0, high_size, residues, chosen, budget,
        [&](const std::vector<std::uint32_t>& ids, const std::vector<std::uint64_t>& res) {
          high_by_residue[res].push_back(HalfEntry{ids});
          return true;
        });
    if (!complete) {
      out.budget_exceeded = true;
      return out;
    }
  }

  // Accepted total-residue vectors, visited one coordinate at a time.
  std::vector<std::vector<std::uint64_t>> accepted(windows.size());
  for (std::size_t c = 0; c < windows.size(); ++c) accepted[c] = windows[c].accepted_residues();

  std::vector<std::uint64_t> residues(windows.size(), 0);
  std::vector<std::uint32_t> chosen;
  std::vector<std::uint64_t> wanted(windows.size(), 0);
  std::vector<std::uint32_t> merged;
  merged.reserve(static_cast<std::size_t>(arity));

  const bool complete = half_enumerate(
      alphabet, windows, caps, 0, low_size, residues, chosen, budget,
      [&](const std::vector<std::uint32_t>& low_ids, const std::vector<std::uint64_t>& low_res) {
        const std::uint32_t low_max = low_ids.back();
        // Odometer over the product of accepted residues per coordinate.
        std::vector<std::size_t> pick(windows.size(), 0);
        for (;;) {
          if (!budget.spend()) return false;
          for (std::size_t c = 0; c < windows.size(); ++c) {
            wanted[c] = (accepted[c][pick[c]] - low_res[c]) & windows[c].mask;
          }
          auto it = high_by_residue.find(wanted);
          if (it != high_by_residue.end()) {
            // Only partners whose smallest id is >= our largest id keep the
            // combined multiset sorted; that also makes each multiset come
            // out exactly once.
            const auto& bucket = it->second;
            auto lower = std::lower_bound(bucket.begin(), bucket.end(), low_max,
                                          [](const HalfEntry& e, std::uint32_t v) {
                                            return e.letters.front() < v;
                                          });
            for (auto entry = lower; entry != bucket.end(); ++entry) {
              if (!budget.spend()) return false;
              merged.clear();
              merged.insert(merged.end(), low_ids.begin(), low_ids.end());
              merged.insert(merged.end(), entry->letters.begin(), entry->letters.end());
              if (!caps.admits(alphabet, merged)) continue;
              if (!budget.emit()) return false;
              out.multisets.push_back(merged);
            }
          }
          // Advance the odometer.
          std::size_t c = 0;
          while (c < windows.size() && ++pick[c] == accepted[c].size()) {
            pick[c] = 0;
            ++c;
          }
          if (c == windows.size()) break;
        }
        return true;
      });
  if (!complete) {
    out.budget_exceeded = true;
    out.multisets.clear();
    return out;
  }
  // Meet-in-the-middle emission order is not lexicographic; normalize.
  std::sort(out.multisets.begin(), out.multisets.end());
  return out;
}

// Upper bound on the number of size-r multisets over an alphabet of size a.
double multiset_count_estimate(std::size_t a, int r) {
  double result = 1;
  for (int i = 0; i < r; ++i) result *= (static_cast<double>(a) + r - 1 - i) / (r - i);
  return result;
}

JointResult enumerate_joint(const Alphabet& alphabet, const std::vector<WindowSpec>& windows,
                            const CapChecker& caps, int arity, const SolverConfig& config) {
  Budget budget{config.work_budget, config.table_budget};
  constexpr double kDfsCutoff = 300000.0;
  if (multiset_count_estimate(alphabet.digits.size(), arity) <= kDfsCutoff) {
    JointResult out;
    std::vector<std::uint64_t> residues(windows.size(), 0);
    std::vector<std::uint32_t> chosen;
    chosen.reserve(static_cast<std::size_t>(arity));
    joint_dfs(alphabet, windows, caps, 0, arity, residues, chosen, out, budget);
    if (out.budget_exceeded) out.multisets.clear();
    return out;
  }
  return joint_meet_in_the_middle(alphabet, windows, caps, arity, budget);
}

// Exact count of accepted digit multisets at a single coordinate, for the
// per-pass statistics. Small tables are counted by enumeration, large ones
// by a bounded-multiplicity dynamic program over residues.
std::uint64_t count_accepted_at(const PassData& pass, int digit_index, int arity, bool strict) {
  const auto& counts = pass.counts[static_cast<std::size_t>(digit_index)];
  std::vector<std::pair<SignedDigit, int>> entries;
  entries.reserve(counts.size());
  for (const auto& [digit, occurrences] : counts) {
    entries.push_back({digit, static_cast<int>(std::min<std::uint32_t>(
                                  occurrences, static_cast<std::uint32_t>(arity)))});
  }
  std::sort(entries.begin(), entries.end());

  const std::uint64_t base = std::uint64_t{1} << pass.params.digit_bits;
  const std::uint64_t mask = base - 1;
  const std::uint64_t radius = static_cast<std::uint64_t>(arity);

  if (multiset_count_estimate(entries.size(), arity) <= 200000.0) {
    std::uint64_t accepted = 0;
    std::function<void(std::size_t, int, std::uint64_t)> rec =
        [&](std::size_t first, int remaining, std::uint64_t residue) {
          if (remaining == 0) {
            const bool ok = strict ? residue == 0 : (residue < radius || residue > base - radius);
            accepted += ok ? 1 : 0;
            return;
          }
          for (std::size_t e = first; e < entries.size(); ++e) {
            std::uint64_t res = residue;
            for (int take = 1; take <= std::min(entries[e].second, remaining); ++take) {
              res = (res + (static_cast<std::uint64_t>(entries[e].first) & mask)) & mask;
              rec(e + 1, remaining - take, res);
            }
          }
        };
    rec(0, arity, 0);
    return accepted;
  }
  if (base > (std::uint64_t{1} << 22)) {
    // Digit base too large for the residue table; the count is informational
    // only, so report it as saturated rather than spending gigabytes.
    return std::numeric_limits<std::uint64_t>::max();
  }

  // dp[c][res]: number of multisets of size c with digit-sum residue res.
  std::vector<std::vector<std::uint64_t>> dp(static_cast<std::size_t>(arity) + 1,
                                             std::vector<std::uint64_t>(base, 0));
  dp[0][0] = 1;
  for (const auto& [digit, cap] : entries) {
    const std::uint64_t step = static_cast<std::uint64_t>(digit) & mask;
    for (int c = arity; c >= 1; --c) {
      for (int take = 1; take <= std::min(cap, c); ++take) {
        const std::uint64_t shift = (static_cast<std::uint64_t>(take) * step) & mask;
        auto& dst = dp[static_cast<std::size_t>(c)];
        const auto& src = dp[static_cast<std::size_t>(c - take)];
        for (std::uint64_t res = 0; res < base; ++res) {
          const std::uint64_t from = (res - shift) & mask;
          if (src[from] != 0) dst[res] = saturating_add(dst[res], src[from]);
        }
      }
    }
  }
  std::uint64_t accepted = 0;
  const auto& final_row = dp[static_cast<std::size_t>(arity)];
  if (strict) return final_row[0];
  for (std::uint64_t res = 0; res < base; ++res) {
    if (res < radius || res > base - radius) accepted = saturating_add(accepted, final_row[res]);
  }
  return accepted;
}

TupleTableSet materialize_joint(const Alphabet& alphabet, const JointResult& joint) {
  TupleTableSet out;
  out.tables.reserve(joint.multisets.size());
  for (const auto& multiset : joint.multisets) {
    TupleTable table;
    table.columns.reserve(multiset.size());
    for (std::uint32_t letter : multiset) table.columns.push_back(alphabet.preimages[letter]);
    out.tables.push_back(canonical(std::move(table)));
  }
  std::sort(out.tables.begin(), out.tables.end());
  return out;
}

int default_block_width(std::size_t n, int arity, int log_arity) {
  const std::uint64_t nn = std::max<std::uint64_t>(2, n);
  const int log_n = ceil_log2(nn);
  const int log_log_n = log_n > 0 ? ceil_log2(static_cast<std::uint64_t>(log_n)) : 0;
  const int denom = 9 * arity * log_arity;
  return std::max(1, (log_log_n + denom - 1) / denom);
}

int confluence_count(std::size_t n) {
  const double nn = static_cast<double>(std::max<std::size_t>(2, n));
  const double base = std::max(2.0, std::ceil(std::log2(nn)));
  const double picks = std::ceil(std::log(nn) / std::log(base) / 3.0 - 1e-12);
  return std::max(1, static_cast<int>(picks));
}

std::vector<Coordinate> block_coordinates(const std::vector<PassData>& passes, int block,
                                          int block_width, int common_last_digit) {
  std::vector<Coordinate> coords;
  const int lo = block * block_width;
  const int hi = std::min((block + 1) * block_width - 1, common_last_digit);
  for (std::size_t pass = 0; pass < passes.size(); ++pass) {
    for (int j = lo; j <= hi; ++j) {
      coords.push_back({static_cast<int>(pass), j,
                        j == 0 && passes[pass].config.strict_at_zero});
    }
  }
  return coords;
}

}  // namespace

double threshold_value(ThresholdPolicy policy, std::size_t n, int arity) {
  const double nn = static_cast<double>(std::max<std::size_t>(2, n));
  switch (policy) {
    case ThresholdPolicy::paper_primary:
      return std::pow(nn, 3.0 / (2.0 * static_cast<double>(arity)));
    case ThresholdPolicy::paper_secondary:
      return std::sqrt(nn) / std::pow(std::log2(nn), 1.0 / static_cast<double>(arity));
    case ThresholdPolicy::unlimited:
      return std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

const char* threshold_policy_name(ThresholdPolicy policy) {
  switch (policy) {
    case ThresholdPolicy::paper_primary:
      return "paper_primary";
    case ThresholdPolicy::paper_secondary:
      return "paper_secondary";
    case ThresholdPolicy::unlimited:
      return "unlimited";
  }
  return "unknown";
}

namespace {

double threshold_for(const SolverConfig& config, std::size_t n) {
  if (config.threshold_override) return static_cast<double>(*config.threshold_override);
  return threshold_value(config.threshold_policy, n, config.arity);
}

void validate(std::span<const BoundedInt> omega, const SolverConfig& config) {
  if (config.arity < 2) throw std::domain_error("solve: arity must be at least 2");
  if (omega.empty()) throw std::domain_error("solve: empty input");
  if (!config.allow_repeated_ordinals && omega.size() < static_cast<std::size_t>(config.arity)) {
    throw std::domain_error("solve: fewer elements than the tuple arity");
  }
}

std::vector<PassData> build_passes(std::span<const BoundedInt> omega, int arity) {
  const int log_arity = ceil_log2(static_cast<std::uint64_t>(arity));
  const std::vector<PassConfig> configs = {
      {0, true}, {log_arity, false}, {2 * log_arity, false}};

  std::vector<PassData> passes;
  passes.reserve(configs.size());
  for (const PassConfig& config : configs) {
    PassData pass;
    pass.config = config;
    std::vector<Value> shifted(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) {
      shifted[i] = shift_right_sign_preserving(omega[i].value(), config.shift_bits);
    }
    pass.params = DigitParams::for_values(shifted, arity);
    const std::size_t positions = static_cast<std::size_t>(pass.params.last_digit) + 1;
    pass.digits.resize(positions);
    pass.counts.resize(positions);
    for (std::size_t j = 0; j < positions; ++j) {
      pass.digits[j].resize(omega.size());
      auto& counts = pass.counts[j];
      for (std::size_t i = 0; i < omega.size(); ++i) {
        const SignedDigit d =
            project_digit(shifted[i], pass.params.digit_bits, static_cast<int>(j));
        pass.digits[j][i] = d;
        ++counts[d];
      }
    }
    passes.push_back(std::move(pass));
  }
  return passes;
}

}  // namespace

FilterPipelineResult run_filter_pipeline(std::span<const BoundedInt> omega,
                                         const SolverConfig& config) {
  validate(omega, config);
  const std::size_t n = omega.size();
  FilterPipelineResult result;

  const auto filter_start = Clock::now();
  std::vector<PassData> passes = build_passes(omega, config.arity);
  for (const PassData& pass : passes) {
    PassStats stats;
    stats.shift_bits = pass.config.shift_bits;
    stats.strict_at_zero = pass.config.strict_at_zero;
    stats.bit_length = pass.params.bit_length;
    stats.last_digit = pass.params.last_digit;
    stats.stored_ordinals = static_cast<std::uint64_t>(n) *
                            (static_cast<std::uint64_t>(pass.params.last_digit) + 1);
    for (std::size_t j = 0; j < pass.counts.size(); ++j) {
      stats.digit_table_entries += pass.counts[j].size();
      if (config.collect_pass_tuple_counts) {
        const bool strict = j == 0 && pass.config.strict_at_zero;
        stats.accepted_tuples = saturating_add(
            stats.accepted_tuples,
            count_accepted_at(pass, static_cast<int>(j), config.arity, strict));
      }
    }
    result.passes.push_back(stats);
  }
  result.filter_ms = ms_since(filter_start);

  const auto gamma_start = Clock::now();
  int common_last_digit = passes[0].params.last_digit;
  for (const PassData& pass : passes) {
    common_last_digit = std::min(common_last_digit, pass.params.last_digit);
  }
  result.common_last_digit = common_last_digit;
  const int log_arity = ceil_log2(static_cast<std::uint64_t>(config.arity));
  result.block_width = default_block_width(n, config.arity, log_arity);
  const int block_count = (common_last_digit + result.block_width) / result.block_width;

  CapChecker caps{&passes, nullptr, config.arity, !config.allow_repeated_ordinals};

  std::vector<std::uint64_t> sizes(static_cast<std::size_t>(block_count), 0);
  std::vector<char> overflowed(static_cast<std::size_t>(block_count), 0);
  auto run_block = [&](int s) {
    const std::vector<Coordinate> coords =
        block_coordinates(passes, s, result.block_width, common_last_digit);
    Alphabet alphabet = build_alphabet(passes, coords, n);
    const std::vector<WindowSpec> windows = make_windows(passes, coords);
    CapChecker block_caps = caps;
    block_caps.coords = &coords;
    const JointResult joint = enumerate_joint(alphabet, windows, block_caps, config.arity, config);
    if (joint.budget_exceeded) {
      overflowed[static_cast<std::size_t>(s)] = 1;
    } else {
      sizes[static_cast<std::size_t>(s)] = joint.multisets.size();
    }
  };

  if (config.threads > 1 && block_count > 1) {
    std::vector<std::thread> workers;
    std::atomic<int> next{0};
    const int worker_count = std::min(config.threads, block_count);
    for (int w = 0; w < worker_count; ++w) {
      workers.emplace_back([&]() {
        for (int s = next.fetch_add(1); s < block_count; s = next.fetch_add(1)) run_block(s);
      });
    }
    for (auto& worker : workers) worker.join();
  } else {
    for (int s = 0; s < block_count; ++s) run_block(s);
  }

  for (int s = 0; s < block_count; ++s) {
    if (overflowed[static_cast<std::size_t>(s)]) {
      result.budget_exceeded = true;
      break;
    }
    result.gamma_sizes.push_back(sizes[static_cast<std::size_t>(s)]);
  }
  result.gamma_ms = ms_since(gamma_start);
  if (result.budget_exceeded) return result;

  const auto theta_start = Clock::now();
  std::vector<int> order(static_cast<std::size_t>(block_count));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return sizes[static_cast<std::size_t>(x)] < sizes[static_cast<std::size_t>(y)];
  });
  const int picks = std::min(confluence_count(n), block_count);
  result.selected_blocks.assign(order.begin(), order.begin() + picks);
  std::sort(result.selected_blocks.begin(), result.selected_blocks.end());

  std::vector<Coordinate> theta_coords;
  for (int s : result.selected_blocks) {
    const auto coords = block_coordinates(passes, s, result.block_width, common_last_digit);
    theta_coords.insert(theta_coords.end(), coords.begin(), coords.end());
  }
  Alphabet alphabet = build_alphabet(passes, theta_coords, n);
  const std::vector<WindowSpec> windows = make_windows(passes, theta_coords);
  CapChecker theta_caps = caps;
  theta_caps.coords = &theta_coords;
  const JointResult joint = enumerate_joint(alphabet, windows, theta_caps, config.arity, config);
  if (joint.budget_exceeded) {
    result.budget_exceeded = true;
    result.theta_ms = ms_since(theta_start);
    return result;
  }
  result.theta = materialize_joint(alphabet, joint);
  result.variant_count = count_variants(result.theta);
  result.theta_ms = ms_since(theta_start);
  return result;
}

bool verify_tuple(std::span<const BoundedInt> omega, std::span<const Ordinal> ordinals,
                  bool allow_repeated_ordinals) {
  Value sum = 0;
  for (std::size_t i = 0; i < ordinals.size(); ++i) {
    if (ordinals[i] >= omega.size()) {
      throw std::out_of_range("verify_tuple: ordinal out of range");
    }
    if (!allow_repeated_ordinals) {
      for (std::size_t q = i + 1; q < ordinals.size(); ++q) {
        if (ordinals[i] == ordinals[q]) return false;
      }
    }
    sum += omega[ordinals[i]].value();
  }
  return sum == 0;
}

SolveDetails solve_with_details(std::span<const BoundedInt> omega, const SolverConfig& config) {
  const auto total_start = Clock::now();
  validate(omega, config);

  SolveDetails details;
  SolverReport& report = details.report;
  report.n = omega.size();
  report.arity = config.arity;
  report.threshold_policy =
      config.threshold_override ? "explicit" : threshold_policy_name(config.threshold_policy);
  report.threshold = threshold_for(config, omega.size());

  FilterPipelineResult pipeline = run_filter_pipeline(omega, config);
  report.passes = std::move(pipeline.passes);
  report.block_width = pipeline.block_width;
  report.common_last_digit = pipeline.common_last_digit;
  report.gamma_sizes = std::move(pipeline.gamma_sizes);
  report.selected_blocks = std::move(pipeline.selected_blocks);
  report.theta_size = pipeline.theta.tables.size();
  report.variant_count = pipeline.variant_count;
  report.budget_exceeded = pipeline.budget_exceeded;
  report.timings_ms.filter_ms = pipeline.filter_ms;
  report.timings_ms.gamma_ms = pipeline.gamma_ms;
  report.timings_ms.theta_ms = pipeline.theta_ms;
  details.theta = std::move(pipeline.theta);

  report.threshold_exceeded =
      report.budget_exceeded ||
      static_cast<double>(report.variant_count) > report.threshold;

  if (!report.threshold_exceeded) {
    const auto enum_start = Clock::now();
    std::vector<std::vector<Ordinal>> candidates =
        enumerate_candidates(details.theta, config.allow_repeated_ordinals);
    report.timings_ms.enumerate_ms = ms_since(enum_start);

    const auto verify_start = Clock::now();
    for (auto& candidate : candidates) {
      if (verify_tuple(omega, candidate, config.allow_repeated_ordinals)) {
        report.solutions.push_back(std::move(candidate));
      }
    }
    report.timings_ms.verify_ms = ms_since(verify_start);
  } else {
    if (config.fallback == FallbackPolicy::none) {
      report.timings_ms.total_ms = ms_since(total_start);
      throw CapacityError(report.budget_exceeded
                              ? "solve: candidate construction exceeded the table budget"
                              : "solve: surviving candidate count exceeds the threshold",
                          report);
    }
    const auto fallback_start = Clock::now();
    report.fallback_used = true;
    if (config.fallback == FallbackPolicy::brute_force || config.allow_repeated_ordinals) {
      // Meet-in-the-middle has no repeated-ordinal variant; brute force does.
      report.fallback_algorithm = "brute_force";
      report.solutions = brute_force_rsum(omega, config.arity, config.allow_repeated_ordinals);
    } else {
      report.fallback_algorithm = "meet_in_the_middle";
      report.solutions = meet_in_the_middle_rsum(omega, config.arity);
    }
    report.timings_ms.fallback_ms = ms_since(fallback_start);
  }

  report.solution_values.reserve(report.solutions.size());
  for (const auto& tuple : report.solutions) {
    std::vector<Value> values;
    values.reserve(tuple.size());
    for (Ordinal o : tuple) values.push_back(omega[o].value());
    report.solution_values.push_back(std::move(values));
  }
  report.timings_ms.total_ms = ms_since(total_start);
  return details;
}

SolverReport solve(std::span<const BoundedInt> omega, const SolverConfig& config) {
  return solve_with_details(omega, config).report;
}

}  // namespace rsum
