#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsum/tuple_algebra.hpp"

namespace rsum {

enum class ThresholdPolicy { paper_primary, paper_secondary, unlimited };
enum class FallbackPolicy { meet_in_the_middle, brute_force, none };

struct SolverConfig {
  int arity = 3;
  bool allow_repeated_ordinals = false;
  ThresholdPolicy threshold_policy = ThresholdPolicy::paper_primary;
  // Explicit candidate threshold; wins over the policy formula when set.
  std::optional<std::uint64_t> threshold_override;
  FallbackPolicy fallback = FallbackPolicy::meet_in_the_middle;
  int threads = 1;
  // Per-pass accepted-tuple counts are informational and cost extra work on
  // large inputs; they can be switched off for bulk runs.
  bool collect_pass_tuple_counts = true;
  // Safety rails: candidate-set construction aborts (and the fallback takes
  // over) once a block materializes more tables or spends more enumeration
  // steps than this. Purely a capacity guard; never changes reported
  // solutions.
  std::uint64_t table_budget = 2'000'000;
  std::uint64_t work_budget = 200'000'000;
};

struct PassStats {
  int shift_bits = 0;
  bool strict_at_zero = false;
  int bit_length = 0;
  int last_digit = 0;
  std::uint64_t digit_table_entries = 0;  // sum over positions of distinct digit values
  std::uint64_t stored_ordinals = 0;      // n * (last_digit + 1)
  std::uint64_t accepted_tuples = 0;      // sum over positions of accepted digit multisets
};

struct PhaseTimings {
  double filter_ms = 0;
  double gamma_ms = 0;
  double theta_ms = 0;
  double enumerate_ms = 0;
  double verify_ms = 0;
  double fallback_ms = 0;
  double total_ms = 0;
};

struct SolverReport {
  std::size_t n = 0;
  int arity = 0;
  std::vector<PassStats> passes;
  int block_width = 1;
  int common_last_digit = 0;
  std::vector<std::uint64_t> gamma_sizes;
  std::vector<int> selected_blocks;
  std::uint64_t theta_size = 0;
  std::uint64_t variant_count = 0;
  std::string threshold_policy;
  double threshold = 0;
  bool threshold_exceeded = false;
  bool budget_exceeded = false;
  bool fallback_used = false;
  std::string fallback_algorithm;
  std::vector<std::vector<Ordinal>> solutions;
  std::vector<std::vector<Value>> solution_values;
  PhaseTimings timings_ms;
  std::optional<int> poly_degree;
};

// Thrown when the surviving candidate count exceeds the threshold and no
// fallback is configured. Carries everything computed so far.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(std::string message, SolverReport partial)
      : std::runtime_error(std::move(message)), report(std::move(partial)) {}
  SolverReport report;
};

// Digit filtering up to the confluence set, without candidate enumeration:
// three passes (shifts 0, ceil(log2 r), 2*ceil(log2 r); exact zero test at
// digit 0 only in the first), blockwise intersection across passes,
// selection of the smallest blocks and their confluence.
struct FilterPipelineResult {
  std::vector<PassStats> passes;
  int block_width = 1;
  int common_last_digit = 0;
  std::vector<std::uint64_t> gamma_sizes;
  std::vector<int> selected_blocks;
  TupleTableSet theta;
  std::uint64_t variant_count = 0;
  bool budget_exceeded = false;
  double filter_ms = 0;
  double gamma_ms = 0;
  double theta_ms = 0;
};

FilterPipelineResult run_filter_pipeline(std::span<const BoundedInt> omega,
                                         const SolverConfig& config);

// End to end: filter, threshold check, candidate enumeration with final
// verification by summation, or the configured fallback. Returns exactly
// the set of zero-sum r-tuples of the instance.
SolverReport solve(std::span<const BoundedInt> omega, const SolverConfig& config);

struct SolveDetails {
  SolverReport report;
  TupleTableSet theta;
};
SolveDetails solve_with_details(std::span<const BoundedInt> omega, const SolverConfig& config);

// True iff the ordinals sum to zero. Repeated ordinals make a tuple
// malformed unless explicitly allowed; out-of-range ordinals throw.
bool verify_tuple(std::span<const BoundedInt> omega, std::span<const Ordinal> ordinals,
                  bool allow_repeated_ordinals = false);

double threshold_value(ThresholdPolicy policy, std::size_t n, int arity);
const char* threshold_policy_name(ThresholdPolicy policy);

}  // namespace rsum
