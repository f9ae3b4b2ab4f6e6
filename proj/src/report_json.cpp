#include "rsum/report_json.hpp"

namespace rsum {

using nlohmann::json;

json report_to_json(const SolverReport& report) {
  json out;
  out["n"] = report.n;
  out["r"] = report.arity;

  json passes = json::array();
  for (const PassStats& stats : report.passes) {
    passes.push_back({{"shift_bits", stats.shift_bits},
                      {"strict_at_zero", stats.strict_at_zero},
                      {"bit_length", stats.bit_length},
                      {"last_digit", stats.last_digit},
                      {"digit_table_entries", stats.digit_table_entries},
                      {"stored_ordinals", stats.stored_ordinals},
                      {"accepted_tuples", stats.accepted_tuples}});
  }
  out["pass_stats"] = std::move(passes);

  out["block_width"] = report.block_width;
  out["common_last_digit"] = report.common_last_digit;
  out["gamma_sizes"] = report.gamma_sizes;
  out["selected_blocks"] = report.selected_blocks;
  out["theta_size"] = report.theta_size;
  out["variant_count"] = report.variant_count;
  out["threshold_policy"] = report.threshold_policy;
  out["threshold"] = report.threshold;
  out["threshold_exceeded"] = report.threshold_exceeded;
  out["budget_exceeded"] = report.budget_exceeded;
  out["fallback_used"] = report.fallback_used;
  out["fallback_algorithm"] = report.fallback_algorithm;
  out["solutions"] = report.solutions;
  out["values"] = report.solution_values;
  out["timings_ms"] = {{"filter", report.timings_ms.filter_ms},
                       {"gamma", report.timings_ms.gamma_ms},
                       {"theta", report.timings_ms.theta_ms},
                       {"enumerate", report.timings_ms.enumerate_ms},
                       {"verify", report.timings_ms.verify_ms},
                       {"fallback", report.timings_ms.fallback_ms},
                       {"total", report.timings_ms.total_ms}};
  if (report.poly_degree) out["m"] = *report.poly_degree;
  return out;
}

json oracle_report_to_json(std::size_t n, int arity, const std::string& algorithm,
                           const std::vector<std::vector<Ordinal>>& solutions,
                           std::span<const BoundedInt> omega, double total_ms) {
  json out;
  out["n"] = n;
  out["r"] = arity;
  out["algo"] = algorithm;
  out["solutions"] = solutions;
  json values = json::array();
  for (const auto& tuple : solutions) {
    json row = json::array();
    for (Ordinal o : tuple) row.push_back(omega[o].value());
    values.push_back(std::move(row));
  }
  out["values"] = std::move(values);
  out["timings_ms"] = {{"total", total_ms}};
  return out;
}

void attach_instance_metadata(json& report, const Instance& instance) {
  json meta;
  meta["family"] = instance.family;
  meta["bound"] = instance.bound;
  meta["seed"] = instance.seed;
  if (instance.poly_degree) meta["m"] = *instance.poly_degree;
  if (instance.planted) meta["planted"] = *instance.planted;
  report["instance"] = std::move(meta);
}

}  // namespace rsum
