#pragma once

#include <string>

#include "rsum/instances.hpp"
#include "rsum/solver.hpp"

#include "json.hpp"

namespace rsum {

// Serialization of solver and oracle runs to the report schema shipped in
// schemas/. Keys are part of the external interface; do not rename.
nlohmann::json report_to_json(const SolverReport& report);

nlohmann::json oracle_report_to_json(std::size_t n, int arity, const std::string& algorithm,
                                     const std::vector<std::vector<Ordinal>>& solutions,
                                     std::span<const BoundedInt> omega, double total_ms);

// Attaches instance metadata (family, bound, seed, m) under "instance".
void attach_instance_metadata(nlohmann::json& report, const Instance& instance);

}  // namespace rsum
