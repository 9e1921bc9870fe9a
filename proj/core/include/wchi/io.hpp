#pragma once

#include <nlohmann/json.hpp>

#include "wchi/chaos.hpp"
#include "wchi/criteria.hpp"
#include "wchi/spectral.hpp"

namespace wchi {

// Documents:
//   kernel   {"order": q, "dim": d, "coeffs": [d^q numbers, row-major]}
//   chaos    {"dim": d, "kernels": [{"order": q, "coeffs": [...]}, ...]}
//   target   {"alphas": [...]}
//   report   {"cumulant_gaps": [{"r", "kappa_n", "kappa_target", "gap"}], "gamma_stat",
//             "gamma_stat_label", "contraction_norms": {...}, "notes": [...]}
// Readers throw FormatError with the offending field; kernels must be symmetric.

nlohmann::json to_json(const SymmetricKernel& f);
SymmetricKernel kernel_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ChaosExpansion& f);
ChaosExpansion chaos_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TargetSpec& spec);
TargetSpec target_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CriterionReport& report);

}  // namespace wchi
