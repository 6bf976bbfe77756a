#pragma once

#include <string>

#include <json.hpp>

#include "hrap/adaptive.hpp"
#include "hrap/domain.hpp"
#include "hrap/metrics.hpp"
#include "hrap/solver.hpp"

namespace hrap {

inline constexpr const char* kToolName = "hrap";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// {variance, gini, jain, max_above, max_below, objective} for one allocation.
Json metrics_block(const Assignment& assignment, const ProblemInstance& instance,
                   bool sample_variance = false);

Json assignment_block(const Assignment& assignment);

// Self-contained run report: instance summary, solver stats, assignment and
// per-method metrics. `config` is echoed verbatim so a run can be
// reproduced from the report alone. Deterministic except wall_time_s.
Json run_report(const ProblemInstance& instance, const MilpResult& result, const Json& config,
                std::uint64_t baseline_seed, bool sample_variance = false);

// One machine-readable line per adaptive iteration (wall time excluded so
// traces are reproducible byte for byte).
std::string trace_to_jsonl(const AdaptiveTrace& trace);

void write_json_file(const Json& j, const std::string& path);

}  // namespace hrap
