#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hrap/milp_model.hpp"
#include "hrap/simplex.hpp"

namespace hrap {

struct SolveConfig {
  double gap_tolerance = 1e-6;  // relative fraction
  double time_limit_s = 60.0;
  std::int64_t node_limit = -1;  // < 0: unlimited
  std::uint64_t seed = 0;        // reserved, the solver is deterministic
};

enum class MilpStatus { Optimal, Feasible, Infeasible, TimeLimit };

std::string to_string(MilpStatus status);

struct MilpResult {
  MilpStatus status = MilpStatus::Infeasible;
  Assignment assignment;
  double objective = 0.0;   // incumbent
  double best_bound = 0.0;
  double gap_percent = 0.0;
  bool gap_is_absolute = false;  // set when the bound is zero
  std::int64_t nodes = 0;
  double wall_time_s = 0.0;
};

// Relative gap in percent: (incumbent - bound) / |bound| * 100. A zero bound
// makes the relative form undefined; the absolute difference (scaled by 100)
// is returned instead and flagged through `absolute`.
double optimality_gap(double incumbent, double bound, bool* absolute = nullptr);

// Best-first branch-and-bound over the LP relaxation. Branches on the
// fractional assignment variable closest to 0.5 (ties: lowest column index),
// down-branch first; the incumbent is seeded by greedy rounding of the root
// LP. Deterministic for fixed model and config.
MilpResult solve_milp(const MilpModel& model, const SolveConfig& cfg = {});

enum class ObjectiveMode { Balance, Cost };

// Exhaustive oracle: enumerates every feasible assignment of the instance
// and evaluates the exact objective. Guarded to at most `kBruteForceGuard`
// combinations. Ties resolve to the lexicographically smallest assignment
// vector in column order.
inline constexpr double kBruteForceGuard = 1e7;

MilpResult brute_force(const ProblemInstance& instance,
                       ObjectiveMode mode = ObjectiveMode::Balance,
                       const std::optional<Hyperparams>& hp = std::nullopt);

// Objective of a concrete assignment under the balance (D+ + D-) or
// cost-aware form; used by oracles and baselines.
double evaluate_objective(const ProblemInstance& instance, const Assignment& assignment,
                          ObjectiveMode mode = ObjectiveMode::Balance,
                          const std::optional<Hyperparams>& hp = std::nullopt);

}  // namespace hrap
