#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hrap/cost.hpp"
#include "hrap/solver.hpp"

namespace hrap {

enum class TuneStrategy { Grid, Random };

struct TuningEntry {
  Hyperparams hp;
  double objective = 0.0;
  double dev_above = 0.0;
  double dev_below = 0.0;
  double total_cost = 0.0;
};

// Ascending by objective; ties broken by (lambda, alpha, beta, gamma).
struct TuningResult {
  std::vector<TuningEntry> entries;
};

// Evaluates hyperparameter samples through the cost-aware model. Grid:
// lambda over an 11-point uniform grid x (alpha,beta,gamma) over the
// step-1/6 simplex lattice, with the default point (0.5, 1/3, 1/3, 1/3)
// evaluated first. Random: lambda ~ U(0,1), (alpha,beta,gamma) ~ flat
// Dirichlet, seeded. `budget` caps the number of samples either way.
TuningResult tune_hyperparams(const ProblemInstance& instance, TuneStrategy strategy,
                              int budget, std::uint64_t seed, const SolveConfig& solve_cfg,
                              int top_k = 10, bool fairness_on_cost = false);

struct SensitivityRow {
  const char* parameter;
  double min = 0.0;
  double max = 0.0;
  double range = 0.0;
};

// Per-parameter min/max/range across the result's entries.
std::array<SensitivityRow, 4> sensitivity_report(const TuningResult& result);

void save_tuning_csv(const TuningResult& result, const std::string& csv_path);
void save_sensitivity_csv(const std::array<SensitivityRow, 4>& rows,
                          const std::string& csv_path);

}  // namespace hrap
