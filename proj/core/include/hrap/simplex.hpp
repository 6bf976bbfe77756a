#pragma once

#include <vector>

#include "hrap/milp_model.hpp"

namespace hrap {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;  // structural columns only
  double objective = 0.0;
};

// LP relaxation of the model: integrality marks are ignored. Bounded-variable
// primal simplex, two phases, Dantzig pricing with a Bland fallback under
// degeneracy. Deterministic for fixed input.
LpSolution solve_lp(const MilpModel& model);

// Same, with the model's bounds replaced (used by branch-and-bound to fix
// binaries without copying the model).
LpSolution solve_lp(const MilpModel& model, const std::vector<double>& lower,
                    const std::vector<double>& upper);

// Crash start for assignment-shaped models: the listed columns begin at
// their upper bound (a feasible integral assignment), slacks form the basis
// and the deviation columns are pivoted in to absorb any violated deviation
// row. Skips phase 1 entirely; falls back to the cold start when the hint
// does not yield a feasible basis.
struct LpWarmStart {
  std::vector<int> at_upper;
  int dev_plus = -1;
  int dev_minus = -1;
};

LpSolution solve_lp(const MilpModel& model, const std::vector<double>& lower,
                    const std::vector<double>& upper, const LpWarmStart& warm);

}  // namespace hrap
