#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

#include "hrap/cost.hpp"
#include "hrap/domain.hpp"

namespace hrap {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Integrality tolerance used when mapping solver values back to 0/1.
inline constexpr double kIntegralityTol = 1e-6;

struct VarIndex {
  enum class Kind { Assign, DevPlus, DevMinus };
  struct Column {
    Kind kind;
    EmployeeId employee;  // Assign only
    TaskId task;          // Assign only
  };
  // Assign columns task-major (tasks in input order, qualified employees in
  // input order), followed by DevPlus then DevMinus.
  std::vector<Column> columns;
  int dev_plus = -1;
  int dev_minus = -1;
};

enum class Relation { LessEq, GreaterEq, Equal };

struct LinTerm {
  int col;
  double coef;
};

struct Constraint {
  std::vector<LinTerm> terms;
  Relation rel;
  double rhs;
};

// Solver-agnostic matrix form: minimize objective . x subject to the
// constraint rows, bounds and per-column integrality marks.
struct MilpModel {
  VarIndex vars;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> integral;
  std::vector<TaskId> unassigned_tasks;  // tasks with no qualified employee
  double target = 0.0;                   // workload anchor of the deviation rows

  std::size_t num_cols() const { return objective.size(); }
  std::size_t num_rows() const { return constraints.size(); }
};

enum class BalanceForm {
  // min D+ + D- with per-employee over/under deviation rows.
  DeviationPair,
  // min z over max |W_i - target|: same columns plus a D+ = D- coupling row,
  // objective (D+ + D-)/2.
  MiniMax,
};

// Workload-balance model: objective D+ + D-; per employee one
// sum(x*d/e) - D+ <= target row and one sum(x*d/e) + D- >= target row;
// per assignable task an exactly-one equality over its qualified employees.
MilpModel build_balance_model(const ProblemInstance& instance,
                              BalanceForm form = BalanceForm::DeviationPair);

// Cost-aware model: same rows and column layout as the balance model,
// objective lambda*(D+ + D-) + (1-lambda)*sum(x*C). With fairness_on_cost
// the deviation rows bound the assigned cost instead of the effective
// workload.
MilpModel build_cost_model(const ProblemInstance& instance, const Hyperparams& hp,
                           const CostMap& costs, bool fairness_on_cost = false);

// Maps a solver vector back to task->employee pairs (value > 0.5) and
// carries through the model's unassigned task ids. Throws SolveError if an
// assignment column is fractional beyond kIntegralityTol.
Assignment extract_assignment(const MilpModel& model, const std::vector<double>& solution);

// Plain-text dump, one constraint per line, deterministic ordering. For
// cross-checking against external solvers.
void write_lp_format(const MilpModel& model, std::ostream& out);

}  // namespace hrap
