#pragma once

#include <map>
#include <set>
#include <utility>

#include "hrap/domain.hpp"

namespace hrap {

// Weights of the cost-aware objective. lambda trades workload balance
// against total assignment cost; alpha/beta/gamma weight the effective
// duration, skill-mismatch and complexity-vs-performance cost terms.
struct Hyperparams {
  double lambda = 0.5;
  double alpha = 1.0 / 3.0;
  double beta = 1.0 / 3.0;
  double gamma = 1.0 / 3.0;
};

// lambda in [0,1], alpha/beta/gamma >= 0; unless `normalized` is disabled,
// alpha+beta+gamma must equal 1 within 1e-9.
void validate_hyperparams(const Hyperparams& hp, bool normalized = true);

// Fraction of required skills the employee lacks. 0/1 for single-skill
// requirements; fractional once tasks require skill sets.
double skill_mismatch(const std::set<SkillId>& required, const std::set<SkillId>& held);
double skill_mismatch(const Employee& employee, const Task& task);

// alpha * d_t / e + beta * mismatch + gamma * complexity / performance.
// Only defined for qualified employees (the mismatch term is then 0).
double assignment_cost(const Employee& employee, const Task& task, const Hyperparams& hp);

using CostMap = std::map<std::pair<EmployeeId, TaskId>, double>;

// Costs for every (qualified employee, assignable task) pair.
CostMap build_cost_map(const ProblemInstance& instance, const Hyperparams& hp);

}  // namespace hrap
