#include "hrap/cost.hpp"

#include <cmath>

#include "hrap/errors.hpp"

namespace hrap {

void validate_hyperparams(const Hyperparams& hp, bool normalized) {
  if (hp.lambda < 0.0 || hp.lambda > 1.0) {
    throw ValidationError("lambda outside [0,1]");
  }
  if (hp.alpha < 0.0 || hp.beta < 0.0 || hp.gamma < 0.0) {
    throw ValidationError("alpha/beta/gamma must be nonnegative");
  }
  if (normalized && std::abs(hp.alpha + hp.beta + hp.gamma - 1.0) > 1e-9) {
    throw ValidationError("alpha+beta+gamma must equal 1 (pass the no-normalize option to lift this)");
  }
}

double skill_mismatch(const std::set<SkillId>& required, const std::set<SkillId>& held) {
  if (required.empty()) {
    throw ValidationError("skill mismatch undefined for an empty requirement");
  }
  std::size_t present = 0;
  for (const auto& s : required) {
    if (held.count(s) > 0) ++present;
  }
  return 1.0 - static_cast<double>(present) / static_cast<double>(required.size());
}

double skill_mismatch(const Employee& employee, const Task& task) {
  return skill_mismatch(std::set<SkillId>{task.required_skill}, employee.skills);
}

double assignment_cost(const Employee& employee, const Task& task, const Hyperparams& hp) {
  if (!employee.has_skill(task.required_skill)) {
    throw ValidationError("cost undefined: employee '" + employee.id +
                          "' is not qualified for task '" + task.id + "'");
  }
  const double e = employee.efficiency_for(task.required_skill);
  return hp.alpha * task.duration_hours / e + hp.beta * skill_mismatch(employee, task) +
         hp.gamma * static_cast<double>(task.complexity) /
             static_cast<double>(employee.performance);
}

CostMap build_cost_map(const ProblemInstance& instance, const Hyperparams& hp) {
  CostMap costs;
  for (const auto& t : partition_assignable(instance).assignable) {
    for (const auto& e : instance.employees) {
      if (e.has_skill(t.required_skill)) {
        costs[{e.id, t.id}] = assignment_cost(e, t, hp);
      }
    }
  }
  return costs;
}

}  // namespace hrap
