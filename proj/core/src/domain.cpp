#include "hrap/domain.hpp"

#include <algorithm>
#include <set>

#include "hrap/errors.hpp"

namespace hrap {

double Employee::efficiency_for(const SkillId& s) const {
  auto it = efficiency.find(s);
  if (it == efficiency.end()) {
    throw ValidationError("employee '" + id + "' has no efficiency for skill '" + s + "'");
  }
  return it->second;
}

double Employee::best_efficiency() const {
  double best = 0.0;
  for (const auto& [skill, e] : efficiency) best = std::max(best, e);
  return best;
}

const Employee* ProblemInstance::find_employee(const EmployeeId& id) const {
  for (const auto& e : employees) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

const Task* ProblemInstance::find_task(const TaskId& id) const {
  for (const auto& t : tasks) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

void validate_instance(const ProblemInstance& instance) {
  if (instance.employees.empty()) {
    throw ValidationError("instance has no employees");
  }
  std::set<EmployeeId> emp_ids;
  for (const auto& e : instance.employees) {
    if (e.id.empty()) throw ValidationError("empty employee id");
    if (!emp_ids.insert(e.id).second) {
      throw ValidationError("duplicate employee id '" + e.id + "'");
    }
    if (e.performance < 1 || e.performance > 5) {
      throw ValidationError("employee '" + e.id + "': performance " +
                            std::to_string(e.performance) + " outside [1,5]");
    }
    for (const auto& s : e.skills) {
      auto it = e.efficiency.find(s);
      if (it == e.efficiency.end()) {
        throw ValidationError("employee '" + e.id + "': skill '" + s +
                              "' has no efficiency entry");
      }
      if (!(it->second > 0.0) || it->second > 1.0) {
        throw ValidationError("employee '" + e.id + "': efficiency for '" + s +
                              "' outside (0,1]");
      }
    }
    if (e.efficiency.size() != e.skills.size()) {
      throw ValidationError("employee '" + e.id + "': efficiency entries for unknown skills");
    }
  }
  std::set<TaskId> task_ids;
  for (const auto& t : instance.tasks) {
    if (t.id.empty()) throw ValidationError("empty task id");
    if (!task_ids.insert(t.id).second) {
      throw ValidationError("duplicate task id '" + t.id + "'");
    }
    if (!(t.duration_hours > 0.0)) {
      throw ValidationError("task '" + t.id + "': nonpositive duration");
    }
  }
}

std::vector<EmployeeId> qualified_set(const Task& task,
                                      const std::vector<Employee>& employees) {
  std::vector<EmployeeId> out;
  for (const auto& e : employees) {
    if (e.has_skill(task.required_skill)) out.push_back(e.id);
  }
  return out;
}

TaskPartition partition_assignable(const ProblemInstance& instance) {
  TaskPartition part;
  for (const auto& t : instance.tasks) {
    bool coverable = false;
    for (const auto& e : instance.employees) {
      if (e.has_skill(t.required_skill)) {
        coverable = true;
        break;
      }
    }
    if (coverable) {
      part.assignable.push_back(t);
    } else {
      part.unassigned.push_back(t.id);
    }
  }
  return part;
}

double target_workload(const ProblemInstance& instance) {
  if (instance.employees.empty()) {
    throw ValidationError("target workload undefined for an empty employee set");
  }
  double total = 0.0;
  for (const auto& t : partition_assignable(instance).assignable) {
    total += t.duration_hours;
  }
  return total / static_cast<double>(instance.employees.size());
}

std::size_t variable_count(const ProblemInstance& instance) {
  std::size_t n = 2;  // the two deviation variables
  for (const auto& t : partition_assignable(instance).assignable) {
    n += qualified_set(t, instance.employees).size();
  }
  return n;
}

std::size_t distinct_required_skills(const ProblemInstance& instance) {
  std::set<SkillId> skills;
  for (const auto& t : instance.tasks) skills.insert(t.required_skill);
  return skills.size();
}

}  // namespace hrap
