#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hrap {

using SkillId = std::string;
using EmployeeId = std::string;
using TaskId = std::string;

struct Employee {
  EmployeeId id;
  std::set<SkillId> skills;
  // Defined exactly on `skills`. Values are in [0.1, 1] at ingestion;
  // adaptive updates may push them lower (but stay in (0, 1]).
  std::map<SkillId, double> efficiency;
  int performance = 1;  // 1..5

  bool has_skill(const SkillId& s) const { return skills.count(s) > 0; }
  double efficiency_for(const SkillId& s) const;
  // Max over the employee's per-skill efficiencies; 0 for an empty map.
  double best_efficiency() const;
};

struct Task {
  TaskId id;
  SkillId required_skill;
  double duration_hours = 0.0;  // > 0
  int complexity = 1;
};

struct ProblemInstance {
  std::vector<Employee> employees;
  std::vector<Task> tasks;

  const Employee* find_employee(const EmployeeId& id) const;
  const Task* find_task(const TaskId& id) const;
};

// Task -> employee pairs for assignable tasks; ids of tasks nobody can do.
struct Assignment {
  std::map<TaskId, EmployeeId> pairs;
  std::vector<TaskId> unassigned;
};

struct TaskPartition {
  std::vector<Task> assignable;       // input order
  std::vector<TaskId> unassigned;     // input order
};

// Validates uniqueness, non-emptiness and field invariants; throws
// ValidationError on the first violation.
void validate_instance(const ProblemInstance& instance);

// Employees holding the task's required skill, in employee input order.
std::vector<EmployeeId> qualified_set(const Task& task,
                                      const std::vector<Employee>& employees);

// Splits tasks into those with a non-empty qualified set and the rest.
TaskPartition partition_assignable(const ProblemInstance& instance);

// Total duration of assignable tasks divided by the employee count.
double target_workload(const ProblemInstance& instance);

// Sum over assignable tasks of |qualified set| plus the two deviation
// variables. Equals the column count of the balance model.
std::size_t variable_count(const ProblemInstance& instance);

// Number of distinct required skills across the task set. Used as the
// default floor when filtering employees adaptively.
std::size_t distinct_required_skills(const ProblemInstance& instance);

}  // namespace hrap
