#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hrap/domain.hpp"

namespace hrap {

// Header: employee_id,skill,efficiency,performance_rating
// One row per (employee, skill); efficiency in [0.1, 1]; all rows of one
// employee must agree on the performance rating.
std::vector<Employee> load_employees(const std::string& csv_path);

// Header: task_id,required_skill,duration_hours,complexity
// complexity validated against [1, complexity_max].
std::vector<Task> load_tasks(const std::string& csv_path, int complexity_max = 5);

void save_employees(const std::vector<Employee>& employees, const std::string& csv_path);
void save_tasks(const std::vector<Task>& tasks, const std::string& csv_path);

// Header: iteration,employee_id,task_id,actual_time_hours
using ObservationKey = std::tuple<int, EmployeeId, TaskId>;
std::map<ObservationKey, double> load_observations(const std::string& csv_path);

// Header: employee_id,skill,efficiency
using EfficiencyTable = std::map<EmployeeId, std::map<SkillId, double>>;
EfficiencyTable load_efficiency_table(const std::string& csv_path);
void save_efficiency_table(const EfficiencyTable& table, const std::string& csv_path);

// Header: task_id,employee_id (order preserved from file)
std::vector<std::pair<TaskId, EmployeeId>> load_assignment_csv(const std::string& csv_path);

// Shortest decimal representation that round-trips a double.
std::string format_double(double v);

}  // namespace hrap
