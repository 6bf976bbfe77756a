#include "hrap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hrap/errors.hpp"

namespace hrap {

WorkloadVector workload_vector(const Assignment& assignment, const ProblemInstance& instance) {
  WorkloadVector loads;
  for (const auto& e : instance.employees) loads[e.id] = 0.0;
  for (const auto& [task_id, emp_id] : assignment.pairs) {
    const Task* t = instance.find_task(task_id);
    const Employee* e = instance.find_employee(emp_id);
    if (t == nullptr) throw ValidationError("assignment references unknown task '" + task_id + "'");
    if (e == nullptr) {
      throw ValidationError("assignment references unknown employee '" + emp_id + "'");
    }
    if (!e->has_skill(t->required_skill)) {
      throw ValidationError("employee '" + emp_id + "' is not qualified for task '" + task_id +
                            "'");
    }
    loads[emp_id] += t->duration_hours / e->efficiency_for(t->required_skill);
  }
  return loads;
}

std::vector<double> workload_values(const WorkloadVector& loads) {
  std::vector<double> v;
  v.reserve(loads.size());
  for (const auto& [id, w] : loads) v.push_back(w);
  return v;
}

double variance(std::span<const double> values, bool sample) {
  if (values.empty()) throw ValidationError("variance of an empty vector");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  if (sample) {
    if (values.size() < 2) throw ValidationError("sample variance needs at least two values");
    return ss / (n - 1.0);
  }
  return ss / n;
}

double gini(std::span<const double> values, bool* degenerate) {
  if (values.empty()) throw ValidationError("gini of an empty vector");
  const std::size_t n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  if (sum <= 0.0) {
    if (degenerate != nullptr) *degenerate = true;
    return 0.0;  // all-zero: perfect equality by convention
  }
  if (degenerate != nullptr) *degenerate = false;
  double abs_diff = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      abs_diff += std::abs(values[i] - values[j]);
    }
  }
  const double mean = sum / static_cast<double>(n);
  return abs_diff / (2.0 * static_cast<double>(n) * static_cast<double>(n) * mean);
}

double jain(std::span<const double> values, bool* degenerate) {
  if (values.empty()) throw ValidationError("jain of an empty vector");
  double sum = 0.0, sq = 0.0;
  for (double v : values) {
    sum += v;
    sq += v * v;
  }
  if (sq <= 0.0) {
    if (degenerate != nullptr) *degenerate = true;
    return 1.0;  // all-zero: perfect fairness by convention
  }
  if (degenerate != nullptr) *degenerate = false;
  return sum * sum / (static_cast<double>(values.size()) * sq);
}

DeviationStats deviation_stats(std::span<const double> values, double target) {
  if (values.empty()) throw ValidationError("deviation stats of an empty vector");
  DeviationStats stats;
  for (double v : values) {
    stats.max_above = std::max(stats.max_above, v - target);
    stats.max_below = std::max(stats.max_below, target - v);
  }
  return stats;
}

Assignment random_assignment(const ProblemInstance& instance, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Assignment out;
  const TaskPartition part = partition_assignable(instance);
  out.unassigned = part.unassigned;
  for (const auto& t : part.assignable) {
    const auto qualified = qualified_set(t, instance.employees);
    out.pairs[t.id] = qualified[static_cast<std::size_t>(rng() % qualified.size())];
  }
  return out;
}

Assignment greedy_assignment(const ProblemInstance& instance) {
  Assignment out;
  const TaskPartition part = partition_assignable(instance);
  out.unassigned = part.unassigned;

  std::vector<std::size_t> order(part.assignable.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return part.assignable[a].duration_hours > part.assignable[b].duration_hours;
  });

  std::map<EmployeeId, double> load;
  for (const auto& e : instance.employees) load[e.id] = 0.0;
  for (std::size_t i : order) {
    const Task& t = part.assignable[i];
    const Employee* pick = nullptr;
    for (const auto& e : instance.employees) {
      if (!e.has_skill(t.required_skill)) continue;
      if (pick == nullptr || load[e.id] < load[pick->id]) pick = &e;
    }
    out.pairs[t.id] = pick->id;
    load[pick->id] += t.duration_hours / pick->efficiency_for(t.required_skill);
  }
  return out;
}

}  // namespace hrap
