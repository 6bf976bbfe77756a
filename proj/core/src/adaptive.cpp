#include "hrap/adaptive.hpp"

#include <algorithm>
#include <cmath>

#include "hrap/errors.hpp"
#include "hrap/milp_model.hpp"

namespace hrap {

double update_efficiency(double nominal_duration, double actual_time) {
  if (!(nominal_duration > 0.0)) throw ValidationError("nonpositive nominal duration");
  if (!(actual_time > 0.0)) throw ValidationError("nonpositive actual time");
  return std::min(1.0, nominal_duration / actual_time);
}

SimulatedWorkforce::SimulatedWorkforce(const ProblemInstance& instance,
                                       EfficiencyTable true_efficiency, double noise_sigma,
                                       std::uint64_t seed)
    : true_efficiency_(std::move(true_efficiency)), noise_sigma_(noise_sigma), rng_(seed) {
  if (noise_sigma < 0.0) throw ValidationError("noise sigma must be nonnegative");
  for (const auto& t : instance.tasks) task_skill_[t.id] = t.required_skill;
}

double SimulatedWorkforce::measure(const EmployeeId& employee, const TaskId& task,
                                   double nominal_duration) {
  auto skill_it = task_skill_.find(task);
  if (skill_it == task_skill_.end()) {
    throw ValidationError("simulated workforce knows no task '" + task + "'");
  }
  auto emp_it = true_efficiency_.find(employee);
  if (emp_it == true_efficiency_.end() ||
      emp_it->second.find(skill_it->second) == emp_it->second.end()) {
    throw ValidationError("no true efficiency for (" + employee + "," + skill_it->second + ")");
  }
  const double e_true = emp_it->second.at(skill_it->second);
  double noise = 1.0;
  if (noise_sigma_ > 0.0) {
    // Hand-rolled Box-Muller so the stream is stable across standard
    // library implementations.
    const double u1 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    noise = std::exp(noise_sigma_ * z);
  }
  return nominal_duration / e_true * noise;
}

double FileObservationSource::measure(const EmployeeId& employee, const TaskId& task,
                                      double /*nominal_duration*/) {
  auto it = observations_.find({iteration_, employee, task});
  if (it == observations_.end()) {
    throw ValidationError("no observation for iteration " + std::to_string(iteration_) +
                          ", pair (" + employee + "," + task + ")");
  }
  return it->second;
}

namespace {

double aggregate_efficiency(const Employee& e, FilterMode mode) {
  if (e.efficiency.empty()) return 0.0;
  switch (mode) {
    case FilterMode::Any: {
      double worst = 1.0;
      for (const auto& [s, v] : e.efficiency) worst = std::min(worst, v);
      return worst;
    }
    case FilterMode::Mean: {
      double sum = 0.0;
      for (const auto& [s, v] : e.efficiency) sum += v;
      return sum / static_cast<double>(e.efficiency.size());
    }
    case FilterMode::Max:
      break;
  }
  return e.best_efficiency();
}

}  // namespace

std::pair<std::vector<Employee>, bool> filter_employees(const std::vector<Employee>& employees,
                                                        double threshold,
                                                        std::size_t min_employees,
                                                        FilterMode mode) {
  std::vector<Employee> kept;
  for (const auto& e : employees) {
    if (aggregate_efficiency(e, mode) > threshold) kept.push_back(e);
  }
  if (kept.size() < min_employees) {
    return {employees, true};  // guard: filtering would undercut coverage
  }
  return {kept, false};
}

AdaptiveTrace run_adaptive(const ProblemInstance& instance, ObservationSource& source,
                           const AdaptiveConfig& cfg) {
  if (cfg.max_iterations < 1) throw ValidationError("max_iterations must be >= 1");
  if (cfg.threshold < 0.0 || cfg.threshold >= 1.0) {
    throw ValidationError("threshold must be in [0,1)");
  }
  validate_instance(instance);

  ProblemInstance current = instance;
  if (cfg.reset_efficiency) {
    for (auto& e : current.employees) {
      for (auto& [skill, eff] : e.efficiency) eff = 1.0;
    }
  }
  const std::size_t min_employees = cfg.min_employees > 0
                                        ? static_cast<std::size_t>(cfg.min_employees)
                                        : std::max<std::size_t>(1, distinct_required_skills(instance));

  AdaptiveTrace trace;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    AdaptiveIteration record;
    record.iteration = iter;

    MilpModel model;
    if (cfg.mode == ObjectiveMode::Cost) {
      model = build_cost_model(current, cfg.hyperparams, build_cost_map(current, cfg.hyperparams));
    } else {
      model = build_balance_model(current);
    }
    record.solver = solve_milp(model, cfg.solve);
    if (record.solver.status == MilpStatus::Infeasible) {
      throw SolveError("iteration " + std::to_string(iter) + ": model infeasible");
    }
    record.assignment = record.solver.assignment;

    // Measure each assigned pair once and fold the observation into the
    // efficiency estimate for the task's skill.
    source.begin_iteration(iter);
    for (const auto& [task_id, emp_id] : record.assignment.pairs) {
      const Task* t = current.find_task(task_id);
      const double actual = source.measure(emp_id, task_id, t->duration_hours);
      if (!(actual > 0.0)) {
        throw ValidationError("observation source returned nonpositive time for (" + emp_id +
                              "," + task_id + ")");
      }
      record.observed_hours[task_id] = actual;
      const double observed_eff = update_efficiency(t->duration_hours, actual);
      for (auto& e : current.employees) {
        if (e.id != emp_id) continue;
        double& est = e.efficiency.at(t->required_skill);
        est = cfg.ewma_weight > 0.0
                  ? (1.0 - cfg.ewma_weight) * est + cfg.ewma_weight * observed_eff
                  : observed_eff;
        break;
      }
    }

    for (const auto& e : current.employees) record.efficiencies[e.id] = e.efficiency;

    auto [kept, guard] = filter_employees(current.employees, cfg.threshold, min_employees,
                                          cfg.filter);
    record.guard_triggered = guard;
    current.employees = std::move(kept);
    for (const auto& e : current.employees) record.surviving.push_back(e.id);

    trace.iterations.push_back(std::move(record));
  }
  for (const auto& e : current.employees) trace.final_efficiencies[e.id] = e.efficiency;
  return trace;
}

}  // namespace hrap
