#include "hrap/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hrap/errors.hpp"

namespace hrap {

namespace {

Json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

Json metrics_block(const Assignment& assignment, const ProblemInstance& instance,
                   bool sample_variance) {
  const auto loads = workload_values(workload_vector(assignment, instance));
  const double target = target_workload(instance);
  const DeviationStats dev = deviation_stats(loads, target);
  Json j;
  j["variance"] = variance(loads, sample_variance);
  j["gini"] = gini(loads);
  j["jain"] = jain(loads);
  j["max_above"] = dev.max_above;
  j["max_below"] = dev.max_below;
  j["objective"] = dev.max_above + dev.max_below;
  return j;
}

Json assignment_block(const Assignment& assignment) {
  Json j;
  j["pairs"] = Json::object();
  for (const auto& [task, emp] : assignment.pairs) j["pairs"][task] = emp;
  j["unassigned"] = assignment.unassigned;
  return j;
}

Json run_report(const ProblemInstance& instance, const MilpResult& result, const Json& config,
                std::uint64_t baseline_seed, bool sample_variance) {
  Json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["config"] = config;

  const TaskPartition part = partition_assignable(instance);
  j["instance"] = {
      {"employees", instance.employees.size()},
      {"tasks", instance.tasks.size()},
      {"assignable", part.assignable.size()},
      {"target_workload", target_workload(instance)},
      {"variable_count", variable_count(instance)},
  };

  j["solver"] = {
      {"status", to_string(result.status)},
      {"objective", finite_or_null(result.objective)},
      {"best_bound", finite_or_null(result.best_bound)},
      {"gap_percent", finite_or_null(result.gap_percent)},
      {"gap_is_absolute", result.gap_is_absolute},
      {"nodes", result.nodes},
      {"wall_time_s", result.wall_time_s},
  };

  j["assignment"] = assignment_block(result.assignment);

  Json methods;
  if (!result.assignment.pairs.empty() || result.status == MilpStatus::Optimal) {
    methods["milp"] = metrics_block(result.assignment, instance, sample_variance);
  }
  methods["greedy"] = metrics_block(greedy_assignment(instance), instance, sample_variance);
  methods["random"] =
      metrics_block(random_assignment(instance, baseline_seed), instance, sample_variance);
  j["metrics"] = methods;
  return j;
}

std::string trace_to_jsonl(const AdaptiveTrace& trace) {
  std::ostringstream out;
  for (const auto& it : trace.iterations) {
    Json j;
    j["iteration"] = it.iteration;
    j["assignment"] = assignment_block(it.assignment);
    j["observed_hours"] = Json::object();
    for (const auto& [task, hours] : it.observed_hours) j["observed_hours"][task] = hours;
    j["efficiencies"] = Json::object();
    for (const auto& [emp, skills] : it.efficiencies) {
      for (const auto& [skill, eff] : skills) j["efficiencies"][emp][skill] = eff;
    }
    j["surviving"] = it.surviving;
    j["guard_triggered"] = it.guard_triggered;
    j["solver"] = {
        {"status", to_string(it.solver.status)},
        {"objective", finite_or_null(it.solver.objective)},
        {"best_bound", finite_or_null(it.solver.best_bound)},
        {"gap_percent", finite_or_null(it.solver.gap_percent)},
        {"nodes", it.solver.nodes},
    };
    out << j.dump() << '\n';
  }
  return out.str();
}

void write_json_file(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace hrap
