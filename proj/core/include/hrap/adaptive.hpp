#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "hrap/cost.hpp"
#include "hrap/csv_io.hpp"
#include "hrap/domain.hpp"
#include "hrap/solver.hpp"

namespace hrap {

// min(1, estimated / actual): one observation pins the estimate.
double update_efficiency(double nominal_duration, double actual_time);

// Supplies the measured completion time of an assigned pair. A source is
// asked once per (iteration, pair).
class ObservationSource {
 public:
  virtual ~ObservationSource() = default;
  virtual void begin_iteration(int /*iteration*/) {}
  virtual double measure(const EmployeeId& employee, const TaskId& task,
                         double nominal_duration) = 0;
};

// Draws actual_time = (d / e_true) * exp(sigma * z) with z standard normal
// from a seeded stream. Deterministic given the seed.
class SimulatedWorkforce : public ObservationSource {
 public:
  SimulatedWorkforce(const ProblemInstance& instance, EfficiencyTable true_efficiency,
                     double noise_sigma, std::uint64_t seed);

  double measure(const EmployeeId& employee, const TaskId& task,
                 double nominal_duration) override;

 private:
  std::map<TaskId, SkillId> task_skill_;
  EfficiencyTable true_efficiency_;
  double noise_sigma_;
  std::mt19937_64 rng_;
};

// Replays a recorded observations file keyed by (iteration, employee, task).
class FileObservationSource : public ObservationSource {
 public:
  explicit FileObservationSource(std::map<ObservationKey, double> observations)
      : observations_(std::move(observations)) {}

  void begin_iteration(int iteration) override { iteration_ = iteration; }
  double measure(const EmployeeId& employee, const TaskId& task,
                 double nominal_duration) override;

 private:
  std::map<ObservationKey, double> observations_;
  int iteration_ = 0;
};

enum class FilterMode { Any, Max, Mean };

struct AdaptiveConfig {
  int max_iterations = 1;
  double threshold = 0.1;   // in [0, 1)
  int min_employees = 0;    // 0: number of distinct required skills
  ObjectiveMode mode = ObjectiveMode::Balance;
  Hyperparams hyperparams;  // cost mode only
  FilterMode filter = FilterMode::Max;
  bool reset_efficiency = false;  // start all estimates at 1
  double ewma_weight = 0.0;       // 0: latest observation replaces the estimate
  SolveConfig solve;
};

struct AdaptiveIteration {
  int iteration = 0;
  Assignment assignment;
  std::map<TaskId, double> observed_hours;
  EfficiencyTable efficiencies;       // snapshot after the updates
  std::vector<EmployeeId> surviving;  // employee set entering the next iteration
  bool guard_triggered = false;       // filter aborted to keep min_employees
  MilpResult solver;
};

struct AdaptiveTrace {
  std::vector<AdaptiveIteration> iterations;
  EfficiencyTable final_efficiencies;
};

// Keeps employees whose efficiency aggregate (per `mode`) exceeds the
// threshold; if fewer than min_employees would survive, filtering is
// aborted and the input set returned with the guard flag set.
std::pair<std::vector<Employee>, bool> filter_employees(const std::vector<Employee>& employees,
                                                        double threshold,
                                                        std::size_t min_employees,
                                                        FilterMode mode = FilterMode::Max);

// Iterated solve -> measure -> update -> filter loop.
AdaptiveTrace run_adaptive(const ProblemInstance& instance, ObservationSource& source,
                           const AdaptiveConfig& cfg);

}  // namespace hrap
