#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hrap/domain.hpp"

namespace hrap {

// Effective hours per employee; zero-load employees are included.
using WorkloadVector = std::map<EmployeeId, double>;

WorkloadVector workload_vector(const Assignment& assignment, const ProblemInstance& instance);

// Population variance by default (divide by n); sample variance on request.
double variance(std::span<const double> values, bool sample = false);

// Pairwise-difference inequality measure in [0, 1). An all-zero vector is
// defined as perfect equality (0) and flagged through `degenerate`.
double gini(std::span<const double> values, bool* degenerate = nullptr);

// (sum x)^2 / (n * sum x^2) in (0, 1]. All-zero is defined as 1, flagged.
double jain(std::span<const double> values, bool* degenerate = nullptr);

struct DeviationStats {
  double max_above = 0.0;
  double max_below = 0.0;
};

// Max over/under deviation from the target; equals (D+, D-) at a solver
// optimum of the balance model.
DeviationStats deviation_stats(std::span<const double> values, double target);

// Uniform choice among each task's qualified employees, seeded.
Assignment random_assignment(const ProblemInstance& instance, std::uint64_t seed);

// Longest-task-first to the qualified employee with the least effective
// load so far. Stand-in for a human planner baseline.
Assignment greedy_assignment(const ProblemInstance& instance);

std::vector<double> workload_values(const WorkloadVector& loads);

}  // namespace hrap
