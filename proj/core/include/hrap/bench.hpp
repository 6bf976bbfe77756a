#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hrap/solver.hpp"

namespace hrap {

struct BenchRow {
  int n_employees = 0;
  int n_tasks = 0;
  std::uint64_t seed = 0;
  std::size_t variable_count = 0;
  double wall_time_s = 0.0;
  double gap_percent = 0.0;
  double objective = 0.0;
  std::string status;
};

struct BenchSummary {
  int n_employees = 0;
  int n_tasks = 0;
  double median_wall_time_s = 0.0;
  double median_gap_percent = 0.0;
};

// Generate/build/solve one balance instance per (size, seed) cell; failures
// are recorded as rows with status "error" and the run continues. Rows come
// back sorted by (N, M, seed).
std::vector<BenchRow> run_benchmark(const std::vector<std::pair<int, int>>& sizes,
                                    const std::vector<std::uint64_t>& seeds, int n_skills,
                                    const SolveConfig& cfg);

std::vector<BenchSummary> summarize_benchmark(const std::vector<BenchRow>& rows);

void save_bench_csv(const std::vector<BenchRow>& rows, const std::string& csv_path);

}  // namespace hrap
