#include "hrap/bench.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>

#include "hrap/csv_io.hpp"
#include "hrap/errors.hpp"
#include "hrap/milp_model.hpp"
#include "hrap/synthetic.hpp"

namespace hrap {

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<BenchRow> run_benchmark(const std::vector<std::pair<int, int>>& sizes,
                                    const std::vector<std::uint64_t>& seeds, int n_skills,
                                    const SolveConfig& cfg) {
  if (sizes.empty()) throw ValidationError("benchmark needs at least one size");
  std::vector<BenchRow> rows;
  for (const auto& [n_emp, n_task] : sizes) {
    for (std::uint64_t seed : seeds) {
      BenchRow row;
      row.n_employees = n_emp;
      row.n_tasks = n_task;
      row.seed = seed;
      try {
        const ProblemInstance instance = generate_synthetic(n_emp, n_task, n_skills, seed);
        row.variable_count = variable_count(instance);
        const MilpModel model = build_balance_model(instance);
        const MilpResult result = solve_milp(model, cfg);
        row.wall_time_s = result.wall_time_s;
        row.gap_percent = result.gap_percent;
        row.objective = result.objective;
        row.status = to_string(result.status);
      } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.n_employees, a.n_tasks, a.seed) <
           std::tie(b.n_employees, b.n_tasks, b.seed);
  });
  return rows;
}

std::vector<BenchSummary> summarize_benchmark(const std::vector<BenchRow>& rows) {
  std::vector<BenchSummary> out;
  for (const auto& row : rows) {
    if (out.empty() || out.back().n_employees != row.n_employees ||
        out.back().n_tasks != row.n_tasks) {
      out.push_back({row.n_employees, row.n_tasks, 0.0, 0.0});
    }
  }
  for (auto& cell : out) {
    std::vector<double> times, gaps;
    for (const auto& row : rows) {
      if (row.n_employees == cell.n_employees && row.n_tasks == cell.n_tasks &&
          row.status.rfind("error", 0) != 0) {
        times.push_back(row.wall_time_s);
        gaps.push_back(row.gap_percent);
      }
    }
    cell.median_wall_time_s = median(std::move(times));
    cell.median_gap_percent = median(std::move(gaps));
  }
  return out;
}

void save_bench_csv(const std::vector<BenchRow>& rows, const std::string& csv_path) {
  std::ofstream out(csv_path);
  if (!out) throw ParseError("cannot write '" + csv_path + "'");
  out << "n_employees,n_tasks,seed,variable_count,wall_time_s,gap_percent,objective,status\n";
  for (const auto& r : rows) {
    out << r.n_employees << ',' << r.n_tasks << ',' << r.seed << ',' << r.variable_count << ','
        << format_double(r.wall_time_s) << ',' << format_double(r.gap_percent) << ','
        << format_double(r.objective) << ',' << r.status << '\n';
  }
}

}  // namespace hrap
