#include <doctest.h>

#include "hrap/bench.hpp"
#include "hrap/domain.hpp"
#include "hrap/synthetic.hpp"

using namespace hrap;

TEST_CASE("generator is deterministic per seed") {
  const ProblemInstance a = generate_synthetic(20, 80, 6, 42);
  const ProblemInstance b = generate_synthetic(20, 80, 6, 42);
  REQUIRE(a.employees.size() == b.employees.size());
  for (std::size_t i = 0; i < a.employees.size(); ++i) {
    CHECK(a.employees[i].id == b.employees[i].id);
    CHECK(a.employees[i].efficiency == b.employees[i].efficiency);
    CHECK(a.employees[i].performance == b.employees[i].performance);
  }
  for (std::size_t i = 0; i < a.tasks.size(); ++i) {
    CHECK(a.tasks[i].id == b.tasks[i].id);
    CHECK(a.tasks[i].duration_hours == b.tasks[i].duration_hours);
  }

  const ProblemInstance c = generate_synthetic(20, 80, 6, 43);
  bool differs = false;
  for (std::size_t i = 0; i < a.tasks.size() && !differs; ++i) {
    differs = a.tasks[i].duration_hours != c.tasks[i].duration_hours;
  }
  CHECK(differs);
}

TEST_CASE("generated values respect the documented ranges") {
  const ProblemInstance instance = generate_synthetic(30, 100, 8, 7);
  CHECK(instance.employees.size() == 30);
  CHECK(instance.tasks.size() == 100);
  CHECK_NOTHROW(validate_instance(instance));
  for (const auto& e : instance.employees) {
    CHECK(e.skills.size() >= 1);
    CHECK(e.skills.size() <= 3);
    for (const auto& [skill, eff] : e.efficiency) {
      CHECK(eff >= 0.1);
      CHECK(eff <= 1.0);
    }
    CHECK(e.performance >= 1);
    CHECK(e.performance <= 5);
  }
  for (const auto& t : instance.tasks) {
    CHECK(t.duration_hours >= 1.0);
    CHECK(t.duration_hours <= 40.0);
    CHECK(t.complexity >= 1);
    CHECK(t.complexity <= 3);
  }
}

TEST_CASE("benchmark rows carry the variable-count formula") {
  SolveConfig cfg;
  cfg.gap_tolerance = 0.01;
  cfg.time_limit_s = 30.0;
  const auto rows = run_benchmark({{5, 15}, {8, 20}}, {1, 2, 3}, 6, cfg);
  REQUIRE(rows.size() == 6);
  for (const auto& row : rows) {
    const ProblemInstance instance =
        generate_synthetic(row.n_employees, row.n_tasks, 6, row.seed);
    CHECK(row.variable_count == variable_count(instance));
    CHECK(row.status == "optimal");
  }
  // Sorted by (N, M, seed).
  CHECK(rows[0].n_employees == 5);
  CHECK(rows[3].n_employees == 8);
  CHECK(rows[0].seed == 1);
  CHECK(rows[2].seed == 3);
}

TEST_CASE("benchmark summary reports one cell per size") {
  SolveConfig cfg;
  cfg.gap_tolerance = 0.01;
  const auto rows = run_benchmark({{4, 10}}, {1, 2, 3, 4, 5}, 4, cfg);
  const auto summary = summarize_benchmark(rows);
  REQUIRE(summary.size() == 1);
  CHECK(summary[0].n_employees == 4);
  CHECK(summary[0].median_wall_time_s > 0.0);
}
