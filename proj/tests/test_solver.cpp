#include <doctest.h>

#include "hrap/errors.hpp"
#include "hrap/metrics.hpp"
#include "hrap/solver.hpp"
#include "hrap/synthetic.hpp"
#include "test_util.hpp"

using namespace hrap;
using test::make_employee;
using test::make_task;

TEST_CASE("optimality_gap pinned values") {
  CHECK(optimality_gap(102, 100) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(optimality_gap(15, 15) == 0.0);
  CHECK(optimality_gap(0, 0) == 0.0);

  bool absolute = false;
  CHECK(optimality_gap(0.5, 0.0, &absolute) == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(absolute);
  absolute = true;
  optimality_gap(102, 100, &absolute);
  CHECK_FALSE(absolute);
}

TEST_CASE("two symmetric employees split two equal tasks at objective zero") {
  ProblemInstance instance;
  instance.employees = {make_employee("e1", {{"java", 1.0}}),
                        make_employee("e2", {{"java", 1.0}})};
  instance.tasks = {make_task("t1", "java", 6), make_task("t2", "java", 6)};

  const MilpResult milp = solve_milp(build_balance_model(instance));
  REQUIRE(milp.status == MilpStatus::Optimal);
  CHECK(milp.objective == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(milp.assignment.pairs.at("t1") != milp.assignment.pairs.at("t2"));

  const MilpResult oracle = brute_force(instance);
  CHECK(oracle.objective == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("single employee, single task solves at zero deviation") {
  ProblemInstance instance;
  instance.employees = {make_employee("e1", {{"java", 1.0}})};
  instance.tasks = {make_task("t1", "java", 10)};
  const MilpResult milp = solve_milp(build_balance_model(instance));
  REQUIRE(milp.status == MilpStatus::Optimal);
  CHECK(milp.objective == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(milp.assignment.pairs.at("t1") == "e1");
}

TEST_CASE("solver matches the brute-force oracle on random instances") {
  SolveConfig cfg;
  cfg.gap_tolerance = 0.0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const ProblemInstance instance =
        generate_synthetic(2 + static_cast<int>(seed % 4), 3 + static_cast<int>(seed % 6),
                           2 + static_cast<int>(seed % 3), seed);
    const MilpResult milp = solve_milp(build_balance_model(instance), cfg);
    const MilpResult oracle = brute_force(instance);
    REQUIRE(milp.status == MilpStatus::Optimal);
    CHECK(milp.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
    // The returned assignment must actually attain the reported objective.
    CHECK(evaluate_objective(instance, milp.assignment) ==
          doctest::Approx(milp.objective).epsilon(1e-9));
  }
}

TEST_CASE("cost mode matches the oracle too") {
  SolveConfig cfg;
  cfg.gap_tolerance = 0.0;
  Hyperparams hp;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ProblemInstance instance = generate_synthetic(3, 5, 2, seed + 100);
    const MilpModel model = build_cost_model(instance, hp, build_cost_map(instance, hp));
    const MilpResult milp = solve_milp(model, cfg);
    const MilpResult oracle = brute_force(instance, ObjectiveMode::Cost, hp);
    REQUIRE(milp.status == MilpStatus::Optimal);
    CHECK(milp.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
  }
}

TEST_CASE("bound sandwich and gap consistency at termination") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ProblemInstance instance = generate_synthetic(4, 8, 3, seed);
    const MilpResult r = solve_milp(build_balance_model(instance));
    REQUIRE(r.status == MilpStatus::Optimal);
    CHECK(r.best_bound <= r.objective + 1e-9);
    bool absolute = false;
    CHECK(r.gap_percent ==
          doctest::Approx(optimality_gap(r.objective, r.best_bound, &absolute)).epsilon(1e-9));
  }
}

TEST_CASE("deviation variables at optimum match deviation_stats") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ProblemInstance instance = generate_synthetic(3, 7, 2, seed);
    SolveConfig cfg;
    cfg.gap_tolerance = 0.0;
    const MilpResult r = solve_milp(build_balance_model(instance), cfg);
    REQUIRE(r.status == MilpStatus::Optimal);
    const auto loads = workload_values(workload_vector(r.assignment, instance));
    const auto dev = deviation_stats(loads, target_workload(instance));
    CHECK(r.objective == doctest::Approx(dev.max_above + dev.max_below).epsilon(1e-7));
  }
}

TEST_CASE("duration scaling scales the optimal objective") {
  SolveConfig cfg;
  cfg.gap_tolerance = 0.0;
  ProblemInstance instance = generate_synthetic(3, 6, 2, 17);
  const double base = solve_milp(build_balance_model(instance), cfg).objective;
  for (auto& t : instance.tasks) t.duration_hours *= 3.0;
  const double scaled = solve_milp(build_balance_model(instance), cfg).objective;
  CHECK(scaled == doctest::Approx(3.0 * base).epsilon(1e-9));
}

TEST_CASE("solver is deterministic") {
  const ProblemInstance instance = generate_synthetic(5, 12, 3, 23);
  const MilpModel model = build_balance_model(instance);
  const MilpResult a = solve_milp(model);
  const MilpResult b = solve_milp(model);
  CHECK(a.assignment.pairs == b.assignment.pairs);
  CHECK(a.objective == b.objective);
  CHECK(a.nodes == b.nodes);
}

TEST_CASE("minimax variant optimizes max deviation") {
  // One employee at half efficiency forces asymmetry: check the minimax
  // objective equals the brute-force minimum of max(D+, D-).
  ProblemInstance instance;
  instance.employees = {make_employee("e1", {{"java", 1.0}}),
                        make_employee("e2", {{"java", 0.5}})};
  instance.tasks = {make_task("t1", "java", 4), make_task("t2", "java", 8)};
  SolveConfig cfg;
  cfg.gap_tolerance = 0.0;
  const MilpResult mm = solve_milp(build_balance_model(instance, BalanceForm::MiniMax), cfg);
  REQUIRE(mm.status == MilpStatus::Optimal);

  const double target = target_workload(instance);
  double best = kInf;
  // 4 assignments: each task to e1 or e2.
  for (int mask = 0; mask < 4; ++mask) {
    Assignment a;
    a.pairs["t1"] = (mask & 1) ? "e2" : "e1";
    a.pairs["t2"] = (mask & 2) ? "e2" : "e1";
    const auto loads = workload_values(workload_vector(a, instance));
    const auto dev = deviation_stats(loads, target);
    best = std::min(best, std::max(dev.max_above, dev.max_below));
  }
  CHECK(mm.objective == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("lambda limit collapses onto the balance model") {
  SolveConfig cfg;
  cfg.gap_tolerance = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ProblemInstance instance = generate_synthetic(3, 6, 2, seed + 50);
    Hyperparams hp;
    hp.lambda = 1.0;
    const double balance = solve_milp(build_balance_model(instance), cfg).objective;
    const double cost = solve_milp(
        build_cost_model(instance, hp, build_cost_map(instance, hp)), cfg).objective;
    CHECK(cost == doctest::Approx(balance).epsilon(1e-9));
  }
}

TEST_CASE("lambda zero picks per-task cost minima") {
  SolveConfig cfg;
  cfg.gap_tolerance = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ProblemInstance instance = generate_synthetic(3, 6, 2, seed + 80);
    Hyperparams hp;
    hp.lambda = 0.0;
    const CostMap costs = build_cost_map(instance, hp);
    const MilpResult r = solve_milp(build_cost_model(instance, hp, costs), cfg);
    REQUIRE(r.status == MilpStatus::Optimal);

    double expected = 0.0;
    for (const auto& task : partition_assignable(instance).assignable) {
      double best = kInf;
      for (const auto& emp : qualified_set(task, instance.employees)) {
        best = std::min(best, costs.at({emp, task.id}));
      }
      expected += best;
    }
    CHECK(r.objective == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("infeasible model reports infeasible") {
  ProblemInstance instance;
  instance.employees = {make_employee("e1", {{"java", 1.0}})};
  instance.tasks = {make_task("t1", "java", 4)};
  MilpModel model = build_balance_model(instance);
  // Append a contradictory row: the assignment variable must be 0 and 1.
  model.constraints.push_back({{{0, 1.0}}, Relation::LessEq, 0.0});
  const MilpResult r = solve_milp(model);
  CHECK(r.status == MilpStatus::Infeasible);
  CHECK(r.assignment.pairs.empty());
}

TEST_CASE("node limit yields a feasible-but-unproven status") {
  const ProblemInstance instance = generate_synthetic(6, 18, 3, 31);
  SolveConfig cfg;
  cfg.gap_tolerance = 0.0;
  cfg.node_limit = 1;
  const MilpResult r = solve_milp(build_balance_model(instance), cfg);
  CHECK((r.status == MilpStatus::Feasible || r.status == MilpStatus::Optimal));
}

TEST_CASE("brute force refuses oversized instances") {
  const ProblemInstance instance = generate_synthetic(20, 80, 3, 1);
  CHECK_THROWS_AS(brute_force(instance), SolveError);
}

TEST_CASE("brute force handles the no-choice case") {
  ProblemInstance instance;
  instance.employees = {make_employee("e1", {{"java", 1.0}})};
  instance.tasks = {make_task("t1", "java", 4), make_task("t2", "java", 2)};
  const MilpResult r = brute_force(instance);
  CHECK(r.assignment.pairs.at("t1") == "e1");
  CHECK(r.assignment.pairs.at("t2") == "e1");
  // One employee takes all work: W equals the target, so no deviation.
  CHECK(r.objective == doctest::Approx(0.0).epsilon(1e-12));
}
