#include <doctest.h>

#include <sstream>

#include "hrap/errors.hpp"
#include "hrap/milp_model.hpp"
#include "hrap/synthetic.hpp"
#include "test_util.hpp"

using namespace hrap;
using test::make_employee;
using test::make_task;

namespace {

ProblemInstance two_by_two() {
  ProblemInstance instance;
  instance.employees = {make_employee("e1", {{"java", 1.0}}),
                        make_employee("e2", {{"java", 1.0}})};
  instance.tasks = {make_task("t1", "java", 6), make_task("t2", "java", 6)};
  return instance;
}

}  // namespace

TEST_CASE("balance model has the documented shape") {
  const ProblemInstance instance = two_by_two();
  const MilpModel model = build_balance_model(instance);

  CHECK(model.num_cols() == 6);  // 4 assignment columns + D+ + D-
  CHECK(model.num_rows() == 6);  // 2 deviation rows per employee + 2 equalities
  CHECK(model.target == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(model.vars.dev_plus == 4);
  CHECK(model.vars.dev_minus == 5);

  // Objective is D+ + D- only.
  for (std::size_t c = 0; c < model.num_cols(); ++c) {
    const double expected =
        (static_cast<int>(c) == model.vars.dev_plus ||
         static_cast<int>(c) == model.vars.dev_minus)
            ? 1.0
            : 0.0;
    CHECK(model.objective[c] == expected);
  }
  // Assignment columns are binary, deviations continuous and nonnegative.
  for (std::size_t c = 0; c < 4; ++c) {
    CHECK(model.integral[c]);
    CHECK(model.lower[c] == 0.0);
    CHECK(model.upper[c] == 1.0);
  }
  CHECK_FALSE(model.integral[4]);
  CHECK_FALSE(model.integral[5]);

  // Task-major column layout, qualified employees in input order.
  CHECK(model.vars.columns[0].task == "t1");
  CHECK(model.vars.columns[0].employee == "e1");
  CHECK(model.vars.columns[1].employee == "e2");
  CHECK(model.vars.columns[2].task == "t2");

  // Each employee has one <= row with -D+ and one >= row with +D-.
  int le_rows = 0, ge_rows = 0, eq_rows = 0;
  for (const auto& row : model.constraints) {
    if (row.rel == Relation::LessEq) ++le_rows;
    if (row.rel == Relation::GreaterEq) ++ge_rows;
    if (row.rel == Relation::Equal) ++eq_rows;
  }
  CHECK(le_rows == 2);
  CHECK(ge_rows == 2);
  CHECK(eq_rows == 2);
}

TEST_CASE("workload coefficients are duration over efficiency") {
  ProblemInstance instance;
  instance.employees = {make_employee("e1", {{"java", 0.5}})};
  instance.tasks = {make_task("t1", "java", 4)};
  const MilpModel model = build_balance_model(instance);
  // Row 0 is employee e1's over-deviation row: 8*x - D+ <= target.
  const auto& row = model.constraints[0];
  REQUIRE(row.terms.size() == 2);
  CHECK(row.terms[0].coef == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(row.terms[1].col == model.vars.dev_plus);
  CHECK(row.terms[1].coef == -1.0);
  CHECK(row.rhs == doctest::Approx(model.target).epsilon(1e-12));
}

TEST_CASE("unassignable tasks are carried, not modeled") {
  ProblemInstance instance = two_by_two();
  instance.tasks.push_back(make_task("t3", "go", 10));
  const MilpModel model = build_balance_model(instance);
  CHECK(model.num_cols() == 6);
  CHECK(model.unassigned_tasks == std::vector<TaskId>{"t3"});
}

TEST_CASE("minimax form adds the coupling row and halves the objective") {
  const ProblemInstance instance = two_by_two();
  const MilpModel pair = build_balance_model(instance);
  const MilpModel mm = build_balance_model(instance, BalanceForm::MiniMax);
  CHECK(mm.num_cols() == pair.num_cols());
  CHECK(mm.num_rows() == pair.num_rows() + 1);
  CHECK(mm.objective[mm.vars.dev_plus] == 0.5);
  CHECK(mm.objective[mm.vars.dev_minus] == 0.5);
  const auto& coupling = mm.constraints.back();
  CHECK(coupling.rel == Relation::Equal);
  CHECK(coupling.rhs == 0.0);
}

TEST_CASE("cost model shares rows with the balance model") {
  const ProblemInstance instance = two_by_two();
  const MilpModel balance = build_balance_model(instance);
  Hyperparams hp;
  const CostMap costs = build_cost_map(instance, hp);

  SUBCASE("lambda 1 collapses to the balance objective") {
    hp.lambda = 1.0;
    const MilpModel model = build_cost_model(instance, hp, costs);
    REQUIRE(model.num_cols() == balance.num_cols());
    REQUIRE(model.num_rows() == balance.num_rows());
    for (std::size_t c = 0; c < model.num_cols(); ++c) {
      CHECK(model.objective[c] == balance.objective[c]);
    }
  }
  SUBCASE("lambda 0 prices assignment columns by their cost") {
    hp.lambda = 0.0;
    const MilpModel model = build_cost_model(instance, hp, costs);
    for (std::size_t c = 0; c < 4; ++c) {
      const auto& col = model.vars.columns[c];
      CHECK(model.objective[c] ==
            doctest::Approx(costs.at({col.employee, col.task})).epsilon(1e-12));
    }
    CHECK(model.objective[model.vars.dev_plus] == 0.0);
  }
  SUBCASE("missing cost entry is an error") {
    CostMap incomplete = costs;
    incomplete.erase({"e2", "t2"});
    CHECK_THROWS_AS(build_cost_model(instance, hp, incomplete), SolveError);
  }
}

TEST_CASE("extract_assignment rounds within tolerance only") {
  ProblemInstance instance;
  instance.employees = {make_employee("e1", {{"java", 1.0}})};
  instance.tasks = {make_task("t1", "java", 4)};
  const MilpModel model = build_balance_model(instance);

  Assignment a = extract_assignment(model, {1.0, 0.0, 0.0});
  CHECK(a.pairs.at("t1") == "e1");

  a = extract_assignment(model, {0.9999995, 0.0, 0.0});
  CHECK(a.pairs.at("t1") == "e1");

  CHECK_THROWS_AS(extract_assignment(model, {0.4, 0.0, 0.0}), SolveError);
}

TEST_CASE("lp dump is deterministic") {
  const ProblemInstance instance = generate_synthetic(3, 5, 3, 4);
  const MilpModel model = build_balance_model(instance);
  std::ostringstream a, b;
  write_lp_format(model, a);
  write_lp_format(model, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("Minimize") != std::string::npos);
}
