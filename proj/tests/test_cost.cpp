#include <doctest.h>

#include "hrap/cost.hpp"
#include "hrap/errors.hpp"
#include "test_util.hpp"

using namespace hrap;
using test::make_employee;
using test::make_task;

TEST_CASE("skill_mismatch is the missing fraction of required skills") {
  using Skills = std::set<SkillId>;
  CHECK(skill_mismatch(Skills{"java"}, Skills{"java", "sql"}) == 0.0);
  CHECK(skill_mismatch(Skills{"java"}, Skills{"sql"}) == 1.0);
  CHECK(skill_mismatch(Skills{"java", "go"}, Skills{"java"}) == 0.5);
  CHECK(skill_mismatch(Skills{"a", "b", "c", "d"}, Skills{"a"}) == 0.75);

  const Employee e = make_employee("e1", {{"java", 0.8}});
  CHECK(skill_mismatch(e, make_task("t", "java", 1)) == 0.0);
  CHECK(skill_mismatch(e, make_task("t", "go", 1)) == 1.0);
}

TEST_CASE("assignment_cost matches the hand-computed value") {
  // alpha*d/e + beta*mismatch + gamma*complexity/performance with equal
  // thirds, d=6, e=0.5, complexity 3, performance 3: (1/3)*12 + 0 + (1/3)*1.
  const Employee e = make_employee("e1", {{"java", 0.5}}, 3);
  const Task t = make_task("t1", "java", 6, 3);
  CHECK(assignment_cost(e, t, Hyperparams{}) == doctest::Approx(13.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("higher performance strictly lowers the complexity term") {
  Hyperparams hp;
  hp.alpha = 0;
  hp.beta = 0;
  hp.gamma = 1;
  const Task t = make_task("t1", "java", 6, 3);
  const double slow = assignment_cost(make_employee("e1", {{"java", 1.0}}, 1), t, hp);
  const double fast = assignment_cost(make_employee("e2", {{"java", 1.0}}, 5), t, hp);
  CHECK(slow == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fast == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("pure alpha at unit efficiency reduces to the duration") {
  Hyperparams hp;
  hp.alpha = 1;
  hp.beta = 0;
  hp.gamma = 0;
  const Employee e = make_employee("e1", {{"java", 1.0}}, 2);
  CHECK(assignment_cost(e, make_task("t1", "java", 7.5), hp) == 7.5);
}

TEST_CASE("assignment_cost rejects unqualified employees") {
  const Employee e = make_employee("e1", {{"sql", 1.0}});
  CHECK_THROWS_AS(assignment_cost(e, make_task("t1", "java", 4), Hyperparams{}),
                  ValidationError);
}

TEST_CASE("cost is positively homogeneous in duration when beta=gamma=0") {
  Hyperparams hp;
  hp.alpha = 1;
  hp.beta = 0;
  hp.gamma = 0;
  const Employee e = make_employee("e1", {{"java", 0.4}});
  const double base = assignment_cost(e, make_task("t", "java", 3), hp);
  CHECK(assignment_cost(e, make_task("t", "java", 9), hp) ==
        doctest::Approx(3 * base).epsilon(1e-12));
}

TEST_CASE("validate_hyperparams enforces the simplex unless disabled") {
  CHECK_NOTHROW(validate_hyperparams(Hyperparams{}));
  Hyperparams hp;
  hp.alpha = 0.5;
  hp.beta = 0.5;
  hp.gamma = 0.5;
  CHECK_THROWS_AS(validate_hyperparams(hp), ValidationError);
  CHECK_NOTHROW(validate_hyperparams(hp, false));

  SUBCASE("lambda bounds") {
    Hyperparams bad;
    bad.lambda = 1.2;
    CHECK_THROWS_AS(validate_hyperparams(bad), ValidationError);
    bad.lambda = -0.1;
    CHECK_THROWS_AS(validate_hyperparams(bad), ValidationError);
  }
  SUBCASE("negative weights are rejected even unnormalized") {
    Hyperparams bad;
    bad.alpha = -0.2;
    CHECK_THROWS_AS(validate_hyperparams(bad, false), ValidationError);
  }
}

TEST_CASE("build_cost_map covers exactly the qualified pairs") {
  ProblemInstance instance;
  instance.employees = {make_employee("e1", {{"java", 1.0}}),
                        make_employee("e2", {{"java", 0.5}, {"sql", 0.5}})};
  instance.tasks = {make_task("t1", "java", 4), make_task("t2", "sql", 2),
                    make_task("t3", "go", 1)};
  const CostMap costs = build_cost_map(instance, Hyperparams{});
  CHECK(costs.size() == 3);
  CHECK(costs.count({"e1", "t1"}) == 1);
  CHECK(costs.count({"e2", "t1"}) == 1);
  CHECK(costs.count({"e2", "t2"}) == 1);
  CHECK(costs.count({"e1", "t2"}) == 0);
}
