#include <doctest.h>

#include <cmath>

#include "hrap/milp_model.hpp"
#include "hrap/solver.hpp"
#include "hrap/synthetic.hpp"
#include "hrap/tuning.hpp"

using namespace hrap;

namespace {

SolveConfig quick_cfg() {
  SolveConfig cfg;
  cfg.gap_tolerance = 0.0;
  cfg.time_limit_s = 10.0;
  return cfg;
}

}  // namespace

TEST_CASE("grid with budget one evaluates the default point") {
  const ProblemInstance instance = generate_synthetic(3, 6, 2, 5);
  const TuningResult result = tune_hyperparams(instance, TuneStrategy::Grid, 1, 0, quick_cfg());
  REQUIRE(result.entries.size() == 1);
  const Hyperparams& hp = result.entries[0].hp;
  CHECK(hp.lambda == 0.5);
  CHECK(hp.alpha == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(hp.beta == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(hp.gamma == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("budget caps the sample count and results are ranked") {
  const ProblemInstance instance = generate_synthetic(3, 6, 2, 5);
  const TuningResult result =
      tune_hyperparams(instance, TuneStrategy::Grid, 30, 0, quick_cfg(), /*top_k=*/30);
  CHECK(result.entries.size() == 30);
  for (std::size_t i = 1; i < result.entries.size(); ++i) {
    CHECK(result.entries[i - 1].objective <= result.entries[i].objective + 1e-12);
  }
}

TEST_CASE("top_k truncates the ranking") {
  const ProblemInstance instance = generate_synthetic(3, 6, 2, 5);
  const TuningResult result =
      tune_hyperparams(instance, TuneStrategy::Grid, 30, 0, quick_cfg(), /*top_k=*/5);
  CHECK(result.entries.size() == 5);
}

TEST_CASE("tuning objectives are reproducible by an independent re-solve") {
  const ProblemInstance instance = generate_synthetic(3, 6, 2, 5);
  const TuningResult result =
      tune_hyperparams(instance, TuneStrategy::Grid, 8, 0, quick_cfg(), 8);
  for (const auto& entry : result.entries) {
    const MilpModel model =
        build_cost_model(instance, entry.hp, build_cost_map(instance, entry.hp));
    const MilpResult r = solve_milp(model, quick_cfg());
    CHECK(r.objective == doctest::Approx(entry.objective).epsilon(1e-9));
  }
}

TEST_CASE("random strategy is seeded and stays on the simplex") {
  const ProblemInstance instance = generate_synthetic(3, 6, 2, 5);
  const TuningResult a =
      tune_hyperparams(instance, TuneStrategy::Random, 6, 42, quick_cfg(), 6);
  const TuningResult b =
      tune_hyperparams(instance, TuneStrategy::Random, 6, 42, quick_cfg(), 6);
  REQUIRE(a.entries.size() == 6);
  REQUIRE(b.entries.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    const Hyperparams& hp = a.entries[i].hp;
    CHECK(hp.lambda >= 0.0);
    CHECK(hp.lambda <= 1.0);
    CHECK(hp.alpha + hp.beta + hp.gamma == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(hp.lambda == b.entries[i].hp.lambda);
    CHECK(hp.alpha == b.entries[i].hp.alpha);
  }
}

TEST_CASE("sensitivity_report computes per-parameter ranges") {
  TuningResult result;
  for (double alpha : {0.1, 0.2, 0.3}) {
    TuningEntry entry;
    entry.hp.lambda = 1.0;
    entry.hp.alpha = alpha;
    entry.hp.beta = 0.5 - alpha / 2;
    entry.hp.gamma = 0.5 - alpha / 2;
    result.entries.push_back(entry);
  }
  const auto rows = sensitivity_report(result);
  CHECK(std::string(rows[0].parameter) == "lambda");
  CHECK(rows[0].range == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::string(rows[1].parameter) == "alpha");
  CHECK(rows[1].min == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(rows[1].max == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(rows[1].range == doctest::Approx(0.2).epsilon(1e-12));

  SUBCASE("single entry yields zero ranges") {
    result.entries.resize(1);
    for (const auto& row : sensitivity_report(result)) {
      CHECK(row.range == 0.0);
    }
  }
}

TEST_CASE("lambda-zero argmin is invariant to scaling the weights") {
  const ProblemInstance instance = generate_synthetic(3, 6, 2, 9);
  SolveConfig cfg = quick_cfg();
  Hyperparams hp;
  hp.lambda = 0.0;
  const MilpResult base =
      solve_milp(build_cost_model(instance, hp, build_cost_map(instance, hp)), cfg);

  Hyperparams scaled = hp;
  scaled.alpha *= 3;
  scaled.beta *= 3;
  scaled.gamma *= 3;
  const MilpResult tripled =
      solve_milp(build_cost_model(instance, scaled, build_cost_map(instance, scaled)), cfg);
  CHECK(tripled.objective == doctest::Approx(3.0 * base.objective).epsilon(1e-9));
  CHECK(base.assignment.pairs == tripled.assignment.pairs);
}
