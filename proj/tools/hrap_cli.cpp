// Command-line front end: dataset generation, one-shot allocation, the
// adaptive loop, hyperparameter tuning, metric scoring and the scaling
// benchmark. Reads CSV datasets, writes JSON/CSV reports.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hrap/adaptive.hpp"
#include "hrap/bench.hpp"
#include "hrap/csv_io.hpp"
#include "hrap/errors.hpp"
#include "hrap/metrics.hpp"
#include "hrap/milp_model.hpp"
#include "hrap/report.hpp"
#include "hrap/solver.hpp"
#include "hrap/synthetic.hpp"
#include "hrap/tuning.hpp"

namespace {

using hrap::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;

struct CommonOpts {
  std::string employees_path;
  std::string tasks_path;
  int complexity_max = 5;
  double gap_tol = 1e-6;
  double time_limit_s = 60.0;
  std::uint64_t seed = 42;
};

void add_dataset_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--employees", opts.employees_path, "Employee CSV")->required();
  cmd->add_option("--tasks", opts.tasks_path, "Task CSV")->required();
  cmd->add_option("--complexity-max", opts.complexity_max, "Upper bound for task complexity");
}

void add_solver_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--gap-tol", opts.gap_tol, "Relative optimality gap tolerance");
  cmd->add_option("--time-limit-s", opts.time_limit_s, "Solver time limit in seconds");
}

hrap::ProblemInstance load_instance(const CommonOpts& opts) {
  hrap::ProblemInstance instance;
  instance.employees = hrap::load_employees(opts.employees_path);
  instance.tasks = hrap::load_tasks(opts.tasks_path, opts.complexity_max);
  hrap::validate_instance(instance);
  return instance;
}

hrap::SolveConfig solve_config(const CommonOpts& opts) {
  hrap::SolveConfig cfg;
  cfg.gap_tolerance = opts.gap_tol;
  cfg.time_limit_s = opts.time_limit_s;
  return cfg;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    hrap::write_json_file(j, out_path);
  }
}

std::vector<std::pair<int, int>> parse_sizes(const std::string& spec) {
  std::vector<std::pair<int, int>> sizes;
  std::stringstream ss(spec);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto x = cell.find('x');
    if (x == std::string::npos) {
      throw hrap::ValidationError("bad --sizes cell '" + cell + "', expected NxM");
    }
    sizes.emplace_back(std::stoi(cell.substr(0, x)), std::stoi(cell.substr(x + 1)));
  }
  if (sizes.empty()) throw hrap::ValidationError("--sizes is empty");
  return sizes;
}

int cmd_gen(int n_employees, int n_tasks, int n_skills, std::uint64_t seed,
            const std::string& employees_out, const std::string& tasks_out) {
  const auto instance = hrap::generate_synthetic(n_employees, n_tasks, n_skills, seed);
  hrap::save_employees(instance.employees, employees_out);
  hrap::save_tasks(instance.tasks, tasks_out);
  std::cerr << "wrote " << employees_out << " and " << tasks_out << '\n';
  return kExitOk;
}

int cmd_allocate(const CommonOpts& opts, const std::string& mode, const hrap::Hyperparams& hp,
                 bool no_normalize, bool fairness_on_cost, bool minimax,
                 const std::string& dump_model, const std::string& out_path,
                 bool sample_variance) {
  const auto instance = load_instance(opts);

  hrap::MilpModel model;
  if (mode == "cost") {
    hrap::validate_hyperparams(hp, !no_normalize);
    model = hrap::build_cost_model(instance, hp, hrap::build_cost_map(instance, hp),
                                   fairness_on_cost);
  } else {
    model = hrap::build_balance_model(
        instance, minimax ? hrap::BalanceForm::MiniMax : hrap::BalanceForm::DeviationPair);
  }
  if (!dump_model.empty()) {
    std::ofstream lp(dump_model);
    if (!lp) throw hrap::ParseError("cannot write '" + dump_model + "'");
    hrap::write_lp_format(model, lp);
  }

  const hrap::MilpResult result = hrap::solve_milp(model, solve_config(opts));

  Json config;
  config["command"] = "allocate";
  config["employees"] = opts.employees_path;
  config["tasks"] = opts.tasks_path;
  config["mode"] = mode;
  config["lambda"] = hp.lambda;
  config["alpha"] = hp.alpha;
  config["beta"] = hp.beta;
  config["gamma"] = hp.gamma;
  config["fairness_on_cost"] = fairness_on_cost;
  config["minimax"] = minimax;
  config["no_normalize"] = no_normalize;
  config["gap_tol"] = opts.gap_tol;
  config["time_limit_s"] = opts.time_limit_s;
  config["seed"] = opts.seed;
  config["complexity_max"] = opts.complexity_max;
  config["sample_variance"] = sample_variance;

  const Json report = hrap::run_report(instance, result, config, opts.seed, sample_variance);
  emit(report, out_path);

  std::cerr << "status      " << hrap::to_string(result.status) << '\n'
            << "objective   " << hrap::format_double(result.objective) << '\n'
            << "gap         " << hrap::format_double(result.gap_percent)
            << (result.gap_is_absolute ? " (absolute)" : " %") << '\n'
            << "nodes       " << result.nodes << '\n'
            << "unassigned  " << result.assignment.unassigned.size() << '\n';
  return result.status == hrap::MilpStatus::Optimal ? kExitOk : kExitSolver;
}

int cmd_adapt(const CommonOpts& opts, hrap::AdaptiveConfig cfg, bool simulate,
              const std::string& true_eff_path, double noise_sigma,
              const std::string& observations_path, const std::string& out_path,
              const std::string& efficiency_out) {
  const auto instance = load_instance(opts);
  cfg.solve = solve_config(opts);

  std::unique_ptr<hrap::ObservationSource> source;
  if (simulate == !observations_path.empty()) {
    throw hrap::ValidationError("pass exactly one of --simulate or --observations");
  }
  if (simulate) {
    hrap::EfficiencyTable truth;
    if (!true_eff_path.empty()) {
      truth = hrap::load_efficiency_table(true_eff_path);
    } else {
      for (const auto& e : instance.employees) truth[e.id] = e.efficiency;
    }
    source = std::make_unique<hrap::SimulatedWorkforce>(instance, std::move(truth), noise_sigma,
                                                        opts.seed);
  } else {
    source = std::make_unique<hrap::FileObservationSource>(
        hrap::load_observations(observations_path));
  }

  const hrap::AdaptiveTrace trace = hrap::run_adaptive(instance, *source, cfg);
  const std::string jsonl = hrap::trace_to_jsonl(trace);
  if (out_path.empty()) {
    std::cout << jsonl;
  } else {
    std::ofstream out(out_path);
    if (!out) throw hrap::ParseError("cannot write '" + out_path + "'");
    out << jsonl;
  }
  if (!efficiency_out.empty()) {
    hrap::save_efficiency_table(trace.final_efficiencies, efficiency_out);
  }
  return kExitOk;
}

int cmd_tune(const CommonOpts& opts, const std::string& strategy, int budget, int top_k,
             bool fairness_on_cost, const std::string& out_path,
             const std::string& sensitivity_out) {
  const auto instance = load_instance(opts);
  const hrap::TuningResult result = hrap::tune_hyperparams(
      instance, strategy == "random" ? hrap::TuneStrategy::Random : hrap::TuneStrategy::Grid,
      budget, opts.seed, solve_config(opts), top_k, fairness_on_cost);
  if (out_path.empty()) {
    std::cout << "rank,lambda,alpha,beta,gamma,objective,dev_above,dev_below,total_cost\n";
    for (std::size_t i = 0; i < result.entries.size(); ++i) {
      const auto& e = result.entries[i];
      std::cout << (i + 1) << ',' << e.hp.lambda << ',' << e.hp.alpha << ',' << e.hp.beta << ','
                << e.hp.gamma << ',' << e.objective << ',' << e.dev_above << ',' << e.dev_below
                << ',' << e.total_cost << '\n';
    }
  } else {
    hrap::save_tuning_csv(result, out_path);
  }
  if (!sensitivity_out.empty()) {
    hrap::save_sensitivity_csv(hrap::sensitivity_report(result), sensitivity_out);
  }
  return kExitOk;
}

int cmd_metrics(const CommonOpts& opts, const std::string& assignment_path,
                const std::string& out_path, bool sample_variance) {
  const auto instance = load_instance(opts);

  hrap::Assignment assignment;
  assignment.unassigned = hrap::partition_assignable(instance).unassigned;
  if (assignment_path.size() > 5 &&
      assignment_path.compare(assignment_path.size() - 5, 5, ".json") == 0) {
    std::ifstream in(assignment_path);
    if (!in) throw hrap::ParseError("cannot open '" + assignment_path + "'");
    Json report = Json::parse(in);
    for (const auto& [task, emp] : report.at("assignment").at("pairs").items()) {
      assignment.pairs[task] = emp.get<std::string>();
    }
  } else {
    for (const auto& [task, emp] : hrap::load_assignment_csv(assignment_path)) {
      assignment.pairs[task] = emp;
    }
  }

  emit(hrap::metrics_block(assignment, instance, sample_variance), out_path);
  return kExitOk;
}

int cmd_bench(const std::string& sizes_spec, int n_seeds, int n_skills, double gap_tol,
              double time_limit_s, const std::string& out_path) {
  const auto sizes = parse_sizes(sizes_spec);
  std::vector<std::uint64_t> seeds;
  for (int s = 1; s <= n_seeds; ++s) seeds.push_back(static_cast<std::uint64_t>(s));

  hrap::SolveConfig cfg;
  cfg.gap_tolerance = gap_tol;
  cfg.time_limit_s = time_limit_s;

  const auto rows = hrap::run_benchmark(sizes, seeds, n_skills, cfg);
  if (!out_path.empty()) hrap::save_bench_csv(rows, out_path);

  std::cout << "n_employees,n_tasks,median_wall_time_s,median_gap_percent\n";
  for (const auto& cell : hrap::summarize_benchmark(rows)) {
    std::cout << cell.n_employees << ',' << cell.n_tasks << ','
              << hrap::format_double(cell.median_wall_time_s) << ','
              << hrap::format_double(cell.median_gap_percent) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact MILP toolkit for fair, cost-aware task allocation"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
  int gen_n = 20, gen_m = 80, gen_skills = 6;
  std::uint64_t gen_seed = 42;
  std::string gen_emp = "employees.csv", gen_tasks = "tasks.csv";
  gen->add_option("--n-employees", gen_n, "Employee count");
  gen->add_option("--n-tasks", gen_m, "Task count");
  gen->add_option("--n-skills", gen_skills, "Skill pool size");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--employees", gen_emp, "Output employee CSV");
  gen->add_option("--tasks", gen_tasks, "Output task CSV");

  // allocate
  auto* allocate = app.add_subcommand("allocate", "Solve one allocation");
  CommonOpts alloc_opts;
  std::string alloc_mode = "balance", alloc_out, alloc_dump;
  hrap::Hyperparams alloc_hp;
  bool alloc_no_norm = false, alloc_foc = false, alloc_minimax = false, alloc_sample_var = false;
  add_dataset_flags(allocate, alloc_opts);
  add_solver_flags(allocate, alloc_opts);
  allocate->add_option("--mode", alloc_mode, "balance or cost")
      ->check(CLI::IsMember({"balance", "cost"}));
  allocate->add_option("--lambda", alloc_hp.lambda, "Balance-vs-cost weight");
  allocate->add_option("--alpha", alloc_hp.alpha, "Effective-duration cost weight");
  allocate->add_option("--beta", alloc_hp.beta, "Skill-mismatch cost weight");
  allocate->add_option("--gamma", alloc_hp.gamma, "Complexity/performance cost weight");
  allocate->add_flag("--no-normalize", alloc_no_norm, "Do not require alpha+beta+gamma == 1");
  allocate->add_flag("--fairness-on-cost", alloc_foc,
                     "Bound assigned cost (not workload) in the deviation rows");
  allocate->add_flag("--minimax", alloc_minimax, "Minimize max |W_i - target| instead of D+ + D-");
  allocate->add_option("--dump-model", alloc_dump, "Write the model in LP-style text");
  allocate->add_option("--seed", alloc_opts.seed, "Seed for the random baseline");
  allocate->add_option("--out", alloc_out, "Report JSON path (default: stdout)");
  allocate->add_flag("--sample-variance", alloc_sample_var, "Use sample variance in metrics");

  // adapt
  auto* adapt = app.add_subcommand("adapt", "Run the adaptive allocation loop");
  CommonOpts adapt_opts;
  hrap::AdaptiveConfig adapt_cfg;
  std::string adapt_mode = "balance", adapt_filter = "max";
  std::string adapt_out, adapt_eff_out, adapt_true_eff, adapt_obs;
  bool adapt_simulate = false;
  double adapt_noise = 0.0;
  add_dataset_flags(adapt, adapt_opts);
  add_solver_flags(adapt, adapt_opts);
  adapt->add_option("--mode", adapt_mode, "balance or cost")
      ->check(CLI::IsMember({"balance", "cost"}));
  adapt->add_option("--lambda", adapt_cfg.hyperparams.lambda, "Balance-vs-cost weight");
  adapt->add_option("--alpha", adapt_cfg.hyperparams.alpha, "Effective-duration cost weight");
  adapt->add_option("--beta", adapt_cfg.hyperparams.beta, "Skill-mismatch cost weight");
  adapt->add_option("--gamma", adapt_cfg.hyperparams.gamma, "Complexity/performance cost weight");
  adapt->add_option("--iterations", adapt_cfg.max_iterations, "Maximum iterations")->required();
  adapt->add_option("--threshold", adapt_cfg.threshold, "Efficiency filter threshold");
  adapt->add_option("--min-employees", adapt_cfg.min_employees,
                    "Filter guard floor (0: distinct required skills)");
  adapt->add_flag("--reset-efficiency", adapt_cfg.reset_efficiency,
                  "Start every estimate at 1 instead of the dataset values");
  adapt->add_option("--filter", adapt_filter, "Filter aggregate: any, max or mean")
      ->check(CLI::IsMember({"any", "max", "mean"}));
  adapt->add_option("--ewma", adapt_cfg.ewma_weight,
                    "EWMA weight for efficiency updates (0: replace)");
  adapt->add_flag("--simulate", adapt_simulate, "Simulate observations");
  adapt->add_option("--true-efficiencies", adapt_true_eff,
                    "True efficiency CSV for the simulator (default: dataset values)");
  adapt->add_option("--noise-sigma", adapt_noise, "Lognormal noise level of the simulator");
  adapt->add_option("--observations", adapt_obs, "Recorded observations CSV");
  adapt->add_option("--seed", adapt_opts.seed, "Simulator seed");
  adapt->add_option("--out", adapt_out, "Trace JSONL path (default: stdout)");
  adapt->add_option("--efficiency-out", adapt_eff_out, "Final efficiency table CSV");

  // tune
  auto* tune = app.add_subcommand("tune", "Hyperparameter search for the cost-aware model");
  CommonOpts tune_opts;
  std::string tune_strategy = "grid", tune_out, tune_sens_out;
  int tune_budget = 308, tune_top = 10;
  bool tune_foc = false;
  add_dataset_flags(tune, tune_opts);
  add_solver_flags(tune, tune_opts);
  tune->add_option("--strategy", tune_strategy, "grid or random")
      ->check(CLI::IsMember({"grid", "random"}));
  tune->add_option("--budget", tune_budget, "Number of samples to evaluate");
  tune->add_option("--top", tune_top, "Entries to keep in the ranking");
  tune->add_option("--seed", tune_opts.seed, "Random-strategy seed");
  tune->add_flag("--fairness-on-cost", tune_foc,
                 "Bound assigned cost (not workload) in the deviation rows");
  tune->add_option("--out", tune_out, "Ranking CSV path (default: stdout)");
  tune->add_option("--sensitivity-out", tune_sens_out, "Sensitivity CSV path");

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Score an existing assignment");
  CommonOpts metrics_opts;
  std::string metrics_assignment, metrics_out;
  bool metrics_sample_var = false;
  add_dataset_flags(metrics, metrics_opts);
  metrics->add_option("--assignment", metrics_assignment,
                      "task_id,employee_id CSV or an allocate report JSON")
      ->required();
  metrics->add_option("--out", metrics_out, "Metrics JSON path (default: stdout)");
  metrics->add_flag("--sample-variance", metrics_sample_var, "Use sample variance");

  // bench
  auto* bench = app.add_subcommand("bench", "Scaling ladder over synthetic instances");
  std::string bench_sizes = "20x80,50x150,100x300", bench_out;
  int bench_seeds = 5, bench_skills = 50;
  double bench_gap = 0.002, bench_time = 120.0;
  bench->add_option("--sizes", bench_sizes, "Comma-separated NxM cells");
  bench->add_option("--seeds", bench_seeds, "Seeds per cell (1..k)");
  bench->add_option("--skills", bench_skills, "Skill pool size of generated instances");
  bench->add_option("--gap-tol", bench_gap, "Relative gap tolerance per solve");
  bench->add_option("--time-limit-s", bench_time, "Time limit per solve");
  bench->add_option("--out", bench_out, "Row CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_n, gen_m, gen_skills, gen_seed, gen_emp, gen_tasks);
    }
    if (allocate->parsed()) {
      return cmd_allocate(alloc_opts, alloc_mode, alloc_hp, alloc_no_norm, alloc_foc,
                          alloc_minimax, alloc_dump, alloc_out, alloc_sample_var);
    }
    if (adapt->parsed()) {
      adapt_cfg.mode = adapt_mode == "cost" ? hrap::ObjectiveMode::Cost
                                            : hrap::ObjectiveMode::Balance;
      adapt_cfg.filter = adapt_filter == "any"   ? hrap::FilterMode::Any
                         : adapt_filter == "mean" ? hrap::FilterMode::Mean
                                                  : hrap::FilterMode::Max;
      return cmd_adapt(adapt_opts, adapt_cfg, adapt_simulate, adapt_true_eff, adapt_noise,
                       adapt_obs, adapt_out, adapt_eff_out);
    }
    if (tune->parsed()) {
      return cmd_tune(tune_opts, tune_strategy, tune_budget, tune_top, tune_foc, tune_out,
                      tune_sens_out);
    }
    if (metrics->parsed()) {
      return cmd_metrics(metrics_opts, metrics_assignment, metrics_out, metrics_sample_var);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_sizes, bench_seeds, bench_skills, bench_gap, bench_time, bench_out);
    }
  } catch (const hrap::SolveError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const hrap::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const hrap::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
