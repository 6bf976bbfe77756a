#include "hrap/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <tuple>

#include "hrap/csv_io.hpp"
#include "hrap/errors.hpp"
#include "hrap/metrics.hpp"
#include "hrap/milp_model.hpp"

namespace hrap {

namespace {

std::vector<Hyperparams> grid_candidates(int budget) {
  std::vector<Hyperparams> out;
  out.push_back(Hyperparams{});  // the default point comes first
  for (int li = 0; li <= 10 && static_cast<int>(out.size()) < budget; ++li) {
    for (int i = 0; i <= 6; ++i) {
      for (int j = 0; j + i <= 6; ++j) {
        if (li == 5 && i == 2 && j == 2) continue;  // skip the default point
        if (static_cast<int>(out.size()) >= budget) break;
        const int k = 6 - i - j;
        out.push_back({static_cast<double>(li) / 10.0, static_cast<double>(i) / 6.0,
                       static_cast<double>(j) / 6.0, static_cast<double>(k) / 6.0});
      }
    }
  }
  return out;
}

std::vector<Hyperparams> random_candidates(int budget, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Hyperparams> out;
  out.reserve(static_cast<std::size_t>(budget));
  for (int s = 0; s < budget; ++s) {
    Hyperparams hp;
    hp.lambda = uniform();
    // Flat Dirichlet on the simplex via normalized exponentials.
    double a = -std::log(1.0 - uniform());
    double b = -std::log(1.0 - uniform());
    double c = -std::log(1.0 - uniform());
    const double sum = a + b + c;
    hp.alpha = a / sum;
    hp.beta = b / sum;
    hp.gamma = c / sum;
    out.push_back(hp);
  }
  return out;
}

std::tuple<double, double, double, double> hp_key(const Hyperparams& hp) {
  return {hp.lambda, hp.alpha, hp.beta, hp.gamma};
}

}  // namespace

TuningResult tune_hyperparams(const ProblemInstance& instance, TuneStrategy strategy,
                              int budget, std::uint64_t seed, const SolveConfig& solve_cfg,
                              int top_k, bool fairness_on_cost) {
  if (budget < 1) throw ValidationError("tuning budget must be >= 1");
  const std::vector<Hyperparams> candidates = strategy == TuneStrategy::Grid
                                                  ? grid_candidates(budget)
                                                  : random_candidates(budget, seed);
  const double target = target_workload(instance);

  TuningResult result;
  for (const auto& hp : candidates) {
    MilpModel model;
    try {
      model = build_cost_model(instance, hp, build_cost_map(instance, hp), fairness_on_cost);
    } catch (const SolveError&) {
      continue;
    }
    const MilpResult solved = solve_milp(model, solve_cfg);
    if (solved.status == MilpStatus::Infeasible) continue;

    TuningEntry entry;
    entry.hp = hp;
    entry.objective = solved.objective;
    const auto loads = workload_values(workload_vector(solved.assignment, instance));
    const DeviationStats dev = deviation_stats(loads, target);
    entry.dev_above = dev.max_above;
    entry.dev_below = dev.max_below;
    for (const auto& [task_id, emp_id] : solved.assignment.pairs) {
      entry.total_cost += assignment_cost(*instance.find_employee(emp_id),
                                          *instance.find_task(task_id), hp);
    }
    result.entries.push_back(entry);
  }

  std::stable_sort(result.entries.begin(), result.entries.end(),
                   [](const TuningEntry& a, const TuningEntry& b) {
                     if (a.objective != b.objective) return a.objective < b.objective;
                     return hp_key(a.hp) < hp_key(b.hp);
                   });
  if (top_k > 0 && result.entries.size() > static_cast<std::size_t>(top_k)) {
    result.entries.resize(static_cast<std::size_t>(top_k));
  }
  return result;
}

std::array<SensitivityRow, 4> sensitivity_report(const TuningResult& result) {
  if (result.entries.empty()) throw ValidationError("sensitivity report of an empty result");
  std::array<SensitivityRow, 4> rows = {{{"lambda"}, {"alpha"}, {"beta"}, {"gamma"}}};
  auto field = [](const Hyperparams& hp, std::size_t p) {
    switch (p) {
      case 0:
        return hp.lambda;
      case 1:
        return hp.alpha;
      case 2:
        return hp.beta;
      default:
        return hp.gamma;
    }
  };
  for (std::size_t p = 0; p < 4; ++p) {
    double lo = field(result.entries.front().hp, p);
    double hi = lo;
    for (const auto& e : result.entries) {
      lo = std::min(lo, field(e.hp, p));
      hi = std::max(hi, field(e.hp, p));
    }
    rows[p].min = lo;
    rows[p].max = hi;
    rows[p].range = hi - lo;
  }
  return rows;
}

void save_tuning_csv(const TuningResult& result, const std::string& csv_path) {
  std::ofstream out(csv_path);
  if (!out) throw ParseError("cannot write '" + csv_path + "'");
  out << "rank,lambda,alpha,beta,gamma,objective,dev_above,dev_below,total_cost\n";
  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    const auto& e = result.entries[i];
    out << (i + 1) << ',' << format_double(e.hp.lambda) << ',' << format_double(e.hp.alpha)
        << ',' << format_double(e.hp.beta) << ',' << format_double(e.hp.gamma) << ','
        << format_double(e.objective) << ',' << format_double(e.dev_above) << ','
        << format_double(e.dev_below) << ',' << format_double(e.total_cost) << '\n';
  }
}

void save_sensitivity_csv(const std::array<SensitivityRow, 4>& rows,
                          const std::string& csv_path) {
  std::ofstream out(csv_path);
  if (!out) throw ParseError("cannot write '" + csv_path + "'");
  out << "parameter,min,max,range\n";
  for (const auto& r : rows) {
    out << r.parameter << ',' << format_double(r.min) << ',' << format_double(r.max) << ','
        << format_double(r.range) << '\n';
  }
}

}  // namespace hrap
