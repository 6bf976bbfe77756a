#include "hrap/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>

#include "hrap/errors.hpp"

namespace hrap {

namespace {

constexpr double kObjTol = 1e-9;
constexpr double kZeroBound = 1e-12;
constexpr double kRowFeasTol = 1e-7;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Columns of each task, in column order (qualified employees in input order).
std::vector<std::vector<int>> columns_by_task(const MilpModel& model) {
  std::vector<std::vector<int>> by_task;
  std::map<TaskId, std::size_t> index;
  for (std::size_t c = 0; c < model.vars.columns.size(); ++c) {
    const auto& col = model.vars.columns[c];
    if (col.kind != VarIndex::Kind::Assign) continue;
    auto [it, inserted] = index.try_emplace(col.task, by_task.size());
    if (inserted) by_task.emplace_back();
    by_task[it->second].push_back(static_cast<int>(c));
  }
  return by_task;
}

// Rounds an LP point to a full integral solution: each task goes to its
// highest-weight qualified column, the deviation variables are set to the
// smallest values satisfying their rows. Returns nullopt if some row cannot
// be repaired.
std::optional<std::vector<double>> round_solution(
    const MilpModel& model, const std::vector<std::vector<int>>& by_task,
    const std::vector<double>& lp_values, const std::vector<double>& lower,
    const std::vector<double>& upper) {
  std::vector<double> x(model.num_cols(), 0.0);
  for (const auto& cols : by_task) {
    int pick = -1;
    double best = -1.0;
    for (int c : cols) {
      if (upper[c] < 0.5) continue;  // fixed to zero on this branch
      const double v = lower[c] > 0.5 ? 2.0 : lp_values[c];  // honor fixings
      if (v > best + 1e-12) {
        best = v;
        pick = c;
      }
    }
    if (pick < 0) return std::nullopt;
    x[pick] = 1.0;
  }

  const int dp = model.vars.dev_plus;
  const int dm = model.vars.dev_minus;
  double need_plus = 0.0, need_minus = 0.0;
  bool coupled = false;
  for (const auto& row : model.constraints) {
    double acc = 0.0;
    double coef_dp = 0.0, coef_dm = 0.0;
    for (const auto& term : row.terms) {
      if (term.col == dp) {
        coef_dp = term.coef;
      } else if (term.col == dm) {
        coef_dm = term.coef;
      } else {
        acc += term.coef * x[term.col];
      }
    }
    if (coef_dp != 0.0 && coef_dm != 0.0) {
      coupled = true;  // minimax coupling row, handled below
      continue;
    }
    if (coef_dp == 0.0 && coef_dm == 0.0) {
      const double resid = acc - row.rhs;
      const bool ok = (row.rel == Relation::LessEq && resid <= kRowFeasTol) ||
                      (row.rel == Relation::GreaterEq && resid >= -kRowFeasTol) ||
                      (row.rel == Relation::Equal && std::abs(resid) <= kRowFeasTol);
      if (!ok) return std::nullopt;
      continue;
    }
    // One deviation variable: smallest nonnegative value satisfying the row.
    if (coef_dp != 0.0 && row.rel == Relation::LessEq) {
      need_plus = std::max(need_plus, (acc - row.rhs) / -coef_dp);
    } else if (coef_dm != 0.0 && row.rel == Relation::GreaterEq) {
      need_minus = std::max(need_minus, (row.rhs - acc) / coef_dm);
    } else {
      return std::nullopt;
    }
  }
  if (coupled) need_plus = need_minus = std::max(need_plus, need_minus);
  x[dp] = std::max(need_plus, 0.0);
  x[dm] = std::max(need_minus, 0.0);
  return x;
}

// Row structure needed to build LP crash starts: the assignment columns of
// each task equality row and each column's coefficient in its employee's
// deviation row. Unusable when the deviation variables share a row (the
// minimax coupling) since the repair pivots would violate it.
struct CrashInfo {
  bool usable = false;
  std::vector<std::vector<int>> task_cols;
  std::vector<double> weight;   // per column
  std::vector<int> owner_row;   // per column: ordinal of its weighted row
  int n_rows = 0;
};

CrashInfo analyze_for_crash(const MilpModel& model) {
  CrashInfo info;
  const int dp = model.vars.dev_plus;
  const int dm = model.vars.dev_minus;
  if (dp < 0 || dm < 0) return info;
  info.weight.assign(model.num_cols(), 0.0);
  info.owner_row.assign(model.num_cols(), -1);
  for (const auto& row : model.constraints) {
    bool has_dp = false, has_dm = false;
    for (const auto& term : row.terms) {
      has_dp |= term.col == dp;
      has_dm |= term.col == dm;
    }
    if (has_dp && has_dm) return info;
    if (row.rel == Relation::LessEq && has_dp) {
      for (const auto& term : row.terms) {
        if (term.col == dp) continue;
        info.weight[term.col] = term.coef;
        info.owner_row[term.col] = info.n_rows;
      }
      ++info.n_rows;
    } else if (row.rel == Relation::Equal) {
      std::vector<int> cols;
      for (const auto& term : row.terms) cols.push_back(term.col);
      info.task_cols.push_back(std::move(cols));
    }
  }
  info.usable = info.n_rows > 0;
  return info;
}

// Greedy integral assignment honoring the node's bounds; feeds the simplex
// crash start. nullopt means some equality row has every column fixed to
// zero, which proves the node infeasible outright.
std::optional<LpWarmStart> make_warm_start(const CrashInfo& info, const MilpModel& model,
                                           const std::vector<double>& lower,
                                           const std::vector<double>& upper) {
  if (!info.usable) return std::nullopt;
  LpWarmStart warm;
  warm.dev_plus = model.vars.dev_plus;
  warm.dev_minus = model.vars.dev_minus;
  std::vector<double> load(info.n_rows, 0.0);
  for (const auto& cols : info.task_cols) {
    int pick = -1;
    for (int c : cols) {
      if (lower[c] > 0.5) {
        pick = c;
        break;
      }
    }
    if (pick < 0) {
      double best = kInf;
      for (int c : cols) {
        if (upper[c] < 0.5) continue;
        const int row = info.owner_row[c];
        const double cand = (row >= 0 ? load[row] : 0.0) + info.weight[c];
        if (cand < best - 1e-12) {
          best = cand;
          pick = c;
        }
      }
    }
    if (pick < 0) return std::nullopt;
    warm.at_upper.push_back(pick);
    if (info.owner_row[pick] >= 0) load[info.owner_row[pick]] += info.weight[pick];
  }
  return warm;
}

double objective_of(const MilpModel& model, const std::vector<double>& x) {
  double obj = 0.0;
  for (std::size_t c = 0; c < model.num_cols(); ++c) obj += model.objective[c] * x[c];
  return obj;
}

// Hill-climbs an integral solution by reassigning single tasks, driving down
// the max-deviation terms the objective is built from. Mutates x (including
// its deviation entries) in place. Only valid for crash-analyzable models.
void improve_solution(const MilpModel& model, const CrashInfo& info,
                      const std::vector<std::vector<int>>& by_task, std::vector<double>& x,
                      const std::vector<double>& lower, const std::vector<double>& upper) {
  const int dp = model.vars.dev_plus;
  const int dm = model.vars.dev_minus;
  const double wp = model.objective[dp];
  const double wm = model.objective[dm];

  std::vector<int> pick(by_task.size(), -1);
  std::vector<double> load(info.n_rows, 0.0);
  double assign_cost = 0.0;
  for (std::size_t ti = 0; ti < by_task.size(); ++ti) {
    for (int c : by_task[ti]) {
      if (x[c] > 0.5) {
        pick[ti] = c;
        if (info.owner_row[c] < 0) return;
        load[info.owner_row[c]] += info.weight[c];
        assign_cost += model.objective[c];
      }
    }
    if (pick[ti] < 0) return;
  }

  auto deviations = [&](const std::vector<double>& l) {
    double above = 0.0, below = 0.0;
    for (double v : l) {
      above = std::max(above, v - model.target);
      below = std::max(below, model.target - v);
    }
    return std::pair{above, below};
  };

  auto [above, below] = deviations(load);
  double best_obj = assign_cost + wp * above + wm * below;

  for (int iter = 0; iter < 500; ++iter) {
    int best_task = -1, best_col = -1;
    double best_delta = -1e-9;
    for (std::size_t ti = 0; ti < by_task.size(); ++ti) {
      const int cur = pick[ti];
      if (lower[cur] > 0.5) continue;  // fixed on this branch
      const int from = info.owner_row[cur];
      // Only moves off the most loaded or onto the least loaded row can
      // shrink a max-based deviation; restrict the scan accordingly.
      const bool from_peak = load[from] >= model.target + above - 1e-12;
      for (int c : by_task[ti]) {
        if (c == cur || upper[c] < 0.5) continue;
        const int to = info.owner_row[c];
        const bool to_valley = load[to] <= model.target - below + 1e-12;
        if (!from_peak && !to_valley) continue;
        load[from] -= info.weight[cur];
        load[to] += info.weight[c];
        const auto [na, nb] = deviations(load);
        const double obj = assign_cost - model.objective[cur] + model.objective[c] +
                           wp * na + wm * nb;
        load[from] += info.weight[cur];
        load[to] -= info.weight[c];
        const double delta = obj - best_obj;
        if (delta < best_delta) {
          best_delta = delta;
          best_task = static_cast<int>(ti);
          best_col = c;
        }
      }
    }
    if (best_task < 0) break;
    const int cur = pick[best_task];
    load[info.owner_row[cur]] -= info.weight[cur];
    load[info.owner_row[best_col]] += info.weight[best_col];
    assign_cost += model.objective[best_col] - model.objective[cur];
    x[cur] = 0.0;
    x[best_col] = 1.0;
    pick[best_task] = best_col;
    std::tie(above, below) = deviations(load);
    best_obj = assign_cost + wp * above + wm * below;
  }
  x[dp] = above;
  x[dm] = below;
}

struct Fix {
  int col;
  double val;
  std::shared_ptr<const Fix> parent;
};

struct Node {
  double bound;  // lower bound inherited from the parent LP
  std::uint64_t id;
  std::shared_ptr<const Fix> fixes;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.id > b.id;                                // FIFO on ties
  }
};

void apply_fixes(const std::shared_ptr<const Fix>& fixes, std::vector<double>& lower,
                 std::vector<double>& upper) {
  for (const Fix* f = fixes.get(); f != nullptr; f = f->parent.get()) {
    lower[f->col] = f->val;
    upper[f->col] = f->val;
  }
}

// Fractional assignment column closest to 0.5; -1 if integral.
int pick_branch_column(const MilpModel& model, const std::vector<double>& values) {
  int best = -1;
  double best_dist = kInf;
  for (std::size_t c = 0; c < model.num_cols(); ++c) {
    if (!model.integral[c]) continue;
    const double v = values[c];
    if (std::min(v, 1.0 - v) <= kIntegralityTol) continue;
    const double dist = std::abs(v - 0.5);
    if (dist < best_dist - 1e-15) {
      best_dist = dist;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace

std::string to_string(MilpStatus status) {
  switch (status) {
    case MilpStatus::Optimal:
      return "optimal";
    case MilpStatus::Feasible:
      return "feasible";
    case MilpStatus::Infeasible:
      return "infeasible";
    case MilpStatus::TimeLimit:
      return "time_limit";
  }
  return "unknown";
}

double optimality_gap(double incumbent, double bound, bool* absolute) {
  if (std::abs(bound) > kZeroBound) {
    if (absolute != nullptr) *absolute = false;
    return (incumbent - bound) / std::abs(bound) * 100.0;
  }
  if (absolute != nullptr) *absolute = true;
  return (incumbent - bound) * 100.0;
}

MilpResult solve_milp(const MilpModel& model, const SolveConfig& cfg) {
  if (cfg.gap_tolerance < 0.0 || !(cfg.time_limit_s > 0.0)) {
    throw ValidationError("invalid solve config");
  }
  const auto start = Clock::now();
  MilpResult result;
  result.assignment.unassigned = model.unassigned_tasks;

  const auto by_task = columns_by_task(model);
  const CrashInfo crash = analyze_for_crash(model);

  std::vector<double> lower = model.lower;
  std::vector<double> upper = model.upper;

  bool have_incumbent = false;
  double incumbent_obj = kInf;
  std::vector<double> incumbent;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::uint64_t next_id = 0;
  open.push({-kInf, next_id++, nullptr});

  std::int64_t nodes = 0;
  bool hit_time = false;

  auto gap_reached = [&]() {
    if (!have_incumbent) return false;
    const double bound = open.empty() ? incumbent_obj : std::min(open.top().bound, incumbent_obj);
    return optimality_gap(incumbent_obj, bound) <= cfg.gap_tolerance * 100.0 + 1e-12;
  };

  while (!open.empty()) {
    if (gap_reached()) break;
    if (seconds_since(start) > cfg.time_limit_s) {
      hit_time = true;
      break;
    }
    if (cfg.node_limit >= 0 && nodes >= cfg.node_limit) break;

    Node node = open.top();
    open.pop();
    if (have_incumbent && node.bound >= incumbent_obj - kObjTol) continue;  // pruned

    std::copy(model.lower.begin(), model.lower.end(), lower.begin());
    std::copy(model.upper.begin(), model.upper.end(), upper.begin());
    apply_fixes(node.fixes, lower, upper);

    LpSolution lp;
    if (crash.usable) {
      const auto warm = make_warm_start(crash, model, lower, upper);
      if (!warm) {
        ++nodes;
        continue;  // some task row has every column fixed to zero
      }
      lp = solve_lp(model, lower, upper, *warm);
    } else {
      lp = solve_lp(model, lower, upper);
    }
    ++nodes;
    if (lp.status != LpStatus::Optimal) continue;  // infeasible subtree
    if (have_incumbent && lp.objective >= incumbent_obj - kObjTol) continue;

    // Greedy rounding for an incumbent (root seed and node-level refresh).
    if (auto rounded = round_solution(model, by_task, lp.values, lower, upper)) {
      if (crash.usable) improve_solution(model, crash, by_task, *rounded, lower, upper);
      const double obj = objective_of(model, *rounded);
      if (!have_incumbent || obj < incumbent_obj - 1e-12) {
        have_incumbent = true;
        incumbent_obj = obj;
        incumbent = std::move(*rounded);
      }
    }

    const int branch_col = pick_branch_column(model, lp.values);
    if (branch_col < 0) {
      // LP optimum is integral: exact objective for this subtree.
      if (!have_incumbent || lp.objective < incumbent_obj - 1e-12) {
        have_incumbent = true;
        incumbent_obj = lp.objective;
        incumbent = lp.values;
      }
      continue;
    }
    auto down = std::make_shared<const Fix>(Fix{branch_col, 0.0, node.fixes});
    auto up = std::make_shared<const Fix>(Fix{branch_col, 1.0, node.fixes});
    open.push({lp.objective, next_id++, std::move(down)});
    open.push({lp.objective, next_id++, std::move(up)});
  }

  result.nodes = nodes;
  result.wall_time_s = seconds_since(start);

  if (!have_incumbent) {
    result.status = hit_time ? MilpStatus::TimeLimit : MilpStatus::Infeasible;
    result.objective = kInf;
    result.best_bound = open.empty() ? kInf : open.top().bound;
    result.gap_percent = kInf;
    return result;
  }

  result.objective = incumbent_obj;
  result.best_bound = open.empty() ? incumbent_obj : std::min(open.top().bound, incumbent_obj);
  result.gap_percent = optimality_gap(incumbent_obj, result.best_bound, &result.gap_is_absolute);
  result.assignment = extract_assignment(model, incumbent);

  if (result.gap_percent <= cfg.gap_tolerance * 100.0 + 1e-12) {
    result.status = MilpStatus::Optimal;
  } else if (hit_time) {
    result.status = MilpStatus::TimeLimit;
  } else {
    result.status = MilpStatus::Feasible;
  }
  return result;
}

double evaluate_objective(const ProblemInstance& instance, const Assignment& assignment,
                          ObjectiveMode mode, const std::optional<Hyperparams>& hp) {
  const double target = target_workload(instance);
  std::map<EmployeeId, double> load;
  for (const auto& e : instance.employees) load[e.id] = 0.0;
  double total_cost = 0.0;
  const Hyperparams weights = hp.value_or(Hyperparams{});
  for (const auto& [task_id, emp_id] : assignment.pairs) {
    const Task* t = instance.find_task(task_id);
    const Employee* e = instance.find_employee(emp_id);
    if (t == nullptr || e == nullptr) {
      throw ValidationError("assignment references unknown task or employee: " + task_id);
    }
    load[emp_id] += t->duration_hours / e->efficiency_for(t->required_skill);
    if (mode == ObjectiveMode::Cost) total_cost += assignment_cost(*e, *t, weights);
  }
  double dev_plus = 0.0, dev_minus = 0.0;
  for (const auto& [id, w] : load) {
    dev_plus = std::max(dev_plus, w - target);
    dev_minus = std::max(dev_minus, target - w);
  }
  const double balance = dev_plus + dev_minus;
  if (mode == ObjectiveMode::Balance) return balance;
  return weights.lambda * balance + (1.0 - weights.lambda) * total_cost;
}

MilpResult brute_force(const ProblemInstance& instance, ObjectiveMode mode,
                       const std::optional<Hyperparams>& hp) {
  const auto start = Clock::now();
  if (mode == ObjectiveMode::Cost && !hp.has_value()) {
    throw ValidationError("cost mode requires hyperparameters");
  }
  const TaskPartition part = partition_assignable(instance);
  const double target = target_workload(instance);
  const Hyperparams weights = hp.value_or(Hyperparams{});
  const std::size_t n_emp = instance.employees.size();
  const std::size_t n_task = part.assignable.size();

  // Qualified employee indices, effective durations and costs per task.
  std::vector<std::vector<std::size_t>> qualified(n_task);
  std::vector<std::vector<double>> eff_dur(n_task), pair_cost(n_task);
  double combos = 1.0;
  for (std::size_t ti = 0; ti < n_task; ++ti) {
    const Task& t = part.assignable[ti];
    for (std::size_t ei = 0; ei < n_emp; ++ei) {
      const Employee& e = instance.employees[ei];
      if (!e.has_skill(t.required_skill)) continue;
      qualified[ti].push_back(ei);
      eff_dur[ti].push_back(t.duration_hours / e.efficiency_for(t.required_skill));
      pair_cost[ti].push_back(mode == ObjectiveMode::Cost ? assignment_cost(e, t, weights) : 0.0);
    }
    combos *= static_cast<double>(qualified[ti].size());
    if (combos > kBruteForceGuard) {
      throw SolveError("brute force guard exceeded (more than 1e7 assignments); use solve_milp");
    }
  }

  std::vector<double> load(n_emp, 0.0);
  std::vector<std::size_t> choice(n_task, 0), best_choice;
  double best_obj = kInf;
  std::int64_t leaves = 0;

  auto leaf_objective = [&](double cost_acc) {
    double dev_plus = 0.0, dev_minus = 0.0;
    for (std::size_t ei = 0; ei < n_emp; ++ei) {
      dev_plus = std::max(dev_plus, load[ei] - target);
      dev_minus = std::max(dev_minus, target - load[ei]);
    }
    const double balance = std::max(dev_plus, 0.0) + std::max(dev_minus, 0.0);
    if (mode == ObjectiveMode::Balance) return balance;
    return weights.lambda * balance + (1.0 - weights.lambda) * cost_acc;
  };

  // Choices are enumerated in descending qualified index so that the first
  // minimum found is the lexicographically smallest assignment vector.
  auto dfs = [&](auto&& self, std::size_t ti, double cost_acc) -> void {
    if (ti == n_task) {
      ++leaves;
      const double obj = leaf_objective(cost_acc);
      if (obj < best_obj) {
        best_obj = obj;
        best_choice = choice;
      }
      return;
    }
    for (std::size_t k = qualified[ti].size(); k-- > 0;) {
      choice[ti] = k;
      load[qualified[ti][k]] += eff_dur[ti][k];
      self(self, ti + 1, cost_acc + pair_cost[ti][k]);
      load[qualified[ti][k]] -= eff_dur[ti][k];
    }
  };
  dfs(dfs, 0, 0.0);

  MilpResult result;
  result.nodes = leaves;
  result.wall_time_s = seconds_since(start);
  result.assignment.unassigned = part.unassigned;
  if (best_choice.empty() && n_task > 0) {
    result.status = MilpStatus::Infeasible;  // some task had no qualified employee
    result.objective = kInf;
    return result;
  }
  for (std::size_t ti = 0; ti < n_task; ++ti) {
    result.assignment.pairs[part.assignable[ti].id] =
        instance.employees[qualified[ti][best_choice.empty() ? 0 : best_choice[ti]]].id;
  }
  result.status = MilpStatus::Optimal;
  result.objective = n_task == 0 ? leaf_objective(0.0) : best_obj;
  result.best_bound = result.objective;
  result.gap_percent = 0.0;
  return result;
}

}  // namespace hrap
