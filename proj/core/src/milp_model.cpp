#include "hrap/milp_model.hpp"

#include <cmath>
#include <map>
#include <ostream>

#include "hrap/csv_io.hpp"
#include "hrap/errors.hpp"

namespace hrap {

namespace {

// Shared row/column skeleton of both model families. `weight(i_emp, task)`
// supplies the coefficient of x in the per-employee deviation rows.
template <typename WeightFn>
MilpModel build_skeleton(const ProblemInstance& instance, WeightFn weight, BalanceForm form) {
  MilpModel model;
  const TaskPartition part = partition_assignable(instance);
  model.unassigned_tasks = part.unassigned;
  model.target = target_workload(instance);

  // Columns: task-major assign variables, then the two deviation variables.
  std::vector<std::vector<std::pair<std::size_t, int>>> task_cols(part.assignable.size());
  for (std::size_t ti = 0; ti < part.assignable.size(); ++ti) {
    const Task& t = part.assignable[ti];
    for (std::size_t ei = 0; ei < instance.employees.size(); ++ei) {
      if (instance.employees[ei].has_skill(t.required_skill)) {
        const int col = static_cast<int>(model.vars.columns.size());
        model.vars.columns.push_back(
            {VarIndex::Kind::Assign, instance.employees[ei].id, t.id});
        task_cols[ti].emplace_back(ei, col);
      }
    }
  }
  model.vars.dev_plus = static_cast<int>(model.vars.columns.size());
  model.vars.columns.push_back({VarIndex::Kind::DevPlus, {}, {}});
  model.vars.dev_minus = static_cast<int>(model.vars.columns.size());
  model.vars.columns.push_back({VarIndex::Kind::DevMinus, {}, {}});

  const std::size_t n = model.vars.columns.size();
  model.objective.assign(n, 0.0);
  model.lower.assign(n, 0.0);
  model.upper.assign(n, 1.0);
  model.integral.assign(n, true);
  for (int dev : {model.vars.dev_plus, model.vars.dev_minus}) {
    model.upper[dev] = kInf;
    model.integral[dev] = false;
  }

  // Per-employee terms of the deviation rows.
  std::vector<std::vector<LinTerm>> emp_terms(instance.employees.size());
  for (std::size_t ti = 0; ti < part.assignable.size(); ++ti) {
    for (const auto& [ei, col] : task_cols[ti]) {
      emp_terms[ei].push_back({col, weight(ei, part.assignable[ti])});
    }
  }
  for (std::size_t ei = 0; ei < instance.employees.size(); ++ei) {
    Constraint over;
    over.terms = emp_terms[ei];
    over.terms.push_back({model.vars.dev_plus, -1.0});
    over.rel = Relation::LessEq;
    over.rhs = model.target;
    model.constraints.push_back(std::move(over));

    Constraint under;
    under.terms = emp_terms[ei];
    under.terms.push_back({model.vars.dev_minus, 1.0});
    under.rel = Relation::GreaterEq;
    under.rhs = model.target;
    model.constraints.push_back(std::move(under));
  }

  // Exactly-one assignment per assignable task.
  for (std::size_t ti = 0; ti < part.assignable.size(); ++ti) {
    Constraint row;
    for (const auto& [ei, col] : task_cols[ti]) row.terms.push_back({col, 1.0});
    row.rel = Relation::Equal;
    row.rhs = 1.0;
    model.constraints.push_back(std::move(row));
  }

  if (form == BalanceForm::MiniMax) {
    Constraint couple;
    couple.terms = {{model.vars.dev_plus, 1.0}, {model.vars.dev_minus, -1.0}};
    couple.rel = Relation::Equal;
    couple.rhs = 0.0;
    model.constraints.push_back(std::move(couple));
  }
  return model;
}

}  // namespace

MilpModel build_balance_model(const ProblemInstance& instance, BalanceForm form) {
  MilpModel model = build_skeleton(
      instance,
      [&](std::size_t ei, const Task& t) {
        return t.duration_hours /
               instance.employees[ei].efficiency_for(t.required_skill);
      },
      form);
  const double dev_coef = (form == BalanceForm::MiniMax) ? 0.5 : 1.0;
  model.objective[model.vars.dev_plus] = dev_coef;
  model.objective[model.vars.dev_minus] = dev_coef;
  return model;
}

MilpModel build_cost_model(const ProblemInstance& instance, const Hyperparams& hp,
                           const CostMap& costs, bool fairness_on_cost) {
  validate_hyperparams(hp, /*normalized=*/false);
  auto cost_of = [&](const EmployeeId& emp, const TaskId& task) {
    auto it = costs.find({emp, task});
    if (it == costs.end()) {
      throw SolveError("missing cost entry for (" + emp + "," + task + ")");
    }
    return it->second;
  };

  MilpModel model = build_skeleton(
      instance,
      [&](std::size_t ei, const Task& t) {
        const Employee& e = instance.employees[ei];
        if (fairness_on_cost) return cost_of(e.id, t.id);
        return t.duration_hours / e.efficiency_for(t.required_skill);
      },
      BalanceForm::DeviationPair);

  model.objective[model.vars.dev_plus] = hp.lambda;
  model.objective[model.vars.dev_minus] = hp.lambda;
  for (std::size_t c = 0; c < model.vars.columns.size(); ++c) {
    const auto& col = model.vars.columns[c];
    if (col.kind == VarIndex::Kind::Assign) {
      model.objective[c] = (1.0 - hp.lambda) * cost_of(col.employee, col.task);
    }
  }
  return model;
}

Assignment extract_assignment(const MilpModel& model, const std::vector<double>& solution) {
  if (solution.size() != model.num_cols()) {
    throw SolveError("solution length does not match model columns");
  }
  Assignment out;
  out.unassigned = model.unassigned_tasks;
  for (std::size_t c = 0; c < model.vars.columns.size(); ++c) {
    const auto& col = model.vars.columns[c];
    if (col.kind != VarIndex::Kind::Assign) continue;
    const double v = solution[c];
    if (std::abs(v) > kIntegralityTol && std::abs(v - 1.0) > kIntegralityTol) {
      throw SolveError("fractional assignment value " + format_double(v) + " for (" +
                       col.employee + "," + col.task + ")");
    }
    if (v > 0.5) out.pairs[col.task] = col.employee;
  }
  return out;
}

namespace {

std::string column_name(const VarIndex::Column& col) {
  switch (col.kind) {
    case VarIndex::Kind::DevPlus:
      return "dev_plus";
    case VarIndex::Kind::DevMinus:
      return "dev_minus";
    default:
      return "x[" + col.employee + "," + col.task + "]";
  }
}

void write_terms(std::ostream& out, const std::vector<LinTerm>& terms, const MilpModel& model) {
  bool first = true;
  for (const auto& term : terms) {
    if (term.coef == 0.0) continue;
    if (!first) out << ' ';
    if (term.coef < 0.0) {
      out << "- ";
    } else if (!first) {
      out << "+ ";
    }
    out << format_double(std::abs(term.coef)) << ' '
        << column_name(model.vars.columns[term.col]);
    first = false;
  }
  if (first) out << '0';
}

}  // namespace

void write_lp_format(const MilpModel& model, std::ostream& out) {
  out << "Minimize\n obj: ";
  std::vector<LinTerm> obj;
  for (std::size_t c = 0; c < model.num_cols(); ++c) {
    if (model.objective[c] != 0.0) obj.push_back({static_cast<int>(c), model.objective[c]});
  }
  write_terms(out, obj, model);
  out << "\nSubject To\n";
  for (std::size_t r = 0; r < model.constraints.size(); ++r) {
    const auto& row = model.constraints[r];
    out << " c" << r << ": ";
    write_terms(out, row.terms, model);
    switch (row.rel) {
      case Relation::LessEq:
        out << " <= ";
        break;
      case Relation::GreaterEq:
        out << " >= ";
        break;
      case Relation::Equal:
        out << " = ";
        break;
    }
    out << format_double(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (std::size_t c = 0; c < model.num_cols(); ++c) {
    out << ' ' << format_double(model.lower[c]) << " <= "
        << column_name(model.vars.columns[c]);
    if (model.upper[c] < kInf) out << " <= " << format_double(model.upper[c]);
    out << '\n';
  }
  out << "Binary\n";
  for (std::size_t c = 0; c < model.num_cols(); ++c) {
    if (model.integral[c]) out << ' ' << column_name(model.vars.columns[c]) << '\n';
  }
  out << "End\n";
}

}  // namespace hrap
