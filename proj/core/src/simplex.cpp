#include "hrap/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "hrap/errors.hpp"

namespace hrap {

namespace {

constexpr double kRedTol = 1e-9;    // reduced-cost optimality tolerance
constexpr double kPivTol = 1e-9;    // minimum pivot magnitude
constexpr double kRatioTol = 1e-12;
constexpr double kFeasTol = 1e-7;

enum class VarState : unsigned char { AtLower, AtUpper, Basic };

// Dense-tableau bounded-variable simplex. Column layout: structural columns
// of the model, one slack per row (fixed to 0 for equalities), one artificial
// per row (fixed to 0 once phase 1 ends).
class Simplex {
 public:
  Simplex(const MilpModel& model, const std::vector<double>& lower,
          const std::vector<double>& upper, const LpWarmStart* warm = nullptr)
      : n_struct_(model.num_cols()), m_(model.num_rows()) {
    warm_ = warm;
    // A crash start never needs artificial columns, so drop them from the
    // tableau entirely.
    ncols_ = n_struct_ + (warm_ != nullptr ? m_ : 2 * m_);
    lo_.assign(ncols_, 0.0);
    up_.assign(ncols_, 0.0);
    cost_.assign(ncols_, 0.0);
    for (std::size_t j = 0; j < n_struct_; ++j) {
      lo_[j] = lower[j];
      up_[j] = upper[j];
      cost_[j] = model.objective[j];
      if (!(lo_[j] > -kInf)) throw SolveError("free variables are not supported");
      if (up_[j] < lo_[j] - kRatioTol) infeasible_bounds_ = true;
    }

    tab_.assign(m_ * ncols_, 0.0);
    basis_.resize(m_);
    xb_.resize(m_);
    state_.assign(ncols_, VarState::AtLower);
    if (warm_ != nullptr) {
      for (int c : warm_->at_upper) {
        const auto j = static_cast<std::size_t>(c);
        if (up_[j] - lo_[j] > kRatioTol) state_[j] = VarState::AtUpper;
      }
    }

    auto init_val = [&](std::size_t j) {
      return state_[j] == VarState::AtUpper ? up_[j] : lo_[j];
    };

    for (std::size_t r = 0; r < m_; ++r) {
      const Constraint& row = model.constraints[r];
      double* t = row_ptr(r);
      for (const auto& term : row.terms) t[term.col] += term.coef;

      const std::size_t slack = n_struct_ + r;
      double sigma = 0.0;
      switch (row.rel) {
        case Relation::LessEq:
          sigma = 1.0;
          up_[slack] = kInf;
          break;
        case Relation::GreaterEq:
          sigma = -1.0;
          up_[slack] = kInf;
          break;
        case Relation::Equal:
          sigma = 1.0;  // slack fixed at 0
          break;
      }
      t[slack] = sigma;

      double resid = row.rhs;
      for (std::size_t j = 0; j < n_struct_; ++j) resid -= t[j] * init_val(j);

      const double slack_val = resid / sigma;
      if (warm_ != nullptr) {
        // Slack-only basis; the deviation rows are repaired before phase 2
        // and anything else out of place fails the crash.
        if (row.rel == Relation::Equal && std::abs(slack_val) > kFeasTol) {
          crash_failed_ = true;
        }
        if (sigma < 0.0) scale_row(r, -1.0);
        basis_[r] = static_cast<int>(slack);
        xb_[r] = slack_val;
      } else {
        const bool slack_ok = row.rel != Relation::Equal && slack_val >= -kRatioTol;
        if (slack_ok) {
          if (sigma < 0.0) scale_row(r, -1.0);
          basis_[r] = static_cast<int>(slack);
          xb_[r] = std::max(slack_val, 0.0);
        } else {
          const std::size_t art = n_struct_ + m_ + r;
          const double tau = (resid >= 0.0) ? 1.0 : -1.0;
          t[art] = tau;
          up_[art] = kInf;  // phase 1 only
          if (tau < 0.0) scale_row(r, -1.0);
          basis_[r] = static_cast<int>(art);
          xb_[r] = std::abs(resid);
          has_artificial_ = true;
        }
      }
      state_[static_cast<std::size_t>(basis_[r])] = VarState::Basic;
    }
  }

  bool crash_failed() const { return crash_failed_; }

  LpStatus solve() {
    if (infeasible_bounds_) return LpStatus::Infeasible;
    if (warm_ != nullptr) {
      repair_deviation_rows();
      if (crash_failed_) return LpStatus::Infeasible;  // caller retries cold
      return run(cost_);
    }
    if (has_artificial_) {
      std::vector<double> phase1(ncols_, 0.0);
      for (std::size_t r = 0; r < m_; ++r) phase1[n_struct_ + m_ + r] = 1.0;
      const LpStatus st = run(phase1);
      if (st == LpStatus::Unbounded) throw SolveError("phase 1 reported unbounded");
      double infeas = 0.0;
      for (std::size_t r = 0; r < m_; ++r) {
        if (static_cast<std::size_t>(basis_[r]) >= n_struct_ + m_) infeas += xb_[r];
      }
      if (infeas > kFeasTol) return LpStatus::Infeasible;
      // Pin artificials at zero for phase 2.
      for (std::size_t r = 0; r < m_; ++r) up_[n_struct_ + m_ + r] = 0.0;
    }
    return run(cost_);
  }

  double value_of(std::size_t j) const {
    if (state_[j] == VarState::AtLower) return lo_[j];
    if (state_[j] == VarState::AtUpper) return up_[j];
    for (std::size_t r = 0; r < m_; ++r) {
      if (static_cast<std::size_t>(basis_[r]) == j) return xb_[r];
    }
    return lo_[j];
  }

  std::vector<double> structural_values() const {
    std::vector<double> v(n_struct_);
    for (std::size_t j = 0; j < n_struct_; ++j) {
      v[j] = (state_[j] == VarState::AtLower) ? lo_[j]
             : (state_[j] == VarState::AtUpper) ? up_[j] : 0.0;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t j = static_cast<std::size_t>(basis_[r]);
      if (j < n_struct_) v[j] = xb_[r];
    }
    return v;
  }

 private:
  // Pivots nonbasic `q` (at its lower bound) into row `leave` so the leaving
  // basic variable lands exactly on its lower bound.
  void repair_pivot(std::size_t leave, std::size_t q) {
    const auto out = static_cast<std::size_t>(basis_[leave]);
    const double alpha = row_ptr(leave)[q];
    const double t = (xb_[leave] - lo_[out]) / alpha;
    if (t < -kRatioTol) {
      crash_failed_ = true;
      return;
    }
    const double* colq = tab_.data() + q;
    for (std::size_t r = 0; r < m_; ++r) xb_[r] -= t * colq[r * ncols_];

    double* prow = row_ptr(leave);
    const double inv = 1.0 / alpha;
    for (std::size_t j = 0; j < ncols_; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == leave) continue;
      double* row = row_ptr(r);
      const double f = row[q];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < ncols_; ++j) row[j] -= f * prow[j];
      row[q] = 0.0;
    }
    basis_[leave] = static_cast<int>(q);
    xb_[leave] = lo_[q] + t;
    state_[q] = VarState::Basic;
    state_[out] = VarState::AtLower;
  }

  // The crash basis can leave deviation rows below their slack bound; one
  // pivot per deviation variable (into its most violated row) restores
  // feasibility for the whole row family.
  void repair_deviation_rows() {
    for (int pass = 0; pass < 3 && !crash_failed_; ++pass) {
      std::size_t worst = m_;
      double worst_val = -kFeasTol;
      for (std::size_t r = 0; r < m_; ++r) {
        const double below = xb_[r] - lo_[static_cast<std::size_t>(basis_[r])];
        if (below < worst_val) {
          worst_val = below;
          worst = r;
        }
      }
      if (worst == m_) return;  // basis is feasible

      std::size_t q = ncols_;
      for (int dev : {warm_->dev_plus, warm_->dev_minus}) {
        if (dev < 0) continue;
        const auto j = static_cast<std::size_t>(dev);
        if (state_[j] == VarState::Basic) continue;
        if (row_ptr(worst)[j] < -kPivTol) {
          q = j;
          break;
        }
      }
      if (q == ncols_) {
        crash_failed_ = true;
        return;
      }
      repair_pivot(worst, q);
    }
    // Anything still out of bounds means the hint was unusable.
    for (std::size_t r = 0; r < m_; ++r) {
      const auto j = static_cast<std::size_t>(basis_[r]);
      if (xb_[r] < lo_[j] - kFeasTol || xb_[r] > up_[j] + kFeasTol) {
        crash_failed_ = true;
        return;
      }
    }
  }

  double* row_ptr(std::size_t r) { return tab_.data() + r * ncols_; }
  const double* row_ptr(std::size_t r) const { return tab_.data() + r * ncols_; }

  void scale_row(std::size_t r, double f) {
    double* t = row_ptr(r);
    for (std::size_t j = 0; j < ncols_; ++j) t[j] *= f;
  }

  void compute_reduced_costs(const std::vector<double>& c, std::vector<double>& red) const {
    red = c;
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = c[static_cast<std::size_t>(basis_[r])];
      if (cb == 0.0) continue;
      const double* t = row_ptr(r);
      for (std::size_t j = 0; j < ncols_; ++j) red[j] -= cb * t[j];
    }
  }

  LpStatus run(const std::vector<double>& c) {
    std::vector<double> red;
    compute_reduced_costs(c, red);

    const std::size_t max_iter = 10000 + 50 * (m_ + ncols_);
    std::size_t degenerate_streak = 0;
    bool bland = false;

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      if ((iter & 0xFF) == 0xFF) compute_reduced_costs(c, red);  // drift control

      // Entering column.
      std::size_t q = ncols_;
      double best = kRedTol;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (state_[j] == VarState::Basic) continue;
        if (up_[j] - lo_[j] < kRatioTol) continue;  // fixed
        const double d = red[j];
        const double improve = (state_[j] == VarState::AtLower) ? -d : d;
        if (improve > best) {
          q = j;
          if (bland) break;
          best = improve;
        } else if (bland && improve > kRedTol) {
          q = j;
          break;
        }
      }
      if (q == ncols_) return LpStatus::Optimal;

      const double dir = (state_[q] == VarState::AtLower) ? 1.0 : -1.0;

      // Ratio test: bound flip vs. blocking basic variable.
      double t_best = up_[q] - lo_[q];
      std::size_t leave = m_;
      bool leave_at_upper = false;
      for (std::size_t r = 0; r < m_; ++r) {
        const double alpha = dir * row_ptr(r)[q];
        double lim;
        bool hits_upper;
        if (alpha > kPivTol) {
          lim = (xb_[r] - lo_[static_cast<std::size_t>(basis_[r])]) / alpha;
          hits_upper = false;
        } else if (alpha < -kPivTol) {
          const double ub = up_[static_cast<std::size_t>(basis_[r])];
          if (!(ub < kInf)) continue;
          lim = (xb_[r] - ub) / alpha;
          hits_upper = true;
        } else {
          continue;
        }
        if (lim < -kRatioTol) lim = 0.0;
        if (lim < t_best - kRatioTol ||
            (lim < t_best + kRatioTol && leave < m_ && basis_[r] < basis_[leave])) {
          t_best = std::min(t_best, std::max(lim, 0.0));
          leave = r;
          leave_at_upper = hits_upper;
        }
      }

      if (!(t_best < kInf)) return LpStatus::Unbounded;

      if (t_best < 1e-10) {
        if (++degenerate_streak > 200) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }

      // Move the entering variable by t_best.
      const double* colq_base = tab_.data() + q;
      for (std::size_t r = 0; r < m_; ++r) {
        xb_[r] -= dir * t_best * colq_base[r * ncols_];
      }

      if (leave == m_) {
        // Pure bound flip.
        state_[q] = (state_[q] == VarState::AtLower) ? VarState::AtUpper : VarState::AtLower;
        continue;
      }

      const std::size_t out = static_cast<std::size_t>(basis_[leave]);
      const double enter_val =
          ((dir > 0.0) ? lo_[q] : up_[q]) + dir * t_best;

      // Pivot on (leave, q).
      double* prow = row_ptr(leave);
      const double piv = prow[q];
      if (std::abs(piv) < kPivTol) throw SolveError("numerically singular pivot");
      const double inv = 1.0 / piv;
      for (std::size_t j = 0; j < ncols_; ++j) prow[j] *= inv;
      prow[q] = 1.0;
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == leave) continue;
        double* t = row_ptr(r);
        const double f = t[q];
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < ncols_; ++j) t[j] -= f * prow[j];
        t[q] = 0.0;
      }
      const double fr = red[q];
      if (fr != 0.0) {
        for (std::size_t j = 0; j < ncols_; ++j) red[j] -= fr * prow[j];
        red[q] = 0.0;
      }

      basis_[leave] = static_cast<int>(q);
      xb_[leave] = enter_val;
      state_[q] = VarState::Basic;
      state_[out] = leave_at_upper ? VarState::AtUpper : VarState::AtLower;
    }
    throw SolveError("simplex iteration limit exceeded");
  }

  std::size_t n_struct_;
  std::size_t m_;
  std::size_t ncols_ = 0;
  std::vector<double> tab_;
  std::vector<double> lo_, up_, cost_;
  std::vector<int> basis_;
  std::vector<double> xb_;
  std::vector<VarState> state_;
  bool has_artificial_ = false;
  bool infeasible_bounds_ = false;
  const LpWarmStart* warm_ = nullptr;
  bool crash_failed_ = false;
};

}  // namespace

namespace {

LpSolution finish(const MilpModel& model, Simplex& simplex, LpStatus status) {
  LpSolution sol;
  sol.status = status;
  if (status != LpStatus::Optimal) return sol;
  sol.values = simplex.structural_values();
  sol.objective = 0.0;
  for (std::size_t j = 0; j < model.num_cols(); ++j) {
    sol.objective += model.objective[j] * sol.values[j];
  }
  return sol;
}

}  // namespace

LpSolution solve_lp(const MilpModel& model, const std::vector<double>& lower,
                    const std::vector<double>& upper) {
  Simplex simplex(model, lower, upper);
  return finish(model, simplex, simplex.solve());
}

LpSolution solve_lp(const MilpModel& model, const std::vector<double>& lower,
                    const std::vector<double>& upper, const LpWarmStart& warm) {
  {
    Simplex simplex(model, lower, upper, &warm);
    if (!simplex.crash_failed()) {
      const LpStatus status = simplex.solve();
      if (!simplex.crash_failed()) return finish(model, simplex, status);
    }
  }
  return solve_lp(model, lower, upper);
}

LpSolution solve_lp(const MilpModel& model) {
  return solve_lp(model, model.lower, model.upper);
}

}  // namespace hrap
