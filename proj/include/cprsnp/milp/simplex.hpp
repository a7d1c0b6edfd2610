#ifndef CPRSNP_MILP_SIMPLEX_HPP
#define CPRSNP_MILP_SIMPLEX_HPP

// Dense-tableau bounded-variable simplex: primal phases 1/2 for cold starts,
// dual simplex for re-solves after bound changes. Dantzig pricing switches to
// Bland's rule after a run of degenerate pivots so that the primal method
// always terminates.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "cprsnp/milp/model.hpp"

namespace cprsnp::milp::detail {

using Clock = std::chrono::steady_clock;

enum class VarState : std::uint8_t { Basic, AtLower, AtUpper, AtZero };
enum class LpOutcome { Optimal, Infeasible, Unbounded, Timeout, Failed };

struct Basis {
  long layout = -1;
  std::vector<int> basic;
  std::vector<VarState> state;
};

class BoundedSimplex {
 public:
  BoundedSimplex(const MilpModel& model, const Tolerances& tol) : tol_(tol), n_(model.num_variables()), m_(model.num_constraints()) {
    const double sign = model.objective_sense() == ObjectiveSense::Minimize ? 1.0 : -1.0;
    cost_.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) cost_[static_cast<std::size_t>(j)] = sign * model.objective()[static_cast<std::size_t>(j)];
    rows_.resize(static_cast<std::size_t>(m_));
    sense_.resize(static_cast<std::size_t>(m_));
    rhs_.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      const auto& c = model.constraints()[static_cast<std::size_t>(i)];
      auto& row = rows_[static_cast<std::size_t>(i)];
      // merge duplicate terms
      std::vector<std::pair<int, double>> terms;
      for (const Term& t : c.terms) terms.emplace_back(t.var, t.coef);
      std::sort(terms.begin(), terms.end(), [](auto& a, auto& b) { return a.first < b.first; });
      for (auto [j, v] : terms) {
        if (!row.empty() && row.back().first == j)
          row.back().second += v;
        else
          row.emplace_back(j, v);
      }
      sense_[static_cast<std::size_t>(i)] = c.sense;
      rhs_[static_cast<std::size_t>(i)] = c.rhs;
    }
  }

  /// Phase 1 + phase 2 from a slack/artificial basis. Starts a new column layout.
  LpOutcome solve_from_scratch(const std::vector<double>& lower, const std::vector<double>& upper, Clock::time_point deadline) {
    deadline_ = deadline;
    ++layout_;
    valid_ = false;
    std::vector<VarState> init_state(static_cast<std::size_t>(n_));
    std::vector<double> x0(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
      auto jj = static_cast<std::size_t>(j);
      if (std::isfinite(lower[jj])) {
        init_state[jj] = VarState::AtLower;
        x0[jj] = lower[jj];
      } else if (std::isfinite(upper[jj])) {
        init_state[jj] = VarState::AtUpper;
        x0[jj] = upper[jj];
      } else {
        init_state[jj] = VarState::AtZero;
        x0[jj] = 0.0;
      }
    }

    // Column layout: structurals, one slack per inequality row, artificials where needed.
    slack_col_.assign(static_cast<std::size_t>(m_), -1);
    art_col_.assign(static_cast<std::size_t>(m_), -1);
    init_col_.assign(static_cast<std::size_t>(m_), -1);
    row_scale_.assign(static_cast<std::size_t>(m_), 1.0);
    int next = n_;
    for (int i = 0; i < m_; ++i)
      if (sense_[static_cast<std::size_t>(i)] != Sense::Equal) slack_col_[static_cast<std::size_t>(i)] = next++;
    for (int i = 0; i < m_; ++i) {
      auto ii = static_cast<std::size_t>(i);
      double r = rhs_[ii];
      for (auto [j, v] : rows_[ii]) r -= v * x0[static_cast<std::size_t>(j)];
      if (sense_[ii] == Sense::LessEqual && r >= 0.0) {
        init_col_[ii] = slack_col_[ii];
      } else if (sense_[ii] == Sense::GreaterEqual && r <= 0.0) {
        init_col_[ii] = slack_col_[ii];
        row_scale_[ii] = -1.0;
      } else {
        art_col_[ii] = next++;
        init_col_[ii] = art_col_[ii];
        row_scale_[ii] = r >= 0.0 ? 1.0 : -1.0;
      }
    }
    num_cols_ = next;

    lower_.assign(static_cast<std::size_t>(num_cols_), 0.0);
    upper_.assign(static_cast<std::size_t>(num_cols_), kInfinity);
    for (int j = 0; j < n_; ++j) {
      lower_[static_cast<std::size_t>(j)] = lower[static_cast<std::size_t>(j)];
      upper_[static_cast<std::size_t>(j)] = upper[static_cast<std::size_t>(j)];
    }
    state_.assign(static_cast<std::size_t>(num_cols_), VarState::AtLower);
    for (int j = 0; j < n_; ++j) state_[static_cast<std::size_t>(j)] = init_state[static_cast<std::size_t>(j)];
    build_initial_tableau();
    for (int i = 0; i < m_; ++i) state_[static_cast<std::size_t>(init_col_[static_cast<std::size_t>(i)])] = VarState::Basic;
    x_.assign(static_cast<std::size_t>(num_cols_), 0.0);
    for (int j = 0; j < n_; ++j) x_[static_cast<std::size_t>(j)] = x0[static_cast<std::size_t>(j)];
    refresh_basic_values();

    bool has_artificial = false;
    for (int i = 0; i < m_; ++i) has_artificial |= art_col_[static_cast<std::size_t>(i)] >= 0;
    if (has_artificial) {
      phase_cost_.assign(static_cast<std::size_t>(num_cols_), 0.0);
      double scale = 1.0;
      for (int i = 0; i < m_; ++i) {
        auto ii = static_cast<std::size_t>(i);
        if (art_col_[ii] >= 0) phase_cost_[static_cast<std::size_t>(art_col_[ii])] = 1.0;
        scale = std::max(scale, std::abs(rhs_[ii]));
      }
      compute_reduced_costs();
      LpOutcome p1 = primal_loop();
      if (p1 != LpOutcome::Optimal) return p1 == LpOutcome::Unbounded ? LpOutcome::Failed : p1;
      double infeasibility = 0.0;
      for (int i = 0; i < m_; ++i) {
        int a = art_col_[static_cast<std::size_t>(i)];
        if (a >= 0) infeasibility += std::abs(x_[static_cast<std::size_t>(a)]);
      }
      if (infeasibility > 1e-6 * scale) return LpOutcome::Infeasible;
      for (int i = 0; i < m_; ++i) {
        int a = art_col_[static_cast<std::size_t>(i)];
        if (a < 0) continue;
        auto aa = static_cast<std::size_t>(a);
        upper_[aa] = 0.0;
        if (state_[aa] != VarState::Basic) {
          state_[aa] = VarState::AtLower;
          x_[aa] = 0.0;
        }
      }
      refresh_basic_values();
    }
    set_phase_two_costs();
    compute_reduced_costs();
    valid_ = true;
    return finish(primal_loop());
  }

  /// Re-solve after bound changes, starting from the current tableau.
  LpOutcome resolve(const std::vector<double>& lower, const std::vector<double>& upper, Clock::time_point deadline) {
    if (!valid_) return solve_from_scratch(lower, upper, deadline);
    deadline_ = deadline;
    apply_structural_bounds(lower, upper, false);
    return reoptimize(lower, upper);
  }

  /// Re-solve starting from a stored basis of the same layout.
  LpOutcome solve_from_basis(const Basis& basis, const std::vector<double>& lower, const std::vector<double>& upper,
                             Clock::time_point deadline) {
    deadline_ = deadline;
    if (basis.layout != layout_ || !load_basis(basis)) return solve_from_scratch(lower, upper, deadline);
    x_.assign(static_cast<std::size_t>(num_cols_), 0.0);
    apply_structural_bounds(lower, upper, true);
    return reoptimize(lower, upper);
  }

  Basis basis() const {
    Basis b;
    b.layout = layout_;
    b.basic = basis_;
    b.state = state_;
    return b;
  }

  std::vector<double> structural_values() const { return {x_.begin(), x_.begin() + n_}; }

  double objective() const {
    double sum = 0.0;
    for (int j = 0; j < n_; ++j) sum += cost_[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
    return sum;
  }

  long iterations() const { return iterations_; }

 private:
  double* row(int i) { return t_.data() + static_cast<std::size_t>(i) * stride(); }
  const double* row(int i) const { return t_.data() + static_cast<std::size_t>(i) * stride(); }
  std::size_t stride() const { return static_cast<std::size_t>(num_cols_) + 1; }

  void build_initial_tableau() {
    t_.assign(static_cast<std::size_t>(m_) * stride(), 0.0);
    basis_.assign(static_cast<std::size_t>(m_), -1);
    for (int i = 0; i < m_; ++i) {
      auto ii = static_cast<std::size_t>(i);
      double s = row_scale_[ii];
      double* r = row(i);
      for (auto [j, v] : rows_[ii]) r[j] = s * v;
      if (slack_col_[ii] >= 0) r[slack_col_[ii]] = s * (sense_[ii] == Sense::LessEqual ? 1.0 : -1.0);
      if (art_col_[ii] >= 0) r[art_col_[ii]] = 1.0;
      r[num_cols_] = s * rhs_[ii];
      basis_[ii] = init_col_[ii];
    }
  }

  bool load_basis(const Basis& b) {
    build_initial_tableau();
    for (int j = 0; j < num_cols_; ++j) state_[static_cast<std::size_t>(j)] = VarState::AtLower;
    for (int i = 0; i < m_; ++i) state_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = VarState::Basic;
    std::vector<char> row_done(static_cast<std::size_t>(m_), 0);
    std::vector<char> wanted(static_cast<std::size_t>(num_cols_), 0);
    for (int col : b.basic) wanted[static_cast<std::size_t>(col)] = 1;
    for (int i = 0; i < m_; ++i)
      if (wanted[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])]) row_done[static_cast<std::size_t>(i)] = 1;
    for (int col : b.basic) {
      if (state_[static_cast<std::size_t>(col)] == VarState::Basic) continue;
      int best = -1;
      double best_abs = 1e-9;
      for (int i = 0; i < m_; ++i) {
        if (row_done[static_cast<std::size_t>(i)]) continue;
        double v = std::abs(row(i)[col]);
        if (v > best_abs) {
          best_abs = v;
          best = i;
        }
      }
      if (best < 0) {
        valid_ = false;
        return false;
      }
      state_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(best)])] = VarState::AtLower;
      pivot(best, col, false);
      state_[static_cast<std::size_t>(col)] = VarState::Basic;
      row_done[static_cast<std::size_t>(best)] = 1;
    }
    for (int j = 0; j < num_cols_; ++j) {
      auto jj = static_cast<std::size_t>(j);
      if (state_[jj] != VarState::Basic) state_[jj] = b.state[jj] == VarState::Basic ? VarState::AtLower : b.state[jj];
    }
    for (int i = 0; i < m_; ++i) {
      int a = art_col_[static_cast<std::size_t>(i)];
      if (a >= 0) upper_[static_cast<std::size_t>(a)] = 0.0;
    }
    set_phase_two_costs();
    valid_ = true;
    return true;
  }

  // Sets new structural bounds; basic values follow incrementally from the
  // nonbasic moves unless `full_refresh`.
  void apply_structural_bounds(const std::vector<double>& lower, const std::vector<double>& upper, bool full_refresh) {
    for (int j = 0; j < n_; ++j) {
      auto jj = static_cast<std::size_t>(j);
      lower_[jj] = lower[jj];
      upper_[jj] = upper[jj];
    }
    for (int j = 0; j < num_cols_; ++j) {
      auto jj = static_cast<std::size_t>(j);
      if (state_[jj] == VarState::Basic) continue;
      if (state_[jj] == VarState::AtLower && !std::isfinite(lower_[jj]))
        state_[jj] = std::isfinite(upper_[jj]) ? VarState::AtUpper : VarState::AtZero;
      if (state_[jj] == VarState::AtUpper && !std::isfinite(upper_[jj]))
        state_[jj] = std::isfinite(lower_[jj]) ? VarState::AtLower : VarState::AtZero;
      if (full_refresh)
        x_[jj] = nonbasic_value(j);
      else
        move_nonbasic(j, nonbasic_value(j));
    }
    if (full_refresh) refresh_basic_values();
  }

  // Moves nonbasic column j to `value` and updates the basic values.
  void move_nonbasic(int j, double value) {
    auto jj = static_cast<std::size_t>(j);
    const double delta = value - x_[jj];
    if (delta == 0.0) return;
    x_[jj] = value;
    for (int i = 0; i < m_; ++i) {
      const double a = row(i)[j];
      if (a != 0.0) x_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] -= a * delta;
    }
  }

  LpOutcome reoptimize(const std::vector<double>& lower, const std::vector<double>& upper) {
    compute_reduced_costs();
    if (make_dual_feasible()) {
      LpOutcome out = dual_loop();
      if (out == LpOutcome::Optimal) return finish(primal_loop());
      if (out != LpOutcome::Failed) return out;
    } else if (primal_feasible()) {
      return finish(primal_loop());
    }
    return solve_from_scratch(lower, upper, deadline_);
  }

  // Polishes an optimal basis: refreshes basic values from the rhs column and
  // repairs small primal infeasibilities with the dual method.
  LpOutcome finish(LpOutcome outcome) {
    if (outcome != LpOutcome::Optimal) return outcome;
    for (int round = 0; round < 3; ++round) {
      refresh_basic_values();
      if (primal_feasible()) return LpOutcome::Optimal;
      compute_reduced_costs();
      if (!make_dual_feasible()) return LpOutcome::Failed;
      LpOutcome out = dual_loop();
      if (out != LpOutcome::Optimal) return out;
      out = primal_loop();
      if (out != LpOutcome::Optimal) return out;
    }
    refresh_basic_values();
    return primal_feasible() ? LpOutcome::Optimal : LpOutcome::Failed;
  }

  double nonbasic_value(int j) const {
    auto jj = static_cast<std::size_t>(j);
    switch (state_[jj]) {
      case VarState::AtLower: return lower_[jj];
      case VarState::AtUpper: return upper_[jj];
      default: return 0.0;
    }
  }

  void refresh_basic_values() {
    active_.clear();
    for (int j = 0; j < num_cols_; ++j) {
      auto jj = static_cast<std::size_t>(j);
      if (state_[jj] != VarState::Basic && x_[jj] != 0.0) active_.emplace_back(j, x_[jj]);
    }
    for (int i = 0; i < m_; ++i) {
      const double* r = row(i);
      double v = r[num_cols_];
      for (auto [j, xj] : active_) v -= r[j] * xj;
      x_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = v;
    }
  }

  void set_phase_two_costs() {
    phase_cost_.assign(static_cast<std::size_t>(num_cols_), 0.0);
    for (int j = 0; j < n_; ++j) phase_cost_[static_cast<std::size_t>(j)] = cost_[static_cast<std::size_t>(j)];
  }

  void compute_reduced_costs() {
    d_ = phase_cost_;
    for (int i = 0; i < m_; ++i) {
      double cb = phase_cost_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      if (cb == 0.0) continue;
      const double* r = row(i);
      for (int j = 0; j < num_cols_; ++j)
        if (r[j] != 0.0) d_[static_cast<std::size_t>(j)] -= cb * r[j];
    }
    for (int i = 0; i < m_; ++i) d_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = 0.0;
  }

  bool is_fixed(int j) const { return lower_[static_cast<std::size_t>(j)] == upper_[static_cast<std::size_t>(j)]; }

  bool primal_feasible() const {
    for (int i = 0; i < m_; ++i) {
      auto b = static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)]);
      double tol = tol_.feasibility * (1.0 + std::abs(x_[b]));
      if (x_[b] < lower_[b] - tol || x_[b] > upper_[b] + tol) return false;
    }
    return true;
  }

  // Flips boxed nonbasic variables whose reduced cost has the wrong sign.
  bool make_dual_feasible() {
    for (int j = 0; j < num_cols_; ++j) {
      auto jj = static_cast<std::size_t>(j);
      if (state_[jj] == VarState::Basic || is_fixed(j)) continue;
      if (state_[jj] == VarState::AtLower && d_[jj] < -tol_.optimality) {
        if (!std::isfinite(upper_[jj])) return false;
        state_[jj] = VarState::AtUpper;
        move_nonbasic(j, upper_[jj]);
      } else if (state_[jj] == VarState::AtUpper && d_[jj] > tol_.optimality) {
        if (!std::isfinite(lower_[jj])) return false;
        state_[jj] = VarState::AtLower;
        move_nonbasic(j, lower_[jj]);
      } else if (state_[jj] == VarState::AtZero && std::abs(d_[jj]) > tol_.optimality) {
        return false;
      }
    }
    return true;
  }

  bool out_of_time() {
    return (iterations_ & 31) == 0 && Clock::now() > deadline_;
  }

  long iteration_cap() const { return 200L * (m_ + num_cols_) + 20000; }

  LpOutcome primal_loop() {
    bool bland = false;
    int degenerate_run = 0;
    for (long it = 0;; ++it) {
      ++iterations_;
      if (out_of_time()) return LpOutcome::Timeout;
      if (it > iteration_cap()) return LpOutcome::Failed;

      int q = -1;
      double best = 0.0;
      for (int j = 0; j < num_cols_; ++j) {
        auto jj = static_cast<std::size_t>(j);
        if (state_[jj] == VarState::Basic || is_fixed(j)) continue;
        double dj = d_[jj];
        double score = 0.0;
        if (state_[jj] == VarState::AtLower && dj < -tol_.optimality) score = -dj;
        else if (state_[jj] == VarState::AtUpper && dj > tol_.optimality) score = dj;
        else if (state_[jj] == VarState::AtZero && std::abs(dj) > tol_.optimality) score = std::abs(dj);
        if (score <= 0.0) continue;
        if (bland) {
          q = j;
          break;
        }
        if (score > best) {
          best = score;
          q = j;
        }
      }
      if (q < 0) return LpOutcome::Optimal;

      auto qq = static_cast<std::size_t>(q);
      const double dir = d_[qq] < 0.0 ? 1.0 : -1.0;
      double step = upper_[qq] - lower_[qq];
      if (!std::isfinite(step)) step = kInfinity;
      int leave = -1;
      double leave_alpha = 0.0;
      for (int i = 0; i < m_; ++i) {
        double alpha = row(i)[q];
        if (std::abs(alpha) < tol_.pivot) continue;
        auto b = static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)]);
        double rate = -alpha * dir;  // change of x_b per unit step
        double limit;
        if (rate < 0.0) {
          if (!std::isfinite(lower_[b])) continue;
          limit = std::max(0.0, x_[b] - lower_[b]) / -rate;
        } else {
          if (!std::isfinite(upper_[b])) continue;
          limit = std::max(0.0, upper_[b] - x_[b]) / rate;
        }
        bool better = false;
        if (limit < step - 1e-12) {
          better = true;
        } else if (leave >= 0 && limit <= step + 1e-12) {
          better = bland ? basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]
                         : std::abs(alpha) > std::abs(leave_alpha);
        }
        if (better) {
          step = std::min(step, limit);
          leave = i;
          leave_alpha = alpha;
        }
      }
      if (!std::isfinite(step)) return LpOutcome::Unbounded;

      degenerate_run = step < 1e-12 ? degenerate_run + 1 : 0;
      if (degenerate_run > 50) bland = true;

      // bound flip of the entering variable
      if (leave < 0) {
        x_[qq] += dir * step;
        for (int i = 0; i < m_; ++i) {
          double alpha = row(i)[q];
          if (alpha != 0.0) x_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] -= alpha * dir * step;
        }
        state_[qq] = dir > 0 ? VarState::AtUpper : VarState::AtLower;
        x_[qq] = dir > 0 ? upper_[qq] : lower_[qq];
        continue;
      }
      for (int i = 0; i < m_; ++i) {
        double alpha = row(i)[q];
        if (alpha != 0.0) x_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] -= alpha * dir * step;
      }
      x_[qq] += dir * step;
      auto out = static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave)]);
      double rate = -leave_alpha * dir;
      if (rate < 0.0) {
        state_[out] = VarState::AtLower;
        x_[out] = lower_[out];
      } else {
        state_[out] = VarState::AtUpper;
        x_[out] = upper_[out];
      }
      pivot(leave, q, true);
      state_[qq] = VarState::Basic;
    }
  }

  LpOutcome dual_loop() {
    bool bland = false;
    int degenerate_run = 0;
    for (long it = 0;; ++it) {
      ++iterations_;
      if (out_of_time()) return LpOutcome::Timeout;
      if (it > iteration_cap()) return LpOutcome::Failed;

      int r = -1;
      double worst = 0.0;
      for (int i = 0; i < m_; ++i) {
        auto b = static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)]);
        double tol = tol_.feasibility * (1.0 + std::abs(x_[b]));
        double infeas = 0.0;
        if (x_[b] < lower_[b] - tol) infeas = lower_[b] - x_[b];
        else if (x_[b] > upper_[b] + tol) infeas = x_[b] - upper_[b];
        if (infeas <= 0.0) continue;
        if (bland) {
          if (r < 0 || basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(r)]) r = i;
        } else if (infeas > worst) {
          worst = infeas;
          r = i;
        }
      }
      if (r < 0) return LpOutcome::Optimal;

      auto leaving = static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)]);
      const bool increase = x_[leaving] < lower_[leaving];
      const double target = increase ? lower_[leaving] : upper_[leaving];
      const double* pr = row(r);
      int q = -1;
      double best_ratio = kInfinity;
      double best_alpha = 0.0;
      for (int j = 0; j < num_cols_; ++j) {
        auto jj = static_cast<std::size_t>(j);
        if (state_[jj] == VarState::Basic || is_fixed(j)) continue;
        double alpha = pr[j];
        if (std::abs(alpha) < tol_.pivot) continue;
        bool eligible;
        if (state_[jj] == VarState::AtZero) eligible = true;
        else if (state_[jj] == VarState::AtLower) eligible = increase ? alpha < 0.0 : alpha > 0.0;
        else eligible = increase ? alpha > 0.0 : alpha < 0.0;
        if (!eligible) continue;
        double ratio = std::abs(d_[jj]) / std::abs(alpha);
        bool better;
        if (q < 0 || ratio < best_ratio - 1e-12) better = true;
        else if (ratio <= best_ratio + 1e-12) better = bland ? false : std::abs(alpha) > std::abs(best_alpha);
        else better = false;
        if (better) {
          q = j;
          best_ratio = ratio;
          best_alpha = alpha;
        }
      }
      if (q < 0) return LpOutcome::Infeasible;

      degenerate_run = best_ratio < 1e-12 ? degenerate_run + 1 : 0;
      if (degenerate_run > 50) bland = true;

      auto qq = static_cast<std::size_t>(q);
      double delta = (x_[leaving] - target) / best_alpha;
      for (int i = 0; i < m_; ++i) {
        double alpha = row(i)[q];
        if (alpha != 0.0) x_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] -= alpha * delta;
      }
      x_[qq] += delta;
      x_[leaving] = target;
      state_[leaving] = increase ? VarState::AtLower : VarState::AtUpper;
      pivot(r, q, true);
      state_[qq] = VarState::Basic;
    }
  }

  void pivot(int r, int q, bool update_costs) {
    double* pr = row(r);
    const double inv = 1.0 / pr[q];
    nonzero_.clear();
    const int width = num_cols_ + 1;
    for (int j = 0; j < width; ++j) {
      if (pr[j] != 0.0) {
        pr[j] *= inv;
        nonzero_.push_back(j);
      }
    }
    pr[q] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* ri = row(i);
      const double f = ri[q];
      if (f == 0.0) continue;
      for (int j : nonzero_) {
        double v = ri[j] - f * pr[j];
        ri[j] = std::abs(v) < 1e-13 ? 0.0 : v;
      }
      ri[q] = 0.0;
    }
    if (update_costs) {
      const double f = d_[static_cast<std::size_t>(q)];
      if (f != 0.0)
        for (int j : nonzero_)
          if (j < num_cols_) d_[static_cast<std::size_t>(j)] -= f * pr[j];
      d_[static_cast<std::size_t>(q)] = 0.0;
    }
    basis_[static_cast<std::size_t>(r)] = q;
  }

  Tolerances tol_;
  int n_;
  int m_;
  std::vector<double> cost_;
  std::vector<std::vector<std::pair<int, double>>> rows_;
  std::vector<Sense> sense_;
  std::vector<double> rhs_;

  long layout_ = 0;
  bool valid_ = false;
  int num_cols_ = 0;
  std::vector<int> slack_col_, art_col_, init_col_;
  std::vector<double> row_scale_;

  std::vector<double> t_;
  std::vector<int> basis_;
  std::vector<VarState> state_;
  std::vector<double> lower_, upper_, x_, d_, phase_cost_;
  std::vector<int> nonzero_;
  std::vector<std::pair<int, double>> active_;
  Clock::time_point deadline_ = Clock::time_point::max();
  long iterations_ = 0;
};

}  // namespace cprsnp::milp::detail

#endif
