#ifndef CPRSNP_MILP_SOLVER_HPP
#define CPRSNP_MILP_SOLVER_HPP

// LP relaxation and LP-based branch-and-bound.
//
// Branching: most fractional variable, ties to the lowest index.
// Node selection: best bound, ties to the deepest node, then creation order.
// Nodes are re-solved with the dual simplex from a nearby optimal basis.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <queue>
#include <vector>

#include "cprsnp/milp/model.hpp"
#include "cprsnp/milp/simplex.hpp"

namespace cprsnp::milp {

struct LpOptions {
  double time_limit_s = 1e9;
  Tolerances tolerances{};
};

struct MipOptions {
  double time_limit_s = 1e9;
  long node_limit = -1;  // negative: unlimited
  Tolerances tolerances{};
  /// Candidate incumbent; used when it satisfies bounds, rows and integrality.
  std::optional<std::vector<double>> initial_solution;
  /// Known bound on the optimum, in the model's sense (lower when minimising).
  /// The search stops once the incumbent reaches it.
  std::optional<double> objective_floor;
};

namespace detail {

inline Clock::time_point deadline_after(double seconds) {
  if (!(seconds < 1e8)) return Clock::time_point::max();
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(std::max(0.0, seconds)));
}

inline double elapsed_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

inline bool is_integral(double v, double tol) { return std::abs(v - std::round(v)) <= tol; }

// True when every integer-feasible point has an integral objective value.
inline bool objective_is_integral(const MilpModel& model) {
  for (int j = 0; j < model.num_variables(); ++j) {
    double c = model.objective()[static_cast<std::size_t>(j)];
    if (c == 0.0) continue;
    if (!model.variable(j).integer || c != std::round(c)) return false;
  }
  return true;
}

}  // namespace detail

inline SolveResult solve_lp(const MilpModel& model, const LpOptions& options = {}) {
  model.validate();
  const auto start = detail::Clock::now();
  SolveResult result;
  detail::BoundedSimplex simplex(model, options.tolerances);
  std::vector<double> lower, upper;
  for (const auto& v : model.variables()) {
    lower.push_back(v.lower);
    upper.push_back(v.upper);
  }
  auto outcome = simplex.solve_from_scratch(lower, upper, detail::deadline_after(options.time_limit_s));
  const double sign = model.objective_sense() == ObjectiveSense::Minimize ? 1.0 : -1.0;
  switch (outcome) {
    case detail::LpOutcome::Optimal:
      result.status = Status::Optimal;
      result.values = simplex.structural_values();
      result.objective = model.evaluate_objective(result.values);
      result.bound = sign * simplex.objective();
      result.gap = 0.0;
      break;
    case detail::LpOutcome::Infeasible: result.status = Status::Infeasible; break;
    case detail::LpOutcome::Unbounded: result.status = Status::Unbounded; break;
    case detail::LpOutcome::Timeout: result.status = Status::Timeout; break;
    case detail::LpOutcome::Failed: throw ModelError("simplex failed to converge");
  }
  result.lp_iterations = simplex.iterations();
  result.seconds = detail::elapsed_since(start);
  return result;
}

inline SolveResult solve_mip(const MilpModel& model, const MipOptions& options = {}) {
  model.validate();
  const auto start = detail::Clock::now();
  const auto deadline = detail::deadline_after(options.time_limit_s);
  const Tolerances& tol = options.tolerances;
  const int n = model.num_variables();
  const double sign = model.objective_sense() == ObjectiveSense::Minimize ? 1.0 : -1.0;
  const bool integral_objective = detail::objective_is_integral(model);

  std::vector<double> root_lower, root_upper;
  for (const auto& v : model.variables()) {
    double lo = v.lower, hi = v.upper;
    if (v.integer) {
      lo = std::ceil(lo - tol.integrality);
      hi = std::floor(hi + tol.integrality);
    }
    root_lower.push_back(lo);
    root_upper.push_back(hi);
  }

  SolveResult result;
  double incumbent = kInfinity;  // internal minimisation sense
  std::vector<double> best_values;

  auto integer_feasible = [&](const std::vector<double>& x) {
    for (int j = 0; j < n; ++j)
      if (model.variable(j).integer && !detail::is_integral(x[static_cast<std::size_t>(j)], tol.integrality)) return false;
    return true;
  };
  auto consider = [&](std::vector<double> x) {
    for (int j = 0; j < n; ++j)
      if (model.variable(j).integer) x[static_cast<std::size_t>(j)] = std::round(x[static_cast<std::size_t>(j)]);
    if (model.max_violation(x) > 1e-6) return;
    double value = sign * model.evaluate_objective(x);
    if (value < incumbent) {
      incumbent = value;
      best_values = std::move(x);
    }
  };
  if (options.initial_solution && static_cast<int>(options.initial_solution->size()) == n &&
      integer_feasible(*options.initial_solution))
    consider(*options.initial_solution);

  const double floor = options.objective_floor ? sign * *options.objective_floor : -kInfinity;
  auto improves = [&](double node_bound) {
    if (!std::isfinite(incumbent)) return true;
    if (integral_objective) return node_bound <= incumbent - 1.0 + 1e-6;
    return node_bound < incumbent - std::max(1e-9, tol.relative_gap * std::abs(incumbent));
  };
  auto rounded_bound = [&](double lp) { return std::max(floor, integral_objective ? std::ceil(lp - 1e-6) : lp); };

  struct Node {
    std::vector<double> lower, upper;
    double bound;
    int depth;
    long id;
    long parent;
    detail::Basis basis;
  };
  struct Order {
    bool operator()(const Node& a, const Node& b) const {
      if (a.bound != b.bound) return a.bound > b.bound;
      if (a.depth != b.depth) return a.depth < b.depth;
      return a.id > b.id;
    }
  };
  std::priority_queue<Node, std::vector<Node>, Order> open;
  open.push(Node{root_lower, root_upper, floor, 0, 0, -1, {}});
  long last_solved = -1;
  long last_parent = -2;
  long next_id = 1;
  bool limit_hit = false;
  bool unbounded = false;
  double pruned_bound = kInfinity;  // least bound among nodes dropped by a limit

  detail::BoundedSimplex simplex(model, tol);
  while (!open.empty()) {
    if (detail::Clock::now() > deadline || (options.node_limit >= 0 && result.nodes >= options.node_limit)) {
      limit_hit = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (!improves(node.bound)) continue;
    ++result.nodes;

    // Children and siblings of the last solved node reuse its tableau; other
    // nodes rebuild their parent's basis.
    detail::LpOutcome outcome;
    if (node.parent < 0)
      outcome = simplex.solve_from_scratch(node.lower, node.upper, deadline);
    else if (node.parent == last_solved || node.parent == last_parent)
      outcome = simplex.resolve(node.lower, node.upper, deadline);
    else
      outcome = simplex.solve_from_basis(node.basis, node.lower, node.upper, deadline);
    last_solved = node.id;
    last_parent = node.parent;

    if (outcome == detail::LpOutcome::Timeout) {
      limit_hit = true;
      pruned_bound = std::min(pruned_bound, node.bound);
      break;
    }
    if (outcome == detail::LpOutcome::Failed) {
      outcome = simplex.solve_from_scratch(node.lower, node.upper, deadline);
      if (outcome == detail::LpOutcome::Failed) throw ModelError("simplex failed to converge");
      if (outcome == detail::LpOutcome::Timeout) {
        limit_hit = true;
        pruned_bound = std::min(pruned_bound, node.bound);
        break;
      }
    }
    if (outcome == detail::LpOutcome::Infeasible) continue;
    if (outcome == detail::LpOutcome::Unbounded) {
      unbounded = true;
      break;
    }

    std::vector<double> x = simplex.structural_values();
    if (model.max_violation(x) > 1e-5) {
      // accumulated round-off; retry cold before trusting the node
      outcome = simplex.solve_from_scratch(node.lower, node.upper, deadline);
      if (outcome != detail::LpOutcome::Optimal) {
        if (outcome == detail::LpOutcome::Infeasible) continue;
        limit_hit = true;
        pruned_bound = std::min(pruned_bound, node.bound);
        break;
      }
      x = simplex.structural_values();
    }
    const double lp = rounded_bound(simplex.objective());
    if (!improves(lp)) continue;

    int branch = -1;
    double best_frac = -1.0;
    for (int j = 0; j < n; ++j) {
      if (!model.variable(j).integer) continue;
      double v = x[static_cast<std::size_t>(j)];
      if (detail::is_integral(v, tol.integrality)) continue;
      double frac = v - std::floor(v);
      double score = std::min(frac, 1.0 - frac);
      if (score > best_frac) {
        best_frac = score;
        branch = j;
      }
    }
    if (branch < 0) {
      consider(std::move(x));
      continue;
    }

    const double v = x[static_cast<std::size_t>(branch)];
    detail::Basis basis = simplex.basis();
    Node up{node.lower, node.upper, lp, node.depth + 1, next_id++, node.id, basis};
    up.lower[static_cast<std::size_t>(branch)] = std::ceil(v);
    Node down{std::move(node.lower), std::move(node.upper), lp, node.depth + 1, next_id++, node.id, std::move(basis)};
    down.upper[static_cast<std::size_t>(branch)] = std::floor(v);
    open.push(std::move(up));
    open.push(std::move(down));
  }

  result.seconds = detail::elapsed_since(start);
  result.lp_iterations = simplex.iterations();
  if (unbounded) {
    result.status = Status::Unbounded;
    return result;
  }
  double bound = std::isfinite(incumbent) ? incumbent : kInfinity;
  if (limit_hit) {
    bound = std::min(bound, pruned_bound);
    while (!open.empty()) {
      bound = std::min(bound, open.top().bound);
      open.pop();
    }
    bound = std::max(bound, floor);
  }
  if (!std::isfinite(incumbent)) {
    result.status = limit_hit ? Status::Timeout : Status::Infeasible;
    result.bound = sign * bound;
    return result;
  }
  result.values = std::move(best_values);
  result.objective = model.evaluate_objective(result.values);
  bound = std::min(bound, incumbent);
  result.bound = sign * bound;
  result.gap = relative_gap(incumbent, bound);
  result.status = (!limit_hit || result.gap <= tol.relative_gap) ? Status::Optimal : Status::Feasible;
  if (result.status == Status::Optimal) {
    result.bound = result.objective;
    result.gap = 0.0;
  }
  return result;
}

}  // namespace cprsnp::milp

#endif
