#ifndef CPRSNP_MILP_MODEL_HPP
#define CPRSNP_MILP_MODEL_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cprsnp/error.hpp"

namespace cprsnp::milp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class ObjectiveSense { Minimize, Maximize };

struct Variable {
  double lower = 0.0;
  double upper = kInfinity;
  bool integer = false;
  std::string name;
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
  std::string name;
};

class MilpModel {
 public:
  int add_variable(double lower, double upper, bool integer, std::string name = {}) {
    variables_.push_back(Variable{lower, upper, integer, std::move(name)});
    objective_.push_back(0.0);
    return static_cast<int>(variables_.size()) - 1;
  }
  int add_binary(std::string name = {}) { return add_variable(0.0, 1.0, true, std::move(name)); }
  int add_continuous(double lower, double upper, std::string name = {}) {
    return add_variable(lower, upper, false, std::move(name));
  }

  int add_constraint(std::vector<Term> terms, Sense sense, double rhs, std::string name = {}) {
    constraints_.push_back(Constraint{std::move(terms), sense, rhs, std::move(name)});
    return static_cast<int>(constraints_.size()) - 1;
  }

  void set_objective_sense(ObjectiveSense sense) { sense_ = sense; }
  void set_objective(int var, double coef) { objective_.at(static_cast<std::size_t>(var)) = coef; }
  void add_objective(int var, double coef) { objective_.at(static_cast<std::size_t>(var)) += coef; }

  void set_bounds(int var, double lower, double upper) {
    auto& v = variables_.at(static_cast<std::size_t>(var));
    v.lower = lower;
    v.upper = upper;
  }

  ObjectiveSense objective_sense() const { return sense_; }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Variable& variable(int j) const { return variables_.at(static_cast<std::size_t>(j)); }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  int num_integer() const {
    int count = 0;
    for (const auto& v : variables_) count += v.integer ? 1 : 0;
    return count;
  }

  void validate() const {
    for (std::size_t j = 0; j < variables_.size(); ++j) {
      const auto& v = variables_[j];
      if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper || v.lower == kInfinity ||
          v.upper == -kInfinity)
        throw ModelError("variable " + std::to_string(j) + " has invalid bounds");
      if (!std::isfinite(objective_[j])) throw ModelError("non-finite objective coefficient");
    }
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
      const auto& c = constraints_[i];
      if (!std::isfinite(c.rhs)) throw ModelError("constraint " + std::to_string(i) + " has a non-finite rhs");
      for (const Term& t : c.terms) {
        if (t.var < 0 || t.var >= num_variables())
          throw ModelError("constraint " + std::to_string(i) + " references an undeclared variable");
        if (!std::isfinite(t.coef)) throw ModelError("constraint " + std::to_string(i) + " has a non-finite coefficient");
      }
    }
  }

  /// Activity of constraint i at `x`.
  double activity(int i, const std::vector<double>& x) const {
    double sum = 0.0;
    for (const Term& t : constraints_.at(static_cast<std::size_t>(i)).terms) sum += t.coef * x[static_cast<std::size_t>(t.var)];
    return sum;
  }

  double evaluate_objective(const std::vector<double>& x) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < objective_.size(); ++j) sum += objective_[j] * x[j];
    return sum;
  }

  /// Largest bound or row violation of `x` (integrality not included).
  double max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < variables_.size(); ++j) {
      worst = std::max(worst, variables_[j].lower - x[j]);
      worst = std::max(worst, x[j] - variables_[j].upper);
    }
    for (int i = 0; i < num_constraints(); ++i) {
      const auto& c = constraints_[static_cast<std::size_t>(i)];
      double lhs = activity(i, x);
      double scale = 1.0 + std::abs(c.rhs);
      double v = 0.0;
      if (c.sense != Sense::GreaterEqual) v = std::max(v, lhs - c.rhs);
      if (c.sense != Sense::LessEqual) v = std::max(v, c.rhs - lhs);
      worst = std::max(worst, v / scale);
    }
    return worst;
  }

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<double> objective_;
  ObjectiveSense sense_ = ObjectiveSense::Minimize;
};

enum class Status { Optimal, Feasible, Infeasible, Unbounded, Timeout };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Feasible: return "feasible";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::Timeout: return "timeout";
  }
  return "?";
}

inline constexpr double kGapEpsilon = 1e-9;

inline double relative_gap(double objective, double bound) {
  return std::max(0.0, std::abs(objective - bound) / std::max(std::abs(objective), kGapEpsilon));
}

/// Outcome of an LP or MIP solve. `Feasible` means an incumbent exists but a
/// limit stopped the search; `Timeout` means a limit hit before any incumbent.
struct SolveResult {
  Status status = Status::Infeasible;
  double objective = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  std::vector<double> values;
  double seconds = 0.0;
  long nodes = 0;
  long lp_iterations = 0;

  bool has_solution() const { return status == Status::Optimal || status == Status::Feasible; }
};

struct Tolerances {
  double integrality = 1e-6;
  double feasibility = 1e-7;
  double optimality = 1e-9;
  double pivot = 1e-9;
  double relative_gap = 1e-6;
};

/// Human-readable LP-style dump for debugging.
inline void write_lp(std::ostream& os, const MilpModel& model) {
  auto name = [&](int j) {
    const auto& n = model.variable(j).name;
    return n.empty() ? "x" + std::to_string(j) : n;
  };
  auto write_terms = [&](const std::vector<std::pair<int, double>>& terms) {
    bool first = true;
    for (auto [j, c] : terms) {
      if (c == 0.0) continue;
      os << (c < 0 ? " - " : (first ? " " : " + ")) << std::abs(c) << ' ' << name(j);
      first = false;
    }
    if (first) os << " 0";
  };
  os << (model.objective_sense() == ObjectiveSense::Minimize ? "Minimize\n obj:" : "Maximize\n obj:");
  std::vector<std::pair<int, double>> obj;
  for (int j = 0; j < model.num_variables(); ++j) obj.emplace_back(j, model.objective()[static_cast<std::size_t>(j)]);
  write_terms(obj);
  os << "\nSubject To\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    const auto& c = model.constraints()[static_cast<std::size_t>(i)];
    os << ' ' << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ':';
    std::vector<std::pair<int, double>> terms;
    for (const Term& t : c.terms) terms.emplace_back(t.var, t.coef);
    write_terms(terms);
    os << (c.sense == Sense::LessEqual ? " <= " : c.sense == Sense::Equal ? " = " : " >= ") << c.rhs << '\n';
  }
  os << "Bounds\n";
  for (int j = 0; j < model.num_variables(); ++j) {
    const auto& v = model.variable(j);
    os << ' ' << v.lower << " <= " << name(j) << " <= " << v.upper << '\n';
  }
  os << "Generals\n";
  for (int j = 0; j < model.num_variables(); ++j)
    if (model.variable(j).integer) os << ' ' << name(j) << '\n';
  os << "End\n";
}

}  // namespace cprsnp::milp

#endif
