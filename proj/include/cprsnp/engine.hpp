#ifndef CPRSNP_ENGINE_HPP
#define CPRSNP_ENGINE_HPP

// Constraints-and-columns generation over the three master formulations.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cprsnp/error.hpp"
#include "cprsnp/formulations.hpp"
#include "cprsnp/graph.hpp"
#include "cprsnp/milp/solver.hpp"
#include "cprsnp/separation.hpp"

namespace cprsnp {

enum class Formulation { Cutset, Flow, Bilevel };

inline const char* to_string(Formulation f) {
  switch (f) {
    case Formulation::Cutset: return "cutset";
    case Formulation::Flow: return "flow";
    case Formulation::Bilevel: return "bilevel";
  }
  return "?";
}

inline std::optional<Formulation> parse_formulation(std::string_view s) {
  if (s == "cutset") return Formulation::Cutset;
  if (s == "flow") return Formulation::Flow;
  if (s == "bilevel") return Formulation::Bilevel;
  return std::nullopt;
}

enum class SolveStatus { Optimal, TimeLimit, Infeasible };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::TimeLimit: return "timeout";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

struct IterationRecord;

struct EngineOptions {
  double time_limit_s = 2000.0;
  bool strengthen = true;  // bilevel only
  std::uint64_t seed = 0;  // recorded in the log; every choice of the engine is deterministic
  /// Cuts needing more loss rows than this get them lazily, one worst subset per visit.
  std::int64_t loss_enumeration_cap = 2000;
  bool log_timings = true;
  ScenarioEngine scenario_engine = ScenarioEngine::Auto;
  bool capacity_weighted_protection = true;
  milp::Tolerances tolerances{};
  std::function<void(const IterationRecord&)> on_iteration;  // called after each logged iteration
};

struct IterationRecord {
  int iteration = 0;
  milp::Status master_status = milp::Status::Optimal;
  double master_objective = 0.0;
  double master_bound = 0.0;
  long master_nodes = 0;
  std::optional<SeparationStatus> separation;  // empty when the oracle did not run
  std::int64_t separation_value = 0;
  int rows_added = 0;
  int columns_added = 0;
  bool strengthened = false;
  double seconds = 0.0;  // cumulative
};

struct Solution {
  Design design;
  double cost = 0.0;
  SolveStatus status = SolveStatus::Infeasible;
  int iterations = 0;
  std::vector<IterationRecord> log;
  std::optional<double> gap;  // 0 when Optimal; master gap at a time limit hit inside the master
  double lower_bound = 0.0;
  double seconds = 0.0;
  bool has_design = false;
};

/// The starting row set of each formulation.
struct InitialRows {
  std::vector<CutSet> cuts;
  std::vector<FailureScenario> scenarios;
  std::vector<ExtremePoint> points;
};

inline InitialRows initial_rows(const AugmentedInstance& aug, Formulation formulation) {
  InitialRows rows;
  switch (formulation) {
    case Formulation::Cutset: {
      std::vector<char> side(static_cast<std::size_t>(aug.num_vertices()), 1);
      side[static_cast<std::size_t>(aug.root())] = 0;
      rows.cuts.push_back(make_cut(aug, side));
      break;
    }
    case Formulation::Flow: {
      FailureScenario f;
      for (ArcId a = 0; a < aug.k(); ++a) f.arcs.push_back(a);
      rows.scenarios.push_back(std::move(f));
      break;
    }
    case Formulation::Bilevel: break;
  }
  return rows;
}

inline std::string format_iteration(const IterationRecord& r, Formulation formulation, bool timings) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };
  std::ostringstream os;
  os << "iter=" << r.iteration << " formulation=" << to_string(formulation) << " master=" << milp::to_string(r.master_status)
     << " obj=" << num(r.master_objective) << " bound=" << num(r.master_bound) << " nodes=" << r.master_nodes
     << " separation=" << (r.separation ? to_string(*r.separation) : "-") << " value=" << r.separation_value << " rows=" << r.rows_added
     << " cols=" << r.columns_added;
  if (formulation == Formulation::Bilevel) os << " strengthened=" << (r.strengthened ? 1 : 0);
  if (timings) os << " seconds=" << num(r.seconds);
  return os.str();
}

namespace detail {

// Master state of one formulation: current rows, model construction and the
// completion of a design into a full master vector.
class MasterState {
 public:
  MasterState(const AugmentedInstance& aug, Formulation formulation, const EngineOptions& options)
      : aug_(aug), formulation_(formulation), options_(options) {
    InitialRows rows = initial_rows(aug, formulation);
    for (CutSet& c : rows.cuts) add_cut(std::move(c), Design::full(aug));
    scenarios_ = std::move(rows.scenarios);
    points_ = std::move(rows.points);
  }

  int rows() const { return static_cast<int>(model().num_constraints()); }

  void rebuild() {
    switch (formulation_) {
      case Formulation::Cutset: {
        CutsetMasterOptions o;
        o.include_strengthening_rows = true;
        cutset_ = build_cutset_master(aug_, cuts_, o);
        break;
      }
      case Formulation::Flow: flow_ = build_flow_master(aug_, scenarios_); break;
      case Formulation::Bilevel: bilevel_ = build_bilevel_master(aug_, points_); break;
    }
  }

  const MasterModel& master() const {
    switch (formulation_) {
      case Formulation::Cutset: return cutset_;
      case Formulation::Flow: return flow_;
      case Formulation::Bilevel: return bilevel_;
    }
    return bilevel_;
  }
  const milp::MilpModel& model() const { return master().model; }

  /// Full master vector for a canonical design; the solver discards it when infeasible.
  std::vector<double> completion(const Design& design) const {
    const MasterModel& m = master();
    std::vector<double> x(static_cast<std::size_t>(m.model.num_variables()), 0.0);
    for (ArcId a = 0; a < aug_.num_arcs(); ++a) {
      auto i = static_cast<std::size_t>(a);
      x[static_cast<std::size_t>(m.select[i])] = design.is_selected(a) ? 1.0 : 0.0;
      x[static_cast<std::size_t>(m.protect[i])] = design.is_protected(a) ? 1.0 : 0.0;
    }
    if (formulation_ == Formulation::Cutset)
      for (std::size_t c = 0; c < cuts_.size(); ++c)
        x[static_cast<std::size_t>(cutset_.loss[c])] = static_cast<double>(eval_loss(aug_, cuts_[c].cut, design, aug_.k()));
    if (formulation_ == Formulation::Flow)
      for (std::size_t s = 0; s < scenarios_.size(); ++s) {
        FlowResult f = max_flow(aug_, ArcMask::of(aug_, design, scenarios_[s].arcs));
        for (ArcId a = 0; a < aug_.num_arcs(); ++a)
          x[static_cast<std::size_t>(flow_.flow[s][static_cast<std::size_t>(a)])] =
              static_cast<double>(f.arc_flow[static_cast<std::size_t>(a)]);
      }
    return x;
  }

  /// Adds the rows of a violated cut; returns the number of new loss subsets.
  int add_cut(CutSet cut, const Design& design) {
    auto it = std::find_if(cuts_.begin(), cuts_.end(), [&](const CutRows& r) { return r.cut == cut; });
    if (it == cuts_.end()) {
      CutRows rows{std::move(cut), true, {}};
      if (loss_row_count(aug_, rows.cut) > options_.loss_enumeration_cap) {
        rows.enumerate_all = false;
        rows.loss_subsets.push_back(worst_loss_subset(aug_, rows.cut, design));
      }
      cuts_.push_back(std::move(rows));
      return 1;
    }
    std::vector<ArcId> subset = worst_loss_subset(aug_, it->cut, design);
    if (it->enumerate_all || std::find(it->loss_subsets.begin(), it->loss_subsets.end(), subset) != it->loss_subsets.end())
      throw Error("cut-set separation returned a cut whose rows are already present");
    it->loss_subsets.push_back(std::move(subset));
    return 0;
  }

  void add_scenario(FailureScenario f) {
    if (std::find(scenarios_.begin(), scenarios_.end(), f) != scenarios_.end())
      throw Error("scenario separation returned a scenario already present");
    scenarios_.push_back(std::move(f));
  }

  void add_point(ExtremePoint pt) {
    if (std::find(points_.begin(), points_.end(), pt) != points_.end())
      throw Error("bilevel separation returned an extreme point already present");
    points_.push_back(std::move(pt));
  }

 private:
  const AugmentedInstance& aug_;
  Formulation formulation_;
  const EngineOptions& options_;
  std::vector<CutRows> cuts_;
  std::vector<FailureScenario> scenarios_;
  std::vector<ExtremePoint> points_;
  CutsetMaster cutset_;
  FlowMaster flow_;
  MasterModel bilevel_;
};

}  // namespace detail

/// Runs constraints-and-columns generation until the oracle certifies the
/// master optimum, the master turns infeasible, or the time limit is hit.
inline Solution solve(const AugmentedInstance& aug, Formulation formulation, const EngineOptions& options = {}) {
  const auto start = milp::detail::Clock::now();
  auto elapsed = [&] { return milp::detail::elapsed_since(start); };
  Solution sol;

  if (max_flow(aug, ArcMask::full(aug)).value < aug.demand()) {
    sol.seconds = elapsed();
    return sol;
  }

  auto push = [&](const IterationRecord& rec) {
    sol.log.push_back(rec);
    if (options.on_iteration) options.on_iteration(rec);
  };
  detail::MasterState state(aug, formulation, options);
  std::optional<Design> previous;
  bool built = false;
  auto time_out = [&](std::optional<double> gap) {
    sol.status = SolveStatus::TimeLimit;
    sol.gap = gap;
    sol.seconds = elapsed();
    return sol;
  };

  for (int iteration = 1;; ++iteration) {
    const double remaining = options.time_limit_s - elapsed();
    if (remaining <= 0) return time_out(std::nullopt);

    if (!built) state.rebuild();
    built = false;
    milp::MipOptions mo;
    mo.time_limit_s = remaining;
    mo.tolerances = options.tolerances;
    if (previous) mo.initial_solution = state.completion(*previous);
    if (sol.lower_bound > 0.0) mo.objective_floor = sol.lower_bound;
    const milp::SolveResult master = milp::solve_mip(state.model(), mo);

    IterationRecord rec;
    rec.iteration = iteration;
    rec.master_status = master.status;
    rec.master_nodes = master.nodes;
    sol.iterations = iteration;
    if (master.status == milp::Status::Infeasible) {
      sol.status = SolveStatus::Infeasible;
      sol.has_design = false;
      sol.cost = 0.0;
      sol.design = Design{};
      rec.seconds = elapsed();
      push(rec);
      sol.seconds = rec.seconds;
      return sol;
    }
    if (!master.has_solution()) {
      rec.seconds = elapsed();
      push(rec);
      return time_out(std::nullopt);
    }
    rec.master_objective = master.objective;
    rec.master_bound = master.bound;
    sol.lower_bound = std::max(sol.lower_bound, master.bound);
    Design design = canonicalize(aug, state.master().design_from(master.values));
    sol.design = design;
    sol.cost = design_cost(aug, design);
    sol.has_design = true;
    if (master.status == milp::Status::Feasible) {
      rec.seconds = elapsed();
      push(rec);
      return time_out(master.gap);
    }

    SeparationOptions so;
    so.time_limit_s = options.time_limit_s - elapsed();
    so.scenario_engine = options.scenario_engine;
    so.capacity_weighted_protection = options.capacity_weighted_protection;
    so.tolerances = options.tolerances;
    const int rows_before = state.rows();
    SeparationStatus status = SeparationStatus::Timeout;
    switch (formulation) {
      case Formulation::Cutset: {
        auto r = separate_cutset(aug, design, so);
        status = r.status;
        rec.separation_value = r.value;
        if (r.violated) rec.columns_added = state.add_cut(std::move(*r.violated), design);
        break;
      }
      case Formulation::Flow: {
        auto r = separate_scenario(aug, design, so);
        status = r.status;
        rec.separation_value = r.value;
        if (r.violated) {
          state.add_scenario(std::move(*r.violated));
          rec.columns_added = aug.num_arcs();
        }
        break;
      }
      case Formulation::Bilevel: {
        auto r = separate_bilevel(aug, design, so);
        status = r.status;
        rec.separation_value = r.value;
        if (r.violated) {
          ExtremePoint pt = std::move(*r.violated);
          if (options.strengthen) {
            so.time_limit_s = options.time_limit_s - elapsed();
            StrengthenResult s = strengthen(aug, design, pt, so);
            rec.strengthened = s.strengthened;
            pt = std::move(s.point);
          }
          state.add_point(std::move(pt));
        }
        break;
      }
    }
    rec.separation = status;
    previous = design;
    if (status == SeparationStatus::Violated) {
      state.rebuild();
      built = true;
      rec.rows_added = state.rows() - rows_before;
    }
    rec.seconds = elapsed();
    push(rec);

    if (status == SeparationStatus::Timeout) return time_out(std::nullopt);
    if (status == SeparationStatus::Satisfied) {
      sol.status = SolveStatus::Optimal;
      sol.gap = 0.0;
      sol.lower_bound = sol.cost;
      sol.seconds = elapsed();
      return sol;
    }
  }
}

}  // namespace cprsnp

#endif
