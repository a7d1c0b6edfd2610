#ifndef CPRSNP_FORMULATIONS_HPP
#define CPRSNP_FORMULATIONS_HPP

// Builders for the three master models (cut-set, flow, bilevel) and the
// auxiliary models used by the separation oracles.
//
// Variable naming inside the models: y = arc selection, p = arc protection,
// loss = worst-case capacity lost in a cut, x = flow per failure scenario,
// b = attacked arc, lam/gam/mu = min-cut dual, l = linearised b*gam.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "cprsnp/combinatorics.hpp"
#include "cprsnp/error.hpp"
#include "cprsnp/graph.hpp"
#include "cprsnp/milp/model.hpp"

namespace cprsnp {

/// A set of exactly k initial arcs failing simultaneously.
struct FailureScenario {
  std::vector<ArcId> arcs;  // sorted

  bool operator==(const FailureScenario&) const = default;
};

/// One point of the lower-level polyhedron: attack b, min-cut duals
/// (lambda, gamma, mu) and the linearisation l of b*gamma.
struct ExtremePoint {
  std::vector<std::uint8_t> attack;
  std::vector<double> lambda;
  std::vector<double> gamma;
  std::vector<double> mu;
  std::vector<double> linear;

  bool operator==(const ExtremePoint&) const = default;
};

inline bool satisfies_invariants(const AugmentedInstance& aug, const ExtremePoint& pt, double tol = 1e-6) {
  const auto na = static_cast<std::size_t>(aug.num_arcs());
  if (pt.attack.size() != na || pt.lambda.size() != na || pt.gamma.size() != na || pt.linear.size() != na ||
      pt.mu.size() != static_cast<std::size_t>(aug.num_vertices()))
    return false;
  int attacked = 0;
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    auto i = static_cast<std::size_t>(a);
    if (pt.attack[i]) {
      if (aug.is_fictive(a)) return false;
      ++attacked;
    }
    const Arc& arc = aug.arcs[i];
    if (pt.lambda[i] + pt.gamma[i] - pt.mu[static_cast<std::size_t>(arc.tail)] + pt.mu[static_cast<std::size_t>(arc.head)] <
        -tol)
      return false;
    double b = pt.attack[i] ? 1.0 : 0.0;
    if (pt.linear[i] > b + tol || pt.linear[i] > pt.gamma[i] + tol || pt.linear[i] < pt.gamma[i] - (1.0 - b) - tol)
      return false;
    for (double v : {pt.lambda[i], pt.gamma[i], pt.linear[i]})
      if (v < -tol || v > 1.0 + tol) return false;
  }
  if (attacked > aug.k()) return false;
  if (std::abs(pt.mu[static_cast<std::size_t>(aug.root())] - 1.0) > tol) return false;
  if (std::abs(pt.mu[static_cast<std::size_t>(aug.sink)]) > tol) return false;
  return true;
}

/// g(y, p, lambda, gamma, l) = sum u*y*lambda + u*gamma - u*l + u*p*gamma.
inline double evaluate_g(const AugmentedInstance& aug, const Design& design, const ExtremePoint& pt) {
  double sum = 0.0;
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    auto i = static_cast<std::size_t>(a);
    const double u = static_cast<double>(aug.arcs[i].capacity);
    const double y = design.is_selected(a) ? 1.0 : 0.0;
    const double p = design.is_protected(a) ? 1.0 : 0.0;
    sum += u * y * pt.lambda[i] + u * pt.gamma[i] - u * pt.linear[i] + u * p * pt.gamma[i];
  }
  return sum;
}

/// Capacity of a cut that k failures can remove at `design`: the k largest
/// capacities among its selected, unprotected, non-fictive arcs.
inline Capacity eval_loss(const AugmentedInstance& aug, const CutSet& cut, const Design& design, int k) {
  std::vector<Capacity> caps;
  for (ArcId a : cut.arcs)
    if (!aug.is_fictive(a) && design.is_selected(a) && !design.is_protected(a))
      caps.push_back(aug.arcs[static_cast<std::size_t>(a)].capacity);
  std::sort(caps.begin(), caps.end(), std::greater<>());
  Capacity total = 0;
  for (std::size_t i = 0; i < caps.size() && static_cast<int>(i) < k; ++i) total += caps[i];
  return total;
}

inline std::vector<ArcId> initial_arcs_of(const AugmentedInstance& aug, const CutSet& cut) {
  std::vector<ArcId> out;
  for (ArcId a : cut.arcs)
    if (!aug.is_fictive(a)) out.push_back(a);
  return out;
}

/// Number of loss rows the cut contributes when fully enumerated.
inline std::int64_t loss_row_count(const AugmentedInstance& aug, const CutSet& cut) {
  const auto n = static_cast<std::int64_t>(initial_arcs_of(aug, cut).size());
  return binomial(n, std::min<std::int64_t>(aug.k(), n));
}

/// Selection and protection columns shared by the three masters.
struct MasterModel {
  milp::MilpModel model;
  std::vector<int> select;   // per augmented arc
  std::vector<int> protect;  // per augmented arc

  Design design_from(const std::vector<double>& values) const {
    Design d;
    for (int v : select) d.selected.push_back(values[static_cast<std::size_t>(v)] > 0.5 ? 1 : 0);
    for (int v : protect) d.protection.push_back(values[static_cast<std::size_t>(v)] > 0.5 ? 1 : 0);
    return d;
  }
};

namespace detail {

inline std::string arc_name(const AugmentedInstance& aug, const char* prefix, ArcId a) {
  const Arc& arc = aug.arcs[static_cast<std::size_t>(a)];
  return std::string(prefix) + "_" + std::to_string(aug.label(arc.tail)) + "_" + std::to_string(aug.label(arc.head));
}

// y and p for every arc; y fixed to 1 and p to 0 on fictive arcs; objective sum c*y;
// budget sum p <= k' over initial arcs; optionally p <= y.
inline MasterModel selection_core(const AugmentedInstance& aug, bool protection_within_selection) {
  MasterModel m;
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    int y = m.model.add_binary(arc_name(aug, "y", a));
    if (aug.is_fictive(a)) m.model.set_bounds(y, 1.0, 1.0);
    m.model.set_objective(y, aug.arcs[static_cast<std::size_t>(a)].cost);
    m.select.push_back(y);
  }
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    int p = m.model.add_binary(arc_name(aug, "p", a));
    if (aug.is_fictive(a)) m.model.set_bounds(p, 0.0, 0.0);
    m.protect.push_back(p);
  }
  std::vector<milp::Term> budget;
  for (ArcId a = 0; a < aug.num_initial; ++a) budget.push_back({m.protect[static_cast<std::size_t>(a)], 1.0});
  m.model.add_constraint(std::move(budget), milp::Sense::LessEqual, aug.k_protected(), "protection_budget");
  if (protection_within_selection)
    for (ArcId a = 0; a < aug.num_initial; ++a)
      m.model.add_constraint({{m.protect[static_cast<std::size_t>(a)], 1.0}, {m.select[static_cast<std::size_t>(a)], -1.0}},
                             milp::Sense::LessEqual, 0.0, arc_name(aug, "p_le_y", a));
  return m;
}

}  // namespace detail

// ---------------------------------------------------------------- cut-set master

/// A generated cut together with the failure subsets that define its loss rows.
struct CutRows {
  CutSet cut;
  bool enumerate_all = true;
  std::vector<std::vector<ArcId>> loss_subsets;  // used when enumerate_all is false
};

struct CutsetMasterOptions {
  /// Adds p <= y rows, a valid strengthening the cut-set model does not need.
  bool include_strengthening_rows = false;
  std::int64_t row_cap = 1'000'000;
};

struct CutsetMaster : MasterModel {
  std::vector<int> loss;  // one column per cut
};

inline CutsetMaster build_cutset_master(const AugmentedInstance& aug, const std::vector<CutRows>& cuts,
                                        const CutsetMasterOptions& options = {}) {
  CutsetMaster m;
  static_cast<MasterModel&>(m) = detail::selection_core(aug, options.include_strengthening_rows);
  const double demand = aug.demand();
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const CutRows& rows = cuts[c];
    const std::string tag = "cut" + std::to_string(c);
    int loss = m.model.add_continuous(0.0, milp::kInfinity, "loss_" + tag);
    m.loss.push_back(loss);

    std::vector<milp::Term> cover;
    for (ArcId a : rows.cut.arcs)
      cover.push_back({m.select[static_cast<std::size_t>(a)], static_cast<double>(aug.arcs[static_cast<std::size_t>(a)].capacity)});
    cover.push_back({loss, -1.0});
    m.model.add_constraint(std::move(cover), milp::Sense::GreaterEqual, demand, "cover_" + tag);

    auto add_loss_row = [&](const std::vector<ArcId>& subset) {
      std::vector<milp::Term> terms{{loss, 1.0}};
      for (ArcId a : subset) {
        const double u = static_cast<double>(aug.arcs[static_cast<std::size_t>(a)].capacity);
        terms.push_back({m.select[static_cast<std::size_t>(a)], -u});
        terms.push_back({m.protect[static_cast<std::size_t>(a)], u});
      }
      m.model.add_constraint(std::move(terms), milp::Sense::GreaterEqual, 0.0, "loss_" + tag);
    };
    if (rows.enumerate_all) {
      if (loss_row_count(aug, rows.cut) > options.row_cap)
        throw SizeGuardError("cut " + std::to_string(c) + " needs " + std::to_string(loss_row_count(aug, rows.cut)) +
                             " loss rows, above the cap of " + std::to_string(options.row_cap));
      const std::vector<ArcId> arcs = initial_arcs_of(aug, rows.cut);
      const int size = std::min<int>(aug.k(), static_cast<int>(arcs.size()));
      for_each_combination(static_cast<int>(arcs.size()), size, [&](std::span<const int> idx) {
        std::vector<ArcId> subset;
        for (int i : idx) subset.push_back(arcs[static_cast<std::size_t>(i)]);
        add_loss_row(subset);
        return true;
      });
    } else {
      for (const auto& subset : rows.loss_subsets) {
        for (ArcId a : subset)
          if (aug.is_fictive(a)) throw InputError("loss subsets cannot contain fictive arcs");
        add_loss_row(subset);
      }
    }
  }
  return m;
}

/// Failure subset of the cut attaining eval_loss at `design` (size min(k, available)).
inline std::vector<ArcId> worst_loss_subset(const AugmentedInstance& aug, const CutSet& cut, const Design& design) {
  std::vector<ArcId> arcs;
  for (ArcId a : cut.arcs)
    if (!aug.is_fictive(a) && design.is_selected(a) && !design.is_protected(a)) arcs.push_back(a);
  std::stable_sort(arcs.begin(), arcs.end(), [&](ArcId a, ArcId b) {
    return aug.arcs[static_cast<std::size_t>(a)].capacity > aug.arcs[static_cast<std::size_t>(b)].capacity;
  });
  if (static_cast<int>(arcs.size()) > aug.k()) arcs.resize(static_cast<std::size_t>(aug.k()));
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

// ------------------------------------------------------------------- flow master

struct FlowMaster : MasterModel {
  std::vector<std::vector<int>> flow;  // [scenario][arc]
};

inline void check_scenario(const AugmentedInstance& aug, const FailureScenario& f) {
  if (static_cast<int>(f.arcs.size()) != aug.k()) throw InputError("a failure scenario must contain exactly k arcs");
  for (std::size_t i = 0; i < f.arcs.size(); ++i) {
    ArcId a = f.arcs[i];
    if (a < 0 || a >= aug.num_arcs()) throw InputError("scenario arc out of range");
    if (aug.is_fictive(a)) throw InputError("a failure scenario cannot contain a fictive arc");
    if (i > 0 && f.arcs[i - 1] >= a) throw InputError("scenario arcs must be sorted and distinct");
  }
}

inline FlowMaster build_flow_master(const AugmentedInstance& aug, const std::vector<FailureScenario>& scenarios) {
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    check_scenario(aug, scenarios[s]);
    for (std::size_t t = 0; t < s; ++t)
      if (scenarios[t] == scenarios[s]) throw InputError("duplicated failure scenario");
  }
  FlowMaster m;
  static_cast<MasterModel&>(m) = detail::selection_core(aug, true);
  const double demand = aug.demand();
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    const std::string tag = "F" + std::to_string(s);
    std::vector<int> x;
    for (ArcId a = 0; a < aug.num_arcs(); ++a)
      x.push_back(m.model.add_continuous(0.0, milp::kInfinity, detail::arc_name(aug, "x", a) + "_" + tag));
    for (VertexId v = 0; v < aug.num_vertices(); ++v) {
      if (v == aug.root() || v == aug.sink) continue;
      std::vector<milp::Term> terms;
      for (ArcId a : aug.in_arcs[static_cast<std::size_t>(v)]) terms.push_back({x[static_cast<std::size_t>(a)], 1.0});
      for (ArcId a : aug.out_arcs[static_cast<std::size_t>(v)]) terms.push_back({x[static_cast<std::size_t>(a)], -1.0});
      m.model.add_constraint(std::move(terms), milp::Sense::Equal, 0.0, "balance_" + std::to_string(aug.label(v)) + "_" + tag);
    }
    std::vector<milp::Term> sink;
    for (ArcId a : aug.in_arcs[static_cast<std::size_t>(aug.sink)]) sink.push_back({x[static_cast<std::size_t>(a)], 1.0});
    m.model.add_constraint(std::move(sink), milp::Sense::Equal, demand, "demand_" + tag);
    for (ArcId a = 0; a < aug.num_arcs(); ++a) {
      const double u = static_cast<double>(aug.arcs[static_cast<std::size_t>(a)].capacity);
      m.model.add_constraint({{x[static_cast<std::size_t>(a)], 1.0}, {m.select[static_cast<std::size_t>(a)], -u}},
                             milp::Sense::LessEqual, 0.0, detail::arc_name(aug, "cap", a) + "_" + tag);
    }
    for (ArcId a : scenarios[s].arcs) {
      const double u = static_cast<double>(aug.arcs[static_cast<std::size_t>(a)].capacity);
      m.model.add_constraint({{x[static_cast<std::size_t>(a)], 1.0}, {m.protect[static_cast<std::size_t>(a)], -u}},
                             milp::Sense::LessEqual, 0.0, detail::arc_name(aug, "fail", a) + "_" + tag);
    }
    m.flow.push_back(std::move(x));
  }
  return m;
}

// ---------------------------------------------------------------- bilevel master

inline MasterModel build_bilevel_master(const AugmentedInstance& aug, const std::vector<ExtremePoint>& points) {
  MasterModel m = detail::selection_core(aug, true);
  const double demand = aug.demand();
  for (std::size_t h = 0; h < points.size(); ++h) {
    const ExtremePoint& pt = points[h];
    if (!satisfies_invariants(aug, pt)) throw InputError("extreme point " + std::to_string(h) + " violates its invariants");
    std::vector<milp::Term> terms;
    double constant = 0.0;
    for (ArcId a = 0; a < aug.num_arcs(); ++a) {
      auto i = static_cast<std::size_t>(a);
      const double u = static_cast<double>(aug.arcs[i].capacity);
      if (pt.lambda[i] != 0.0) terms.push_back({m.select[i], u * pt.lambda[i]});
      if (pt.gamma[i] != 0.0) terms.push_back({m.protect[i], u * pt.gamma[i]});
      constant += u * pt.gamma[i] - u * pt.linear[i];
    }
    m.model.add_constraint(std::move(terms), milp::Sense::GreaterEqual, demand - constant, "point" + std::to_string(h));
  }
  return m;
}

// --------------------------------------------------------------- auxiliary models

/// Variables of the min-cut dual polyhedron D: lambda, gamma in [0,1] per arc,
/// mu per vertex with mu_root = 1 and mu_sink = 0.
struct CutDualModel {
  milp::MilpModel model;
  std::vector<int> lambda;
  std::vector<int> gamma;
  std::vector<int> mu;
};

namespace detail {

inline CutDualModel cut_dual_core(const AugmentedInstance& aug, bool binary_mu) {
  CutDualModel m;
  for (ArcId a = 0; a < aug.num_arcs(); ++a) m.lambda.push_back(m.model.add_continuous(0.0, 1.0, arc_name(aug, "lam", a)));
  for (ArcId a = 0; a < aug.num_arcs(); ++a) m.gamma.push_back(m.model.add_continuous(0.0, 1.0, arc_name(aug, "gam", a)));
  for (VertexId v = 0; v < aug.num_vertices(); ++v) {
    int mu = m.model.add_variable(0.0, 1.0, binary_mu, "mu_" + std::to_string(aug.label(v)));
    if (v == aug.root()) m.model.set_bounds(mu, 1.0, 1.0);
    if (v == aug.sink) m.model.set_bounds(mu, 0.0, 0.0);
    m.mu.push_back(mu);
  }
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    auto i = static_cast<std::size_t>(a);
    const Arc& arc = aug.arcs[i];
    m.model.add_constraint({{m.lambda[i], 1.0},
                            {m.gamma[i], 1.0},
                            {m.mu[static_cast<std::size_t>(arc.tail)], -1.0},
                            {m.mu[static_cast<std::size_t>(arc.head)], 1.0}},
                           milp::Sense::GreaterEqual, 0.0, arc_name(aug, "dual", a));
  }
  return m;
}

}  // namespace detail

/// Single-level lower problem: attacker b in B plus the min-cut dual, with
/// b*gamma linearised through l.
struct InnerDualModel : CutDualModel {
  std::vector<int> attack;
  std::vector<int> linear;
};

inline InnerDualModel build_2lp(const AugmentedInstance& aug, const Design& design) {
  InnerDualModel m;
  static_cast<CutDualModel&>(m) = detail::cut_dual_core(aug, false);
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    int b = m.model.add_binary(detail::arc_name(aug, "b", a));
    if (aug.is_fictive(a)) m.model.set_bounds(b, 0.0, 0.0);
    m.attack.push_back(b);
  }
  for (ArcId a = 0; a < aug.num_arcs(); ++a) m.linear.push_back(m.model.add_continuous(0.0, 1.0, detail::arc_name(aug, "l", a)));
  std::vector<milp::Term> budget;
  for (int b : m.attack) budget.push_back({b, 1.0});
  m.model.add_constraint(std::move(budget), milp::Sense::LessEqual, aug.k(), "attack_budget");
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    auto i = static_cast<std::size_t>(a);
    m.model.add_constraint({{m.linear[i], 1.0}, {m.attack[i], -1.0}}, milp::Sense::LessEqual, 0.0);
    m.model.add_constraint({{m.linear[i], 1.0}, {m.gamma[i], -1.0}}, milp::Sense::LessEqual, 0.0);
    m.model.add_constraint({{m.linear[i], 1.0}, {m.gamma[i], -1.0}, {m.attack[i], -1.0}}, milp::Sense::GreaterEqual, -1.0);
    const double u = static_cast<double>(aug.arcs[i].capacity);
    m.model.set_objective(m.lambda[i], design.is_selected(a) ? u : 0.0);
    m.model.set_objective(m.gamma[i], u * (design.is_protected(a) ? 2.0 : 1.0));
    m.model.set_objective(m.linear[i], -u);
  }
  return m;
}

/// Reads an ExtremePoint out of a 2LP solution. Throws NonVertexSolution when
/// a coordinate is further than `tol` from {0, 1}.
inline ExtremePoint extract_point(const AugmentedInstance& aug, const InnerDualModel& m, const std::vector<double>& values,
                                  double tol = 1e-6) {
  auto binary = [&](int var) {
    double v = values[static_cast<std::size_t>(var)];
    double r = std::round(v);
    if (std::abs(v - r) > tol || (r != 0.0 && r != 1.0))
      throw NonVertexSolution("lower-level solution is not integral: " + m.model.variable(var).name + " = " + std::to_string(v));
    return r;
  };
  ExtremePoint pt;
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    auto i = static_cast<std::size_t>(a);
    pt.attack.push_back(binary(m.attack[i]) > 0.5 ? 1 : 0);
    pt.lambda.push_back(binary(m.lambda[i]));
    pt.gamma.push_back(binary(m.gamma[i]));
    pt.linear.push_back(binary(m.linear[i]));
  }
  for (VertexId v = 0; v < aug.num_vertices(); ++v) pt.mu.push_back(binary(m.mu[static_cast<std::size_t>(v)]));
  return pt;
}

/// Minimum number of arcs in a cut that k deletions make non-valid for `design`.
/// Infeasible when every cut survives, i.e. the design is survivable.
inline CutDualModel build_strengthening(const AugmentedInstance& aug, const Design& design, bool capacity_weighted_protection = true) {
  CutDualModel m = detail::cut_dual_core(aug, true);
  std::vector<milp::Term> residual;
  std::vector<milp::Term> deletions;
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    auto i = static_cast<std::size_t>(a);
    const double u = static_cast<double>(aug.arcs[i].capacity);
    if (design.is_selected(a)) residual.push_back({m.lambda[i], u});
    if (design.is_protected(a)) residual.push_back({m.gamma[i], capacity_weighted_protection ? u : 1.0});
    deletions.push_back({m.gamma[i], 1.0});
    if (aug.is_fictive(a)) m.model.set_bounds(m.gamma[i], 0.0, 0.0);
    m.model.set_objective(m.lambda[i], 1.0);
  }
  m.model.add_constraint(std::move(residual), milp::Sense::LessEqual, aug.demand() - 1.0, "non_valid");
  m.model.add_constraint(std::move(deletions), milp::Sense::LessEqual, aug.k(), "deletion_budget");
  return m;
}

/// Cut of minimum residual capacity once its (at most k) unprotected selected
/// arcs marked by gamma are deleted.
inline CutDualModel build_cutset_separation(const AugmentedInstance& aug, const Design& design) {
  CutDualModel m = detail::cut_dual_core(aug, true);
  std::vector<milp::Term> deletions;
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    auto i = static_cast<std::size_t>(a);
    const double u = static_cast<double>(aug.arcs[i].capacity);
    const double y = design.is_selected(a) ? 1.0 : 0.0;
    const double p = design.is_protected(a) ? 1.0 : 0.0;
    m.model.set_objective(m.lambda[i], u * y);
    m.model.set_objective(m.gamma[i], u * y * p);
    deletions.push_back({m.gamma[i], 1.0});
    if (aug.is_fictive(a)) m.model.set_bounds(m.gamma[i], 0.0, 0.0);
  }
  m.model.add_constraint(std::move(deletions), milp::Sense::LessEqual, aug.k(), "deletion_budget");
  return m;
}

/// Sink side {v : mu_v <= 0.5} of the cut encoded by a CutDualModel solution.
inline CutSet cut_from_mu(const AugmentedInstance& aug, const CutDualModel& m, const std::vector<double>& values) {
  std::vector<char> side(static_cast<std::size_t>(aug.num_vertices()), 0);
  for (VertexId v = 0; v < aug.num_vertices(); ++v)
    side[static_cast<std::size_t>(v)] = values[static_cast<std::size_t>(m.mu[static_cast<std::size_t>(v)])] <= 0.5 ? 1 : 0;
  return make_cut(aug, side);
}

/// Arc-flow LP of the defender for fixed selection, attack and protection:
/// maximise the flow entering the super-sink.
struct InnerFlowModel {
  milp::MilpModel model;
  std::vector<int> flow;
};

inline InnerFlowModel build_inner_max_flow(const AugmentedInstance& aug, const Design& design,
                                           const std::vector<std::uint8_t>& attack) {
  InnerFlowModel m;
  m.model.set_objective_sense(milp::ObjectiveSense::Maximize);
  for (ArcId a = 0; a < aug.num_arcs(); ++a) m.flow.push_back(m.model.add_continuous(0.0, milp::kInfinity, detail::arc_name(aug, "x", a)));
  for (VertexId v = 0; v < aug.num_vertices(); ++v) {
    if (v == aug.root() || v == aug.sink) continue;
    std::vector<milp::Term> terms;
    for (ArcId a : aug.in_arcs[static_cast<std::size_t>(v)]) terms.push_back({m.flow[static_cast<std::size_t>(a)], 1.0});
    for (ArcId a : aug.out_arcs[static_cast<std::size_t>(v)]) terms.push_back({m.flow[static_cast<std::size_t>(a)], -1.0});
    m.model.add_constraint(std::move(terms), milp::Sense::Equal, 0.0);
  }
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    auto i = static_cast<std::size_t>(a);
    const double u = static_cast<double>(aug.arcs[i].capacity);
    m.model.add_constraint({{m.flow[i], 1.0}}, milp::Sense::LessEqual, u * (design.is_selected(a) ? 1.0 : 0.0));
    if (!aug.is_fictive(a)) {
      double open = 1.0 - (attack[i] ? 1.0 : 0.0) + (design.is_protected(a) ? 1.0 : 0.0);
      m.model.add_constraint({{m.flow[i], 1.0}}, milp::Sense::LessEqual, u * open);
    }
  }
  for (ArcId a : aug.in_arcs[static_cast<std::size_t>(aug.sink)]) m.model.set_objective(m.flow[static_cast<std::size_t>(a)], 1.0);
  return m;
}

}  // namespace cprsnp

#endif
