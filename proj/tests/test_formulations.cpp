#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cprsnp/combinatorics.hpp"
#include "cprsnp/formulations.hpp"
#include "cprsnp/milp/solver.hpp"
#include "oracles.hpp"

namespace cprsnp {
namespace {

CutSet root_cut(const AugmentedInstance& aug) {
  std::vector<char> side(static_cast<std::size_t>(aug.num_vertices()), 1);
  side[static_cast<std::size_t>(aug.root())] = 0;
  return make_cut(aug, side);
}

// Values of a cut-set master at (y, p) with every loss column at its least feasible value.
std::vector<double> cutset_point(const AugmentedInstance& aug, const CutsetMaster& m, const std::vector<CutRows>& cuts,
                                 const Design& d) {
  std::vector<double> x(static_cast<std::size_t>(m.model.num_variables()), 0.0);
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    x[static_cast<std::size_t>(m.select[static_cast<std::size_t>(a)])] = d.selected[static_cast<std::size_t>(a)];
    x[static_cast<std::size_t>(m.protect[static_cast<std::size_t>(a)])] = d.protection[static_cast<std::size_t>(a)];
  }
  for (std::size_t c = 0; c < cuts.size(); ++c)
    x[static_cast<std::size_t>(m.loss[c])] = static_cast<double>(eval_loss(aug, cuts[c].cut, d, aug.k()));
  return x;
}

std::vector<double> design_point(const AugmentedInstance& aug, const MasterModel& m, const Design& d) {
  std::vector<double> x(static_cast<std::size_t>(m.model.num_variables()), 0.0);
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    x[static_cast<std::size_t>(m.select[static_cast<std::size_t>(a)])] = d.selected[static_cast<std::size_t>(a)];
    x[static_cast<std::size_t>(m.protect[static_cast<std::size_t>(a)])] = d.protection[static_cast<std::size_t>(a)];
  }
  return x;
}

TEST(CutsetMaster, DiamondRootCut) {
  AugmentedInstance aug = augment(testing::diamond(1, 0));
  CutsetMaster m = build_cutset_master(aug, {CutRows{root_cut(aug), true, {}}});
  EXPECT_EQ(m.model.num_variables(), 2 * aug.num_arcs() + 1);
  // budget, cover, two loss rows
  EXPECT_EQ(m.model.num_constraints(), 4);
  auto r = milp::solve_mip(m.model);
  ASSERT_EQ(r.status, milp::Status::Optimal);
  EXPECT_EQ(r.objective, 3.0);
}

TEST(CutsetMaster, RowsAgreeWithLossEvaluation) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    AugmentedInstance aug = augment(testing::random_instance(rng));
    Design d = testing::random_design(aug, rng);
    MinCut mc = min_cut(aug, ArcMask::of(aug, d));
    std::vector<CutRows> cuts{CutRows{root_cut(aug), true, {}}, CutRows{mc.cut, true, {}}};
    CutsetMaster m = build_cutset_master(aug, cuts);
    std::vector<double> x = cutset_point(aug, m, cuts, d);
    bool covered = true;
    for (const auto& c : cuts)
      covered = covered && cut_capacity(c.cut, ArcMask::of(aug, d)) - eval_loss(aug, c.cut, d, aug.k()) >= aug.demand();
    EXPECT_EQ(m.model.max_violation(x) <= 1e-9, covered) << "trial " << trial;
  }
}

TEST(EvalLoss, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    AugmentedInstance aug = augment(testing::random_instance(rng));
    Design d = testing::random_design(aug, rng);
    CutSet cut = min_cut(aug, ArcMask::full(aug)).cut;
    std::vector<ArcId> arcs = initial_arcs_of(aug, cut);
    const int size = std::min<int>(aug.k(), static_cast<int>(arcs.size()));
    Capacity best = 0;
    for_each_combination(static_cast<int>(arcs.size()), size, [&](std::span<const int> idx) {
      Capacity total = 0;
      for (int i : idx) {
        ArcId a = arcs[static_cast<std::size_t>(i)];
        total += aug.arcs[static_cast<std::size_t>(a)].capacity * (d.is_selected(a) ? 1 : 0) * (d.is_protected(a) ? 0 : 1);
      }
      best = std::max(best, total);
      return true;
    });
    EXPECT_EQ(eval_loss(aug, cut, d, aug.k()), best);
    Capacity attained = 0;
    for (ArcId a : worst_loss_subset(aug, cut, d)) attained += aug.arcs[static_cast<std::size_t>(a)].capacity;
    EXPECT_EQ(attained, best);
  }
}

TEST(CutsetMaster, LazySubsetsAndGuards) {
  AugmentedInstance aug = augment(testing::diamond(1, 0));
  CutSet cut = root_cut(aug);
  CutsetMaster lazy = build_cutset_master(aug, {CutRows{cut, false, {{0}}}});
  EXPECT_EQ(lazy.model.num_constraints(), 3);
  CutsetMasterOptions capped;
  capped.row_cap = 1;
  EXPECT_THROW(build_cutset_master(aug, {CutRows{cut, true, {}}}, capped), SizeGuardError);
  EXPECT_THROW(build_cutset_master(aug, {CutRows{cut, false, {{3}}}}), InputError);
  CutsetMasterOptions nested;
  nested.include_strengthening_rows = true;
  EXPECT_EQ(build_cutset_master(aug, {CutRows{cut, true, {}}}, nested).model.num_constraints(), 4 + aug.num_initial);
}

TEST(FlowMaster, VariableCountFormula) {
  std::mt19937_64 rng(33);
  for (int arcs : {10, 20})
    for (int k : {1, 2, 3}) {
      GeneratorOptions g;
      g.nodes = 8;
      g.terminals = 3;
      g.arcs = arcs;
      g.k = k;
      g.seed = rng();
      AugmentedInstance aug = augment(generate(g));
      std::vector<FailureScenario> all;
      for_each_combination(aug.num_initial, k, [&](std::span<const int> idx) {
        all.push_back(FailureScenario{std::vector<ArcId>(idx.begin(), idx.end())});
        return true;
      });
      ASSERT_EQ(static_cast<std::int64_t>(all.size()), binomial(arcs, k));
      FlowMaster m = build_flow_master(aug, all);
      EXPECT_EQ(m.model.num_variables(), static_cast<int>(all.size()) * aug.num_arcs() + 2 * aug.num_arcs());
    }
}

TEST(FlowMaster, ScenarioChecks) {
  AugmentedInstance aug = augment(testing::diamond(1, 0));
  EXPECT_THROW(check_scenario(aug, FailureScenario{{0, 1}}), InputError);
  EXPECT_THROW(check_scenario(aug, FailureScenario{{3}}), InputError);
  EXPECT_THROW(check_scenario(aug, FailureScenario{{7}}), InputError);
  EXPECT_NO_THROW(check_scenario(aug, FailureScenario{{2}}));
  EXPECT_THROW(build_flow_master(aug, {FailureScenario{{0}}, FailureScenario{{0}}}), InputError);
}

TEST(FlowMaster, DiamondAllScenariosGivesOptimum) {
  AugmentedInstance aug = augment(testing::diamond(1, 0));
  FlowMaster m = build_flow_master(aug, {FailureScenario{{0}}, FailureScenario{{1}}, FailureScenario{{2}}});
  auto r = milp::solve_mip(m.model);
  ASSERT_EQ(r.status, milp::Status::Optimal);
  EXPECT_EQ(r.objective, 4.0);

  AugmentedInstance protectable = augment(testing::diamond(1, 1));
  FlowMaster p = build_flow_master(protectable, {FailureScenario{{0}}, FailureScenario{{1}}, FailureScenario{{2}}});
  auto rp = milp::solve_mip(p.model);
  ASSERT_EQ(rp.status, milp::Status::Optimal);
  EXPECT_EQ(rp.objective, 2.0);
}

TEST(InnerDual, OptimumIsWorstPostAttackFlow) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 120; ++trial) {
    AugmentedInstance aug = augment(testing::random_instance(rng));
    Design d = testing::random_design(aug, rng);
    InnerDualModel m = build_2lp(aug, d);
    auto r = milp::solve_mip(m.model);
    ASSERT_EQ(r.status, milp::Status::Optimal);
    EXPECT_EQ(std::llround(r.objective), testing::brute_worst_attack(aug, d)) << "trial " << trial;
    ExtremePoint pt = extract_point(aug, m, r.values);
    EXPECT_TRUE(satisfies_invariants(aug, pt));
    EXPECT_NEAR(evaluate_g(aug, d, pt), r.objective, 1e-9);
  }
}

TEST(InnerFlow, LpOptimumIsIntegralMaxFlow) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 120; ++trial) {
    AugmentedInstance aug = augment(testing::random_instance(rng, {.min_nodes = 4, .max_nodes = 10, .max_terminals = 4, .max_arcs = 30}));
    Design d = testing::random_design(aug, rng);
    std::vector<std::uint8_t> attack(static_cast<std::size_t>(aug.num_arcs()), 0);
    std::vector<ArcId> failed;
    for (ArcId a = 0; a < aug.num_initial; ++a)
      if (static_cast<int>(failed.size()) < aug.k() && detail::bounded(rng, 3) == 0) {
        attack[static_cast<std::size_t>(a)] = 1;
        failed.push_back(a);
      }
    InnerFlowModel m = build_inner_max_flow(aug, d, attack);
    auto r = milp::solve_lp(m.model);
    ASSERT_EQ(r.status, milp::Status::Optimal);
    for (double v : r.values) EXPECT_NEAR(v, std::round(v), 1e-6);
    EXPECT_EQ(std::llround(r.objective), max_flow(aug, ArcMask::of(aug, d, failed)).value);
  }
}

TEST(BilevelMaster, PointRowMatchesEvaluateG) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    AugmentedInstance aug = augment(testing::random_instance(rng));
    Design at = testing::random_design(aug, rng);
    InnerDualModel dual = build_2lp(aug, at);
    auto r = milp::solve_mip(dual.model);
    ASSERT_EQ(r.status, milp::Status::Optimal);
    ExtremePoint pt = extract_point(aug, dual, r.values);
    MasterModel m = build_bilevel_master(aug, {pt});
    EXPECT_EQ(m.model.num_constraints(), 2 + aug.num_initial);
    Design other = testing::random_design(aug, rng);
    bool holds = evaluate_g(aug, other, pt) >= aug.demand() - 1e-9;
    EXPECT_EQ(m.model.max_violation(design_point(aug, m, other)) <= 1e-9, holds);
  }
}

TEST(BilevelMaster, RejectsBrokenPoints) {
  AugmentedInstance aug = augment(testing::diamond(1, 0));
  InnerDualModel dual = build_2lp(aug, Design::full(aug));
  auto r = milp::solve_mip(dual.model);
  ExtremePoint pt = extract_point(aug, dual, r.values);
  ExtremePoint bad = pt;
  bad.mu[static_cast<std::size_t>(aug.sink)] = 1.0;
  EXPECT_THROW(build_bilevel_master(aug, {bad}), InputError);
  bad = pt;
  bad.attack.assign(bad.attack.size(), 1);
  EXPECT_THROW(build_bilevel_master(aug, {bad}), InputError);
}

TEST(EvaluateG, MonotoneInNestedDesigns) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    AugmentedInstance aug = augment(testing::random_instance(rng));
    ExtremePoint pt;
    for (ArcId a = 0; a < aug.num_arcs(); ++a) {
      pt.attack.push_back(0);
      pt.lambda.push_back(unit(rng));
      pt.gamma.push_back(unit(rng));
      pt.linear.push_back(unit(rng));
    }
    Design big = testing::random_design(aug, rng);
    Design small = big;
    for (ArcId a = 0; a < aug.num_initial; ++a) {
      auto i = static_cast<std::size_t>(a);
      if (detail::bounded(rng, 2)) small.selected[i] = 0;
      if (!small.selected[i] || detail::bounded(rng, 2)) small.protection[i] = 0;
    }
    EXPECT_GE(evaluate_g(aug, big, pt), evaluate_g(aug, small, pt) - 1e-12);
  }
}

TEST(Strengthening, InfeasibleExactlyForSurvivableDesigns) {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 100; ++trial) {
    AugmentedInstance aug = augment(testing::random_instance(rng));
    Design d = testing::random_design(aug, rng);
    auto r = milp::solve_mip(build_strengthening(aug, d).model);
    EXPECT_EQ(r.status == milp::Status::Infeasible, testing::brute_worst_attack(aug, d) >= aug.demand()) << "trial " << trial;
  }
}

TEST(CutsetSeparationModel, CutFromMuHasMinimumResidual) {
  std::mt19937_64 rng(39);
  for (int trial = 0; trial < 100; ++trial) {
    AugmentedInstance aug = augment(testing::random_instance(rng));
    Design d = testing::random_design(aug, rng);
    CutDualModel m = build_cutset_separation(aug, d);
    auto r = milp::solve_mip(m.model);
    ASSERT_EQ(r.status, milp::Status::Optimal);
    Capacity worst = testing::brute_worst_attack(aug, d);
    EXPECT_EQ(std::llround(r.objective), worst);
    CutSet cut = cut_from_mu(aug, m, r.values);
    EXPECT_EQ(cut_capacity(cut, ArcMask::of(aug, d)) - eval_loss(aug, cut, d, aug.k()), worst) << "trial " << trial;
  }
}

}  // namespace
}  // namespace cprsnp
