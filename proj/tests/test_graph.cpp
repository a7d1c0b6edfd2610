#include <gtest/gtest.h>

#include <random>

#include "cprsnp/graph.hpp"
#include "cprsnp/combinatorics.hpp"
#include "oracles.hpp"

namespace cprsnp {
namespace {

TEST(Augment, AppendsOneFictiveArcPerTerminal) {
  Instance inst = testing::diamond();
  inst.labels = {1, 2, 3, 4};
  inst.terminals = {1, 2};
  inst.arcs.push_back(Arc{2, 3, 1.0, 1});
  AugmentedInstance aug = augment(inst);
  EXPECT_EQ(aug.num_initial, 4);
  EXPECT_EQ(aug.num_arcs(), 6);
  EXPECT_EQ(aug.sink, 4);
  EXPECT_EQ(aug.label(aug.sink), kSuperSinkLabel);
  EXPECT_EQ(aug.arcs[4], (Arc{1, 4, 0.0, 1}));
  EXPECT_EQ(aug.arcs[5], (Arc{2, 4, 0.0, 1}));
  EXPECT_TRUE(aug.is_fictive(4));
  EXPECT_FALSE(aug.is_fictive(3));
  EXPECT_EQ(aug.demand(), 2);
}

TEST(Augment, RejectsBrokenInstances) {
  Instance root_terminal = testing::diamond();
  root_terminal.terminals = {0};
  EXPECT_THROW(augment(root_terminal), InstanceError);

  Instance parallel = testing::diamond();
  parallel.arcs.push_back(Arc{0, 1, 3.0, 1});
  EXPECT_THROW(augment(parallel), InstanceError);

  Instance budgets = testing::diamond(2, 2);
  EXPECT_THROW(augment(budgets), InstanceError);

  Instance negative = testing::diamond();
  negative.arcs[0].cost = -1;
  EXPECT_THROW(augment(negative), InstanceError);

  Instance zero_label = testing::diamond();
  zero_label.labels[1] = 0;
  EXPECT_THROW(augment(zero_label), InstanceError);
}

TEST(Design, CanonicalizeForcesFictiveArcsAndNesting) {
  AugmentedInstance aug = augment(testing::diamond());
  Design d;
  d.selected = {1, 0, 0, 0};
  d.protection = {0, 1, 0, 1};
  Design c = canonicalize(aug, d);
  EXPECT_EQ(c.selected, (std::vector<std::uint8_t>{1, 0, 0, 1}));
  EXPECT_EQ(c.protection, (std::vector<std::uint8_t>{0, 0, 0, 0}));
  EXPECT_EQ(canonicalize(aug, c), c);
}

TEST(Design, CostIgnoresFictiveArcs) {
  AugmentedInstance aug = augment(testing::diamond());
  EXPECT_EQ(design_cost(aug, Design::full(aug)), 4.0);
  EXPECT_EQ(design_cost(aug, Design::empty(aug)), 0.0);
  Design d = Design::empty(aug);
  d.selected[1] = 1;
  d.protection[1] = 1;
  EXPECT_EQ(design_cost(aug, d), 2.0);
  EXPECT_EQ(protected_count(aug, d), 1);
}

TEST(ArcMask, FailedArcsLoseCapacityUnlessProtected) {
  AugmentedInstance aug = augment(testing::diamond());
  Design d = Design::full(aug);
  d.protection[1] = 1;
  std::vector<ArcId> failed{0, 1, 3};
  ArcMask m = ArcMask::of(aug, d, failed);
  EXPECT_EQ(m.capacity, (std::vector<Capacity>{0, 1, 1, 1}));
}

TEST(MaxFlow, Diamond) {
  AugmentedInstance aug = augment(testing::diamond());
  Design d = Design::full(aug);
  EXPECT_EQ(max_flow(aug, ArcMask::of(aug, d)).value, 1);
  std::vector<ArcId> both{0, 1};
  EXPECT_EQ(max_flow(aug, ArcMask::of(aug, d, both)).value, 0);
}

TEST(MaxFlow, MatchesBipartitionEnumeration) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    Instance inst = testing::random_instance(rng, {.min_nodes = 3, .max_nodes = 9, .max_terminals = 4, .max_arcs = 30});
    AugmentedInstance aug = augment(inst);
    Design d = testing::random_design(aug, rng);
    FlowResult f = max_flow(aug, ArcMask::of(aug, d));
    EXPECT_EQ(f.value, testing::brute_min_cut(aug, testing::design_capacity(aug, d))) << "trial " << trial;

    Capacity into_sink = 0;
    for (ArcId a = 0; a < aug.num_arcs(); ++a) {
      auto i = static_cast<std::size_t>(a);
      ASSERT_GE(f.arc_flow[i], 0);
      ASSERT_LE(f.arc_flow[i], d.selected[i] ? aug.arcs[i].capacity : 0);
      if (aug.arcs[i].head == aug.sink) into_sink += f.arc_flow[i];
    }
    EXPECT_EQ(into_sink, f.value);
    for (VertexId v = 0; v < aug.num_vertices(); ++v) {
      if (v == aug.root() || v == aug.sink) continue;
      Capacity balance = 0;
      for (ArcId a : aug.in_arcs[static_cast<std::size_t>(v)]) balance += f.arc_flow[static_cast<std::size_t>(a)];
      for (ArcId a : aug.out_arcs[static_cast<std::size_t>(v)]) balance -= f.arc_flow[static_cast<std::size_t>(a)];
      EXPECT_EQ(balance, 0);
    }
  }
}

TEST(MinCut, CapacityEqualsFlowAndSinkSideIsSmallest) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = testing::random_instance(rng, {.min_nodes = 3, .max_nodes = 8, .max_terminals = 3, .max_arcs = 20});
    AugmentedInstance aug = augment(inst);
    Design d = testing::random_design(aug, rng);
    ArcMask mask = ArcMask::of(aug, d);
    MinCut mc = min_cut(aug, mask);
    EXPECT_EQ(mc.capacity, max_flow(aug, mask).value);
    EXPECT_TRUE(std::binary_search(mc.cut.sink_side.begin(), mc.cut.sink_side.end(), aug.sink));
    EXPECT_FALSE(std::binary_search(mc.cut.sink_side.begin(), mc.cut.sink_side.end(), aug.root()));
  }
}

TEST(MakeCut, CollectsEnteringArcs) {
  AugmentedInstance aug = augment(testing::diamond());
  std::vector<char> side{0, 0, 1, 1};
  CutSet cut = make_cut(aug, side);
  EXPECT_EQ(cut.sink_side, (std::vector<VertexId>{2, 3}));
  EXPECT_EQ(cut.arcs, (std::vector<ArcId>{1, 2}));
}

TEST(Combinatorics, BinomialAndEnumeration) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(20, 3), 1140);
  EXPECT_EQ(binomial(4, 0), 1);
  EXPECT_EQ(binomial(3, 4), 0);
  std::vector<std::vector<int>> seen;
  for_each_combination(4, 2, [&](std::span<const int> c) {
    seen.emplace_back(c.begin(), c.end());
    return true;
  });
  EXPECT_EQ(seen, (std::vector<std::vector<int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  int visits = 0;
  for_each_combination(5, 0, [&](std::span<const int> c) {
    EXPECT_TRUE(c.empty());
    ++visits;
    return true;
  });
  EXPECT_EQ(visits, 1);
}

}  // namespace
}  // namespace cprsnp
