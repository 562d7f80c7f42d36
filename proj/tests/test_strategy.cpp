#include <gtest/gtest.h>

#include "cactusdom/generator.hpp"
#include "cactusdom/oracle.hpp"
#include "cactusdom/strategy.hpp"

using namespace cactusdom;

TEST(Strategy, CycleRotation) {
  auto e = synthesize(graphs::cycle(6));
  EXPECT_EQ(e.current(), Configuration({0, 3}));
  e.respond(Attack::vertex(1));
  EXPECT_EQ(e.current(), Configuration({1, 4}));
  // already satisfied: nobody moves
  e.respond(Attack::vertex(4));
  EXPECT_EQ(e.current(), Configuration({1, 4}));
}

TEST(Strategy, CycleEdgeEviction) {
  auto e = synthesize(graphs::cycle(6));
  e.respond(Attack::evict_edge(0, 1));
  EXPECT_FALSE(e.current().contains(0));
  EXPECT_FALSE(e.current().contains(1));
  EXPECT_TRUE(is_dominating(e.graph(), e.current()));
}

TEST(Strategy, GuardCountEqualsMeden) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GeneratorSpec s;
    s.n = 40;
    s.seed = seed;
    const auto g = generate(s);
    EXPECT_EQ(synthesize(g).guard_count(), meden_christmas_cactus(g).guards);
  }
}

TEST(Strategy, RandomAttacksOnC9) {
  const auto r = verify_strategy(synthesize(graphs::cycle(9)), 100, 50, 1);
  EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
  EXPECT_EQ(r.attacks, 5000u);
}

TEST(Strategy, BullExhaustiveDepthSix) {
  const auto r = explore_strategy(synthesize(graphs::bull()), 6);
  EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
}

TEST(Strategy, ElementaryTablesAreClosed) {
  for (const auto& g : {Graph::from_edges(1, {}), graphs::path(2), graphs::path(3), graphs::three_pan(), graphs::bull()}) {
    const auto h = detail::with_identity_labels(g);
    const auto root = detail::elementary_engine(h, *is_elementary(h));
    const auto* t = dynamic_cast<const TableEngine*>(root.get());
    ASSERT_NE(t, nullptr);
    EXPECT_TRUE(table_gaps(g, t->table()).empty());
    // every table entry lies in the solver's winning region
    const auto w = exact_number_with_witness(g, GameVariant::EDE).witness;
    for (const auto& c : t->table()) EXPECT_TRUE(w.index_of(Configuration(c)).has_value());
  }
}

TEST(Strategy, ZeroTrialsIsEmpty) {
  const auto r = verify_strategy(synthesize(graphs::bull()), 0, 100, 1);
  EXPECT_EQ(r.trials, 0u);
  EXPECT_EQ(r.attacks, 0u);
  EXPECT_TRUE(r.ok());
}

TEST(Strategy, Deterministic) {
  GeneratorSpec s;
  s.n = 25;
  s.seed = 9;
  const auto g = generate(s);
  auto a = synthesize(g), b = synthesize(g);
  const auto attacks = applicable_attacks(g, GameVariant::EDE, a.guard_count(), a.cycle_edge_list());
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    const auto& atk = attacks[rng() % attacks.size()];
    EXPECT_EQ(a.respond(atk), b.respond(atk));
  }
}

TEST(Strategy, CopiesAreIndependent) {
  auto a = synthesize(graphs::cycle(7));
  DefenderEngine b = a;
  a.respond(Attack::vertex(2));
  EXPECT_NE(a.current(), b.current());
  EXPECT_EQ(b.current(), synthesize(graphs::cycle(7)).current());
}

TEST(Strategy, InapplicableAttacks) {
  auto e = synthesize(graphs::three_pan());
  EXPECT_FALSE(e.inapplicable_reason(Attack::vertex(9)).empty());
  EXPECT_FALSE(e.inapplicable_reason(Attack::evict_edge(1, 3)).empty());  // bridge
  EXPECT_THROW(e.respond(Attack::vertex(-1)), std::invalid_argument);
  EXPECT_TRUE(e.inapplicable_reason(Attack::evict_edge(0, 1)).empty());
  const auto edn = e.with_variant(GameVariant::EDN);
  EXPECT_FALSE(edn.inapplicable_reason(Attack::evict_vertex(0)).empty());
  auto k1 = synthesize(Graph::from_edges(1, {}));
  EXPECT_FALSE(k1.inapplicable_reason(Attack::evict_vertex(0)).empty());
}

TEST(Strategy, RejectsOtherClasses) {
  EXPECT_THROW(synthesize(graphs::star(3)), GraphError);
}

TEST(Strategy, TraceMustMatchGraph) {
  const auto t = meden_christmas_cactus(graphs::cycle(5)).trace;
  EXPECT_THROW(synthesize(graphs::cycle(6), t), SynthesisError);
}

TEST(Strategy, InvariantsHoldAlongPlay) {
  GeneratorSpec s;
  s.n = 60;
  s.seed = 11;
  const auto g = generate(s);
  auto e = synthesize(g);
  const auto attacks = applicable_attacks(g, GameVariant::EDE, e.guard_count(), e.cycle_edge_list());
  std::mt19937_64 rng(2);
  for (int i = 0; i < 2000; ++i) {
    e.respond(attacks[rng() % attacks.size()]);
    ASSERT_TRUE(e.invariant_violations().empty()) << e.invariant_violations().front();
  }
}

TEST(Strategy, OracleEngine) {
  auto e = oracle_engine(graphs::cycle(7), GameVariant::EDN);
  EXPECT_EQ(e.guard_count(), 3);
  const auto r = verify_strategy(e, 50, 50, 3);
  EXPECT_TRUE(r.ok());
}

TEST(Strategy, DescribeNamesGadgets) {
  const auto j = synthesize(graphs::bull()).describe();
  EXPECT_EQ(j["gadget"], "table");
  EXPECT_EQ(j["guards"], 3);
}

TEST(Strategy, SmallCorpusSurvives) {
  for (const auto& g : enumerate_christmas_cacti(8)) {
    const auto r = verify_strategy(synthesize(g), 20, 60, 7);
    EXPECT_TRUE(r.ok()) << to_edge_list(g) << (r.violations.empty() ? "" : r.violations.front());
  }
}
