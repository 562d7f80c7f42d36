#include <gtest/gtest.h>

#include "cactusdom/oracle.hpp"

using namespace cactusdom;

namespace {

Graph from(Vertex n, std::vector<Edge> e) { return Graph::from_edges(n, std::move(e)); }

struct Fixture {
  const char* name;
  Graph g;
  int egc, edn, ede;
};

// values produced by the exhaustive solver, frozen
std::vector<Fixture> fixtures() {
  return {
      {"P4", graphs::path(4), 2, 2, 2},
      {"P5", graphs::path(5), 3, 3, 3},
      {"P6", graphs::path(6), 3, 3, 3},
      {"K13", graphs::star(3), 2, 2, 3},
      {"K14", graphs::star(4), 2, 2, 4},
      {"two C4 sharing a vertex", from(7, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 5}, {5, 6}, {6, 0}}), 3, 3, 3},
      {"C5 with pendant", from(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}}), 3, 3, 3},
      {"triangles joined by a bridge", from(6, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 3}}), 2, 2, 2},
      {"C6 with three leaves", from(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {1, 6}, {3, 7}, {5, 8}}), 4, 4, 4},
  };
}

}  // namespace

TEST(Oracle, FrozenValues) {
  for (const auto& f : fixtures()) {
    SCOPED_TRACE(f.name);
    EXPECT_EQ(exact_number(f.g, GameVariant::EGC), f.egc);
    EXPECT_EQ(exact_number(f.g, GameVariant::EDN), f.edn);
    EXPECT_EQ(exact_number(f.g, GameVariant::EDE), f.ede);
  }
}

TEST(Oracle, DominationNumber) {
  EXPECT_EQ(domination_number(graphs::cycle(7)), 3);
  EXPECT_EQ(domination_number(graphs::star(5)), 1);
  EXPECT_EQ(domination_number(graphs::bull()), 2);
  EXPECT_EQ(domination_number(Graph::from_edges(1, {})), 1);
}

TEST(Oracle, ElementaryGraphs) {
  EXPECT_EQ(exact_number(Graph::from_edges(1, {}), GameVariant::EDE), 1);
  EXPECT_EQ(exact_number(graphs::path(2), GameVariant::EDE), 1);
  EXPECT_EQ(exact_number(graphs::path(3), GameVariant::EDN), 2);
  EXPECT_EQ(exact_number(graphs::three_pan(), GameVariant::EDE), 2);
  EXPECT_EQ(exact_number(graphs::bull(), GameVariant::EGC), 3);
}

TEST(Oracle, CompleteGraphNeedsOneGuard) {
  EXPECT_EQ(exact_number(graphs::complete(5), GameVariant::EDN), 1);
}

TEST(Oracle, SafetyFailsBelowTheValue) {
  EXPECT_FALSE(solve_safety(graphs::cycle(7), 2, GameVariant::EDN).has_value());
  EXPECT_TRUE(solve_safety(graphs::cycle(7), 3, GameVariant::EDN).has_value());
  EXPECT_THROW(solve_safety(graphs::cycle(7), 0, GameVariant::EDN), std::invalid_argument);
}

TEST(Oracle, WitnessIsClosed) {
  for (auto v : {GameVariant::EGC, GameVariant::EDN, GameVariant::EDE}) {
    const auto r = exact_number_with_witness(graphs::bull(), v);
    EXPECT_EQ(r.value, 3);
    EXPECT_TRUE(validate_witness(graphs::bull(), r.witness).empty());
    EXPECT_FALSE(r.witness.configurations.empty());
  }
}

TEST(Oracle, WitnessIndexLookup) {
  const auto r = exact_number_with_witness(graphs::cycle(6), GameVariant::EDN);
  ASSERT_EQ(r.value, 2);
  EXPECT_TRUE(r.witness.index_of(Configuration({0, 3})).has_value());
  EXPECT_FALSE(r.witness.index_of(Configuration({0, 1})).has_value());
}

TEST(Oracle, MultisetRegionOnlyForGuardConfigurations) {
  const auto egc = exact_number_with_witness(graphs::path(3), GameVariant::EGC);
  bool any_dup = false;
  for (const auto& c : egc.witness.configurations) any_dup = any_dup || c.has_duplicates();
  EXPECT_TRUE(any_dup);
  const auto edn = exact_number_with_witness(graphs::path(3), GameVariant::EDN);
  for (const auto& c : edn.witness.configurations) EXPECT_FALSE(c.has_duplicates());
}

TEST(Oracle, BudgetIsEnforced) {
  OracleLimits tight;
  tight.max_pairs = 100;
  EXPECT_THROW(exact_number(graphs::cycle(12), GameVariant::EDE, tight), OracleBudgetExceeded);
}

TEST(Oracle, MaxOrderGivesUp) {
  EXPECT_THROW(exact_number_with_witness(graphs::cycle(9), GameVariant::EDN, {}, 2), OracleBudgetExceeded);
}
