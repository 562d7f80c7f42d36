#include <gtest/gtest.h>

#include "cactusdom/game.hpp"

using namespace cactusdom;

TEST(Game, VariantNames) {
  EXPECT_EQ(parse_variant("ede"), GameVariant::EDE);
  EXPECT_EQ(parse_variant("EGC"), GameVariant::EGC);
  EXPECT_STREQ(to_string(GameVariant::EDN), "edn");
  EXPECT_THROW(parse_variant("xyz"), std::invalid_argument);
}

TEST(Game, Satisfaction) {
  const Configuration c({1, 4});
  EXPECT_TRUE(satisfies(c, Attack::vertex(1)));
  EXPECT_FALSE(satisfies(c, Attack::vertex(2)));
  EXPECT_TRUE(satisfies(c, Attack::evict_vertex(2)));
  EXPECT_FALSE(satisfies(c, Attack::evict_vertex(4)));
  EXPECT_TRUE(satisfies(c, Attack::evict_edge(2, 3)));
  EXPECT_FALSE(satisfies(c, Attack::evict_edge(0, 1)));
}

TEST(Game, EvictEdgeIsNormalized) {
  const auto a = Attack::evict_edge(5, 2);
  EXPECT_EQ(a.v, 2);
  EXPECT_EQ(a.u, 5);
  EXPECT_EQ(a.str(), "evicte 2 5");
}

TEST(Game, Domination) {
  const auto c6 = graphs::cycle(6);
  EXPECT_TRUE(is_dominating(c6, Configuration({0, 3})));
  EXPECT_FALSE(is_dominating(c6, Configuration({0, 1})));
}

TEST(Game, TraversabilityNeedsPerfectMatching) {
  const auto p3 = graphs::path(3);
  EXPECT_TRUE(traversable(p3, Configuration({0, 1}), Configuration({1, 2})));
  EXPECT_TRUE(traversable(p3, Configuration({0, 2}), Configuration({1, 2})));
  const auto star = graphs::star(3);
  // leaf 3 is reachable only from the center or itself
  EXPECT_FALSE(traversable(star, Configuration({1, 2}), Configuration({1, 3})));
  // multiset targets: both leaves move onto the center
  EXPECT_TRUE(traversable(star, Configuration({1, 2}), Configuration({0, 0})));
  EXPECT_FALSE(traversable(graphs::path(4), Configuration({0, 1}), Configuration({2, 3})));
}

TEST(Game, MovementPairs) {
  const auto c6 = graphs::cycle(6);
  const auto mv = movement_pairs(c6, Configuration({0, 3}), Configuration({1, 4}));
  ASSERT_TRUE(mv.has_value());
  EXPECT_EQ(mv->size(), 2u);
  for (auto [from, to] : *mv) EXPECT_TRUE(from == to || c6.adjacent(from, to));
  EXPECT_TRUE(movement_pairs(c6, Configuration({0, 3}), Configuration({2, 5})).has_value());
  EXPECT_FALSE(movement_pairs(c6, Configuration({0, 3}), Configuration({0, 1})).has_value());
}

TEST(Game, CycleEdgesOnlyInCycles) {
  const auto pan = graphs::three_pan();
  EXPECT_EQ(cycle_edges(pan), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_TRUE(cycle_edges(graphs::path(5)).empty());
}

TEST(Game, ApplicableAttacks) {
  const auto c4 = graphs::cycle(4);
  EXPECT_EQ(applicable_attacks(c4, GameVariant::EDN, 2).size(), 4u);
  // 4 vertex attacks + 4 vertex evictions + 4 edge evictions
  EXPECT_EQ(applicable_attacks(c4, GameVariant::EDE, 2).size(), 12u);
  // order 3 leaves one free vertex: no edge eviction
  EXPECT_EQ(applicable_attacks(c4, GameVariant::EDE, 3).size(), 8u);
  EXPECT_EQ(applicable_attacks(Graph::from_edges(1, {}), GameVariant::EDE, 1).size(), 1u);
}
