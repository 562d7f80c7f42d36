#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cactusdom/block_cut_tree.hpp"
#include "cactusdom/graph.hpp"

namespace cactusdom {

enum class GameVariant { EGC, EDN, EDE };

inline const char* to_string(GameVariant v) {
  switch (v) {
    case GameVariant::EGC: return "egc";
    case GameVariant::EDN: return "edn";
    case GameVariant::EDE: return "ede";
  }
  return "?";
}

inline GameVariant parse_variant(const std::string& s) {
  if (s == "egc" || s == "EGC") return GameVariant::EGC;
  if (s == "edn" || s == "EDN") return GameVariant::EDN;
  if (s == "ede" || s == "EDE") return GameVariant::EDE;
  throw std::invalid_argument("unknown variant '" + s + "' (expected egc|edn|ede)");
}

// Guard positions in canonical (sorted) form. Repeated vertices are only
// meaningful in the EGC game.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<Vertex> positions) : positions_(std::move(positions)) {
    std::sort(positions_.begin(), positions_.end());
  }

  const std::vector<Vertex>& positions() const { return positions_; }
  std::size_t order() const { return positions_.size(); }
  bool contains(Vertex v) const {
    return std::binary_search(positions_.begin(), positions_.end(), v);
  }
  bool has_duplicates() const {
    return std::adjacent_find(positions_.begin(), positions_.end()) != positions_.end();
  }
  auto begin() const { return positions_.begin(); }
  auto end() const { return positions_.end(); }

  bool operator==(const Configuration&) const = default;
  bool operator<(const Configuration& o) const { return positions_ < o.positions_; }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < positions_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(positions_[i]);
    }
    return s + "}";
  }

 private:
  std::vector<Vertex> positions_;
};

enum class AttackType { AttackVertex, EvictVertex, EvictEdge };

struct Attack {
  AttackType type = AttackType::AttackVertex;
  Vertex v = 0;
  Vertex u = -1;  // second endpoint for EvictEdge, normalized so u > v

  static Attack vertex(Vertex v) { return {AttackType::AttackVertex, v, -1}; }
  static Attack evict_vertex(Vertex v) { return {AttackType::EvictVertex, v, -1}; }
  static Attack evict_edge(Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return {AttackType::EvictEdge, a, b};
  }

  bool is_eviction() const { return type != AttackType::AttackVertex; }
  bool touches(Vertex x) const { return v == x || (type == AttackType::EvictEdge && u == x); }

  bool operator==(const Attack&) const = default;

  std::string str() const {
    switch (type) {
      case AttackType::AttackVertex: return "attack " + std::to_string(v);
      case AttackType::EvictVertex: return "evictv " + std::to_string(v);
      case AttackType::EvictEdge: return "evicte " + std::to_string(v) + " " + std::to_string(u);
    }
    return "?";
  }
};

// Demand of the attack on the configuration answered to it.
inline bool satisfies(const Configuration& c, const Attack& a) {
  switch (a.type) {
    case AttackType::AttackVertex: return c.contains(a.v);
    case AttackType::EvictVertex: return !c.contains(a.v);
    case AttackType::EvictEdge: return !c.contains(a.v) && !c.contains(a.u);
  }
  return false;
}

inline bool is_dominating(const Graph& g, const std::vector<Vertex>& set) {
  std::vector<char> dom(g.n(), 0);
  for (Vertex v : set) {
    dom[v] = 1;
    for (Vertex w : g.neighbors(v)) dom[w] = 1;
  }
  return std::all_of(dom.begin(), dom.end(), [](char c) { return c != 0; });
}

inline bool is_dominating(const Graph& g, const Configuration& c) {
  return is_dominating(g, c.positions());
}

// Edges lying on some cycle: exactly the edges inside blocks with 3+ vertices.
inline std::vector<Edge> cycle_edges(const Graph& g, const BlockCutTree& bc) {
  std::vector<Edge> out;
  for (const auto& b : bc.blocks) {
    if (b.size() < 3) continue;
    for (Vertex u : b.members)
      for (Vertex w : g.neighbors(u))
        if (u < w && std::binary_search(b.members.begin(), b.members.end(), w))
          out.emplace_back(u, w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Edge> cycle_edges(const Graph& g) { return cycle_edges(g, block_cut_tree(g)); }

// Attacks the opponent may pose against `order` guards. An eviction is only
// posed when some configuration of that order can honour it, i.e. it leaves at
// least `order` free vertices (this only bites when guards fill the graph,
// e.g. the one-vertex graph).
inline std::vector<Attack> applicable_attacks(const Graph& g, GameVariant variant,
                                              std::size_t order,
                                              const std::vector<Edge>& cyc_edges) {
  std::vector<Attack> out;
  for (Vertex v = 0; v < g.n(); ++v) out.push_back(Attack::vertex(v));
  if (variant != GameVariant::EDE) return out;
  const auto n = static_cast<std::size_t>(g.n());
  if (order + 1 <= n)
    for (Vertex v = 0; v < g.n(); ++v) out.push_back(Attack::evict_vertex(v));
  if (order + 2 <= n)
    for (auto [a, b] : cyc_edges) out.push_back(Attack::evict_edge(a, b));
  return out;
}

inline std::vector<Attack> applicable_attacks(const Graph& g, GameVariant variant,
                                              std::size_t order) {
  return applicable_attacks(g, variant, order,
                            variant == GameVariant::EDE ? cycle_edges(g) : std::vector<Edge>{});
}

namespace detail {

// Kuhn's augmenting paths on a dense boolean bipartite matrix.
class BipartiteMatcher {
 public:
  BipartiteMatcher(std::size_t left, std::size_t right)
      : left_(left), right_(right), adj_(left * right, 0) {}

  void allow(std::size_t l, std::size_t r) { adj_[l * right_ + r] = 1; }
  void forbid(std::size_t l, std::size_t r) { adj_[l * right_ + r] = 0; }
  bool allowed(std::size_t l, std::size_t r) const { return adj_[l * right_ + r] != 0; }

  // Size of a maximum matching over the left vertices not in `skip_left`
  // and right vertices not in `skip_right`.
  std::size_t max_matching(const std::vector<char>& skip_left = {},
                           const std::vector<char>& skip_right = {}) {
    match_right_.assign(right_, -1);
    std::size_t size = 0;
    for (std::size_t l = 0; l < left_; ++l) {
      if (!skip_left.empty() && skip_left[l]) continue;
      seen_.assign(right_, 0);
      if (augment(l, skip_right)) ++size;
    }
    return size;
  }

  const std::vector<long>& match_right() const { return match_right_; }

 private:
  bool augment(std::size_t l, const std::vector<char>& skip_right) {
    for (std::size_t r = 0; r < right_; ++r) {
      if (!allowed(l, r) || seen_[r]) continue;
      if (!skip_right.empty() && skip_right[r]) continue;
      seen_[r] = 1;
      if (match_right_[r] < 0 || augment(static_cast<std::size_t>(match_right_[r]), skip_right)) {
        match_right_[r] = static_cast<long>(l);
        return true;
      }
    }
    return false;
  }

  std::size_t left_, right_;
  std::vector<char> adj_;
  std::vector<long> match_right_;
  std::vector<char> seen_;
};

inline BipartiteMatcher move_graph(const Graph& g, const std::vector<Vertex>& from,
                                   const std::vector<Vertex>& to) {
  BipartiteMatcher bm(from.size(), to.size());
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = 0; j < to.size(); ++j)
      if (from[i] == to[j] || g.adjacent(from[i], to[j])) bm.allow(i, j);
  return bm;
}

}  // namespace detail

// Whether every guard of `a` can take one step (or stay) so that together they
// occupy exactly `b`: a perfect matching inside closed neighborhoods.
inline bool traversable(const Graph& g, const Configuration& a, const Configuration& b) {
  if (a.order() != b.order()) throw std::invalid_argument("configurations differ in order");
  auto bm = detail::move_graph(g, a.positions(), b.positions());
  return bm.max_matching() == a.order();
}

// Lexicographically smallest perfect matching of guard moves (from, to), or
// nothing when the configurations are not traversable.
inline std::optional<std::vector<Edge>> movement_pairs(const Graph& g, const Configuration& a,
                                                       const Configuration& b) {
  if (a.order() != b.order()) throw std::invalid_argument("configurations differ in order");
  const auto& from = a.positions();
  const auto& to = b.positions();
  auto bm = detail::move_graph(g, from, to);
  const std::size_t k = from.size();
  if (bm.max_matching() != k) return std::nullopt;
  std::vector<char> done_left(k, 0), used_right(k, 0);
  std::vector<Edge> moves;
  for (std::size_t i = 0; i < k; ++i) {
    done_left[i] = 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (used_right[j] || !bm.allowed(i, j)) continue;
      used_right[j] = 1;
      if (bm.max_matching(done_left, used_right) == k - i - 1) {
        moves.emplace_back(from[i], to[j]);
        break;
      }
      used_right[j] = 0;
    }
  }
  return moves;
}

}  // namespace cactusdom
