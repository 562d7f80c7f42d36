#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "cactusdom/block_cut_tree.hpp"
#include "cactusdom/graph.hpp"

namespace cactusdom {

struct GeneratorSpec {
  Vertex n = 1;
  double cycle_ratio = 0.5;
  int max_cycle = 6;
  bool christmas = true;
  std::uint64_t seed = 0;
};

// Random connected cactus grown by attaching edge or cycle blocks at eligible
// vertices (in the Christmas case: vertices lying in at most one block).
inline Graph generate(const GeneratorSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("generator: n must be at least 1");
  if (spec.cycle_ratio < 0.0 || spec.cycle_ratio > 1.0)
    throw std::invalid_argument("generator: cycle_ratio must lie in [0,1]");
  if (spec.cycle_ratio > 0.0 && spec.max_cycle < 3)
    throw std::invalid_argument("generator: max_cycle must be at least 3 when cycles are requested");

  std::mt19937_64 rng(spec.seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(spec.n) * 2);
  std::vector<std::uint8_t> blocks(spec.n, 0);
  std::vector<Vertex> eligible{0};
  std::vector<std::int64_t> where(spec.n, -1);
  where[0] = 0;
  auto drop = [&](Vertex v) {
    const auto i = where[v];
    where[eligible.back()] = i;
    std::swap(eligible[i], eligible.back());
    eligible.pop_back();
    where[v] = -1;
  };
  auto add_new = [&](Vertex v) {
    where[v] = static_cast<std::int64_t>(eligible.size());
    eligible.push_back(v);
    blocks[v] = 1;
  };

  Vertex count = 1;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  while (count < spec.n) {
    std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
    const Vertex a = eligible[pick(rng)];
    const Vertex remaining = spec.n - count;
    const bool cycle = remaining >= 2 && spec.max_cycle >= 3 && coin(rng) < spec.cycle_ratio;
    if (cycle) {
      const int hi = std::min<int>(spec.max_cycle, remaining + 1);
      const int len = std::uniform_int_distribution<int>(3, hi)(rng);
      Vertex prev = a;
      for (int i = 1; i < len; ++i) {
        const Vertex w = count++;
        edges.emplace_back(prev, w);
        add_new(w);
        prev = w;
      }
      edges.emplace_back(prev, a);
    } else {
      const Vertex w = count++;
      edges.emplace_back(a, w);
      add_new(w);
    }
    if (blocks[a] < 255) ++blocks[a];
    if (spec.christmas && blocks[a] >= 2) drop(a);
  }
  return Graph::from_edges(spec.n, std::move(edges));
}

// Random connected graph: random spanning tree plus each remaining pair with
// probability p.
inline Graph random_connected_graph(Vertex n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  std::set<Edge> have;
  for (Vertex v = 1; v < n; ++v) {
    const Vertex u = std::uniform_int_distribution<Vertex>(0, v - 1)(rng);
    edges.emplace_back(u, v);
    have.emplace(u, v);
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!have.count({u, v}) && coin(rng) < p) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

// Canonical edge bitmask (n <= 11) under vertex permutations that keep the
// degree-sorted order; equal for isomorphic graphs.
inline std::uint64_t canonical_form(const Graph& g) {
  const Vertex n = g.n();
  if (n > 11) throw std::invalid_argument("canonical_form supports n <= 11");
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
  std::vector<std::pair<int, int>> classes;  // [begin, end) in `order`
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && g.degree(order[j]) == g.degree(order[i])) ++j;
    classes.emplace_back(i, j);
    i = j;
  }
  auto bit = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    return j * (j - 1) / 2 + i;
  };
  const auto edges = g.edges();
  std::uint64_t best = UINT64_MAX;
  std::vector<int> pos(n);
  auto rec = [&](auto&& self, std::size_t c) -> void {
    if (c == classes.size()) {
      for (int i = 0; i < n; ++i) pos[order[i]] = i;
      std::uint64_t mask = 0;
      for (auto [u, v] : edges) mask |= std::uint64_t{1} << bit(pos[u], pos[v]);
      best = std::min(best, mask);
      return;
    }
    auto [b, e] = classes[c];
    std::sort(order.begin() + b, order.begin() + e);
    do self(self, c + 1);
    while (std::next_permutation(order.begin() + b, order.begin() + e));
  };
  rec(rec, 0);
  return best | (static_cast<std::uint64_t>(n) << 56);
}

// Every connected Christmas cactus with at most `max_n` vertices, one per
// isomorphism class, ordered by vertex count.
inline std::vector<Graph> enumerate_christmas_cacti(Vertex max_n) {
  std::vector<Graph> out;
  if (max_n < 1) return out;
  std::vector<std::vector<Graph>> by_size(max_n + 1);
  std::vector<std::set<std::uint64_t>> seen(max_n + 1);
  by_size[1].push_back(Graph::from_edges(1, {}));
  for (Vertex k = 1; k <= max_n; ++k) {
    for (const Graph& g : by_size[k]) {
      const auto bc = block_cut_tree(g);
      const auto edges = g.edges();
      for (Vertex a = 0; a < k; ++a) {
        if (bc.blocks_per_vertex[a] >= 2) continue;
        // attach an edge or a cycle of length len at a
        for (int len = 2; k + len - 1 <= max_n; ++len) {
          auto e = edges;
          Vertex prev = a;
          for (int i = 1; i < len; ++i) {
            e.emplace_back(prev, k + i - 1);
            prev = k + i - 1;
          }
          if (len >= 3) e.emplace_back(prev, a);
          Graph h = Graph::from_edges(k + len - 1, std::move(e));
          if (seen[h.n()].insert(canonical_form(h)).second) by_size[h.n()].push_back(std::move(h));
        }
      }
    }
  }
  for (auto& v : by_size)
    for (auto& g : v) out.push_back(std::move(g));
  return out;
}

}  // namespace cactusdom
