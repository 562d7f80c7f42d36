#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cactusdom/graph.hpp"

namespace cactusdom {

// Blocks (maximal 2-connected subgraphs, bridges, or an isolated vertex) and
// the articulations that join them.
struct BlockCutTree {
  struct Block {
    std::vector<Vertex> members;  // ascending
    std::int64_t edge_count = 0;
    std::vector<int> articulations;  // indices into `articulations`
    int size() const { return static_cast<int>(members.size()); }
    int deg() const { return static_cast<int>(articulations.size()); }
  };

  std::vector<Block> blocks;
  std::vector<Vertex> articulations;               // ascending vertex ids
  std::vector<std::vector<int>> articulation_blocks;  // block ids per articulation
  std::vector<int> blocks_per_vertex;              // number of blocks containing v

  std::size_t incidence_count() const {
    std::size_t c = 0;
    for (const auto& b : blocks) c += b.articulations.size();
    return c;
  }
};

// Iterative Tarjan biconnectivity with an edge stack; no recursion so that
// million-vertex inputs are safe.
inline BlockCutTree block_cut_tree(const Graph& g) {
  if (!is_connected(g)) throw GraphError("graph is not connected");
  BlockCutTree bc;
  const Vertex n = g.n();
  bc.blocks_per_vertex.assign(n, 0);
  if (n == 0) return bc;
  if (n == 1) {
    bc.blocks.push_back({{0}, 0, {}});
    bc.blocks_per_vertex[0] = 1;
    return bc;
  }

  std::vector<std::int32_t> disc(n, -1), low(n, 0);
  std::vector<int> stamp(n, -1);
  std::vector<Edge> edge_stack;
  struct Frame {
    Vertex v;
    Vertex parent;
    std::int32_t next;
  };
  std::vector<Frame> frames;
  std::int32_t timer = 0;

  disc[0] = low[0] = timer++;
  frames.push_back({0, -1, 0});
  while (!frames.empty()) {
    Frame& f = frames.back();
    const Vertex v = f.v;
    auto nb = g.neighbors(v);
    if (f.next < static_cast<std::int32_t>(nb.size())) {
      const Vertex w = nb[f.next++];
      if (w == f.parent) continue;
      if (disc[w] == -1) {
        edge_stack.emplace_back(v, w);
        disc[w] = low[w] = timer++;
        frames.push_back({w, v, 0});
      } else if (disc[w] < disc[v]) {
        edge_stack.emplace_back(v, w);
        if (disc[w] < low[v]) low[v] = disc[w];
      }
      continue;
    }
    const Vertex parent = f.parent;
    frames.pop_back();
    if (parent < 0) continue;
    if (low[v] < low[parent]) low[parent] = low[v];
    if (low[v] >= disc[parent]) {
      const int id = static_cast<int>(bc.blocks.size());
      BlockCutTree::Block block;
      auto take = [&](Vertex x) {
        if (stamp[x] != id) {
          stamp[x] = id;
          block.members.push_back(x);
        }
      };
      while (true) {
        Edge e = edge_stack.back();
        edge_stack.pop_back();
        ++block.edge_count;
        take(e.first);
        take(e.second);
        if (e.first == parent && e.second == v) break;
      }
      std::sort(block.members.begin(), block.members.end());
      for (Vertex x : block.members) ++bc.blocks_per_vertex[x];
      bc.blocks.push_back(std::move(block));
    }
  }

  std::vector<int> art_index(n, -1);
  for (Vertex v = 0; v < n; ++v)
    if (bc.blocks_per_vertex[v] >= 2) {
      art_index[v] = static_cast<int>(bc.articulations.size());
      bc.articulations.push_back(v);
    }
  bc.articulation_blocks.resize(bc.articulations.size());
  for (int b = 0; b < static_cast<int>(bc.blocks.size()); ++b)
    for (Vertex x : bc.blocks[b].members)
      if (art_index[x] >= 0) {
        bc.blocks[b].articulations.push_back(art_index[x]);
        bc.articulation_blocks[art_index[x]].push_back(b);
      }
  return bc;
}

// Blocks with at most one incident articulation, ascending block id.
inline std::vector<int> leaf_blocks(const BlockCutTree& bc) {
  std::vector<int> out;
  for (int b = 0; b < static_cast<int>(bc.blocks.size()); ++b)
    if (bc.blocks[b].deg() <= 1) out.push_back(b);
  return out;
}

enum class GraphKind { GeneralGraph = 0, Cactus = 1, ChristmasCactus = 2 };

inline const char* to_string(GraphKind k) {
  switch (k) {
    case GraphKind::GeneralGraph: return "general";
    case GraphKind::Cactus: return "cactus";
    case GraphKind::ChristmasCactus: return "christmas-cactus";
  }
  return "?";
}

struct GraphClass {
  GraphKind kind = GraphKind::GeneralGraph;
  std::optional<Edge> witness_edge;      // lies on two cycles
  std::optional<Vertex> witness_vertex;  // lies in three or more blocks

  bool at_least(GraphKind k) const { return static_cast<int>(kind) >= static_cast<int>(k); }
};

inline bool block_is_edge_or_cycle(const BlockCutTree::Block& b) {
  if (b.size() <= 2) return true;
  return b.edge_count == b.size();
}

inline GraphClass classify(const Graph& g, const BlockCutTree& bc) {
  GraphClass c;
  for (const auto& b : bc.blocks) {
    if (block_is_edge_or_cycle(b)) continue;
    // A 2-connected block that is not a cycle has every edge on two cycles.
    const Vertex u = b.members.front();
    for (Vertex w : g.neighbors(u))
      if (std::binary_search(b.members.begin(), b.members.end(), w)) {
        c.witness_edge = Edge{u, w};
        break;
      }
    c.kind = GraphKind::GeneralGraph;
    return c;
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (bc.blocks_per_vertex[v] >= 3) {
      c.kind = GraphKind::Cactus;
      c.witness_vertex = v;
      return c;
    }
  c.kind = GraphKind::ChristmasCactus;
  return c;
}

inline GraphClass classify(const Graph& g) { return classify(g, block_cut_tree(g)); }

inline void require_christmas_cactus(const Graph& g, const BlockCutTree& bc) {
  auto c = classify(g, bc);
  if (c.kind != GraphKind::ChristmasCactus)
    throw GraphError(std::string("graph is not a Christmas cactus (class: ") +
                     to_string(c.kind) + ")");
}

}  // namespace cactusdom
