#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cactusdom/block_cut_tree.hpp"
#include "cactusdom/graph.hpp"
#include "cactusdom/reduction.hpp"

namespace cactusdom {

class DecompositionError : public GraphError {
 public:
  DecompositionError(std::string msg, int component) : GraphError(std::move(msg)), component(component) {}
  int component;
};

struct RedColoring {
  std::vector<char> red;
  std::vector<std::vector<Vertex>> red_components;  // each ascending; ordered by smallest member
  int R = 0;
  int Rg = 0;
};

inline void require_cactus(const Graph& g, const BlockCutTree& bc) {
  if (!classify(g, bc).at_least(GraphKind::Cactus))
    throw GraphError("graph is not a cactus (some edge lies on two cycles)");
}

// Red vertices lie in three or more blocks.
inline RedColoring color_red(const Graph& g, const BlockCutTree& bc) {
  require_cactus(g, bc);
  RedColoring c;
  c.red.assign(g.n(), 0);
  for (Vertex v = 0; v < g.n(); ++v)
    if (bc.blocks_per_vertex[v] >= 3) {
      c.red[v] = 1;
      ++c.R;
    }
  std::vector<char> seen(g.n(), 0);
  for (Vertex s = 0; s < g.n(); ++s) {
    if (!c.red[s] || seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Vertex w : g.neighbors(comp[i]))
        if (c.red[w] && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    c.red_components.push_back(std::move(comp));
  }
  c.Rg = static_cast<int>(c.red_components.size());
  return c;
}

inline RedColoring color_red(const Graph& g) { return color_red(g, block_cut_tree(g)); }

struct Contraction {
  Graph graph;                     // G'
  std::vector<Vertex> to_contracted;  // original -> G' vertex
  std::vector<char> red;           // per G' vertex
  std::vector<std::vector<Vertex>> members;  // G' vertex -> original vertices
};

// Each red component collapses to one red vertex. Black vertices keep their
// relative order and come first; red groups follow in component order.
inline Contraction contract_red_components(const Graph& g, const RedColoring& c) {
  Contraction out;
  out.to_contracted.assign(g.n(), -1);
  Vertex next = 0;
  for (Vertex v = 0; v < g.n(); ++v)
    if (!c.red[v]) {
      out.to_contracted[v] = next++;
      out.members.push_back({v});
      out.red.push_back(0);
    }
  for (const auto& comp : c.red_components) {
    for (Vertex v : comp) out.to_contracted[v] = next;
    out.members.push_back(comp);
    out.red.push_back(1);
    ++next;
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    Vertex a = out.to_contracted[u], b = out.to_contracted[v];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  out.graph = Graph::from_edges(next, std::move(edges));
  return out;
}

struct DecompositionComponent {
  Graph graph;                    // labels: original ids (smallest member for a red group)
  std::vector<char> red_copy;     // per component vertex
  std::vector<std::vector<Vertex>> original;  // component vertex -> original vertices
  int red_copies() const { return static_cast<int>(std::count(red_copy.begin(), red_copy.end(), 1)); }
};

struct Decomposition {
  RedColoring coloring;
  Contraction contracted;
  std::vector<DecompositionComponent> components;
};

// Black components b of G' extended by N(b); red vertices are copied into
// every adjacent black component. Each component must be a Christmas cactus.
inline Decomposition christmas_decomposition(const Graph& g) {
  const auto bc = block_cut_tree(g);
  Decomposition d;
  d.coloring = color_red(g, bc);
  d.contracted = contract_red_components(g, d.coloring);
  const Graph& h = d.contracted.graph;
  const auto& red = d.contracted.red;

  if (d.coloring.R == 0) {
    DecompositionComponent comp;
    comp.graph = g;
    comp.red_copy.assign(g.n(), 0);
    for (Vertex v = 0; v < g.n(); ++v) comp.original.push_back({g.label(v)});
    d.components.push_back(std::move(comp));
    return d;
  }

  std::vector<int> black_comp(h.n(), -1);
  int count = 0;
  for (Vertex s = 0; s < h.n(); ++s) {
    if (red[s] || black_comp[s] >= 0) continue;
    std::vector<Vertex> stack{s};
    black_comp[s] = count;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex w : h.neighbors(x))
        if (!red[w] && black_comp[w] < 0) {
          black_comp[w] = count;
          stack.push_back(w);
        }
    }
    ++count;
  }

  std::vector<std::vector<Vertex>> keep(count);
  for (Vertex v = 0; v < h.n(); ++v)
    if (!red[v]) keep[black_comp[v]].push_back(v);
  for (Vertex r = 0; r < h.n(); ++r) {
    if (!red[r]) continue;
    std::vector<int> seen;
    for (Vertex w : h.neighbors(r))
      if (!red[w]) seen.push_back(black_comp[w]);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (int b : seen) keep[b].push_back(r);
  }

  for (int b = 0; b < count; ++b) {
    std::sort(keep[b].begin(), keep[b].end());
    DecompositionComponent comp;
    // red copies are never adjacent inside a component
    std::vector<Edge> edges;
    std::vector<Vertex> local(h.n(), -1);
    for (std::size_t i = 0; i < keep[b].size(); ++i) local[keep[b][i]] = static_cast<Vertex>(i);
    for (auto [u, v] : h.edges())
      if (local[u] >= 0 && local[v] >= 0 && !(red[u] && red[v])) edges.emplace_back(local[u], local[v]);
    std::vector<Vertex> labels;
    for (Vertex v : keep[b]) {
      comp.red_copy.push_back(red[v]);
      auto orig = d.contracted.members[v];
      for (auto& o : orig) o = g.label(o);
      labels.push_back(orig.front());
      comp.original.push_back(std::move(orig));
    }
    comp.graph = Graph::from_edges(static_cast<Vertex>(keep[b].size()), std::move(edges), labels);
    const auto cls = classify(comp.graph);
    if (cls.kind != GraphKind::ChristmasCactus)
      throw DecompositionError("decomposition component " + std::to_string(b) +
                                   " is not a Christmas cactus (class: " + to_string(cls.kind) + ")",
                               b);
    d.components.push_back(std::move(comp));
  }
  return d;
}

struct BoundReport {
  int bound = 0;
  int R = 0;
  int Rg = 0;
  std::vector<int> component_meden;
  std::vector<int> component_red;
};

inline BoundReport cactus_upper_bound_report(const Decomposition& d) {
  BoundReport r;
  r.R = d.coloring.R;
  r.Rg = d.coloring.Rg;
  r.bound = r.R + r.Rg;
  for (const auto& c : d.components) {
    const int m = meden_christmas_cactus(c.graph).guards;
    r.component_meden.push_back(m);
    r.component_red.push_back(c.red_copies());
    r.bound += m - c.red_copies();
  }
  return r;
}

inline int cactus_upper_bound(const Graph& g) {
  return cactus_upper_bound_report(christmas_decomposition(g)).bound;
}

}  // namespace cactusdom
