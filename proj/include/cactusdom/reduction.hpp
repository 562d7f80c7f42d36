#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cactusdom/block_cut_tree.hpp"
#include "cactusdom/graph.hpp"

namespace cactusdom {

// Terminal graphs of the reduction process.
struct ElementaryKind {
  enum class Tag { SingleVertex, SingleEdge, PathThreeVertices, Cycle, Bull, ThreePan };
  Tag tag = Tag::SingleVertex;
  int cycle_length = 0;  // only for Cycle, >= 3

  static ElementaryKind cycle(int len) {
    if (len < 3) throw std::invalid_argument("cycle length must be at least 3");
    return {Tag::Cycle, len};
  }
  bool operator==(const ElementaryKind&) const = default;

  std::string str() const {
    switch (tag) {
      case Tag::SingleVertex: return "single-vertex";
      case Tag::SingleEdge: return "single-edge";
      case Tag::PathThreeVertices: return "path-3";
      case Tag::Cycle: return "cycle-" + std::to_string(cycle_length);
      case Tag::Bull: return "bull";
      case Tag::ThreePan: return "3-pan";
    }
    return "?";
  }
};

inline int elementary_value(const ElementaryKind& k) {
  using T = ElementaryKind::Tag;
  switch (k.tag) {
    case T::SingleVertex: return 1;
    case T::SingleEdge: return 1;
    case T::PathThreeVertices: return 2;
    case T::Cycle: return (k.cycle_length + 2) / 3;
    case T::ThreePan: return 2;
    case T::Bull: return 3;
  }
  return 0;
}

// Structural test; within connected graphs the vertex/edge counts and degree
// sequence identify each elementary graph uniquely.
inline std::optional<ElementaryKind> is_elementary(const Graph& g) {
  using T = ElementaryKind::Tag;
  const Vertex n = g.n();
  const auto m = g.m();
  if (n == 0 || !is_connected(g)) return std::nullopt;
  if (n == 1) return ElementaryKind{T::SingleVertex, 0};
  if (n == 2) return ElementaryKind{T::SingleEdge, 0};
  if (n == 3 && m == 2) return ElementaryKind{T::PathThreeVertices, 0};
  std::vector<int> deg;
  for (Vertex v = 0; v < n; ++v) deg.push_back(g.degree(v));
  std::sort(deg.begin(), deg.end());
  if (m == n && deg.front() == 2 && deg.back() == 2) return ElementaryKind::cycle(n);
  if (n == 4 && m == 4 && deg == std::vector<int>{1, 2, 2, 3}) return ElementaryKind{T::ThreePan, 0};
  if (n == 5 && m == 5 && deg == std::vector<int>{1, 1, 2, 3, 3}) return ElementaryKind{T::Bull, 0};
  return std::nullopt;
}

enum class ReductionKind { LeafCycleShrink, LeafCycleRemove, LeafEdgePair, PendantOnCycle, ElementaryFinish };

inline const char* to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::LeafCycleShrink: return "leaf-cycle-shrink";
    case ReductionKind::LeafCycleRemove: return "leaf-cycle-remove";
    case ReductionKind::LeafEdgePair: return "leaf-edge-pair";
    case ReductionKind::PendantOnCycle: return "pendant-on-cycle";
    case ReductionKind::ElementaryFinish: return "elementary-finish";
  }
  return "?";
}

// How a PendantOnCycle step looks in the graph. Counter steps come from the
// linear-time pass, which only tracks block sizes.
enum class PendantShape { Counter, Chord, LeafPan, LeafBull };

inline const char* to_string(PendantShape s) {
  switch (s) {
    case PendantShape::Counter: return "counter";
    case PendantShape::Chord: return "chord";
    case PendantShape::LeafPan: return "leaf-3-pan";
    case PendantShape::LeafBull: return "leaf-bull";
  }
  return "?";
}

struct ReductionStep {
  ReductionKind kind = ReductionKind::ElementaryFinish;
  std::vector<Vertex> removed;      // vertex ids of the input graph
  std::optional<Vertex> anchor;     // surviving articulation / attachment vertex
  int guard_increment = 0;
  int cycle_length = 0;             // LeafCycleShrink / LeafCycleRemove
  std::optional<Vertex> kept;       // LeafCycleShrink: cycle vertex kept as the new leaf
  std::optional<Edge> chord;        // PendantOnCycle(Chord): edge added between the neighbors
  PendantShape shape = PendantShape::Counter;
  std::optional<ElementaryKind> elementary;  // ElementaryFinish
};

enum class TraceSource { LinearPass, DecisionTree };

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  int total = 0;
  Vertex input_n = 0;
  TraceSource source = TraceSource::LinearPass;
};

inline int expected_increment(const ReductionStep& s) {
  switch (s.kind) {
    case ReductionKind::LeafCycleShrink: return (s.cycle_length + 2) / 3 - 1;
    case ReductionKind::LeafCycleRemove: return (s.cycle_length - 1) / 3;
    case ReductionKind::LeafEdgePair: return 1;
    case ReductionKind::PendantOnCycle: return 1;
    case ReductionKind::ElementaryFinish: return s.elementary ? elementary_value(*s.elementary) : -1;
  }
  return -1;
}

// Structural sanity of a trace against the graph it claims to reduce. Returns
// a description of the first problem found, or nothing.
inline std::optional<std::string> check_trace(const ReductionTrace& t, Vertex n) {
  if (t.input_n != n) return "trace is for n=" + std::to_string(t.input_n);
  std::vector<int> hit(n, 0);
  int sum = 0;
  for (const auto& s : t.steps) {
    if (s.removed.empty()) return std::string("step removes no vertices");
    if (s.guard_increment != expected_increment(s))
      return std::string("increment mismatch on ") + to_string(s.kind);
    sum += s.guard_increment;
    for (Vertex v : s.removed) {
      if (v < 0 || v >= n) return "removed vertex out of range";
      ++hit[v];
    }
  }
  if (sum != t.total) return std::string("increments do not sum to total");
  for (Vertex v = 0; v < n; ++v)
    if (hit[v] != 1) return "vertex " + std::to_string(v) + " removed " + std::to_string(hit[v]) + " times";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Linear-time pass over the block-cut tree: leaf blocks on a stack, counters
// for block size and articulation degree, no graph rebuilding.

enum class LeafOrder { Ascending, Descending };

struct MedenResult {
  int guards = 0;
  ReductionTrace trace;
};

namespace detail {

class LinearPass {
 public:
  LinearPass(const Graph& g, const BlockCutTree& bc, LeafOrder order)
      : bc_(bc), removed_(g.n(), 0), art_alive_(bc.articulations.size(), 1) {
    const auto nb = bc.blocks.size();
    size_.resize(nb);
    deg_.resize(nb);
    erased_.assign(nb, 0);
    for (std::size_t b = 0; b < nb; ++b) {
      size_[b] = bc.blocks[b].size();
      deg_[b] = bc.blocks[b].deg();
    }
    auto leaves = leaf_blocks(bc);
    // pushed so that the first block in `order` is on top
    if (order == LeafOrder::Ascending) std::reverse(leaves.begin(), leaves.end());
    stack_ = std::move(leaves);
    trace_.input_n = g.n();
    trace_.source = TraceSource::LinearPass;
  }

  MedenResult run() {
    while (!stack_.empty()) {
      const int v = stack_.back();
      stack_.pop_back();
      if (erased_[v]) continue;
      if (deg_[v] == 0) {
        ReductionStep s;
        s.kind = ReductionKind::ElementaryFinish;
        s.elementary = kind_for_size(size_[v]);
        s.guard_increment = (size_[v] + 2) / 3;
        remove_leaf_block(v, s.removed);
        push(std::move(s));
        continue;
      }
      const int a = live_articulation(v);
      const int u = other_block(a, v);
      block(u, v, a);
    }
    MedenResult r;
    r.guards = trace_.total;
    r.trace = std::move(trace_);
    return r;
  }

 private:
  static ElementaryKind kind_for_size(int s) {
    using T = ElementaryKind::Tag;
    if (s == 1) return {T::SingleVertex, 0};
    if (s == 2) return {T::SingleEdge, 0};
    return ElementaryKind::cycle(s);
  }

  void push(ReductionStep s) {
    trace_.total += s.guard_increment;
    trace_.steps.push_back(std::move(s));
  }

  int live_articulation(int b) const {
    for (int a : bc_.blocks[b].articulations)
      if (art_alive_[a]) return a;
    throw std::logic_error("leaf block without a live articulation");
  }

  int other_block(int a, int b) const {
    for (int x : bc_.articulation_blocks[a])
      if (x != b && !erased_[x]) return x;
    throw std::logic_error("articulation without a second block");
  }

  void remove_vertex(Vertex x, std::vector<Vertex>& out) {
    removed_[x] = 1;
    out.push_back(x);
  }

  // Removes the block's live vertices except its articulation.
  void remove_leaf_block(int v, std::vector<Vertex>& out) {
    if (deg_[v] >= 1) {
      const int a = live_articulation(v);
      const int u = other_block(a, v);
      const Vertex av = bc_.articulations[a];
      for (Vertex x : bc_.blocks[v].members)
        if (!removed_[x] && x != av) remove_vertex(x, out);
      art_alive_[a] = 0;
      --deg_[u];
      erased_[v] = 1;
      if (deg_[u] <= 1) stack_.push_back(u);
    } else {
      for (Vertex x : bc_.blocks[v].members)
        if (!removed_[x]) remove_vertex(x, out);
      erased_[v] = 1;
    }
  }

  void block(int u, int v, int a) {
    const Vertex av = bc_.articulations[a];
    if (size_[v] >= 3) {
      leaf_cycle(v, av);
      return;
    }
    // size(v) == 2: a leaf vertex hanging from articulation av
    if (size_[u] == 2) {
      ReductionStep s;
      s.kind = ReductionKind::LeafEdgePair;
      s.guard_increment = 1;
      remove_leaf_block(v, s.removed);
      if (deg_[u] >= 1) {
        s.anchor = bc_.articulations[live_articulation(u)];
        remove_leaf_block(u, s.removed);
        push(std::move(s));
      } else {
        remove_vertex(av, s.removed);
        push(std::move(s));
        // the partner edge is now a lone vertex
        ReductionStep f;
        f.kind = ReductionKind::ElementaryFinish;
        f.elementary = ElementaryKind{ElementaryKind::Tag::SingleVertex, 0};
        f.guard_increment = 1;
        remove_leaf_block(u, f.removed);
        push(std::move(f));
      }
    } else {
      ReductionStep s;
      s.kind = ReductionKind::PendantOnCycle;
      s.shape = PendantShape::Counter;
      s.guard_increment = 1;
      remove_leaf_block(v, s.removed);
      remove_vertex(av, s.removed);
      --size_[u];
      push(std::move(s));
    }
  }

  void leaf_cycle(int v, Vertex av) {
    ReductionStep s;
    s.cycle_length = size_[v];
    s.anchor = av;
    if (size_[v] % 3 != 1) {
      s.kind = ReductionKind::LeafCycleShrink;
      s.guard_increment = (size_[v] + 2) / 3 - 1;
      bool kept = false;
      for (Vertex x : bc_.blocks[v].members) {
        if (removed_[x] || x == av) continue;
        if (!kept) {
          kept = true;
          s.kept = x;
          continue;
        }
        remove_vertex(x, s.removed);
      }
      size_[v] = 2;
      stack_.push_back(v);
    } else {
      s.kind = ReductionKind::LeafCycleRemove;
      s.guard_increment = (size_[v] - 1) / 3;
      remove_leaf_block(v, s.removed);
    }
    // a C3 shrink removes one vertex; every other step removes at least one
    push(std::move(s));
  }

  const BlockCutTree& bc_;
  std::vector<char> removed_;
  std::vector<char> art_alive_;
  std::vector<int> size_, deg_;
  std::vector<char> erased_;
  std::vector<int> stack_;
  ReductionTrace trace_;
};

}  // namespace detail

inline MedenResult meden_christmas_cactus(const Graph& g, LeafOrder order = LeafOrder::Ascending) {
  if (g.n() == 0) throw GraphError("empty graph");
  const auto bc = block_cut_tree(g);
  require_christmas_cactus(g, bc);
  return detail::LinearPass(g, bc, order).run();
}

// ---------------------------------------------------------------------------
// Graph-level reductions chosen by the decision procedure. Vertex ids in the
// returned steps are labels of `g` (its own ids when unlabeled).

namespace detail {

inline std::vector<Vertex> sorted_labels(const Graph& g, std::vector<Vertex> local) {
  for (auto& v : local) v = g.label(v);
  std::sort(local.begin(), local.end());
  return local;
}

// Triangle vertex roles for leaf bull / leaf 3-pan detection.
enum class TriRole { Bare, Pendant, Attached };

inline TriRole triangle_role(const Graph& g, Vertex x, Vertex* leaf) {
  if (g.degree(x) == 2) return TriRole::Bare;
  if (g.degree(x) == 3) {
    // the neighbor outside the triangle is the third one; the caller checks
    // it is not a triangle member by construction of the block
    for (Vertex w : g.neighbors(x))
      if (g.degree(w) == 1) {
        if (leaf) *leaf = w;
        return TriRole::Pendant;
      }
  }
  return TriRole::Attached;
}

}  // namespace detail

// One decision; a leaf bull yields its two-step composition (pendant removal
// on the triangle followed by the leaf edge pair it leaves behind).
inline std::vector<ReductionStep> choose_reduction(const Graph& g, const BlockCutTree& bc) {
  if (is_elementary(g)) throw std::invalid_argument("graph is elementary; nothing to reduce");
  require_christmas_cactus(g, bc);

  // leaf cycle
  for (const auto& b : bc.blocks) {
    if (b.size() < 3 || b.deg() != 1) continue;
    const Vertex a = bc.articulations[b.articulations.front()];
    ReductionStep s;
    s.cycle_length = b.size();
    s.anchor = g.label(a);
    if (b.size() % 3 != 1) {
      s.kind = ReductionKind::LeafCycleShrink;
      s.guard_increment = (b.size() + 2) / 3 - 1;
      Vertex keep = -1;
      for (Vertex w : g.neighbors(a))
        if (std::binary_search(b.members.begin(), b.members.end(), w) &&
            (keep < 0 || g.label(w) < g.label(keep)))
          keep = w;
      s.kept = g.label(keep);
      std::vector<Vertex> rm;
      for (Vertex x : b.members)
        if (x != a && x != keep) rm.push_back(x);
      s.removed = detail::sorted_labels(g, rm);
    } else {
      s.kind = ReductionKind::LeafCycleRemove;
      s.guard_increment = (b.size() - 1) / 3;
      std::vector<Vertex> rm;
      for (Vertex x : b.members)
        if (x != a) rm.push_back(x);
      s.removed = detail::sorted_labels(g, rm);
    }
    return {s};
  }

  // leaf vertex whose neighbor has degree 2, or sits on a cycle with
  // non-adjacent cycle neighbors
  for (Vertex u = 0; u < g.n(); ++u) {
    if (g.degree(u) != 1) continue;
    const Vertex v = g.neighbors(u)[0];
    if (g.degree(v) == 2) {
      ReductionStep s;
      s.kind = ReductionKind::LeafEdgePair;
      s.guard_increment = 1;
      const Vertex other = g.neighbors(v)[0] == u ? g.neighbors(v)[1] : g.neighbors(v)[0];
      s.anchor = g.label(other);
      s.removed = detail::sorted_labels(g, {u, v});
      return {s};
    }
    if (g.degree(v) == 3) {
      std::vector<Vertex> xy;
      for (Vertex w : g.neighbors(v))
        if (w != u) xy.push_back(w);
      if (!g.adjacent(xy[0], xy[1])) {
        ReductionStep s;
        s.kind = ReductionKind::PendantOnCycle;
        s.shape = PendantShape::Chord;
        s.guard_increment = 1;
        Edge chord{g.label(xy[0]), g.label(xy[1])};
        if (chord.first > chord.second) std::swap(chord.first, chord.second);
        s.chord = chord;
        s.anchor = chord.first;
        s.removed = detail::sorted_labels(g, {u, v});
        return {s};
      }
    }
  }

  // leaf bull or leaf 3-pan: a triangle whose vertices other than the
  // attachment vertex carry at most a pendant leaf each
  for (const auto& b : bc.blocks) {
    if (b.size() != 3) continue;
    std::array<detail::TriRole, 3> role{};
    std::array<Vertex, 3> leaf{-1, -1, -1};
    for (int i = 0; i < 3; ++i) role[i] = detail::triangle_role(g, b.members[i], &leaf[i]);
    for (auto want : {detail::TriRole::Attached, detail::TriRole::Pendant}) {
      for (int i = 0; i < 3; ++i) {
        if (role[i] != want) continue;
        std::vector<int> pend;
        bool ok = true;
        for (int j = 0; j < 3; ++j) {
          if (j == i) continue;
          if (role[j] == detail::TriRole::Attached) ok = false;
          if (role[j] == detail::TriRole::Pendant) pend.push_back(j);
        }
        if (!ok || pend.empty()) continue;
        std::sort(pend.begin(), pend.end(), [&](int p, int q) {
          return g.label(b.members[p]) < g.label(b.members[q]);
        });
        const Vertex attached = b.members[i];
        ReductionStep s;
        s.kind = ReductionKind::PendantOnCycle;
        s.guard_increment = 1;
        s.anchor = g.label(attached);
        s.removed = detail::sorted_labels(g, {b.members[pend[0]], leaf[pend[0]]});
        if (pend.size() == 1) {
          s.shape = PendantShape::LeafPan;
          return {s};
        }
        s.shape = PendantShape::LeafBull;
        ReductionStep tail;
        tail.kind = ReductionKind::LeafEdgePair;
        tail.guard_increment = 1;
        tail.anchor = g.label(attached);
        tail.removed = detail::sorted_labels(g, {b.members[pend[1]], leaf[pend[1]]});
        return {s, tail};
      }
    }
  }
  throw std::logic_error("no applicable reduction found on a non-elementary Christmas cactus");
}

// Residual graph after one graph-level step; labels carry the original ids.
inline Graph apply_reduction(const Graph& g, const ReductionStep& s) {
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.n(); ++v)
    if (!std::binary_search(s.removed.begin(), s.removed.end(), g.label(v))) keep.push_back(v);
  std::vector<Edge> extra;
  if (s.kind == ReductionKind::PendantOnCycle && s.chord) {
    auto a = g.find_label(s.chord->first);
    auto b = g.find_label(s.chord->second);
    if (!a || !b) throw std::invalid_argument("chord endpoints not in graph");
    extra.emplace_back(*a, *b);
  }
  Graph labeled = g.has_labels() ? g : Graph::from_edges(g.n(), g.edges(), [&] {
    std::vector<Vertex> l(g.n());
    for (Vertex v = 0; v < g.n(); ++v) l[v] = v;
    return l;
  }());
  return induced_subgraph(labeled, keep, extra);
}

// Full graph-level reduction sequence down to an elementary graph.
inline ReductionTrace reduce_by_decision_tree(const Graph& g) {
  ReductionTrace t;
  t.input_n = g.n();
  t.source = TraceSource::DecisionTree;
  Graph h = g;
  while (true) {
    if (auto kind = is_elementary(h)) {
      ReductionStep s;
      s.kind = ReductionKind::ElementaryFinish;
      s.elementary = *kind;
      s.guard_increment = elementary_value(*kind);
      std::vector<Vertex> all(h.n());
      for (Vertex v = 0; v < h.n(); ++v) all[v] = v;
      s.removed = detail::sorted_labels(h, all);
      t.total += s.guard_increment;
      t.steps.push_back(std::move(s));
      return t;
    }
    for (auto& s : choose_reduction(h, block_cut_tree(h))) {
      h = apply_reduction(h, s);
      t.total += s.guard_increment;
      t.steps.push_back(std::move(s));
    }
  }
}

inline nlohmann::json to_json(const ReductionTrace& t) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : t.steps) {
    nlohmann::json j{{"kind", to_string(s.kind)}, {"removed", s.removed}, {"increment", s.guard_increment}};
    if (s.anchor) j["anchor"] = *s.anchor;
    if (s.kind == ReductionKind::LeafCycleShrink || s.kind == ReductionKind::LeafCycleRemove)
      j["cycle_length"] = s.cycle_length;
    if (s.kept) j["kept"] = *s.kept;
    if (s.kind == ReductionKind::PendantOnCycle) j["shape"] = to_string(s.shape);
    if (s.chord) j["chord"] = {s.chord->first, s.chord->second};
    if (s.elementary) j["elementary"] = s.elementary->str();
    steps.push_back(std::move(j));
  }
  return {{"n", t.input_n},
          {"total", t.total},
          {"source", t.source == TraceSource::LinearPass ? "linear-pass" : "decision-tree"},
          {"steps", std::move(steps)}};
}

}  // namespace cactusdom
