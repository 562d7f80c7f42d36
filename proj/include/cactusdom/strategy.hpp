#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "cactusdom/block_cut_tree.hpp"
#include "cactusdom/game.hpp"
#include "cactusdom/graph.hpp"
#include "cactusdom/oracle.hpp"
#include "cactusdom/reduction.hpp"

namespace cactusdom {

// Attack demand on a sorted position list.
inline bool holds(const std::vector<Vertex>& sorted, const Attack& a) {
  auto has = [&](Vertex v) { return std::binary_search(sorted.begin(), sorted.end(), v); };
  switch (a.type) {
    case AttackType::AttackVertex: return has(a.v);
    case AttackType::EvictVertex: return !has(a.v);
    case AttackType::EvictEdge: return !has(a.v) && !has(a.u);
  }
  return false;
}

inline bool evicts(const Attack& a, Vertex x) { return a.is_eviction() && a.touches(x); }

// A defender for one subgraph. Vertex ids are global (ids of the graph the
// outermost engine was built for). respond() keeps the current placement when
// it already meets the attack; otherwise the engine-specific move runs.
class Engine {
 public:
  virtual ~Engine() = default;
  virtual std::unique_ptr<Engine> clone() const = 0;
  virtual void collect(std::vector<Vertex>& out) const = 0;
  virtual int guards() const = 0;
  virtual void signature(std::string& out) const = 0;
  virtual nlohmann::json describe() const = 0;
  virtual void check(std::vector<std::string>& out) const { (void)out; }

  std::vector<Vertex> positions() const {
    std::vector<Vertex> p;
    collect(p);
    std::sort(p.begin(), p.end());
    return p;
  }

  bool occupies(Vertex v) const {
    auto p = positions();
    return std::binary_search(p.begin(), p.end(), v);
  }

  void respond(const Attack& a) {
    if (!holds(positions(), a)) move(a);
  }

 protected:
  virtual void move(const Attack& a) = 0;
};

// Explicit list of mutually traversable configurations; answers with the
// first listed configuration that meets the attack and is reachable.
class TableEngine final : public Engine {
 public:
  TableEngine(std::string name, Graph local, std::vector<std::vector<Vertex>> table)
      : name_(std::move(name)), g_(std::move(local)), table_(std::move(table)) {
    for (auto& c : table_) std::sort(c.begin(), c.end());
  }

  std::unique_ptr<Engine> clone() const override { return std::make_unique<TableEngine>(*this); }
  void collect(std::vector<Vertex>& out) const override {
    for (Vertex v : table_[cur_]) out.push_back(g_.label(v));
  }
  int guards() const override { return static_cast<int>(table_[0].size()); }
  void signature(std::string& out) const override { out += "t" + std::to_string(cur_) + ";"; }
  nlohmann::json describe() const override {
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < g_.n(); ++v) vs.push_back(g_.label(v));
    return {{"gadget", "table"}, {"graph", name_}, {"vertices", vs}, {"guards", guards()}};
  }
  const std::vector<std::vector<Vertex>>& table() const { return table_; }
  const Graph& graph() const { return g_; }

 protected:
  void move(const Attack& a) override {
    const Attack local = to_local(a);
    const Configuration from(table_[cur_]);
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (!holds(table_[i], local)) continue;
      if (!traversable(g_, from, Configuration(table_[i]))) continue;
      cur_ = static_cast<int>(i);
      return;
    }
    throw std::logic_error(name_ + " table has no answer to " + a.str());
  }

 private:
  Vertex local_id(Vertex global) const {
    auto l = g_.find_label(global);
    if (!l) throw std::logic_error("vertex " + std::to_string(global) + " not in " + name_);
    return *l;
  }
  Attack to_local(const Attack& a) const {
    Attack b = a;
    b.v = local_id(a.v);
    if (a.type == AttackType::EvictEdge) b = Attack::evict_edge(b.v, local_id(a.u));
    return b;
  }

  std::string name_;
  Graph g_;
  std::vector<std::vector<Vertex>> table_;
  int cur_ = 0;
};

// Guards spread along a cycle; vertex attacks rotate every guard one step,
// edge evictions either rotate the gap over the edge or push the guards off
// both endpoints.
class CycleEngine final : public Engine {
 public:
  explicit CycleEngine(std::vector<Vertex> ring) : ring_(std::move(ring)) {
    const int k = static_cast<int>(ring_.size());
    if (k < 3) throw std::invalid_argument("cycle engine needs at least 3 vertices");
    occ_.assign(k, 0);
    for (int i = 0; i < k; i += 3) occ_[i] = 1;
    for (int i = 0; i < k; ++i) index_[ring_[i]] = i;
  }

  std::unique_ptr<Engine> clone() const override { return std::make_unique<CycleEngine>(*this); }
  void collect(std::vector<Vertex>& out) const override {
    for (std::size_t i = 0; i < ring_.size(); ++i)
      if (occ_[i]) out.push_back(ring_[i]);
  }
  int guards() const override { return static_cast<int>((ring_.size() + 2) / 3); }
  void signature(std::string& out) const override {
    out += 'c';
    for (char c : occ_) out += c ? '1' : '0';
    out += ';';
  }
  nlohmann::json describe() const override {
    return {{"gadget", "cycle"}, {"ring", ring_}, {"guards", guards()}};
  }
  void check(std::vector<std::string>& out) const override {
    const int k = size();
    for (int i = 0; i < k; ++i)
      if (!occ_[i] && !occ_[at(i - 1)] && !occ_[at(i + 1)])
        out.push_back("cycle vertex " + std::to_string(ring_[i]) + " undominated");
  }
  const std::vector<Vertex>& ring() const { return ring_; }

 protected:
  void move(const Attack& a) override {
    switch (a.type) {
      case AttackType::AttackVertex: {
        const int t = index_.at(a.v);
        if (occ_[at(t - 1)]) rotate(+1);
        else if (occ_[at(t + 1)]) rotate(-1);
        else throw std::logic_error("cycle engine lost domination at " + std::to_string(a.v));
        return;
      }
      case AttackType::EvictVertex: {
        const int t = index_.at(a.v);
        evict_edge(t, at(t + 1));
        return;
      }
      case AttackType::EvictEdge: {
        int e = index_.at(a.v), f = index_.at(a.u);
        if (at(e + 1) != f) std::swap(e, f);
        if (at(e + 1) != f) throw std::logic_error("evicted edge is not on the cycle");
        evict_edge(e, f);
        return;
      }
    }
  }

 private:
  int size() const { return static_cast<int>(ring_.size()); }
  int at(int i) const {
    const int k = size();
    return ((i % k) + k) % k;
  }
  void rotate(int dir) {
    std::vector<char> next(occ_.size(), 0);
    for (int i = 0; i < size(); ++i)
      if (occ_[i]) next[at(i + dir)] = 1;
    occ_ = std::move(next);
  }
  // f = e + 1; d and g are the outer neighbors
  void evict_edge(int e, int f) {
    const int d = at(e - 1), g = at(f + 1);
    if (!occ_[e] && !occ_[f]) return;
    if (!occ_[d] && !occ_[e]) return rotate(+1);
    if (!occ_[f] && !occ_[g]) return rotate(-1);
    if (occ_[e]) push(e, -1);
    if (occ_[f]) push(f, +1);
  }
  // move the run of guards starting at s one step in direction dir
  void push(int s, int dir) {
    int j = s;
    for (int steps = 0; occ_[j]; ++steps) {
      if (steps > size()) throw std::logic_error("cycle fully occupied");
      j = at(j + dir);
    }
    occ_[j] = 1;
    occ_[s] = 0;
  }

  std::vector<Vertex> ring_;
  std::vector<char> occ_;
  std::unordered_map<Vertex, int> index_;
};

// Private guard on a leaf u and its degree-2 neighbor w.
class PrivateGuardGadget final : public Engine {
 public:
  PrivateGuardGadget(std::unique_ptr<Engine> inner, Vertex leaf, Vertex w)
      : inner_(std::move(inner)), leaf_(leaf), w_(w), g_(w) {}
  PrivateGuardGadget(const PrivateGuardGadget& o)
      : inner_(o.inner_->clone()), leaf_(o.leaf_), w_(o.w_), g_(o.g_) {}

  std::unique_ptr<Engine> clone() const override { return std::make_unique<PrivateGuardGadget>(*this); }
  void collect(std::vector<Vertex>& out) const override {
    inner_->collect(out);
    out.push_back(g_);
  }
  int guards() const override { return inner_->guards() + 1; }
  void signature(std::string& out) const override {
    out += "p" + std::to_string(g_) + "(";
    inner_->signature(out);
    out += ")";
  }
  nlohmann::json describe() const override {
    return {{"gadget", "leaf-edge-pair"}, {"pair", {leaf_, w_}}, {"guards", guards()}, {"inner", inner_->describe()}};
  }
  void check(std::vector<std::string>& out) const override {
    if (g_ != leaf_ && g_ != w_) out.push_back("private guard left its pair");
    inner_->check(out);
  }

 protected:
  void move(const Attack& a) override {
    if (a.type != AttackType::EvictEdge && (a.v == leaf_ || a.v == w_)) {
      if (a.type == AttackType::AttackVertex) g_ = a.v;
      else g_ = a.v == leaf_ ? w_ : leaf_;
      return;
    }
    inner_->respond(a);
  }

 private:
  std::unique_ptr<Engine> inner_;
  Vertex leaf_, w_, g_;
};

// Two strategies glued at an articulation v: H contains v, I contains the
// two neighbors u, w of v joined by a virtual edge. Either v is occupied or
// both u and w are free, so a guard crossing the virtual edge can detour
// through v.
class ArticulationGadget final : public Engine {
 public:
  ArticulationGadget(std::unique_ptr<Engine> h, std::vector<Vertex> h_vertices, std::unique_ptr<Engine> i,
                     Vertex v, Vertex u, Vertex w, std::string name)
      : h_(std::move(h)), i_(std::move(i)), h_vertices_(std::move(h_vertices)), v_(v), u_(u), w_(w),
        name_(std::move(name)) {
    std::sort(h_vertices_.begin(), h_vertices_.end());
    h_->respond(Attack::vertex(v_));
  }
  ArticulationGadget(const ArticulationGadget& o)
      : h_(o.h_->clone()), i_(o.i_->clone()), h_vertices_(o.h_vertices_), v_(o.v_), u_(o.u_), w_(o.w_),
        name_(o.name_) {}

  std::unique_ptr<Engine> clone() const override { return std::make_unique<ArticulationGadget>(*this); }
  void collect(std::vector<Vertex>& out) const override {
    h_->collect(out);
    i_->collect(out);
  }
  int guards() const override { return h_->guards() + i_->guards(); }
  void signature(std::string& out) const override {
    out += "a(";
    h_->signature(out);
    out += "|";
    i_->signature(out);
    out += ")";
  }
  nlohmann::json describe() const override {
    return {{"gadget", name_}, {"articulation", v_}, {"virtual_edge", {u_, w_}}, {"guards", guards()},
            {"outer", h_->describe()}, {"inner", i_->describe()}};
  }
  void check(std::vector<std::string>& out) const override {
    if (!h_->occupies(v_) && (i_->occupies(u_) || i_->occupies(w_)))
      out.push_back(name_ + ": articulation " + std::to_string(v_) + " free while a virtual-edge endpoint is held");
    h_->check(out);
    i_->check(out);
  }

 protected:
  void move(const Attack& a) override {
    if (a.type == AttackType::EvictEdge && a.touches(v_) && (a.touches(u_) || a.touches(w_))) {
      h_->respond(Attack::evict_vertex(v_));
      i_->respond(Attack::evict_edge(u_, w_));
      return;
    }
    if (in_h(a.v)) {
      h_->respond(a);
      i_->respond(Attack::evict_edge(u_, w_));
    } else {
      i_->respond(a);
      h_->respond(Attack::vertex(v_));
    }
  }

 private:
  bool in_h(Vertex x) const { return std::binary_search(h_vertices_.begin(), h_vertices_.end(), x); }

  std::unique_ptr<Engine> h_, i_;
  std::vector<Vertex> h_vertices_;
  Vertex v_, u_, w_;
  std::string name_;
};

// Leaf cycle C at articulation v merged with the strategy for the graph in
// which C was replaced by the leaf x (x is itself a cycle vertex). The inner
// guard at x is never placed; exactly one guard is shared: either the inner
// strategy holds x, or both strategies hold v.
class CycleMergeGadget final : public Engine {
 public:
  CycleMergeGadget(std::unique_ptr<CycleEngine> cyc, std::unique_ptr<Engine> inner, Vertex v, Vertex x)
      : cyc_(std::move(cyc)), inner_(std::move(inner)), v_(v), x_(x) {
    on_cycle_ = cyc_->ring();
    std::sort(on_cycle_.begin(), on_cycle_.end());
    if (!inner_->occupies(x_)) cyc_->respond(Attack::vertex(v_));
    else if (inner_->occupies(v_)) cyc_->respond(Attack::evict_vertex(v_));
  }
  CycleMergeGadget(const CycleMergeGadget& o)
      : cyc_(std::make_unique<CycleEngine>(*o.cyc_)), inner_(o.inner_->clone()), on_cycle_(o.on_cycle_),
        v_(o.v_), x_(o.x_) {}

  std::unique_ptr<Engine> clone() const override { return std::make_unique<CycleMergeGadget>(*this); }
  void collect(std::vector<Vertex>& out) const override {
    const bool shared_v = cyc_->occupies(v_);
    for (Vertex p : inner_->positions())
      if (p != x_ && !(p == v_ && shared_v)) out.push_back(p);
    cyc_->collect(out);
  }
  int guards() const override { return inner_->guards() + cyc_->guards() - 1; }
  void signature(std::string& out) const override {
    out += "m(";
    cyc_->signature(out);
    out += "|";
    inner_->signature(out);
    out += ")";
  }
  nlohmann::json describe() const override {
    return {{"gadget", "leaf-cycle-shrink"}, {"articulation", v_}, {"kept", x_}, {"guards", guards()},
            {"cycle", cyc_->describe()}, {"inner", inner_->describe()}};
  }
  void check(std::vector<std::string>& out) const override {
    const int shared = (inner_->occupies(x_) ? 1 : 0) + (inner_->occupies(v_) && cyc_->occupies(v_) ? 1 : 0);
    if (shared != 1) out.push_back("leaf-cycle merge shares " + std::to_string(shared) + " guards");
    cyc_->check(out);
    inner_->check(out);
  }

 protected:
  void move(const Attack& a) override {
    const bool cycle_side = on_cycle(a.v) && (a.type != AttackType::EvictEdge || on_cycle(a.u));
    if (cycle_side) {
      cyc_->respond(a);
      if (cyc_->occupies(v_)) inner_->respond(Attack::evict_vertex(x_));
      else inner_->respond(Attack::evict_vertex(v_));
      return;
    }
    inner_->respond(a);
    if (evicts(a, v_)) cyc_->respond(Attack::evict_vertex(v_));
    else if (!inner_->occupies(x_)) cyc_->respond(Attack::vertex(v_));
    else if (inner_->occupies(v_)) cyc_->respond(Attack::evict_vertex(v_));
  }

 private:
  bool on_cycle(Vertex z) const { return std::binary_search(on_cycle_.begin(), on_cycle_.end(), z); }

  std::unique_ptr<CycleEngine> cyc_;
  std::unique_ptr<Engine> inner_;
  std::vector<Vertex> on_cycle_;
  Vertex v_, x_;
};

// Leaf 3-pan on triangle {v, x, y} with leaf x' at x. One extra guard on
// {x, x'}; after evicting {v, y} the inner guard that must stand on y stands
// on x instead.
class PanGadget final : public Engine {
 public:
  PanGadget(std::unique_ptr<Engine> inner, Vertex v, Vertex x, Vertex xp, Vertex y)
      : inner_(std::move(inner)), v_(v), x_(x), xp_(xp), y_(y), g_(x) {}
  PanGadget(const PanGadget& o)
      : inner_(o.inner_->clone()), v_(o.v_), x_(o.x_), xp_(o.xp_), y_(o.y_), g_(o.g_), alias_(o.alias_) {}

  std::unique_ptr<Engine> clone() const override { return std::make_unique<PanGadget>(*this); }
  void collect(std::vector<Vertex>& out) const override {
    for (Vertex p : inner_->positions()) out.push_back(alias_ && p == y_ ? x_ : p);
    out.push_back(g_);
  }
  int guards() const override { return inner_->guards() + 1; }
  void signature(std::string& out) const override {
    out += "n" + std::to_string(g_) + (alias_ ? "*" : "") + "(";
    inner_->signature(out);
    out += ")";
  }
  nlohmann::json describe() const override {
    return {{"gadget", "leaf-3-pan"}, {"triangle", {v_, x_, y_}}, {"leaf", xp_}, {"guards", guards()},
            {"inner", inner_->describe()}};
  }
  void check(std::vector<std::string>& out) const override {
    if (g_ != x_ && g_ != xp_) out.push_back("pan guard left {x,x'}");
    if (alias_ && (g_ != xp_ || !inner_->occupies(y_))) out.push_back("pan alias without a guard to stand in");
    inner_->check(out);
  }

 protected:
  void move(const Attack& a) override {
    const bool mine = a.type != AttackType::EvictEdge && (a.v == x_ || a.v == xp_);
    if (mine) {
      alias_ = false;
      if (a.type == AttackType::AttackVertex) g_ = a.v;
      else g_ = a.v == x_ ? xp_ : x_;
      return;
    }
    if (a.type == AttackType::EvictEdge && a.touches(x_)) {
      alias_ = false;
      g_ = xp_;
      inner_->respond(Attack::evict_vertex(a.v == x_ ? a.u : a.v));
      return;
    }
    if (a.type == AttackType::EvictEdge && a.touches(v_) && a.touches(y_)) {
      g_ = xp_;
      inner_->respond(Attack::evict_vertex(v_));
      alias_ = inner_->occupies(y_);
      return;
    }
    alias_ = false;
    inner_->respond(a);
  }

 private:
  std::unique_ptr<Engine> inner_;
  Vertex v_, x_, xp_, y_, g_;
  bool alias_ = false;
};

// Leaf bull on triangle {v, x, y} with leaves x', y'. One guard on each of
// {x, x'} and {y, y'}.
class BullGadget final : public Engine {
 public:
  BullGadget(std::unique_ptr<Engine> inner, Vertex v, Vertex x, Vertex xp, Vertex y, Vertex yp)
      : inner_(std::move(inner)), v_(v), x_(x), xp_(xp), y_(y), yp_(yp), gx_(x), gy_(y) {}
  BullGadget(const BullGadget& o)
      : inner_(o.inner_->clone()), v_(o.v_), x_(o.x_), xp_(o.xp_), y_(o.y_), yp_(o.yp_), gx_(o.gx_),
        gy_(o.gy_) {}

  std::unique_ptr<Engine> clone() const override { return std::make_unique<BullGadget>(*this); }
  void collect(std::vector<Vertex>& out) const override {
    inner_->collect(out);
    out.push_back(gx_);
    out.push_back(gy_);
  }
  int guards() const override { return inner_->guards() + 2; }
  void signature(std::string& out) const override {
    out += "b" + std::to_string(gx_) + "," + std::to_string(gy_) + "(";
    inner_->signature(out);
    out += ")";
  }
  nlohmann::json describe() const override {
    return {{"gadget", "leaf-bull"}, {"triangle", {v_, x_, y_}}, {"leaves", {xp_, yp_}}, {"guards", guards()},
            {"inner", inner_->describe()}};
  }
  void check(std::vector<std::string>& out) const override {
    if (gx_ != x_ && gx_ != xp_) out.push_back("bull guard left {x,x'}");
    if (gy_ != y_ && gy_ != yp_) out.push_back("bull guard left {y,y'}");
    inner_->check(out);
  }

 protected:
  void move(const Attack& a) override {
    if (a.type == AttackType::EvictEdge && (a.touches(x_) || a.touches(y_))) {
      gx_ = xp_;
      gy_ = yp_;
      if (a.touches(v_)) inner_->respond(Attack::evict_vertex(v_));
      return;
    }
    if (a.type != AttackType::EvictEdge) {
      if (a.v == x_ || a.v == xp_) {
        gx_ = a.type == AttackType::AttackVertex ? a.v : (a.v == x_ ? xp_ : x_);
        return;
      }
      if (a.v == y_ || a.v == yp_) {
        gy_ = a.type == AttackType::AttackVertex ? a.v : (a.v == y_ ? yp_ : y_);
        return;
      }
    }
    inner_->respond(a);
  }

 private:
  std::unique_ptr<Engine> inner_;
  Vertex v_, x_, xp_, y_, yp_, gx_, gy_;
};

// Defender driven by the oracle's winning region and successor map.
class OracleEngine final : public Engine {
 public:
  explicit OracleEngine(StrategyWitness w) : w_(std::make_shared<const StrategyWitness>(std::move(w))) {}

  std::unique_ptr<Engine> clone() const override { return std::make_unique<OracleEngine>(*this); }
  void collect(std::vector<Vertex>& out) const override {
    for (Vertex v : w_->configurations[cur_]) out.push_back(v);
  }
  int guards() const override { return static_cast<int>(w_->order); }
  void signature(std::string& out) const override { out += "o" + std::to_string(cur_) + ";"; }
  nlohmann::json describe() const override {
    return {{"gadget", "oracle"}, {"variant", to_string(w_->variant)}, {"guards", guards()},
            {"configurations", w_->configurations.size()}};
  }

 protected:
  void move(const Attack& a) override {
    auto it = std::find(w_->attacks.begin(), w_->attacks.end(), a);
    if (it == w_->attacks.end()) throw std::invalid_argument("attack " + a.str() + " not posed in this game");
    const int s = w_->successor[cur_][it - w_->attacks.begin()];
    if (s < 0) throw std::logic_error("oracle witness has no answer to " + a.str());
    cur_ = s;
  }

 private:
  std::shared_ptr<const StrategyWitness> w_;
  int cur_ = 0;
};

namespace detail {

inline Vertex by_label(const Graph& h, Vertex label) {
  auto l = h.find_label(label);
  if (!l) throw std::logic_error("label " + std::to_string(label) + " missing from residual graph");
  return *l;
}

// Cycle block members in walking order: start at the smallest label, step to
// its smaller-labelled neighbor.
inline std::vector<Vertex> ring_order(const Graph& h, const std::vector<Vertex>& members) {
  auto in = [&](Vertex z) { return std::binary_search(members.begin(), members.end(), z); };
  Vertex start = members.front();
  for (Vertex z : members)
    if (h.label(z) < h.label(start)) start = z;
  Vertex next = -1;
  for (Vertex w : h.neighbors(start))
    if (in(w) && (next < 0 || h.label(w) < h.label(next))) next = w;
  std::vector<Vertex> ring{h.label(start)};
  Vertex prev = start, cur = next;
  while (cur != start) {
    ring.push_back(h.label(cur));
    Vertex step = -1;
    for (Vertex w : h.neighbors(cur))
      if (in(w) && w != prev) {
        step = w;
        break;
      }
    prev = cur;
    cur = step;
  }
  return ring;
}

inline std::vector<Vertex> all_vertices(const Graph& h) {
  std::vector<Vertex> v(h.n());
  for (Vertex i = 0; i < h.n(); ++i) v[i] = i;
  return v;
}

inline std::unique_ptr<Engine> elementary_engine(const Graph& h, const ElementaryKind& k) {
  using T = ElementaryKind::Tag;
  auto deg_is = [&](int d) {
    std::vector<Vertex> out;
    for (Vertex z = 0; z < h.n(); ++z)
      if (h.degree(z) == d) out.push_back(z);
    return out;
  };
  auto leaf_of = [&](Vertex z) {
    for (Vertex w : h.neighbors(z))
      if (h.degree(w) == 1) return w;
    throw std::logic_error("expected a leaf");
  };
  switch (k.tag) {
    case T::SingleVertex: return std::make_unique<TableEngine>("K1", h, std::vector<std::vector<Vertex>>{{0}});
    case T::SingleEdge: return std::make_unique<TableEngine>("K2", h, std::vector<std::vector<Vertex>>{{0}, {1}});
    case T::PathThreeVertices: {
      const Vertex b = deg_is(2).front();
      const auto ends = deg_is(1);
      const Vertex a = ends[0], c = ends[1];
      return std::make_unique<TableEngine>("P3", h, std::vector<std::vector<Vertex>>{{a, b}, {b, c}, {a, c}});
    }
    case T::Cycle: return std::make_unique<CycleEngine>(ring_order(h, all_vertices(h)));
    case T::ThreePan: {
      const Vertex x = deg_is(3).front();
      const Vertex xp = leaf_of(x);
      const auto vy = deg_is(2);
      const Vertex v = vy[0], y = vy[1];
      return std::make_unique<TableEngine>(
          "3-pan", h, std::vector<std::vector<Vertex>>{{x, v}, {x, y}, {xp, v}, {xp, y}, {x, xp}});
    }
    case T::Bull: {
      const auto xy = deg_is(3);
      const Vertex x = xy[0], y = xy[1];
      const Vertex xp = leaf_of(x), yp = leaf_of(y);
      const Vertex v = deg_is(2).front();
      return std::make_unique<TableEngine>(
          "bull", h,
          std::vector<std::vector<Vertex>>{{x, y, v}, {x, yp, v}, {xp, y, v}, {xp, yp, v},
                                           {x, xp, y}, {x, xp, yp}, {x, y, yp}, {xp, y, yp}});
    }
  }
  throw std::logic_error("unknown elementary graph");
}

inline Graph with_identity_labels(const Graph& g) {
  std::vector<Vertex> l(g.n());
  for (Vertex v = 0; v < g.n(); ++v) l[v] = v;
  return Graph::from_edges(g.n(), g.edges(), std::move(l));
}

// h carries global ids as labels.
inline std::unique_ptr<Engine> build_engine(const Graph& h) {
  if (auto k = is_elementary(h)) return elementary_engine(h, *k);
  const auto bc = block_cut_tree(h);
  const auto steps = choose_reduction(h, bc);
  const ReductionStep& s = steps.front();
  // the leaf cycle is the block holding the anchor and a removed vertex
  auto leaf_cycle = [&]() -> const BlockCutTree::Block& {
    const Vertex a = by_label(h, *s.anchor), r = by_label(h, s.removed.front());
    for (const auto& b : bc.blocks)
      if (std::binary_search(b.members.begin(), b.members.end(), a) &&
          std::binary_search(b.members.begin(), b.members.end(), r))
        return b;
    throw std::logic_error("leaf cycle block not found");
  };

  switch (s.kind) {
    case ReductionKind::LeafCycleShrink: {
      const Vertex v = *s.anchor, x = *s.kept;
      const auto& b = leaf_cycle();
      auto cyc = std::make_unique<CycleEngine>(ring_order(h, b.members));
      return std::make_unique<CycleMergeGadget>(std::move(cyc), build_engine(apply_reduction(h, s)), v, x);
    }
    case ReductionKind::LeafCycleRemove: {
      const Vertex v = *s.anchor;
      const auto& b = leaf_cycle();
      auto ring = ring_order(h, b.members);
      // rotate so that v is first; the rest is the path u ... w
      std::rotate(ring.begin(), std::find(ring.begin(), ring.end(), v), ring.end());
      const Vertex u = ring[1], w = ring.back();
      std::vector<Vertex> path(ring.begin() + 1, ring.end());
      auto residual = apply_reduction(h, s);
      std::vector<Vertex> outer;
      for (Vertex z = 0; z < residual.n(); ++z) outer.push_back(residual.label(z));
      return std::make_unique<ArticulationGadget>(build_engine(residual), std::move(outer),
                                                  std::make_unique<CycleEngine>(std::move(path)), v, u, w,
                                                  "leaf-cycle-remove");
    }
    case ReductionKind::LeafEdgePair: {
      const Vertex a = by_label(h, s.removed[0]), c = by_label(h, s.removed[1]);
      const Vertex leaf = h.degree(a) == 1 ? a : c;
      const Vertex w = leaf == a ? c : a;
      return std::make_unique<PrivateGuardGadget>(build_engine(apply_reduction(h, s)), h.label(leaf), h.label(w));
    }
    case ReductionKind::PendantOnCycle: break;
    case ReductionKind::ElementaryFinish: throw std::logic_error("unexpected elementary step");
  }

  switch (s.shape) {
    case PendantShape::Counter: throw std::logic_error("pendant removal without a chord has no gadget");
    case PendantShape::Chord: {
      const Vertex a = by_label(h, s.removed[0]), c = by_label(h, s.removed[1]);
      const Vertex leaf = h.degree(a) == 1 ? a : c;
      const Vertex v = leaf == a ? c : a;
      const Graph k2 = induced_subgraph(h, {v, leaf});
      auto outer = std::make_unique<TableEngine>("K2", k2, std::vector<std::vector<Vertex>>{{0}, {1}});
      return std::make_unique<ArticulationGadget>(std::move(outer), std::vector<Vertex>{h.label(v), h.label(leaf)},
                                                  build_engine(apply_reduction(h, s)), h.label(v),
                                                  s.chord->first, s.chord->second, "chord");
    }
    case PendantShape::LeafPan:
    case PendantShape::LeafBull: {
      const Vertex v = by_label(h, *s.anchor);
      auto split = [&](const ReductionStep& st) {
        const Vertex a = by_label(h, st.removed[0]), c = by_label(h, st.removed[1]);
        return h.degree(a) == 1 ? std::pair{c, a} : std::pair{a, c};  // (triangle vertex, leaf)
      };
      const auto [x, xp] = split(s);
      if (s.shape == PendantShape::LeafPan) {
        Vertex y = -1;
        for (Vertex z : h.neighbors(x))
          if (z != v && z != xp) y = z;
        return std::make_unique<PanGadget>(build_engine(apply_reduction(h, s)), h.label(v), h.label(x),
                                           h.label(xp), h.label(y));
      }
      const auto [y, yp] = split(steps.at(1));
      return std::make_unique<BullGadget>(build_engine(apply_reduction(apply_reduction(h, s), steps[1])),
                                          h.label(v), h.label(x), h.label(xp), h.label(y), h.label(yp));
    }
  }
  throw std::logic_error("unhandled reduction");
}

}  // namespace detail

// Executable defender for a whole graph: validates attacks, answers them and
// tracks the current configuration.
class DefenderEngine {
 public:
  DefenderEngine(Graph g, std::unique_ptr<Engine> root, GameVariant variant = GameVariant::EDE)
      : g_(std::make_shared<const Graph>(std::move(g))), root_(std::move(root)), variant_(variant) {
    cyc_ = std::make_shared<const std::vector<Edge>>(cycle_edges(*g_));
    current_ = Configuration(root_->positions());
  }
  DefenderEngine(const DefenderEngine& o)
      : g_(o.g_), root_(o.root_->clone()), variant_(o.variant_), cyc_(o.cyc_), current_(o.current_) {}
  DefenderEngine& operator=(const DefenderEngine& o) {
    if (this != &o) {
      g_ = o.g_;
      root_ = o.root_->clone();
      variant_ = o.variant_;
      cyc_ = o.cyc_;
      current_ = o.current_;
    }
    return *this;
  }
  DefenderEngine(DefenderEngine&&) = default;
  DefenderEngine& operator=(DefenderEngine&&) = default;

  const Graph& graph() const { return *g_; }
  GameVariant variant() const { return variant_; }
  // An eviction-game strategy also plays the two games without evictions.
  DefenderEngine with_variant(GameVariant v) const {
    DefenderEngine e = *this;
    e.variant_ = v;
    return e;
  }
  int guard_count() const { return static_cast<int>(current_.order()); }
  const Configuration& current() const { return current_; }
  const std::vector<Edge>& cycle_edge_list() const { return *cyc_; }
  nlohmann::json describe() const { return root_->describe(); }
  std::vector<std::string> invariant_violations() const {
    std::vector<std::string> out;
    root_->check(out);
    return out;
  }
  std::string state_signature() const {
    std::string s;
    root_->signature(s);
    return s;
  }

  // Empty string when the attack may be posed in this game, otherwise why not.
  std::string inapplicable_reason(const Attack& a) const {
    const Vertex n = g_->n();
    auto bad = [&](Vertex v) { return v < 0 || v >= n; };
    if (bad(a.v) || (a.type == AttackType::EvictEdge && bad(a.u))) return "vertex out of range";
    if (!a.is_eviction()) return {};
    if (variant_ != GameVariant::EDE) return "evictions are only posed in the eviction game";
    const auto order = static_cast<std::size_t>(guard_count());
    if (a.type == AttackType::EvictVertex)
      return order + 1 <= static_cast<std::size_t>(n) ? std::string{} : "no free vertex to evict into";
    if (!std::binary_search(cyc_->begin(), cyc_->end(), Edge{a.v, a.u})) return "edge is not on a cycle";
    return order + 2 <= static_cast<std::size_t>(n) ? std::string{} : "too few free vertices to evict an edge";
  }

  const Configuration& respond(const Attack& a) {
    if (auto why = inapplicable_reason(a); !why.empty())
      throw std::invalid_argument("inapplicable attack '" + a.str() + "': " + why);
    root_->respond(a);
    current_ = Configuration(root_->positions());
    return current_;
  }

 private:
  std::shared_ptr<const Graph> g_;
  std::unique_ptr<Engine> root_;
  GameVariant variant_;
  std::shared_ptr<const std::vector<Edge>> cyc_;
  Configuration current_;
};

class SynthesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Composes one gadget per reduction of the graph-level decision procedure.
// A linear-pass trace is accepted as long as it agrees on the guard count.
inline DefenderEngine synthesize(const Graph& g, const ReductionTrace& trace) {
  const auto bc = block_cut_tree(g);
  require_christmas_cactus(g, bc);
  if (trace.input_n != g.n()) throw SynthesisError("trace was produced for a different graph");
  const Graph h = detail::with_identity_labels(g);
  auto root = detail::build_engine(h);
  if (root->guards() != trace.total)
    throw SynthesisError("trace total " + std::to_string(trace.total) + " disagrees with composed strategy order " +
                         std::to_string(root->guards()));
  Graph plain = Graph::from_edges(g.n(), g.edges());
  return DefenderEngine(std::move(plain), std::move(root), GameVariant::EDE);
}

inline DefenderEngine synthesize(const Graph& g) { return synthesize(g, meden_christmas_cactus(g).trace); }

inline DefenderEngine oracle_engine(const Graph& g, GameVariant variant, const OracleLimits& limits = {}) {
  auto r = exact_number_with_witness(g, variant, limits);
  Graph plain = Graph::from_edges(g.n(), g.edges());
  return DefenderEngine(std::move(plain), std::make_unique<OracleEngine>(std::move(r.witness)), variant);
}

struct VerifyReport {
  std::size_t trials = 0;
  std::size_t attacks = 0;
  std::vector<std::string> violations;
  std::size_t distinct_configurations = 0;
  bool ok() const { return violations.empty(); }
};

namespace detail {

// Per-response checks; appends at most a handful of messages.
inline void check_step(const Graph& g, const Configuration& before, const Configuration& after, const Attack& a,
                       const DefenderEngine& e, std::vector<std::string>& out) {
  const std::string ctx = " after " + a.str() + " from " + before.str() + " -> " + after.str();
  if (after.order() != before.order()) out.push_back("guard count changed" + ctx);
  else if (!traversable(g, before, after)) out.push_back("not traversable" + ctx);
  if (!satisfies(after, a)) out.push_back("attack not met" + ctx);
  if (after.has_duplicates()) out.push_back("duplicate guards" + ctx);
  if (!is_dominating(g, after)) out.push_back("not dominating" + ctx);
  for (auto& m : e.invariant_violations()) out.push_back(m + ctx);
}

}  // namespace detail

// Random attack sequences, uniform over the applicable attacks.
inline VerifyReport verify_strategy(const DefenderEngine& engine, std::size_t trials, std::size_t length,
                                    std::uint64_t seed, std::size_t max_violations = 20) {
  VerifyReport r;
  if (trials == 0) return r;
  const Graph& g = engine.graph();
  const auto attacks = applicable_attacks(g, engine.variant(), engine.guard_count(), engine.cycle_edge_list());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, attacks.size() - 1);
  std::set<std::vector<Vertex>> seen;
  for (std::size_t t = 0; t < trials && r.violations.size() < max_violations; ++t) {
    ++r.trials;
    DefenderEngine e = engine;
    seen.insert(e.current().positions());
    for (std::size_t i = 0; i < length; ++i) {
      const Attack a = attacks[pick(rng)];
      const Configuration before = e.current();
      try {
        e.respond(a);
      } catch (const std::exception& ex) {
        r.violations.push_back(std::string("engine failed: ") + ex.what());
        break;
      }
      ++r.attacks;
      const std::size_t had = r.violations.size();
      detail::check_step(g, before, e.current(), a, e, r.violations);
      seen.insert(e.current().positions());
      if (r.violations.size() > had) break;
    }
  }
  r.distinct_configurations = seen.size();
  return r;
}

// Every attack sequence up to `depth`, merging identical engine states.
inline VerifyReport explore_strategy(const DefenderEngine& engine, int depth, std::size_t max_violations = 20) {
  VerifyReport r;
  const Graph& g = engine.graph();
  const auto attacks = applicable_attacks(g, engine.variant(), engine.guard_count(), engine.cycle_edge_list());
  std::unordered_map<std::string, int> best;  // state -> largest remaining depth explored
  std::set<std::vector<Vertex>> seen;
  auto rec = [&](auto&& self, const DefenderEngine& e, int left) -> void {
    if (r.violations.size() >= max_violations) return;
    auto [it, fresh] = best.emplace(e.state_signature(), left);
    if (!fresh) {
      if (it->second >= left) return;
      it->second = left;
    }
    seen.insert(e.current().positions());
    if (left == 0) return;
    for (const Attack& a : attacks) {
      DefenderEngine next = e;
      try {
        next.respond(a);
      } catch (const std::exception& ex) {
        r.violations.push_back(std::string("engine failed: ") + ex.what());
        continue;
      }
      ++r.attacks;
      const std::size_t had = r.violations.size();
      detail::check_step(g, e.current(), next.current(), a, next, r.violations);
      if (r.violations.size() == had) self(self, next, left - 1);
    }
  };
  r.trials = 1;
  rec(rec, engine, depth);
  r.distinct_configurations = seen.size();
  return r;
}

// Closure of an explicit configuration table under every applicable attack
// of the eviction game; returns the attacks without an answer.
inline std::vector<std::string> table_gaps(const Graph& g, const std::vector<std::vector<Vertex>>& table) {
  std::vector<std::string> gaps;
  if (table.empty()) return {"empty table"};
  const auto attacks = applicable_attacks(g, GameVariant::EDE, table[0].size());
  for (const auto& c : table) {
    Configuration from(c);
    if (!is_dominating(g, from)) gaps.push_back(from.str() + " not dominating");
    for (const Attack& a : attacks) {
      bool ok = false;
      for (const auto& d : table) {
        Configuration to(d);
        if (satisfies(to, a) && traversable(g, from, to)) {
          ok = true;
          break;
        }
      }
      if (!ok) gaps.push_back(from.str() + " cannot answer " + a.str());
    }
  }
  return gaps;
}

}  // namespace cactusdom
