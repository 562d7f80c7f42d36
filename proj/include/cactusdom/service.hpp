#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cactusdom/block_cut_tree.hpp"
#include "cactusdom/game.hpp"
#include "cactusdom/io.hpp"
#include "cactusdom/oracle.hpp"
#include "cactusdom/reduction.hpp"
#include "cactusdom/strategy.hpp"

namespace cactusdom {

// Radial drawing hint: a BFS tree rooted near the center of the graph, each
// subtree given an angular sector proportional to its leaf count. Coordinates
// lie in [-1, 1].
inline std::vector<std::pair<double, double>> radial_layout(const Graph& g) {
  const Vertex n = g.n();
  std::vector<std::pair<double, double>> pos(n, {0.0, 0.0});
  if (n <= 1) return pos;
  auto bfs = [&](Vertex s, std::vector<Vertex>& parent, std::vector<Vertex>& order) {
    std::vector<int> dist(n, -1);
    parent.assign(n, -1);
    order.clear();
    dist[s] = 0;
    order.push_back(s);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (Vertex w : g.neighbors(order[i]))
        if (dist[w] < 0) {
          dist[w] = dist[order[i]] + 1;
          parent[w] = order[i];
          order.push_back(w);
        }
    return dist;
  };
  std::vector<Vertex> parent, order;
  bfs(0, parent, order);
  const Vertex a = order.back();
  bfs(a, parent, order);
  std::vector<Vertex> path{order.back()};
  while (parent[path.back()] >= 0) path.push_back(parent[path.back()]);
  const Vertex root = path[path.size() / 2];
  auto dist = bfs(root, parent, order);

  std::vector<double> leaves(n, 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (leaves[*it] == 0.0) leaves[*it] = 1.0;
    if (parent[*it] >= 0) leaves[parent[*it]] += leaves[*it];
  }
  int depth = 0;
  for (int d : dist) depth = std::max(depth, d);
  std::vector<double> lo(n, 0.0), hi(n, 0.0), next(n, 0.0);
  constexpr double tau = 6.283185307179586;
  lo[root] = 0.0;
  hi[root] = tau;
  next[root] = 0.0;
  for (Vertex v : order) {
    if (v != root) {
      const Vertex p = parent[v];
      const double span = (hi[p] - lo[p]) * leaves[v] / leaves[p];
      lo[v] = lo[p] + next[p];
      hi[v] = lo[v] + span;
      next[p] += span;
    }
    const double mid = 0.5 * (lo[v] + hi[v]);
    const double r = static_cast<double>(dist[v]) / depth;
    pos[v] = {r * std::cos(mid), r * std::sin(mid)};
  }
  return pos;
}

inline nlohmann::json attack_to_json(const Attack& a) {
  switch (a.type) {
    case AttackType::AttackVertex: return {{"type", "vertex"}, {"v", a.v}};
    case AttackType::EvictVertex: return {{"type", "evict-vertex"}, {"v", a.v}};
    case AttackType::EvictEdge: return {{"type", "evict-edge"}, {"v", a.v}, {"u", a.u}};
  }
  return {};
}

inline Attack attack_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string() || !j.contains("v") ||
      !j["v"].is_number_integer())
    throw std::invalid_argument("attack needs a string \"type\" and an integer \"v\"");
  const auto type = j["type"].get<std::string>();
  const auto v = j["v"].get<Vertex>();
  if (type == "vertex") return Attack::vertex(v);
  if (type == "evict-vertex") return Attack::evict_vertex(v);
  if (type == "evict-edge") {
    if (!j.contains("u") || !j["u"].is_number_integer()) throw std::invalid_argument("evict-edge needs \"u\"");
    return Attack::evict_edge(v, j["u"].get<Vertex>());
  }
  throw std::invalid_argument("unknown attack type '" + type + "'");
}

struct Reply {
  int status = 200;
  nlohmann::json body;
};

inline Reply error_reply(int status, const std::string& msg) { return {status, {{"error", msg}}}; }

// In-memory sessions. Each session serializes its own requests; the map is
// guarded separately so distinct sessions proceed in parallel.
class SessionStore {
 public:
  using Clock = std::chrono::steady_clock;

  struct Options {
    std::chrono::seconds idle_timeout{30 * 60};
    OracleLimits oracle_limits{};
    std::function<Clock::time_point()> now = [] { return Clock::now(); };
  };

  SessionStore() : SessionStore(Options{}) {}
  explicit SessionStore(Options opt) : opt_(std::move(opt)), rng_(std::random_device{}()) {}

  // body: {"graph": <edge-list string | graph object>, "variant": "egc|edn|ede",
  //        "mode": "strategy|oracle"}
  Reply create(const nlohmann::json& body) {
    if (!body.is_object() || !body.contains("graph")) return error_reply(400, "request needs \"graph\"");
    Graph g;
    try {
      const auto& doc = body["graph"];
      if (doc.is_string()) g = parse_graph_document(doc.get<std::string>());
      else g = graph_from_json(doc);
    } catch (const std::exception& e) {
      return error_reply(400, e.what());
    }
    if (g.n() == 0) return error_reply(400, "graph has no vertices");
    if (!is_connected(g)) return error_reply(422, "graph is not connected");

    GameVariant variant = GameVariant::EDE;
    std::string mode = "strategy";
    try {
      if (body.contains("variant")) variant = parse_variant(body.at("variant").get<std::string>());
      if (body.contains("mode")) mode = body.at("mode").get<std::string>();
    } catch (const std::exception& e) {
      return error_reply(400, e.what());
    }

    std::unique_ptr<DefenderEngine> engine;
    try {
      if (mode == "strategy") {
        if (classify(g).kind != GraphKind::ChristmasCactus)
          return error_reply(422, "strategy mode needs a Christmas cactus");
        engine = std::make_unique<DefenderEngine>(synthesize(g).with_variant(variant));
      } else if (mode == "oracle") {
        engine = std::make_unique<DefenderEngine>(oracle_engine(g, variant, opt_.oracle_limits));
      } else {
        return error_reply(400, "mode must be strategy or oracle");
      }
    } catch (const OracleBudgetExceeded& e) {
      return error_reply(422, e.what());
    } catch (const GraphError& e) {
      return error_reply(422, e.what());
    }

    auto s = std::make_shared<Session>(mode, *engine);
    s->touch(opt_.now());
    {
      std::lock_guard lock(mu_);
      purge_locked();
      s->id = fresh_id_locked();
      sessions_[s->id] = s;
    }
    std::lock_guard lock(s->mu);
    auto j = snapshot(*s);
    j["layout"] = layout_json(s->engine.graph());
    return {201, j};
  }

  Reply attack(const std::string& id, const nlohmann::json& body) {
    auto s = find(id);
    if (!s) return error_reply(404, "unknown session " + id);
    Attack a;
    try {
      a = attack_from_json(body);
    } catch (const std::exception& e) {
      return error_reply(400, e.what());
    }
    std::lock_guard lock(s->mu);
    s->touch(opt_.now());
    if (auto why = s->engine.inapplicable_reason(a); !why.empty())
      return error_reply(409, "inapplicable attack '" + a.str() + "': " + why);
    const Configuration before = s->engine.current();
    DefenderEngine trial = s->engine;
    try {
      trial.respond(a);
    } catch (const std::exception& e) {
      return error_reply(500, std::string("defender failed: ") + e.what());
    }
    const Configuration& after = trial.current();
    const Graph& g = trial.graph();
    if (!satisfies(after, a) || !is_dominating(g, after) || !traversable(g, before, after))
      return error_reply(500, "defender produced an invalid configuration " + after.str());
    auto moves = movement_pairs(g, before, after);
    s->engine = std::move(trial);
    s->history.emplace_back(a, s->engine.current());
    nlohmann::json mv = nlohmann::json::array();
    for (auto [from, to] : *moves) mv.push_back({{"from", from}, {"to", to}});
    return {200, {{"configuration", s->engine.current().positions()}, {"moves", std::move(mv)},
                  {"history_length", s->history.size()}}};
  }

  Reply get(const std::string& id) {
    auto s = find(id);
    if (!s) return error_reply(404, "unknown session " + id);
    std::lock_guard lock(s->mu);
    s->touch(opt_.now());
    auto j = snapshot(*s);
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& [a, c] : s->history) hist.push_back({{"attack", attack_to_json(a)}, {"configuration", c.positions()}});
    j["history"] = std::move(hist);
    return {200, j};
  }

  Reply reset(const std::string& id) {
    auto s = find(id);
    if (!s) return error_reply(404, "unknown session " + id);
    std::lock_guard lock(s->mu);
    s->touch(opt_.now());
    s->engine = s->initial;
    s->history.clear();
    return {200, snapshot(*s)};
  }

  Reply health() {
    std::lock_guard lock(mu_);
    purge_locked();
    return {200, {{"status", "ok"}, {"sessions", sessions_.size()}}};
  }

  std::size_t size() {
    std::lock_guard lock(mu_);
    purge_locked();
    return sessions_.size();
  }

 private:
  struct Session {
    Session(std::string mode, const DefenderEngine& e) : mode(std::move(mode)), initial(e), engine(e) {}
    void touch(Clock::time_point t) { last_used.store(t.time_since_epoch().count()); }
    Clock::time_point last() const { return Clock::time_point(Clock::duration(last_used.load())); }

    std::mutex mu;
    std::string id;
    std::string mode;
    DefenderEngine initial;
    DefenderEngine engine;
    std::vector<std::pair<Attack, Configuration>> history;
    std::atomic<Clock::rep> last_used{0};
  };

  static nlohmann::json layout_json(const Graph& g) {
    nlohmann::json out = nlohmann::json::array();
    for (auto [x, y] : radial_layout(g)) out.push_back({{"x", x}, {"y", y}});
    return out;
  }

  static nlohmann::json snapshot(const Session& s) {
    const Graph& g = s.engine.graph();
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return {{"id", s.id},
            {"n", g.n()},
            {"edges", std::move(edges)},
            {"variant", to_string(s.engine.variant())},
            {"mode", s.mode},
            {"guards", s.engine.guard_count()},
            {"configuration", s.engine.current().positions()},
            {"initial", s.initial.current().positions()},
            {"history_length", s.history.size()}};
  }

  std::shared_ptr<Session> find(const std::string& id) {
    std::lock_guard lock(mu_);
    purge_locked();
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return nullptr;
    return it->second;
  }

  void purge_locked() {
    const auto now = opt_.now();
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      if (now - it->second->last() > opt_.idle_timeout) it = sessions_.erase(it);
      else ++it;
    }
  }

  std::string fresh_id_locked() {
    static const char* hex = "0123456789abcdef";
    while (true) {
      std::string id;
      for (int i = 0; i < 2; ++i) {
        auto x = rng_();
        for (int k = 0; k < 16; ++k) {
          id += hex[x & 15];
          x >>= 4;
        }
      }
      if (!sessions_.count(id)) return id;
    }
  }

  Options opt_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 rng_;
};

}  // namespace cactusdom
