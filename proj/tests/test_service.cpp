#include <gtest/gtest.h>

#include <thread>

#include "cactusdom/service.hpp"

using namespace cactusdom;
using json = nlohmann::json;

namespace {

json c6_request(const char* variant = "ede", const char* mode = "strategy") {
  return {{"graph", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n"}, {"variant", variant}, {"mode", mode}};
}

std::string create(SessionStore& s, const json& body) {
  auto r = s.create(body);
  EXPECT_EQ(r.status, 201) << r.body.dump();
  return r.body.value("id", "");
}

}  // namespace

TEST(Service, CreateReturnsBoardAndLayout) {
  SessionStore store;
  const auto r = store.create(c6_request());
  ASSERT_EQ(r.status, 201);
  EXPECT_EQ(r.body["n"], 6);
  EXPECT_EQ(r.body["edges"].size(), 6u);
  EXPECT_EQ(r.body["layout"].size(), 6u);
  EXPECT_EQ(r.body["guards"], 2);
  EXPECT_EQ(r.body["configuration"], r.body["initial"]);
  EXPECT_EQ(r.body["history_length"], 0);
  EXPECT_EQ(r.body["id"].get<std::string>().size(), 32u);
  for (const auto& p : r.body["layout"]) {
    EXPECT_LE(std::abs(p["x"].get<double>()), 1.0 + 1e-9);
    EXPECT_LE(std::abs(p["y"].get<double>()), 1.0 + 1e-9);
  }
}

TEST(Service, GraphObjectAccepted) {
  SessionStore store;
  json body{{"graph", {{"n", 3}, {"edges", {{0, 1}, {1, 2}}}}}};
  EXPECT_EQ(store.create(body).status, 201);
}

TEST(Service, AttackMovesGuards) {
  SessionStore store;
  const auto id = create(store, c6_request());
  const auto r = store.attack(id, {{"type", "vertex"}, {"v", 1}});
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["configuration"], json({1, 4}));
  EXPECT_EQ(r.body["history_length"], 1);
  EXPECT_EQ(r.body["moves"].size(), 2u);
  const auto e = store.attack(id, {{"type", "evict-edge"}, {"v", 1}, {"u", 0}});
  ASSERT_EQ(e.status, 200);
  for (const auto& v : e.body["configuration"]) EXPECT_TRUE(v != 0 && v != 1);
}

TEST(Service, StatusCodes) {
  SessionStore store;
  EXPECT_EQ(store.create(json::array()).status, 400);
  EXPECT_EQ(store.create({{"graph", "3 2\n0 1\n1 x\n"}}).status, 400);
  EXPECT_EQ(store.create({{"graph", "4 2\n0 1\n2 3\n"}}).status, 422);
  EXPECT_EQ(store.create({{"graph", "4 3\n0 1\n0 2\n0 3\n"}}).status, 422);  // K13 is not a Christmas cactus
  EXPECT_EQ(store.create(c6_request("nope")).status, 400);
  EXPECT_EQ(store.create(c6_request("ede", "nope")).status, 400);

  const auto id = create(store, c6_request("edn"));
  EXPECT_EQ(store.attack("ffff", {{"type", "vertex"}, {"v", 1}}).status, 404);
  EXPECT_EQ(store.get("ffff").status, 404);
  EXPECT_EQ(store.reset("ffff").status, 404);
  EXPECT_EQ(store.attack(id, {{"type", "vertex"}}).status, 400);
  EXPECT_EQ(store.attack(id, {{"type", "teleport"}, {"v", 1}}).status, 400);
  EXPECT_EQ(store.attack(id, {{"type", "vertex"}, {"v", 99}}).status, 409);
  // evictions are not posed in the game without them
  EXPECT_EQ(store.attack(id, {{"type", "evict-vertex"}, {"v", 1}}).status, 409);
}

TEST(Service, OracleModeAndBudget) {
  SessionStore::Options opt;
  opt.oracle_limits.max_pairs = 50;
  SessionStore tight(opt);
  EXPECT_EQ(tight.create(c6_request("ede", "oracle")).status, 422);

  SessionStore store;
  const auto r = store.create({{"graph", "4 3\n0 1\n0 2\n0 3\n"}, {"variant", "edn"}, {"mode", "oracle"}});
  ASSERT_EQ(r.status, 201);
  EXPECT_EQ(r.body["guards"], 2);
  EXPECT_EQ(store.attack(r.body["id"], {{"type", "vertex"}, {"v", 2}}).status, 200);
}

TEST(Service, ReplayIsDeterministic) {
  SessionStore store;
  const auto a = create(store, c6_request());
  const auto b = create(store, c6_request());
  const std::vector<json> script{{{"type", "vertex"}, {"v", 2}},
                                 {{"type", "evict-vertex"}, {"v", 5}},
                                 {{"type", "evict-edge"}, {"v", 3}, {"u", 4}},
                                 {{"type", "vertex"}, {"v", 0}}};
  for (const auto& atk : script) {
    const auto ra = store.attack(a, atk), rb = store.attack(b, atk);
    ASSERT_EQ(ra.status, 200);
    EXPECT_EQ(ra.body["configuration"], rb.body["configuration"]);
  }
  const auto h = store.get(a);
  ASSERT_EQ(h.body["history"].size(), script.size());
  EXPECT_EQ(h.body["history"][1]["attack"], script[1]);
}

TEST(Service, Reset) {
  SessionStore store;
  const auto id = create(store, c6_request());
  const auto initial = store.get(id).body["configuration"];
  store.attack(id, {{"type", "vertex"}, {"v", 2}});
  const auto r = store.reset(id);
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body["configuration"], initial);
  EXPECT_EQ(r.body["history_length"], 0);
}

TEST(Service, IdleSessionsExpire) {
  auto now = SessionStore::Clock::now();
  SessionStore::Options opt;
  opt.now = [&] { return now; };
  SessionStore store(opt);
  const auto keep = create(store, c6_request());
  const auto drop = create(store, c6_request());
  now += std::chrono::minutes(20);
  EXPECT_EQ(store.get(keep).status, 200);
  now += std::chrono::minutes(15);
  EXPECT_EQ(store.get(drop).status, 404);
  EXPECT_EQ(store.get(keep).status, 200);
  EXPECT_EQ(store.size(), 1u);
  EXPECT_EQ(store.health().body["sessions"], 1);
}

TEST(Service, ConcurrentSessions) {
  SessionStore store;
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(create(store, c6_request()));
  std::vector<std::thread> ts;
  for (const auto& id : ids)
    ts.emplace_back([&store, id] {
      for (int k = 0; k < 200; ++k) store.attack(id, {{"type", "vertex"}, {"v", k % 6}});
    });
  for (auto& t : ts) t.join();
  for (const auto& id : ids) EXPECT_EQ(store.get(id).body["history_length"], 200);
}

TEST(Service, LayoutIsFinite) {
  for (Vertex n : {1, 2, 5, 30}) {
    const auto pos = radial_layout(graphs::path(n));
    ASSERT_EQ(pos.size(), static_cast<std::size_t>(n));
    for (auto [x, y] : pos) {
      EXPECT_TRUE(std::isfinite(x));
      EXPECT_TRUE(std::isfinite(y));
    }
  }
}
