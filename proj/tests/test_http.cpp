#include <gtest/gtest.h>

#include <thread>

#include "cactusdom/http.hpp"

using namespace cactusdom;
using json = nlohmann::json;

class Http : public ::testing::Test {
 protected:
  void SetUp() override {
    bind_routes(svr_, store_);
    port_ = svr_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { svr_.listen_after_bind(); });
    svr_.wait_until_ready();
  }
  void TearDown() override {
    svr_.stop();
    thread_.join();
  }
  httplib::Client client() { return httplib::Client("127.0.0.1", port_); }

  SessionStore store_;
  httplib::Server svr_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(Http, SessionLifecycle) {
  auto cli = client();
  auto h = cli.Get("/health");
  ASSERT_TRUE(h);
  EXPECT_EQ(h->status, 200);

  const json req{{"graph", {{"n", 6}, {"edges", {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}}}}, {"variant", "ede"}};
  auto c = cli.Post("/sessions", req.dump(), "application/json");
  ASSERT_TRUE(c);
  ASSERT_EQ(c->status, 201);
  const auto id = json::parse(c->body)["id"].get<std::string>();

  auto a = cli.Post("/sessions/" + id + "/attack", R"({"type":"vertex","v":1})", "application/json");
  ASSERT_TRUE(a);
  EXPECT_EQ(a->status, 200);
  EXPECT_EQ(json::parse(a->body)["configuration"], json({1, 4}));

  auto e = cli.Post("/sessions/" + id + "/attack", R"({"type":"evict-edge","v":0,"u":1})", "application/json");
  ASSERT_TRUE(e);
  EXPECT_EQ(e->status, 200);

  auto g = cli.Get("/sessions/" + id);
  ASSERT_TRUE(g);
  EXPECT_EQ(json::parse(g->body)["history"].size(), 2u);

  auto r = cli.Post("/sessions/" + id + "/reset", "", "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(json::parse(r->body)["history_length"], 0);
}

TEST_F(Http, ErrorStatuses) {
  auto cli = client();
  EXPECT_EQ(cli.Post("/sessions", "not json", "application/json")->status, 400);
  EXPECT_EQ(cli.Post("/sessions", R"({"graph":"4 3\n0 1\n0 2\n0 3\n"})", "application/json")->status, 422);
  EXPECT_EQ(cli.Get("/sessions/0123")->status, 404);
  EXPECT_EQ(cli.Post("/sessions/0123/attack", R"({"type":"vertex","v":0})", "application/json")->status, 404);
  auto c = cli.Post("/sessions", R"({"graph":"3 2\n0 1\n1 2\n","variant":"edn"})", "application/json");
  const auto id = json::parse(c->body)["id"].get<std::string>();
  EXPECT_EQ(cli.Post("/sessions/" + id + "/attack", "{", "application/json")->status, 400);
  EXPECT_EQ(cli.Post("/sessions/" + id + "/attack", R"({"type":"evict-vertex","v":0})", "application/json")->status,
            409);
}
