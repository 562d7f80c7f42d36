#pragma once

// Routes of the attack service on a cpp-httplib server. Needs the vendored
// httplib.h on the include path.

#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "cactusdom/service.hpp"

namespace cactusdom {

inline void to_http(const Reply& r, httplib::Response& res) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

// The store must outlive the server.
inline void bind_routes(httplib::Server& svr, SessionStore& store) {
  using nlohmann::json;
  auto parse = [](const httplib::Request& req, json& out) {
    try {
      out = json::parse(req.body.empty() ? "{}" : req.body);
      return true;
    } catch (const json::exception&) {
      return false;
    }
  };
  svr.Get("/health", [&store](const httplib::Request&, httplib::Response& res) { to_http(store.health(), res); });
  svr.Post("/sessions", [&store, parse](const httplib::Request& req, httplib::Response& res) {
    json body;
    if (!parse(req, body)) return to_http(error_reply(400, "body is not JSON"), res);
    to_http(store.create(body), res);
  });
  svr.Get(R"(/sessions/([0-9a-zA-Z]+))", [&store](const httplib::Request& req, httplib::Response& res) {
    to_http(store.get(req.matches[1]), res);
  });
  svr.Post(R"(/sessions/([0-9a-zA-Z]+)/attack)", [&store, parse](const httplib::Request& req, httplib::Response& res) {
    json body;
    if (!parse(req, body)) return to_http(error_reply(400, "body is not JSON"), res);
    to_http(store.attack(req.matches[1], body), res);
  });
  svr.Post(R"(/sessions/([0-9a-zA-Z]+)/reset)", [&store](const httplib::Request& req, httplib::Response& res) {
    to_http(store.reset(req.matches[1]), res);
  });
  svr.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string msg = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      msg = e.what();
    } catch (...) {
    }
    to_http(error_reply(500, msg), res);
  });
}

}  // namespace cactusdom
