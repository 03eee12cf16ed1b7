#include "doctest.h"

#include <chrono>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "jarcon/error.hpp"
#include "jarcon/http_api.hpp"

using namespace jarcon;
using nlohmann::json;

namespace {

ServiceConfig quick_config() {
  ServiceConfig c;
  c.classify.permutations = 200;
  return c;
}

json body_of(const HttpResponse& r) { return json::parse(r.body); }

std::string evaluation(const std::string& sample, const std::string& attribute, int liking, int jar,
                       bool revision = false) {
  json j{{"sample", sample}, {"attribute", attribute}, {"liking", liking}, {"jar", jar}};
  if (revision) j["revision"] = true;
  return j.dump();
}

}  // namespace

TEST_CASE("session lifecycle through the router") {
  SessionStore store(quick_config());
  auto created = handle_request(store, "POST", "/sessions", R"({"assessor_id":"P7"})");
  CHECK(created.status == 201);
  CHECK(created.content_type == "application/json");
  const auto id = body_of(created)["session_id"].get<std::string>();
  CHECK(body_of(created)["assessor_id"] == "P7");

  const std::string base = "/sessions/" + id;
  auto r = handle_request(store, "POST", base + "/evaluations", evaluation("C", "colour", 9, -2));
  CHECK(r.status == 200);
  auto b = body_of(r);
  CHECK(b["n"] == 1);
  CHECK(b["running_tau"].is_null());
  REQUIRE(b["warnings"].size() == 1);
  CHECK(b["warnings"][0]["rule"] == "R1");
  CHECK_FALSE(b["warnings"][0]["description"].get<std::string>().empty());

  handle_request(store, "POST", base + "/evaluations", evaluation("C", "sweet", 5, 1));
  r = handle_request(store, "POST", base + "/evaluations", evaluation("C", "colour", 9, 0, true));
  b = body_of(r);
  CHECK(b["revised"] == true);
  CHECK(b["n"] == 2);
  CHECK(b["warnings"].empty());
  CHECK(b["running_tau"]["tau_c"].get<double>() == doctest::Approx(-0.75));  // 2 discordant of n^2 (m-1)/m

  r = handle_request(store, "GET", base, "");
  b = body_of(r);
  CHECK(b["open"] == true);
  CHECK(b["items"].size() == 2);
  CHECK(b["items"][0]["revisions"] == 1);
  CHECK(b["verdict"].is_null());

  r = handle_request(store, "POST", base + "/close", "");
  CHECK(r.status == 200);
  b = body_of(r);
  CHECK(b["n"] == 2);
  CHECK(b["export"] == "/export");
  CHECK(b["verdict"].contains("label"));

  r = handle_request(store, "GET", "/export", "");
  CHECK(r.content_type == "text/csv");
  CHECK(r.body == "assessor,sample,attribute,liking,jar,warnings\nP7,C,colour,9,0,\nP7,C,sweet,5,1,\n");

  r = handle_request(store, "GET", "/health", "");
  CHECK(body_of(r)["status"] == "ok");
  CHECK(body_of(r)["sessions"] == 1);
}

TEST_CASE("error statuses carry a machine-readable code") {
  SessionStore store(quick_config());
  const auto id = body_of(handle_request(store, "POST", "/sessions", ""))["session_id"].get<std::string>();
  const std::string ev = "/sessions/" + id + "/evaluations";

  auto expect = [&](const HttpResponse& r, int status, const char* code) {
    CHECK(r.status == status);
    CHECK(body_of(r)["error_code"] == code);
    CHECK_FALSE(body_of(r)["message"].get<std::string>().empty());
  };
  expect(handle_request(store, "GET", "/sessions/S123456", ""), 404, "not_found");
  expect(handle_request(store, "POST", "/sessions/S123456/evaluations", evaluation("C", "a", 5, 0)),
         404, "not_found");
  expect(handle_request(store, "GET", "/nowhere", ""), 404, "not_found");
  expect(handle_request(store, "DELETE", "/health", ""), 405, "method_not_allowed");
  expect(handle_request(store, "GET", ev, ""), 405, "method_not_allowed");
  expect(handle_request(store, "POST", ev, "{not json"), 400, "validation_error");
  expect(handle_request(store, "POST", ev, "[1,2]"), 400, "validation_error");
  expect(handle_request(store, "POST", ev, R"({"sample":"C","attribute":"a","liking":5})"), 400,
         "validation_error");
  expect(handle_request(store, "POST", ev, R"({"sample":"C","attribute":"a","liking":"5","jar":0})"),
         400, "validation_error");
  expect(handle_request(store, "POST", ev, evaluation("C", "a", 11, 0)), 400, "validation_error");
  expect(handle_request(store, "POST", ev, evaluation("C", "a", 5, 3)), 400, "validation_error");

  CHECK(handle_request(store, "POST", ev, evaluation("C", "a", 5, 0)).status == 200);
  expect(handle_request(store, "POST", ev, evaluation("C", "a", 6, 0)), 409, "conflict");
  expect(handle_request(store, "POST", ev, evaluation("C", "b", 6, 0, true)), 409, "conflict");
  CHECK(handle_request(store, "POST", "/sessions/" + id + "/close", "").status == 200);
  expect(handle_request(store, "POST", "/sessions/" + id + "/close", ""), 409, "conflict");
  expect(handle_request(store, "POST", ev, evaluation("C", "c", 5, 0)), 409, "conflict");
}

TEST_CASE("served over a real socket") {
  SessionStore store(quick_config());
  HttpServer server(store);
  const int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread worker([&] { server.run(); });

  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  httplib::Result health;
  for (int i = 0; i < 50 && !health; ++i) {
    health = client.Get("/health");
    if (!health) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(json::parse(health->body)["status"] == "ok");

  auto created = client.Post("/sessions", R"({"assessor_id":"net"})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const auto id = json::parse(created->body)["session_id"].get<std::string>();
  for (int i = 0; i < 5; ++i) {
    auto r = client.Post("/sessions/" + id + "/evaluations",
                         evaluation("s" + std::to_string(i), "taste", 9 - 2 * i, i % 3), "application/json");
    REQUIRE(r);
    CHECK(r->status == 200);
  }
  auto conflict = client.Post("/sessions/" + id + "/evaluations", evaluation("s0", "taste", 5, 0),
                              "application/json");
  REQUIRE(conflict);
  CHECK(conflict->status == 409);
  auto closed = client.Post("/sessions/" + id + "/close", "", "application/json");
  REQUIRE(closed);
  CHECK(closed->status == 200);
  auto exported = client.Get("/export");
  REQUIRE(exported);
  CHECK(exported->get_header_value("Content-Type").rfind("text/csv", 0) == 0);
  CHECK(exported->body.find("net,s4,taste,1,1,") != std::string::npos);

  // The port is now taken.
  HttpServer other(store);
  CHECK_THROWS_AS(other.bind("127.0.0.1", port), Error);

  server.stop();
  worker.join();
}
