#include "jarcon/http_api.hpp"

#include <cmath>

#include <fmt/format.h>

#include "httplib.h"
#include "json.hpp"

#include "jarcon/error.hpp"

namespace jarcon {

namespace {

using nlohmann::ordered_json;

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json tau_json(const std::optional<TauResult>& t) {
  if (!t) return nullptr;
  return {{"tau_c", number(t->tau_c)},
          {"n", t->n},
          {"m", t->m},
          {"concordant", t->pairs.concordant},
          {"discordant", t->pairs.discordant}};
}

ordered_json hits_json(const std::vector<RuleHit>& hits) {
  ordered_json out = ordered_json::array();
  for (const auto& h : hits) out.push_back({{"rule", h.rule_id}, {"description", h.description}});
  return out;
}

ordered_json verdict_json(const SessionSnapshot& s) {
  if (s.open) return nullptr;
  if (!s.verdict) return {{"label", "unclassifiable"}, {"reason", s.unclassifiable_reason}};
  const auto& v = *s.verdict;
  ordered_json out{{"label", to_string(v.label)},
                   {"tau_c", number(v.tau.tau_c)},
                   {"p_value", number(v.p_value)},
                   {"method", to_string(v.method)},
                   {"alpha", v.alpha}};
  if (v.method == TestMethod::permutation) out["permutations"] = v.permutations;
  return out;
}

ordered_json snapshot_json(const SessionSnapshot& s) {
  ordered_json items = ordered_json::array();
  for (const auto& item : s.items) {
    items.push_back({{"sample", item.sample},
                     {"attribute", item.attribute},
                     {"liking", item.liking.value()},
                     {"jar", item.jar.value()},
                     {"warnings", hits_json(item.warnings)},
                     {"revisions", item.revisions}});
  }
  ordered_json warnings = ordered_json::array();
  for (const auto& w : s.warnings) {
    warnings.push_back({{"sample", w.sample}, {"attribute", w.attribute}, {"rule", w.hit.rule_id}});
  }
  return {{"session_id", s.session_id},
          {"assessor_id", s.assessor_id},
          {"created", s.created},
          {"open", s.open},
          {"n", s.items.size()},
          {"running_tau", tau_json(s.running_tau)},
          {"items", std::move(items)},
          {"warnings", std::move(warnings)},
          {"verdict", verdict_json(s)}};
}

HttpResponse json_response(int status, const ordered_json& body) {
  return {status, body.dump(), "application/json"};
}

HttpResponse error_response(int status, std::string_view code, std::string_view message) {
  return json_response(status, {{"error_code", code}, {"message", message}});
}

int status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_found: return 404;
    case ErrorCode::conflict: return 409;
    case ErrorCode::io: return 500;
    default: return 400;
  }
}

nlohmann::json parse_body(std::string_view body, bool allow_empty) {
  if (body.empty() && allow_empty) return nlohmann::json::object();
  auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::validation, "request body is not valid JSON");
  if (!doc.is_object()) throw Error(ErrorCode::validation, "request body must be a JSON object");
  return doc;
}

std::string string_field(const nlohmann::json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end() || !it->is_string()) {
    throw Error(ErrorCode::validation, fmt::format("field '{}': required string", name));
  }
  return it->get<std::string>();
}

int int_field(const nlohmann::json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end() || !it->is_number_integer()) {
    throw Error(ErrorCode::validation, fmt::format("field '{}': required integer", name));
  }
  const auto v = it->get<std::int64_t>();
  if (v < -1000 || v > 1000) {
    throw Error(ErrorCode::validation, fmt::format("field '{}': value {} out of range", name, v));
  }
  return static_cast<int>(v);
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    if (path.front() == '/') {
      path.remove_prefix(1);
      continue;
    }
    const auto slash = path.find('/');
    parts.push_back(path.substr(0, slash));
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash);
  }
  return parts;
}

HttpResponse route(SessionStore& store, std::string_view method, std::string_view path,
                   std::string_view body) {
  const auto parts = split_path(path);
  const bool get = method == "GET";
  const bool post = method == "POST";

  if (parts.size() == 1 && parts[0] == "health") {
    if (!get) return error_response(405, "method_not_allowed", "use GET");
    return json_response(200, {{"status", "ok"}, {"sessions", store.session_ids().size()}});
  }
  if (parts.size() == 1 && parts[0] == "export") {
    if (!get) return error_response(405, "method_not_allowed", "use GET");
    return {200, store.export_csv(), "text/csv"};
  }
  if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) {
    return error_response(404, "not_found", fmt::format("no route for '{}'", path));
  }
  if (parts.size() == 1) {
    if (!post) return error_response(405, "method_not_allowed", "use POST");
    const auto doc = parse_body(body, true);
    std::string assessor;
    if (doc.contains("assessor_id")) assessor = string_field(doc, "assessor_id");
    const auto id = store.create(assessor);
    const auto snap = store.snapshot(id);
    return json_response(201, {{"session_id", id},
                               {"assessor_id", snap.assessor_id},
                               {"created", snap.created}});
  }
  const std::string id(parts[1]);
  if (parts.size() == 2) {
    if (!get) return error_response(405, "method_not_allowed", "use GET");
    return json_response(200, snapshot_json(store.snapshot(id)));
  }
  if (parts[2] == "evaluations") {
    if (!post) return error_response(405, "method_not_allowed", "use POST");
    const auto doc = parse_body(body, false);
    AppendRequest req;
    req.sample = string_field(doc, "sample");
    req.attribute = string_field(doc, "attribute");
    req.liking = int_field(doc, "liking");
    req.jar = int_field(doc, "jar");
    if (const auto it = doc.find("revision"); it != doc.end()) {
      if (!it->is_boolean()) throw Error(ErrorCode::validation, "field 'revision': must be boolean");
      req.revision = it->get<bool>();
    }
    const auto ack = store.append(id, req);
    return json_response(200, {{"warnings", hits_json(ack.warnings)},
                               {"running_tau", tau_json(ack.running_tau)},
                               {"n", ack.n},
                               {"revised", ack.revised}});
  }
  if (parts[2] == "close") {
    if (!post) return error_response(405, "method_not_allowed", "use POST");
    const auto result = store.close(id);
    return json_response(
        200, {{"session_id", id},
              {"verdict", verdict_json(result.snapshot)},
              {"n", result.fragment.size()},
              {"export", result.export_path ? ordered_json(result.export_path->string())
                                            : ordered_json("/export")}});
  }
  return error_response(404, "not_found", fmt::format("no route for '{}'", path));
}

}  // namespace

HttpResponse handle_request(SessionStore& store, std::string_view method, std::string_view path,
                            std::string_view body) {
  try {
    return route(store, method, path, body);
  } catch (const Error& e) {
    return error_response(status_of(e.code()), to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal_error", e.what());
  }
}

struct HttpServer::Impl {
  SessionStore& store;
  httplib::Server server;
  explicit Impl(SessionStore& s) : store(s) {}
};

HttpServer::HttpServer(SessionStore& store) : impl_(std::make_unique<Impl>(store)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    const auto out = handle_request(impl_->store, req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  impl_->server.Get(R"(/.*)", handler);
  impl_->server.Post(R"(/.*)", handler);
  // httplib's default adds SO_REUSEPORT, which lets a second server share a
  // busy port. Plain SO_REUSEADDR keeps restarts quick without that.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) {
    throw Error(ErrorCode::io, fmt::format("cannot bind {}:{}", host, port));
  }
  return bound;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace jarcon
