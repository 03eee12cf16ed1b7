#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "jarcon/live_service.hpp"

namespace jarcon {

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON, or CSV for GET /export
  std::string content_type = "application/json";
};

/// Routes one request against the store without any socket involved:
///   POST /sessions                      {"assessor_id"?} -> 201 {"session_id", ...}
///   POST /sessions/{id}/evaluations     {"sample","attribute","liking","jar","revision"?}
///   GET  /sessions/{id}                 snapshot
///   POST /sessions/{id}/close           verdict and export reference
///   GET  /export                        closed sessions as long CSV
///   GET  /health                        {"status":"ok"}
/// Errors answer {"error_code", "message"} with 400, 404, 405 or 409.
HttpResponse handle_request(SessionStore& store, std::string_view method, std::string_view path,
                            std::string_view body);

/// Blocking HTTP listener over handle_request.
class HttpServer {
 public:
  explicit HttpServer(SessionStore& store);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds host:port (port 0 picks a free one) and returns the bound port.
  /// Throws Error(io) when the address is unavailable.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace jarcon
