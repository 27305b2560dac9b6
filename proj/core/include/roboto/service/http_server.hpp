#pragma once

#include <memory>
#include <string>

#include "roboto/service/service.hpp"

namespace roboto::service {

/// Serves a Service over HTTP. Requests run on the server's worker threads.
class HttpServer {
public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to `port` (0 picks a free port) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks until `stop` is called.
  bool listen();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace roboto::service
