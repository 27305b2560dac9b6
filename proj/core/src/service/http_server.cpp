#include "roboto/service/http_server.hpp"

#include <httplib.h>

namespace roboto::service {

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;

  explicit Impl(Service& s) : service(s)
  {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      Response out = service.handle(req.method, req.path, req.body);
      res.status = out.status;
      if (!out.body.empty()) res.set_content(out.body, "application/json");
    };
    server.Get(".*", forward);
    server.Post(".*", forward);
    server.Delete(".*", forward);
  }
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port)
{
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen()
{
  return impl_->server.listen_after_bind();
}

void HttpServer::stop()
{
  impl_->server.stop();
}

}  // namespace roboto::service
