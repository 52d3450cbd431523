#pragma once

// Loopback HTTP server for exercising remote clients in tests.

#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace guidyn::testing {

class StubServer {
 public:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  explicit StubServer(Handler handler) {
    server_.Post(".*", [handler](const httplib::Request& req, httplib::Response& res) {
      handler(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    if (port_ <= 0) throw std::runtime_error("stub server could not bind");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  std::string url(const std::string& path = "/v1/complete") const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

// A reply document {"output": text}.
inline void reply_output(httplib::Response& res, const std::string& text) {
  nlohmann::ordered_json j;
  j["output"] = text;
  res.set_content(j.dump(), "application/json");
}

}  // namespace guidyn::testing
