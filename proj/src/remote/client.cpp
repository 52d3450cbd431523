#include "guidyn/remote/client.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/io.hpp"
#include "httplib.h"

namespace guidyn {

void validate(const RemoteConfig& config) {
  if (config.url.rfind("http://", 0) != 0 && config.url.rfind("https://", 0) != 0) {
    throw ConfigError("remote url must start with http:// or https://");
  }
  if (config.max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (config.timeout_ms < 1) throw ConfigError("timeout_ms must be >= 1");
  if (config.backoff_ms < 0) throw ConfigError("backoff_ms must be >= 0");
  if (config.max_in_flight < 1) throw ConfigError("max_in_flight must be >= 1");
}

RemoteConfig remote_config_from_env(RemoteConfig base, const char* url_var,
                                    const char* token_var) {
  const char* url = std::getenv(url_var);
  if (url == nullptr || *url == '\0') {
    throw ConfigError(std::string("remote mode needs the ") + url_var + " environment variable");
  }
  base.url = url;
  if (const char* token = std::getenv(token_var)) base.token = token;
  validate(base);
  return base;
}

RemoteClient::RemoteClient(RemoteConfig config) : config_(std::move(config)) {
  validate(config_);
  const std::size_t scheme_end = config_.url.find("://") + 3;
  const std::size_t slash = config_.url.find('/', scheme_end);
  origin_ = config_.url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : config_.url.substr(slash);
}

RemoteReply RemoteClient::post(const Json& body, const std::string& idempotency_key) const {
  httplib::Client client(origin_);
  const auto timeout = std::chrono::milliseconds(config_.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Headers headers{{"Idempotency-Key", idempotency_key}};
  if (!config_.token.empty()) headers.emplace("Authorization", "Bearer " + config_.token);
  const std::string payload = body.dump();

  RemoteReply reply;
  int backoff = config_.backoff_ms;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0 && backoff > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
      backoff *= 2;
    }
    ++reply.attempts;
    auto res = client.Post(path_, headers, payload, "application/json");
    if (!res) {
      reply.error = "transport: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) {
      reply.status = ReplyStatus::kOk;
      reply.body = res->body;
      reply.error.clear();
      return reply;
    }
    reply.error = "http status " + std::to_string(res->status);
    if (res->status != 429 && res->status < 500) break;
  }
  return reply;
}

Json raster_to_json(const Raster& raster) {
  Json j;
  j["encoding"] = "gray8";
  j["width"] = raster.width;
  j["height"] = raster.height;
  j["data"] = base64_encode(raster.pixels);
  return j;
}

std::optional<std::string> reply_output(std::string_view body) {
  const Json doc = Json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return {};
  const auto it = doc.find("output");
  if (it == doc.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

}  // namespace guidyn
