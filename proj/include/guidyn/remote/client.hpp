#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "guidyn/env/serialize.hpp"

namespace guidyn {

struct RemoteConfig {
  std::string url;    // http(s)://host[:port]/path
  std::string token;  // sent as a bearer token when non-empty
  int max_retries = 3;
  int timeout_ms = 30000;
  int backoff_ms = 200;  // doubled after each failed attempt
  int max_in_flight = 4;
};

void validate(const RemoteConfig& config);

// Fills url and token from the named environment variables. Throws ConfigError when the
// url variable is unset.
RemoteConfig remote_config_from_env(RemoteConfig base, const char* url_var = "GUIDYN_REMOTE_URL",
                                    const char* token_var = "GUIDYN_REMOTE_TOKEN");

enum class ReplyStatus { kOk, kUnavailable };

struct RemoteReply {
  ReplyStatus status = ReplyStatus::kUnavailable;
  std::string body;   // response body on kOk
  std::string error;  // last failure on kUnavailable
  int attempts = 0;
};

// POSTs JSON documents with an Idempotency-Key header. Connection failures, 429 and 5xx
// responses are retried up to max_retries times; other statuses fail immediately.
class RemoteClient {
 public:
  explicit RemoteClient(RemoteConfig config);

  RemoteReply post(const Json& body, const std::string& idempotency_key) const;
  const RemoteConfig& config() const noexcept { return config_; }

 private:
  RemoteConfig config_;
  std::string origin_;
  std::string path_;
};

// {"encoding": "gray8", "width", "height", "data": base64 of row-major bytes}.
Json raster_to_json(const Raster& raster);

// The "output" string of a response document, or empty when the body is not such a document.
std::optional<std::string> reply_output(std::string_view body);

}  // namespace guidyn
