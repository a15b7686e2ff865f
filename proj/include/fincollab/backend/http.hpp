#pragma once

#include "fincollab/backend/backend.hpp"

#include <chrono>

namespace fincollab::backend {

struct HttpBackendConfig {
  /// Base URL of any chat-completions compatible API, e.g.
  /// "https://api.openai.com/v1"; "/chat/completions" is appended.
  std::string base_url = "https://api.openai.com/v1";
  /// Environment variable holding the bearer token. Unset or empty means no
  /// Authorization header (local servers).
  std::string api_key_env = "OPENAI_API_KEY";
  std::chrono::seconds timeout{120};
};

/// Live backend. Transport errors, 429 and 5xx become transient
/// BackendFailures; other non-2xx statuses are fatal. Wrap in RetryingBackend
/// for the retry behaviour.
class HttpChatBackend final : public ChatBackend {
 public:
  explicit HttpChatBackend(HttpBackendConfig config);

  ChatResponse complete(const ChatRequest &request) const override;

  [[nodiscard]] const std::string &endpoint() const { return endpoint_; }

 private:
  HttpBackendConfig config_;
  std::string endpoint_;
};

}  // namespace fincollab::backend
