#include "fincollab/backend/http.hpp"

#include "fincollab/backend/wire.hpp"
#include "fincollab/net/http.hpp"

#include <cstdlib>

namespace fincollab::backend {

HttpChatBackend::HttpChatBackend(HttpBackendConfig config) : config_(std::move(config)) {
  const auto url = net::parse_url(config_.base_url);
  endpoint_ = url.origin + url.path + "/chat/completions";
}

ChatResponse HttpChatBackend::complete(const ChatRequest &request) const {
  validate_request(request);
  net::Headers headers;
  if (const char *key = std::getenv(config_.api_key_env.c_str()); key != nullptr && *key != '\0') {
    headers.emplace_back("Authorization", std::string("Bearer ") + key);
  }
  const auto response =
      net::post(endpoint_, encode_request(request).dump(), "application/json", headers, config_.timeout);
  if (response.transport_error) {
    throw BackendFailure(true, endpoint_ + ": " + *response.transport_error);
  }
  if (response.status == 429 || response.status >= 500) {
    throw BackendFailure(true, endpoint_ + " returned HTTP " + std::to_string(response.status));
  }
  if (!response.ok()) {
    throw BackendFailure(false, endpoint_ + " returned HTTP " + std::to_string(response.status) + ": " +
                                    response.body.substr(0, 200));
  }
  const Json body = Json::parse(response.body, nullptr, false);
  if (body.is_discarded()) {
    throw Error(ErrorCode::DecodeError, "$: response body is not JSON");
  }
  return decode_response(body);
}

}  // namespace fincollab::backend
