#include "fincollab/backend/backend.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace fincollab::backend {

void validate_request(const ChatRequest &request) {
  for (std::size_t i = 1; i < request.context.size(); ++i) {
    if (request.context[i].seq <= request.context[i - 1].seq) {
      throw Error(ErrorCode::InvalidRequest, "context not ordered by seq at index " + std::to_string(i));
    }
  }
  std::set<std::string> names;
  for (const auto &spec : request.tool_specs) {
    if (!names.insert(spec.name).second) {
      throw Error(ErrorCode::InvalidRequest, "duplicate tool spec '" + spec.name + "'");
    }
  }
}

void validate_response(const ChatRequest &request, const ChatResponse &response) {
  if (response.content.empty() && response.tool_calls.empty()) {
    throw Error(ErrorCode::DecodeError, "response has neither content nor tool calls");
  }
  for (const auto &call : response.tool_calls) {
    const bool offered = std::any_of(request.tool_specs.begin(), request.tool_specs.end(),
                                     [&](const ToolSpec &s) { return s.name == call.name; });
    if (!offered) {
      throw Error(ErrorCode::UnknownToolRequested, "'" + call.name + "' was not offered to " + request.agent);
    }
  }
}

ChatResponse RetryingBackend::complete(const ChatRequest &request) const {
  auto backoff = policy_.initial_backoff;
  for (int attempt = 0;; ++attempt) {
    try {
      return inner_.complete(request);
    } catch (const BackendFailure &failure) {
      if (!failure.transient() || attempt >= policy_.max_retries) {
        throw;
      }
    }
    if (backoff.count() > 0) {
      std::this_thread::sleep_for(backoff);
    }
    backoff = std::chrono::milliseconds(static_cast<long long>(static_cast<double>(backoff.count()) * policy_.multiplier));
  }
}

}  // namespace fincollab::backend
