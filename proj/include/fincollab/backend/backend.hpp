#pragma once

#include "fincollab/core/error.hpp"
#include "fincollab/core/message.hpp"
#include "fincollab/core/tool.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fincollab::backend {

struct ModelParams {
  std::string model = "gpt-4-1106-preview";
  double temperature = 0.0;
  int max_tokens = 2048;

  friend bool operator==(const ModelParams &, const ModelParams &) = default;
};

struct ChatRequest {
  /// Name of the agent the completion is for. Messages sent by this agent are
  /// the assistant side of the exchange.
  std::string agent;
  std::string system_prompt;
  /// Already visibility-filtered, ordered by seq.
  std::vector<Message> context;
  std::vector<ToolSpec> tool_specs;
  ModelParams model_params;
  /// Conversation-level annotations (ticker, task, structure, rank, ...).
  /// Never sent over the wire; scripted backends match and substitute on them.
  std::map<std::string, std::string> metadata;
};

struct ChatResponse {
  std::string content;
  std::vector<ToolCall> tool_calls;

  friend bool operator==(const ChatResponse &, const ChatResponse &) = default;
};

/// Throws Error{InvalidRequest} when the request breaks its invariants
/// (context out of seq order, duplicate tool names).
void validate_request(const ChatRequest &request);

/// Throws Error{UnknownToolRequested} if the response names a tool absent from
/// the request, Error{DecodeError} if it is empty.
void validate_response(const ChatRequest &request, const ChatResponse &response);

class BackendFailure : public Error {
 public:
  BackendFailure(bool transient, const std::string &message)
      : Error(ErrorCode::BackendFailure, (transient ? "transient: " : "fatal: ") + message),
        transient_(transient) {}

  [[nodiscard]] bool transient() const noexcept { return transient_; }

 private:
  bool transient_;
};

/// Chat-completion endpoint. Implementations are stateless per call and must
/// be safe to call concurrently.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual ChatResponse complete(const ChatRequest &request) const = 0;
};

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{200};
  double multiplier = 2.0;
};

/// Retries transient BackendFailures with exponential backoff; fatal failures
/// and other errors pass straight through.
class RetryingBackend final : public ChatBackend {
 public:
  RetryingBackend(const ChatBackend &inner, RetryPolicy policy) : inner_(inner), policy_(policy) {}

  ChatResponse complete(const ChatRequest &request) const override;

 private:
  const ChatBackend &inner_;
  RetryPolicy policy_;
};

}  // namespace fincollab::backend
