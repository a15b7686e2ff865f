#pragma once

#include "fincollab/backend/backend.hpp"

#include <filesystem>
#include <optional>
#include <regex>

namespace fincollab::backend {

/// One row of a script. Every populated matcher must hold for the rule to
/// fire; unpopulated matchers are wildcards.
struct ScriptRule {
  std::optional<std::string> agent;
  /// The agent's turn index: how many messages in the request context it sent.
  std::optional<std::size_t> turn;
  /// ECMAScript regex searched in the text of the last context message.
  std::optional<std::string> last_message;
  /// Every entry must equal the request metadata value for the same key.
  std::map<std::string, std::string> metadata;
  ChatResponse reply;
};

/// Deterministic backend driven by an ordered rule table; the first matching
/// rule answers and the default answers when nothing matches. Reply text and
/// string arguments may use {{key}} placeholders, filled from the request
/// metadata plus "agent" and "turn".
///
/// Script file shape:
///   {"rules": [{"agent": "A", "turn": 0, "last_message": "fetch",
///               "metadata": {"task": "risk"},
///               "reply": {"content": "...", "tool_calls": [
///                   {"name": "get_stock_prices", "arguments": {...}}]}}],
///    "default": {"content": "TERMINATE"}}
class ScriptedBackend final : public ChatBackend {
 public:
  ScriptedBackend(std::vector<ScriptRule> rules, ChatResponse default_reply);

  /// Throws Error{ScriptError}.
  static ScriptedBackend from_json(const Json &script);
  static ScriptedBackend from_file(const std::filesystem::path &path);

  ChatResponse complete(const ChatRequest &request) const override;

  [[nodiscard]] std::size_t rule_count() const { return rules_.size(); }

 private:
  struct CompiledRule {
    ScriptRule rule;
    std::optional<std::regex> pattern;
  };

  std::vector<CompiledRule> rules_;
  ChatResponse default_reply_;
};

/// Turn index as the scripted backend computes it.
std::size_t turn_index(const ChatRequest &request);
/// Text of the last context message (content, or tool payloads for tool
/// messages); empty when the context is empty.
std::string last_message_text(const ChatRequest &request);

}  // namespace fincollab::backend
