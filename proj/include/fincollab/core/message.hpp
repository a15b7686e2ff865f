#pragma once

#include "fincollab/core/tool.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fincollab {

inline constexpr std::string_view kUserSender = "user";
inline constexpr std::string_view kToolSender = "tool";

enum class Rank { Peer, Leader, Subordinate };

std::string_view to_string(Rank rank) noexcept;

struct AgentSpec {
  std::string name;
  std::string role_description;
  std::string system_prompt;
  std::set<std::string> allowed_tools;
  Rank rank = Rank::Peer;

  friend bool operator==(const AgentSpec &, const AgentSpec &) = default;
};

/// Visibility scope of a message. Main is shared by the whole group; a
/// nested scope is private to one leader/subordinate exchange.
struct Scope {
  enum class Kind { Main, Nested };

  Kind kind = Kind::Main;
  std::string leader;
  std::string subordinate;
  std::uint64_t nesting_id = 0;

  static Scope main() { return {}; }
  static Scope nested(std::string leader, std::string subordinate, std::uint64_t nesting_id) {
    return {Kind::Nested, std::move(leader), std::move(subordinate), nesting_id};
  }

  [[nodiscard]] bool is_main() const { return kind == Kind::Main; }
  [[nodiscard]] bool is_nested() const { return kind == Kind::Nested; }

  /// "main" or "nested:<leader>:<subordinate>:<nesting_id>".
  [[nodiscard]] std::string to_string() const;
  static Scope parse(std::string_view text);

  friend bool operator==(const Scope &, const Scope &) = default;
};

struct Message {
  std::uint64_t seq = 0;
  std::string sender;
  std::string content;
  std::vector<ToolCall> tool_calls;
  std::vector<ToolResult> tool_results;
  Scope scope;

  [[nodiscard]] bool from_user() const { return sender == kUserSender; }
  [[nodiscard]] bool from_tool() const { return sender == kToolSender; }
  [[nodiscard]] bool from_agent() const { return !from_user() && !from_tool(); }

  friend bool operator==(const Message &, const Message &) = default;
};

/// Message as one JSON object; the persistence line format.
Json to_json(const Message &msg);
Message message_from_json(const Json &j);

}  // namespace fincollab
