#pragma once

#include "fincollab/backend/backend.hpp"
#include "fincollab/core/transcript.hpp"
#include "fincollab/orchestrator/structure.hpp"
#include "fincollab/toolkit/registry.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fincollab::orchestrator {

struct Order {
  std::string target;
  std::string instruction;

  friend bool operator==(const Order &, const Order &) = default;
};

struct Caps {
  std::size_t main_turns = 40;
  std::size_t nested_turns = 10;
};

/// Everything a conversation needs besides the structure and the task.
struct RunContext {
  const backend::ChatBackend *backend = nullptr;
  const toolkit::ToolRegistry *tools = nullptr;
  toolkit::InvocationContext invocation;
  backend::ModelParams model_params;
  /// Copied into every ChatRequest, with "rank" and "scope" added per call.
  std::map<std::string, std::string> metadata;
  Caps caps;
};

struct ConversationOutcome {
  std::string final_report;
  Transcript transcript;
  /// Main-loop model responses, tool rounds included.
  std::size_t turns_used = 0;
  std::string terminated_by;
  /// Orders to unknown members and similar recoverable oddities.
  std::vector<std::string> warnings;
};

/// Raised when a conversation cannot finish; carries what happened so far.
/// Codes: TurnCapExceeded, NestedTurnCapExceeded, BackendFailure,
/// UnknownToolRequested, DecodeError.
class ConversationError : public Error {
 public:
  ConversationError(ErrorCode code, const std::string &message, Transcript partial, std::size_t turn);

  [[nodiscard]] const Transcript &transcript() const noexcept { return transcript_; }
  [[nodiscard]] std::size_t turn() const noexcept { return turn_; }

 private:
  Transcript transcript_;
  std::size_t turn_;
};

/// Round-robin speaker: members cycle in declaration order, one step per
/// Main-scope agent message that ended a turn (had no tool calls).
/// Throws Error{NotRoundRobin} for Single and Vertical, Error{InvalidArgument}
/// for a finished transcript.
std::string next_speaker(const GroupStructure &structure, const Transcript &transcript);

/// Last line of the form "[<name>] <order>" (leading whitespace allowed);
/// the instruction runs to the end of the response. None when the text holds
/// TERMINATE, when no such line exists, or when the instruction is empty.
std::optional<Order> parse_order(std::string_view text);

bool contains_termination_token(std::string_view text);
bool detect_termination(const GroupStructure &structure, const Message &msg);

/// Content with every TERMINATE token removed and surrounding space trimmed.
std::string strip_termination(std::string_view text);

struct NestedChatResult {
  Transcript transcript;
  std::uint64_t nesting_id = 0;
  /// The subordinate's report, re-appended to Main scope.
  Message final_response;
};

/// Runs one leader/subordinate exchange opened by `order` and re-appends the
/// subordinate's report to Main. Throws ConversationError{NestedTurnCapExceeded}
/// once the subordinate has answered caps.nested_turns times without reporting.
NestedChatResult nested_chat(Transcript transcript, const AgentSpec &leader, const AgentSpec &subordinate,
                             const Order &order, const RunContext &ctx);

/// Drives a whole conversation under `structure`. The transcript opens with
/// the task prompt from "user". Throws ConversationError or Error{UnknownTool}
/// if a member is allowed a tool the registry lacks.
ConversationOutcome run_conversation(const GroupStructure &structure, const std::string &task_prompt,
                                     const RunContext &ctx);

}  // namespace fincollab::orchestrator
