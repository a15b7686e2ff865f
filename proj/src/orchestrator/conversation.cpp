#include "fincollab/orchestrator/conversation.hpp"

#include "fincollab/orchestrator/prompts.hpp"

#include <algorithm>

namespace fincollab::orchestrator {

ConversationError::ConversationError(ErrorCode code, const std::string &message, Transcript partial,
                                     std::size_t turn)
    : Error(code, message), transcript_(std::move(partial)), turn_(turn) {}

namespace {

constexpr std::string_view kSpace = " \t\r\n";

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

bool ends_turn(const Message &m) { return m.scope.is_main() && m.from_agent() && m.tool_calls.empty(); }

std::vector<Message> visible_to_turn(const Transcript &t, const Scope &scope) {
  if (scope.is_nested()) return nested_messages(t, scope.nesting_id);
  std::vector<Message> out;
  for (const auto &m : t.messages()) {
    if (m.scope.is_main()) out.push_back(m);
  }
  return out;
}

std::vector<ToolSpec> offered_tools(const AgentSpec &agent, const RunContext &ctx) {
  if (agent.allowed_tools.empty()) return {};
  return ctx.tools->specs({agent.allowed_tools.begin(), agent.allowed_tools.end()});
}

bool tool_error_for_agent(ErrorCode code) {
  return code == ErrorCode::ArgValidation || code == ErrorCode::LeakageViolation ||
         code == ErrorCode::ProviderError || code == ErrorCode::UnknownTool;
}

/// One agent turn: respond, run any requested tools, repeat until the agent
/// answers without tool calls. `responses` counts model calls against `cap`.
Message take_turn(Transcript &t, const AgentSpec &agent, const Scope &scope, const RunContext &ctx,
                  std::size_t &responses, std::size_t cap, ErrorCode cap_code) {
  const auto specs = offered_tools(agent, ctx);
  while (true) {
    if (responses >= cap) {
      const auto what = std::string(scope.is_main() ? "main" : "nested") + " turn cap of " + std::to_string(cap) +
                        " reached waiting on " + agent.name;
      throw ConversationError(cap_code, what, finish(std::move(t), TranscriptStatus::TurnCapExceeded), responses);
    }
    backend::ChatRequest request;
    request.agent = agent.name;
    request.system_prompt = agent.system_prompt;
    request.context = visible_to_turn(t, scope);
    request.tool_specs = specs;
    request.model_params = ctx.model_params;
    request.metadata = ctx.metadata;
    request.metadata["rank"] = std::string(to_string(agent.rank));
    request.metadata["scope"] = scope.is_main() ? "main" : "nested";
    backend::ChatResponse response;
    try {
      response = ctx.backend->complete(request);
      backend::validate_response(request, response);
    } catch (const Error &e) {
      throw ConversationError(e.code(), "turn " + std::to_string(responses) + " (" + agent.name + "): " + e.what(),
                              std::move(t), responses);
    }
    ++responses;

    Message msg{t.next_seq(), agent.name, std::move(response.content), std::move(response.tool_calls), {}, scope};
    for (std::size_t i = 0; i < msg.tool_calls.size(); ++i) {
      if (msg.tool_calls[i].id.empty()) msg.tool_calls[i].id = "call_" + std::to_string(msg.seq) + "_" + std::to_string(i);
    }
    t = append_message(std::move(t), msg);
    if (msg.tool_calls.empty()) return msg;

    Message results{t.next_seq(), std::string(kToolSender), "", {}, {}, scope};
    for (const auto &call : msg.tool_calls) {
      try {
        results.tool_results.push_back(ctx.tools->invoke(call, ctx.invocation));
      } catch (const Error &e) {
        if (!tool_error_for_agent(e.code())) throw;
        results.tool_results.push_back(ToolResult{call.id, call.name, "", std::string(e.what())});
      }
    }
    t = append_message(std::move(t), std::move(results));
  }
}

std::uint64_t next_nesting_id(const Transcript &t) {
  std::uint64_t id = 0;
  for (const auto &m : t.messages()) {
    if (m.scope.is_nested()) id = std::max(id, m.scope.nesting_id);
  }
  return id + 1;
}

const AgentSpec &find_member(const std::vector<AgentSpec> &all, const std::string &name) {
  for (const auto &m : all) {
    if (m.name == name) return m;
  }
  throw Error(ErrorCode::UnknownAgent, name);
}

}  // namespace

std::string next_speaker(const GroupStructure &structure, const Transcript &transcript) {
  if (!is_round_robin(structure)) {
    throw Error(ErrorCode::NotRoundRobin, std::string(to_string(kind_of(structure))) + " groups have no rotation");
  }
  if (!transcript.running()) throw Error(ErrorCode::InvalidArgument, "transcript already finished");
  const auto names = member_names(structure);
  const auto turns = static_cast<std::size_t>(
      std::count_if(transcript.messages().begin(), transcript.messages().end(), ends_turn));
  return names[turns % names.size()];
}

bool contains_termination_token(std::string_view text) { return text.find(kTerminationToken) != std::string_view::npos; }

std::optional<Order> parse_order(std::string_view text) {
  if (contains_termination_token(text)) return std::nullopt;
  std::size_t line_end = text.size();
  while (true) {
    const auto nl = line_end == 0 ? std::string_view::npos : text.rfind('\n', line_end - 1);
    const std::size_t line_start = nl == std::string_view::npos ? 0 : nl + 1;
    const auto line = text.substr(line_start, line_end - line_start);
    const auto lead = line.find_first_not_of(" \t");
    if (lead != std::string_view::npos && line[lead] == '[') {
      const auto close = line.find(']', lead);
      const auto name = close == std::string_view::npos ? std::string_view{} : trim(line.substr(lead + 1, close - lead - 1));
      if (!name.empty() && name.find('[') == std::string_view::npos) {
        auto instruction = trim(text.substr(line_start + close + 1));
        if (!instruction.empty() && instruction.front() == ':') instruction = trim(instruction.substr(1));
        if (instruction.empty()) return std::nullopt;
        return Order{std::string(name), std::string(instruction)};
      }
    }
    if (line_start == 0) return std::nullopt;
    line_end = line_start - 1;
  }
}

bool detect_termination(const GroupStructure &structure, const Message &msg) {
  return msg.from_agent() && msg.scope.is_main() && contains_termination_token(msg.content) &&
         has_termination_authority(structure, msg.sender);
}

std::string strip_termination(std::string_view text) {
  std::string out(text);
  const std::string token = kTerminationToken;
  for (auto pos = out.find(token); pos != std::string::npos; pos = out.find(token, pos)) out.erase(pos, token.size());
  return std::string(trim(out));
}

NestedChatResult nested_chat(Transcript t, const AgentSpec &leader, const AgentSpec &subordinate, const Order &order,
                             const RunContext &ctx) {
  if (leader.rank != Rank::Leader) throw Error(ErrorCode::InvalidArgument, leader.name + " is not a leader");
  if (!t.has_agent(subordinate.name) || subordinate.name == leader.name) {
    throw Error(ErrorCode::UnknownAgent, subordinate.name + " is not in the group");
  }
  const auto id = next_nesting_id(t);
  const auto scope = Scope::nested(leader.name, subordinate.name, id);
  t = append_message(std::move(t), Message{t.next_seq(), leader.name, order.instruction, {}, {}, scope});
  std::size_t responses = 0;
  const auto report =
      take_turn(t, subordinate, scope, ctx, responses, ctx.caps.nested_turns, ErrorCode::NestedTurnCapExceeded);
  Message final_response{t.next_seq(), subordinate.name, report.content, {}, {}, Scope::main()};
  t = append_message(std::move(t), final_response);
  return {std::move(t), id, std::move(final_response)};
}

ConversationOutcome run_conversation(const GroupStructure &structure, const std::string &task_prompt,
                                     const RunContext &ctx) {
  validate_structure(structure);
  if (!ctx.backend || !ctx.tools) throw Error(ErrorCode::InvalidArgument, "run context needs a backend and tools");
  const auto all = members(structure);
  for (const auto &m : all) {
    for (const auto &tool : m.allowed_tools) {
      if (!ctx.tools->contains(tool)) throw Error(ErrorCode::UnknownTool, m.name + " is allowed unknown tool " + tool);
    }
  }

  ConversationOutcome out;
  Transcript t(all);
  t = append_message(std::move(t), Message{0, std::string(kUserSender), task_prompt, {}, {}, Scope::main()});
  std::size_t turns = 0;
  const auto cap = ctx.caps.main_turns;

  auto finished = [&](const Message &m) {
    out.final_report = strip_termination(m.content);
    out.terminated_by = m.sender;
    out.turns_used = turns;
    out.transcript = finish(std::move(t), TranscriptStatus::Terminated);
    return std::move(out);
  };

  switch (kind_of(structure)) {
    case StructureKind::Single:
      while (true) {
        const auto m = take_turn(t, all[0], Scope::main(), ctx, turns, cap, ErrorCode::TurnCapExceeded);
        if (detect_termination(structure, m)) return finished(m);
      }
    case StructureKind::Vertical: {
      const auto &leader = all[0];
      while (true) {
        const auto m = take_turn(t, leader, Scope::main(), ctx, turns, cap, ErrorCode::TurnCapExceeded);
        if (detect_termination(structure, m)) return finished(m);
        const auto order = parse_order(m.content);
        if (!order) continue;
        const auto sub = std::find_if(all.begin() + 1, all.end(), [&](const AgentSpec &a) { return a.name == order->target; });
        if (sub == all.end()) {
          out.warnings.push_back("seq " + std::to_string(m.seq) + ": order to unknown member '" + order->target + "' skipped");
          continue;
        }
        t = nested_chat(std::move(t), leader, *sub, *order, ctx).transcript;
      }
    }
    default:
      while (true) {
        const auto &speaker = find_member(all, next_speaker(structure, t));
        const auto m = take_turn(t, speaker, Scope::main(), ctx, turns, cap, ErrorCode::TurnCapExceeded);
        if (detect_termination(structure, m)) return finished(m);
      }
  }
}

}  // namespace fincollab::orchestrator
