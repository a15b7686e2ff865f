#include "fincollab/backend/scripted.hpp"

#include <algorithm>
#include <fstream>

namespace fincollab::backend {

namespace {

[[noreturn]] void script_fail(const std::string &what) { throw Error(ErrorCode::ScriptError, what); }

std::string substitute(std::string text, const std::map<std::string, std::string> &vars) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const auto open = text.find("{{", pos);
    if (open == std::string::npos) {
      out.append(text, pos);
      break;
    }
    const auto close = text.find("}}", open + 2);
    if (close == std::string::npos) {
      out.append(text, pos);
      break;
    }
    out.append(text, pos, open - pos);
    const auto key = text.substr(open + 2, close - open - 2);
    if (auto it = vars.find(key); it != vars.end()) {
      out += it->second;
    } else {
      out.append(text, open, close + 2 - open);
    }
    pos = close + 2;
  }
  return out;
}

Json substitute_json(const Json &value, const std::map<std::string, std::string> &vars) {
  if (value.is_string()) {
    return substitute(value.get<std::string>(), vars);
  }
  if (value.is_array() || value.is_object()) {
    Json out = value;
    for (auto it = out.begin(); it != out.end(); ++it) {
      *it = substitute_json(*it, vars);
    }
    return out;
  }
  return value;
}

ChatResponse reply_from_json(const Json &j, const std::string &where) {
  if (!j.is_object()) {
    script_fail(where + ": reply must be an object");
  }
  ChatResponse reply;
  reply.content = j.value("content", "");
  if (j.contains("tool_calls")) {
    for (const auto &c : j["tool_calls"]) {
      if (!c.contains("name") || !c["name"].is_string()) {
        script_fail(where + ": tool call without a name");
      }
      ToolCall call;
      call.id = c.value("id", "");
      call.name = c["name"].get<std::string>();
      call.arguments = c.value("arguments", Json::object());
      if (!call.arguments.is_object()) {
        script_fail(where + ": tool call arguments must be an object");
      }
      reply.tool_calls.push_back(std::move(call));
    }
  }
  if (reply.content.empty() && reply.tool_calls.empty()) {
    script_fail(where + ": reply needs content or tool_calls");
  }
  return reply;
}

}  // namespace

std::size_t turn_index(const ChatRequest &request) {
  return static_cast<std::size_t>(std::count_if(request.context.begin(), request.context.end(),
                                                [&](const Message &m) { return m.sender == request.agent; }));
}

std::string last_message_text(const ChatRequest &request) {
  if (request.context.empty()) {
    return {};
  }
  const auto &last = request.context.back();
  if (!last.from_tool()) {
    return last.content;
  }
  std::string text = last.content;
  for (const auto &r : last.tool_results) {
    if (!text.empty()) {
      text += '\n';
    }
    text += r.error ? *r.error : r.payload;
  }
  return text;
}

ScriptedBackend::ScriptedBackend(std::vector<ScriptRule> rules, ChatResponse default_reply)
    : default_reply_(std::move(default_reply)) {
  if (default_reply_.content.empty() && default_reply_.tool_calls.empty()) {
    script_fail("default reply must not be empty");
  }
  for (auto &rule : rules) {
    CompiledRule compiled{std::move(rule), std::nullopt};
    if (compiled.rule.last_message) {
      try {
        compiled.pattern.emplace(*compiled.rule.last_message, std::regex::ECMAScript);
      } catch (const std::regex_error &e) {
        script_fail("bad last_message pattern '" + *compiled.rule.last_message + "': " + e.what());
      }
    }
    rules_.push_back(std::move(compiled));
  }
}

ScriptedBackend ScriptedBackend::from_json(const Json &script) {
  if (!script.is_object()) {
    script_fail("script must be an object");
  }
  if (!script.contains("default")) {
    script_fail("script has no default rule");
  }
  std::vector<ScriptRule> rules;
  const Json rules_json = script.value("rules", Json::array());
  for (std::size_t i = 0; i < rules_json.size(); ++i) {
    const auto &r = rules_json[i];
    const std::string where = "rules[" + std::to_string(i) + "]";
    ScriptRule rule;
    if (r.contains("agent")) rule.agent = r["agent"].get<std::string>();
    if (r.contains("turn")) {
      if (!r["turn"].is_number_unsigned()) {
        script_fail(where + ": turn must be a non-negative integer");
      }
      rule.turn = r["turn"].get<std::size_t>();
    }
    if (r.contains("last_message")) rule.last_message = r["last_message"].get<std::string>();
    if (r.contains("metadata")) {
      for (const auto &[key, value] : r["metadata"].items()) {
        rule.metadata[key] = value.get<std::string>();
      }
    }
    if (!r.contains("reply")) {
      script_fail(where + ": missing reply");
    }
    rule.reply = reply_from_json(r["reply"], where);
    rules.push_back(std::move(rule));
  }
  return ScriptedBackend(std::move(rules), reply_from_json(script["default"], "default"));
}

ScriptedBackend ScriptedBackend::from_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot read script " + path.string());
  }
  Json script = Json::parse(in, nullptr, false);
  if (script.is_discarded()) {
    script_fail(path.string() + ": not valid JSON");
  }
  return from_json(script);
}

ChatResponse ScriptedBackend::complete(const ChatRequest &request) const {
  validate_request(request);
  const auto turn = turn_index(request);
  const auto last = last_message_text(request);

  const ChatResponse *chosen = &default_reply_;
  for (const auto &compiled : rules_) {
    const auto &rule = compiled.rule;
    if (rule.agent && *rule.agent != request.agent) continue;
    if (rule.turn && *rule.turn != turn) continue;
    if (compiled.pattern && !std::regex_search(last, *compiled.pattern)) continue;
    const bool meta_ok = std::all_of(rule.metadata.begin(), rule.metadata.end(), [&](const auto &kv) {
      auto it = request.metadata.find(kv.first);
      return it != request.metadata.end() && it->second == kv.second;
    });
    if (!meta_ok) continue;
    chosen = &rule.reply;
    break;
  }

  auto vars = request.metadata;
  vars["agent"] = request.agent;
  vars["turn"] = std::to_string(turn);
  ChatResponse reply;
  reply.content = substitute(chosen->content, vars);
  for (const auto &call : chosen->tool_calls) {
    reply.tool_calls.push_back({call.id, call.name, substitute_json(call.arguments, vars)});
  }
  validate_response(request, reply);
  return reply;
}

}  // namespace fincollab::backend
