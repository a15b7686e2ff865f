#include "fincollab/backend/wire.hpp"

namespace fincollab::backend {

namespace {

constexpr std::string_view kErrorPrefix = "ERROR: ";

[[noreturn]] void fail(const std::string &path, const std::string &what) {
  throw Error(ErrorCode::DecodeError, path + ": " + what);
}

const Json &require(const Json &obj, const char *key, const std::string &path) {
  if (!obj.is_object() || !obj.contains(key)) {
    fail(path + "." + key, "missing");
  }
  return obj[key];
}

std::string require_string(const Json &obj, const char *key, const std::string &path) {
  const Json &v = require(obj, key, path);
  if (!v.is_string()) {
    fail(path + "." + key, "expected string");
  }
  return v.get<std::string>();
}

std::string optional_content(const Json &obj, const std::string &path) {
  if (!obj.contains("content") || obj["content"].is_null()) {
    return {};
  }
  if (!obj["content"].is_string()) {
    fail(path + ".content", "expected string or null");
  }
  return obj["content"].get<std::string>();
}

Json encode_tool_calls(const std::vector<ToolCall> &calls) {
  Json out = Json::array();
  for (const auto &call : calls) {
    out.push_back({{"id", call.id},
                   {"type", "function"},
                   {"function", {{"name", call.name}, {"arguments", call.arguments.dump()}}}});
  }
  return out;
}

std::vector<ToolCall> decode_tool_calls(const Json &calls, const std::string &path) {
  if (!calls.is_array()) {
    fail(path, "expected array");
  }
  std::vector<ToolCall> out;
  for (std::size_t i = 0; i < calls.size(); ++i) {
    const std::string call_path = path + "[" + std::to_string(i) + "]";
    const Json &call = calls[i];
    const Json &function = require(call, "function", call_path);
    ToolCall decoded;
    decoded.id = call.contains("id") && call["id"].is_string() ? call["id"].get<std::string>() : std::string{};
    decoded.name = require_string(function, "name", call_path + ".function");
    const Json &raw_args = require(function, "arguments", call_path + ".function");
    const std::string args_path = call_path + ".function.arguments";
    if (raw_args.is_string()) {
      const auto text = raw_args.get<std::string>();
      if (text.empty()) {
        decoded.arguments = Json::object();
      } else {
        decoded.arguments = Json::parse(text, nullptr, false);
        if (decoded.arguments.is_discarded()) {
          fail(args_path, "not valid JSON (tool call " + std::to_string(i) + ")");
        }
      }
    } else if (raw_args.is_object()) {
      decoded.arguments = raw_args;
    } else {
      fail(args_path, "expected JSON-encoded object (tool call " + std::to_string(i) + ")");
    }
    if (!decoded.arguments.is_object()) {
      fail(args_path, "arguments must be an object (tool call " + std::to_string(i) + ")");
    }
    out.push_back(std::move(decoded));
  }
  return out;
}

}  // namespace

Json encode_request(const ChatRequest &request) {
  Json messages = Json::array();
  messages.push_back({{"role", "system"}, {"name", request.agent}, {"content", request.system_prompt}});
  for (const auto &msg : request.context) {
    if (msg.from_tool()) {
      for (const auto &result : msg.tool_results) {
        const std::string content =
            result.error ? std::string(kErrorPrefix) + *result.error : result.payload;
        messages.push_back(
            {{"role", "tool"}, {"tool_call_id", result.call_id}, {"name", result.tool}, {"content", content}});
      }
      continue;
    }
    if (msg.from_user()) {
      messages.push_back({{"role", "user"}, {"content", msg.content}});
      continue;
    }
    if (msg.sender == request.agent || !msg.tool_calls.empty()) {
      Json entry{{"role", "assistant"}, {"name", msg.sender}};
      entry["content"] = msg.content.empty() && !msg.tool_calls.empty() ? Json(nullptr) : Json(msg.content);
      if (!msg.tool_calls.empty()) {
        entry["tool_calls"] = encode_tool_calls(msg.tool_calls);
      }
      messages.push_back(std::move(entry));
      continue;
    }
    messages.push_back({{"role", "user"}, {"name", msg.sender}, {"content", msg.content}});
  }

  Json payload{{"model", request.model_params.model},
               {"temperature", request.model_params.temperature},
               {"max_tokens", request.model_params.max_tokens},
               {"messages", std::move(messages)}};
  if (!request.tool_specs.empty()) {
    Json tools = Json::array();
    for (const auto &spec : request.tool_specs) {
      tools.push_back({{"type", "function"},
                       {"function",
                        {{"name", spec.name},
                         {"description", spec.description},
                         {"parameters", parameters_schema(spec)}}}});
    }
    payload["tools"] = std::move(tools);
  }
  return payload;
}

ChatRequest decode_request(const Json &payload) {
  if (!payload.is_object()) {
    fail("$", "expected object");
  }
  ChatRequest request;
  request.model_params.model = require_string(payload, "model", "$");
  if (payload.contains("temperature")) {
    if (!payload["temperature"].is_number()) {
      fail("$.temperature", "expected number");
    }
    request.model_params.temperature = payload["temperature"].get<double>();
  }
  if (payload.contains("max_tokens")) {
    if (!payload["max_tokens"].is_number_integer()) {
      fail("$.max_tokens", "expected integer");
    }
    request.model_params.max_tokens = payload["max_tokens"].get<int>();
  }

  const Json &messages = require(payload, "messages", "$");
  if (!messages.is_array()) {
    fail("$.messages", "expected array");
  }
  std::uint64_t seq = 0;
  bool seen_system = false;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const std::string path = "$.messages[" + std::to_string(i) + "]";
    const Json &m = messages[i];
    const auto role = require_string(m, "role", path);
    if (role == "system") {
      if (seen_system) {
        fail(path, "more than one system message");
      }
      seen_system = true;
      request.agent = m.value("name", "");
      request.system_prompt = optional_content(m, path);
      continue;
    }
    if (role == "tool") {
      ToolResult result;
      result.call_id = require_string(m, "tool_call_id", path);
      result.tool = m.value("name", "");
      auto content = optional_content(m, path);
      if (content.rfind(kErrorPrefix, 0) == 0) {
        result.error = content.substr(kErrorPrefix.size());
      } else {
        result.payload = std::move(content);
      }
      if (!request.context.empty() && request.context.back().from_tool()) {
        request.context.back().tool_results.push_back(std::move(result));
      } else {
        Message msg;
        msg.seq = seq++;
        msg.sender = std::string(kToolSender);
        msg.tool_results.push_back(std::move(result));
        request.context.push_back(std::move(msg));
      }
      continue;
    }
    Message msg;
    msg.seq = seq++;
    msg.content = optional_content(m, path);
    if (role == "user") {
      msg.sender = m.contains("name") ? require_string(m, "name", path) : std::string(kUserSender);
    } else if (role == "assistant") {
      msg.sender = m.contains("name") ? require_string(m, "name", path) : request.agent;
      if (m.contains("tool_calls")) {
        msg.tool_calls = decode_tool_calls(m["tool_calls"], path + ".tool_calls");
      }
    } else {
      fail(path + ".role", "unknown role '" + role + "'");
    }
    request.context.push_back(std::move(msg));
  }
  if (!seen_system) {
    fail("$.messages", "no system message");
  }

  if (payload.contains("tools")) {
    const Json &tools = payload["tools"];
    if (!tools.is_array()) {
      fail("$.tools", "expected array");
    }
    for (std::size_t i = 0; i < tools.size(); ++i) {
      const std::string path = "$.tools[" + std::to_string(i) + "].function";
      const Json &function = require(tools[i], "function", "$.tools[" + std::to_string(i) + "]");
      request.tool_specs.push_back(tool_spec_from_schema(require_string(function, "name", path),
                                                         function.value("description", ""),
                                                         require(function, "parameters", path),
                                                         path + ".parameters"));
    }
  }
  return request;
}

Json encode_response(const ChatResponse &response) {
  Json message{{"role", "assistant"}};
  message["content"] = response.content.empty() && !response.tool_calls.empty() ? Json(nullptr) : Json(response.content);
  if (!response.tool_calls.empty()) {
    message["tool_calls"] = encode_tool_calls(response.tool_calls);
  }
  return Json{{"object", "chat.completion"},
              {"choices", Json::array({{{"index", 0}, {"message", std::move(message)},
                                        {"finish_reason", response.tool_calls.empty() ? "stop" : "tool_calls"}}})}};
}

ChatResponse decode_response(const Json &payload) {
  const Json &choices = require(payload, "choices", "$");
  if (!choices.is_array() || choices.empty()) {
    fail("$.choices", "expected non-empty array");
  }
  const Json &message = require(choices[0], "message", "$.choices[0]");
  const std::string path = "$.choices[0].message";
  ChatResponse response;
  response.content = optional_content(message, path);
  if (message.contains("tool_calls") && !message["tool_calls"].is_null()) {
    response.tool_calls = decode_tool_calls(message["tool_calls"], path + ".tool_calls");
  }
  if (response.content.empty() && response.tool_calls.empty()) {
    fail(path, "neither content nor tool_calls present");
  }
  return response;
}

}  // namespace fincollab::backend
