#include "fincollab/core/message.hpp"

#include "fincollab/core/error.hpp"

#include <charconv>

namespace fincollab {

std::string_view to_string(Rank rank) noexcept {
  switch (rank) {
    case Rank::Peer: return "peer";
    case Rank::Leader: return "leader";
    case Rank::Subordinate: return "subordinate";
  }
  return "peer";
}

std::string Scope::to_string() const {
  if (is_main()) {
    return "main";
  }
  return "nested:" + leader + ":" + subordinate + ":" + std::to_string(nesting_id);
}

Scope Scope::parse(std::string_view text) {
  if (text == "main") {
    return Scope::main();
  }
  constexpr std::string_view prefix = "nested:";
  if (text.substr(0, prefix.size()) != prefix) {
    throw Error(ErrorCode::ParseError, "unknown scope '" + std::string(text) + "'");
  }
  const auto rest = text.substr(prefix.size());
  const auto first = rest.find(':');
  const auto last = rest.rfind(':');
  if (first == std::string_view::npos || first == last) {
    throw Error(ErrorCode::ParseError, "malformed nested scope '" + std::string(text) + "'");
  }
  const auto leader = rest.substr(0, first);
  const auto subordinate = rest.substr(first + 1, last - first - 1);
  const auto id_text = rest.substr(last + 1);
  std::uint64_t id = 0;
  auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
  if (leader.empty() || subordinate.empty() || ec != std::errc{} || ptr != id_text.data() + id_text.size()) {
    throw Error(ErrorCode::ParseError, "malformed nested scope '" + std::string(text) + "'");
  }
  return Scope::nested(std::string(leader), std::string(subordinate), id);
}

Json to_json(const Message &msg) {
  Json calls = Json::array();
  for (const auto &c : msg.tool_calls) {
    calls.push_back({{"id", c.id}, {"name", c.name}, {"arguments", c.arguments}});
  }
  Json results = Json::array();
  for (const auto &r : msg.tool_results) {
    Json entry{{"call_id", r.call_id}, {"tool", r.tool}, {"payload", r.payload}};
    if (r.error) {
      entry["error"] = *r.error;
    }
    results.push_back(std::move(entry));
  }
  return Json{{"seq", msg.seq},
              {"sender", msg.sender},
              {"scope", msg.scope.to_string()},
              {"content", msg.content},
              {"tool_calls", std::move(calls)},
              {"tool_results", std::move(results)}};
}

Message message_from_json(const Json &j) {
  try {
    Message msg;
    msg.seq = j.at("seq").get<std::uint64_t>();
    msg.sender = j.at("sender").get<std::string>();
    msg.scope = Scope::parse(j.at("scope").get<std::string>());
    msg.content = j.at("content").get<std::string>();
    for (const auto &c : j.value("tool_calls", Json::array())) {
      msg.tool_calls.push_back(
          {c.at("id").get<std::string>(), c.at("name").get<std::string>(), c.value("arguments", Json::object())});
    }
    for (const auto &r : j.value("tool_results", Json::array())) {
      ToolResult result{r.at("call_id").get<std::string>(), r.at("tool").get<std::string>(),
                        r.value("payload", ""), std::nullopt};
      if (r.contains("error")) {
        result.error = r["error"].get<std::string>();
      }
      msg.tool_results.push_back(std::move(result));
    }
    return msg;
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::ParseError, std::string("message record: ") + e.what());
  }
}

}  // namespace fincollab
