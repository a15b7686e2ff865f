#include "script_helpers.hpp"

namespace fincollab::testing {

backend::ScriptRule say(std::string agent, std::size_t turn, std::string content) {
  backend::ScriptRule r;
  r.agent = std::move(agent);
  r.turn = turn;
  r.reply.content = std::move(content);
  return r;
}

backend::ScriptRule call_tool(std::string agent, std::size_t turn, std::string tool, Json arguments,
                              std::string content) {
  auto r = say(std::move(agent), turn, std::move(content));
  r.reply.tool_calls.push_back(ToolCall{"", std::move(tool), std::move(arguments)});
  return r;
}

toolkit::ToolRegistry echo_registry() {
  toolkit::ToolRegistry reg;
  reg.register_tool({"lookup", "Close price", {{"ticker", ParamType::String, true, "", std::nullopt, std::nullopt}}},
                    [](const Json &args, const toolkit::InvocationContext &) {
                      return args.at("ticker").get<std::string>() + " close 100";
                    });
  reg.register_tool({"prices",
                     "Price range",
                     {{"ticker", ParamType::String, true, "", std::nullopt, std::nullopt},
                      {"start", ParamType::Date, true, "", std::nullopt, std::nullopt},
                      {"end", ParamType::Date, true, "", std::nullopt, std::nullopt}}},
                    [](const Json &args, const toolkit::InvocationContext &) { return args.dump(); });
  return reg;
}

}  // namespace fincollab::testing
