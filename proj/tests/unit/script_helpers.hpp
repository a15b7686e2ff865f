#pragma once

#include "fincollab/backend/scripted.hpp"
#include "fincollab/toolkit/registry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fincollab::testing {

backend::ScriptRule say(std::string agent, std::size_t turn, std::string content);
backend::ScriptRule call_tool(std::string agent, std::size_t turn, std::string tool, Json arguments,
                              std::string content = "");

/// Registry with "lookup{ticker}" echoing "<ticker> close 100" and
/// "prices{ticker,start:date,end:date}" returning one line per argument.
toolkit::ToolRegistry echo_registry();

}  // namespace fincollab::testing
