#pragma once

#include "fincollab/orchestrator/structure.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fincollab::orchestrator {

inline constexpr const char *kTerminationToken = "TERMINATE";

/// The leader prompt with {group_desc} replaced by `group_desc`.
std::string leader_prompt(const std::string &group_desc);

/// "- <name>: <role_description>" per subordinate, one per line.
std::string group_description(const std::vector<AgentSpec> &subordinates);

/// System prompt for every member, in declaration order. Each starts from the
/// member's role_description and adds the structure's collaboration duties;
/// members with termination authority are told to finish with TERMINATE.
/// Throws Error{MissingName}.
std::vector<std::pair<std::string, std::string>> build_prompts(const GroupStructure &structure);

}  // namespace fincollab::orchestrator
