#pragma once

#include "fincollab/core/message.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fincollab::orchestrator {

enum class StructureKind { Single, Dual, Horizontal, Vertical, Hybrid, Ensemble };

std::string_view to_string(StructureKind kind) noexcept;
/// Lower-case label ("single", ..., "ensemble"). Throws Error{InvalidStructure}.
StructureKind parse_structure_kind(std::string_view label);
/// Agents in the group; 1 for Ensemble, whose final step is a single decision-maker.
std::size_t group_size(StructureKind kind) noexcept;

struct Single {
  AgentSpec agent;
};
struct Dual {
  AgentSpec a;
  AgentSpec b;
};
struct Horizontal {
  std::vector<AgentSpec> members;
};
struct Vertical {
  AgentSpec leader;
  std::vector<AgentSpec> subordinates;
};
struct Hybrid {
  AgentSpec leader;
  std::vector<AgentSpec> subordinates;
};

using GroupStructure = std::variant<Single, Dual, Horizontal, Vertical, Hybrid>;

StructureKind kind_of(const GroupStructure &structure) noexcept;

/// Members in declaration order; for Vertical and Hybrid the leader comes first.
std::vector<AgentSpec> members(const GroupStructure &structure);
std::vector<std::string> member_names(const GroupStructure &structure);
std::optional<std::string> leader_of(const GroupStructure &structure);
bool is_round_robin(const GroupStructure &structure) noexcept;
/// Any member for Single/Dual/Horizontal, only the leader otherwise.
bool has_termination_authority(const GroupStructure &structure, std::string_view agent);

/// Throws Error{MissingName} for an empty name, Error{InvalidStructure} for
/// duplicate names, wrong member counts or ranks that do not fit the shape.
void validate_structure(const GroupStructure &structure);

/// Copy of `structure` with every member's system_prompt replaced.
GroupStructure with_system_prompts(GroupStructure structure, const std::vector<std::pair<std::string, std::string>> &prompts);

}  // namespace fincollab::orchestrator
