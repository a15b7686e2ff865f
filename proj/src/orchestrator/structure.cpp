#include "fincollab/orchestrator/structure.hpp"

#include "fincollab/core/error.hpp"

#include <algorithm>
#include <set>

namespace fincollab::orchestrator {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::vector<AgentSpec *> member_ptrs(GroupStructure &s) {
  return std::visit(Overloaded{[](Single &x) { return std::vector<AgentSpec *>{&x.agent}; },
                               [](Dual &x) { return std::vector<AgentSpec *>{&x.a, &x.b}; },
                               [](Horizontal &x) {
                                 std::vector<AgentSpec *> out;
                                 for (auto &m : x.members) out.push_back(&m);
                                 return out;
                               },
                               [](auto &x) {
                                 std::vector<AgentSpec *> out{&x.leader};
                                 for (auto &m : x.subordinates) out.push_back(&m);
                                 return out;
                               }},
                    s);
}

[[noreturn]] void invalid(const std::string &what) { throw Error(ErrorCode::InvalidStructure, what); }

}  // namespace

std::string_view to_string(StructureKind kind) noexcept {
  switch (kind) {
    case StructureKind::Single: return "single";
    case StructureKind::Dual: return "dual";
    case StructureKind::Horizontal: return "horizontal";
    case StructureKind::Vertical: return "vertical";
    case StructureKind::Hybrid: return "hybrid";
    case StructureKind::Ensemble: return "ensemble";
  }
  return "?";
}

StructureKind parse_structure_kind(std::string_view label) {
  for (auto k : {StructureKind::Single, StructureKind::Dual, StructureKind::Horizontal, StructureKind::Vertical,
                 StructureKind::Hybrid, StructureKind::Ensemble}) {
    if (to_string(k) == label) return k;
  }
  invalid("unknown structure '" + std::string(label) + "'");
}

std::size_t group_size(StructureKind kind) noexcept {
  switch (kind) {
    case StructureKind::Single:
    case StructureKind::Ensemble: return 1;
    case StructureKind::Dual: return 2;
    default: return 3;
  }
}

StructureKind kind_of(const GroupStructure &structure) noexcept {
  return std::visit(Overloaded{[](const Single &) { return StructureKind::Single; },
                               [](const Dual &) { return StructureKind::Dual; },
                               [](const Horizontal &) { return StructureKind::Horizontal; },
                               [](const Vertical &) { return StructureKind::Vertical; },
                               [](const Hybrid &) { return StructureKind::Hybrid; }},
                    structure);
}

std::vector<AgentSpec> members(const GroupStructure &structure) {
  auto copy = structure;
  std::vector<AgentSpec> out;
  for (auto *m : member_ptrs(copy)) out.push_back(std::move(*m));
  return out;
}

std::vector<std::string> member_names(const GroupStructure &structure) {
  std::vector<std::string> out;
  for (const auto &m : members(structure)) out.push_back(m.name);
  return out;
}

std::optional<std::string> leader_of(const GroupStructure &structure) {
  if (const auto *v = std::get_if<Vertical>(&structure)) return v->leader.name;
  if (const auto *h = std::get_if<Hybrid>(&structure)) return h->leader.name;
  return std::nullopt;
}

bool is_round_robin(const GroupStructure &structure) noexcept {
  const auto k = kind_of(structure);
  return k == StructureKind::Dual || k == StructureKind::Horizontal || k == StructureKind::Hybrid;
}

bool has_termination_authority(const GroupStructure &structure, std::string_view agent) {
  if (auto leader = leader_of(structure)) return *leader == agent;
  const auto names = member_names(structure);
  return std::find(names.begin(), names.end(), agent) != names.end();
}

void validate_structure(const GroupStructure &structure) {
  const auto all = members(structure);
  std::set<std::string> seen;
  for (const auto &m : all) {
    if (m.name.empty()) throw Error(ErrorCode::MissingName, "agent without a name in " + std::string(to_string(kind_of(structure))) + " group");
    if (m.name == kUserSender || m.name == kToolSender) invalid("'" + m.name + "' is a reserved sender");
    if (!seen.insert(m.name).second) invalid("duplicate member '" + m.name + "'");
  }
  const auto kind = kind_of(structure);
  if (kind == StructureKind::Horizontal && all.size() < 2) invalid("horizontal group needs at least 2 members");
  if (kind == StructureKind::Vertical || kind == StructureKind::Hybrid) {
    if (all.size() < 2) invalid(std::string(to_string(kind)) + " group needs at least 1 subordinate");
    if (all.front().rank != Rank::Leader) invalid("leader '" + all.front().name + "' must have rank leader");
    for (std::size_t i = 1; i < all.size(); ++i) {
      if (all[i].rank != Rank::Subordinate) invalid("'" + all[i].name + "' must have rank subordinate");
    }
  } else {
    for (const auto &m : all) {
      if (m.rank != Rank::Peer) invalid("'" + m.name + "' must have rank peer");
    }
  }
}

GroupStructure with_system_prompts(GroupStructure structure,
                                   const std::vector<std::pair<std::string, std::string>> &prompts) {
  for (auto *m : member_ptrs(structure)) {
    for (const auto &[name, prompt] : prompts) {
      if (name == m->name) m->system_prompt = prompt;
    }
  }
  return structure;
}

}  // namespace fincollab::orchestrator
