#include "fincollab/orchestrator/prompts.hpp"

#include "fincollab/core/error.hpp"

namespace fincollab::orchestrator {

namespace {

const char *const kLeaderTemplate =
    "You are the leader of the following group: {group_desc}\n"
    "\n"
    "As a group leader, you are responsible for coordinating the team's efforts to achieve the project's "
    "objectives. You must ensure that the team is working together effectively and efficiently.\n"
    "- Summarize the status of the whole project progress each time you respond.\n"
    "- End your response with an order to one of your team members to progress the project, if the objective "
    "has not been achieved yet.\n"
    "- Orders should be follow the format: \"[<name>] <order>\".\n"
    "- Orders need to be detailed, including necessary time period information, stock information, or "
    "instruction from higher-level leaders.\n"
    "- Make only one order at a time.\n"
    "- After receiving feedback from a team member, check the results of the task, and make sure it has been "
    "well completed before proceeding to the next order.\n"
    "\n"
    "Reply \"TERMINATE\" at the end when everything is done.";

const char *const kTerminateLine = "Reply \"TERMINATE\" at the end when everything is done.";

std::string join(const std::vector<std::string> &names, const char *sep) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += sep;
    out += names[i];
  }
  return out;
}

std::string numbered(const std::vector<std::string> &items) {
  std::string out = "Your responsibilities in this group:";
  for (std::size_t i = 0; i < items.size(); ++i) out += "\n" + std::to_string(i + 1) + ". " + items[i];
  return out;
}

std::string compose(const AgentSpec &agent, const std::string &extra, bool terminates) {
  std::string out = agent.role_description;
  auto add = [&](const std::string &part) {
    if (part.empty()) return;
    if (!out.empty()) out += "\n\n";
    out += part;
  };
  add(extra);
  if (terminates) add(kTerminateLine);
  return out;
}

std::vector<std::string> peer_duties(const std::string &others) {
  return {"Ask for advice from " + others + " before you make any conclusion.",
          "Inspect analysis delivered by " + others + " and give out advice.",
          "Reach a consensus with " + others + " and provide the final analysis."};
}

std::vector<std::string> names_except(const std::vector<AgentSpec> &all, const std::string &self) {
  std::vector<std::string> out;
  for (const auto &m : all) {
    if (m.name != self) out.push_back(m.name);
  }
  return out;
}

}  // namespace

std::string leader_prompt(const std::string &group_desc) {
  std::string out = kLeaderTemplate;
  const std::string slot = "{group_desc}";
  out.replace(out.find(slot), slot.size(), group_desc);
  return out;
}

std::string group_description(const std::vector<AgentSpec> &subordinates) {
  std::string out;
  for (const auto &s : subordinates) out += "\n- " + s.name + ": " + s.role_description;
  return out;
}

std::vector<std::pair<std::string, std::string>> build_prompts(const GroupStructure &structure) {
  const auto all = members(structure);
  for (const auto &m : all) {
    if (m.name.empty()) throw Error(ErrorCode::MissingName, "cannot build prompts for an unnamed agent");
  }
  std::vector<std::pair<std::string, std::string>> out;
  switch (kind_of(structure)) {
    case StructureKind::Single:
      out.emplace_back(all[0].name, compose(all[0], "", true));
      break;
    case StructureKind::Dual:
    case StructureKind::Horizontal:
      for (const auto &m : all) {
        out.emplace_back(m.name, compose(m, numbered(peer_duties(join(names_except(all, m.name), " & "))), true));
      }
      break;
    case StructureKind::Vertical: {
      const std::vector<AgentSpec> subs(all.begin() + 1, all.end());
      out.emplace_back(all[0].name, compose(all[0], leader_prompt(group_description(subs)), false));
      for (const auto &s : subs) out.emplace_back(s.name, compose(s, "", false));
      break;
    }
    case StructureKind::Hybrid: {
      const auto &leader = all[0].name;
      out.emplace_back(leader, compose(all[0],
                                       numbered({"Give out tasks and advices to " +
                                                     join(names_except(all, leader), " & ") + ".",
                                                 "You should be the person to provide final analysis and finish the "
                                                 "task."}),
                                       true));
      for (std::size_t i = 1; i < all.size(); ++i) {
        out.emplace_back(all[i].name,
                         compose(all[i],
                                 numbered({"Report your findings to " + leader +
                                               " and ask for advices before providing final analysis.",
                                           "You're not allowed to finish the task without the permission from " +
                                               leader + "."}),
                                 false));
      }
      break;
    }
    case StructureKind::Ensemble:
      break;
  }
  return out;
}

}  // namespace fincollab::orchestrator
