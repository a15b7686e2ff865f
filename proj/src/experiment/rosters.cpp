#include "fincollab/experiment/rosters.hpp"

#include "fincollab/core/error.hpp"
#include "fincollab/eval/tasks.hpp"
#include "fincollab/orchestrator/prompts.hpp"

namespace fincollab::experiment {

using namespace orchestrator;

namespace {

std::string focus(Task task) {
  switch (task) {
    case Task::Fundamental:
      return "a fundamental analyst who studies financial statements, profitability, growth and valuation";
    case Task::Sentiment:
      return "a market sentiment analyst who studies news flow, social media discussion and price action";
    case Task::Risk:
      return "a risk analyst who studies the risk factors disclosed in annual filings";
    case Task::Decision:
      break;
  }
  return "an investment analyst who turns research reports into a one-week price target and a buy decision";
}

AgentSpec member(const std::string &name, Task task, Rank rank) {
  AgentSpec a;
  a.name = name;
  a.rank = rank;
  if (rank == Rank::Leader) {
    a.role_description = "You are " + name + ", the lead analyst who coordinates the team and writes the final " +
                         std::string(to_string(task)) + " report.";
    return a;
  }
  a.role_description = "You are " + name + ", " + focus(task) + ".";
  const auto &tools = eval::task_definition(task).toolset;
  a.allowed_tools = {tools.begin(), tools.end()};
  return a;
}

GroupStructure attach_prompts(GroupStructure g) { return with_system_prompts(g, build_prompts(g)); }

}  // namespace

GroupStructure default_group(StructureKind kind, Task task) {
  switch (kind) {
    case StructureKind::Single:
      return attach_prompts(Single{member("Analyst", task, Rank::Peer)});
    case StructureKind::Dual:
      return attach_prompts(Dual{member("Analyst_A", task, Rank::Peer), member("Analyst_B", task, Rank::Peer)});
    case StructureKind::Horizontal:
      return attach_prompts(Horizontal{{member("Analyst_A", task, Rank::Peer), member("Analyst_B", task, Rank::Peer),
                                        member("Analyst_C", task, Rank::Peer)}});
    case StructureKind::Vertical:
      return attach_prompts(Vertical{member("Leader", task, Rank::Leader),
                                     {member("Analyst_A", task, Rank::Subordinate),
                                      member("Analyst_B", task, Rank::Subordinate)}});
    case StructureKind::Hybrid:
      return attach_prompts(Hybrid{member("Leader", task, Rank::Leader),
                                   {member("Analyst_A", task, Rank::Subordinate),
                                    member("Analyst_B", task, Rank::Subordinate)}});
    case StructureKind::Ensemble:
      break;
  }
  throw Error(ErrorCode::InvalidStructure, "the ensemble has no group of its own");
}

GroupStructure ensemble_decision_group() {
  auto cio = member(kChiefInvestmentOfficer, Task::Decision, Rank::Peer);
  cio.role_description = "You are " + std::string(kChiefInvestmentOfficer) +
                         ", the chief investment officer who makes the final call from the team's research reports.";
  return attach_prompts(Single{cio});
}

}  // namespace fincollab::experiment
