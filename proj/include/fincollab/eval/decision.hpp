#pragma once

#include "fincollab/eval/tasks.hpp"
#include "fincollab/orchestrator/conversation.hpp"

#include <string>

namespace fincollab::eval {

struct Decision {
  double target_price = 0;
  bool buy = false;

  friend bool operator==(const Decision &, const Decision &) = default;
};

/// Parses the last "DECISION: target_price=<number>; buy=<yes|no>" block.
/// The price may carry a leading currency sign ($, €, £) and thousands
/// separators. Throws Error{MissingDecisionBlock} or
/// Error{MalformedDecisionBlock}.
Decision extract_decision(std::string_view final_report);

struct DecisionRun {
  orchestrator::ConversationOutcome outcome;
  Decision decision;
};

/// Runs the decision task under `structure` with a prompt built from the
/// three sub-reports, then extracts the decision. Missing reports are
/// rejected before any backend call.
DecisionRun run_decision_task(const SubReports &reports, const orchestrator::GroupStructure &structure,
                              const orchestrator::RunContext &ctx);

}  // namespace fincollab::eval
