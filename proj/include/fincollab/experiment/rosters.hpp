#pragma once

#include "fincollab/core/task.hpp"
#include "fincollab/orchestrator/structure.hpp"

namespace fincollab::experiment {

// Default member names:
//   single      Analyst
//   dual        Analyst_A, Analyst_B
//   horizontal  Analyst_A, Analyst_B, Analyst_C
//   vertical    Leader, Analyst_A, Analyst_B
//   hybrid      Leader, Analyst_A, Analyst_B
// Non-leaders get the task's tools; leaders coordinate without tools.

inline constexpr const char *kChiefInvestmentOfficer = "CIO";

/// Group for `task` under `kind`, system prompts filled in. Throws
/// Error{InvalidStructure} for Ensemble, which has no group of its own.
orchestrator::GroupStructure default_group(orchestrator::StructureKind kind, Task task);

/// The single decision-maker that turns ensemble sub-reports into a decision.
orchestrator::GroupStructure ensemble_decision_group();

}  // namespace fincollab::experiment
