#pragma once

#include "fincollab/core/date.hpp"
#include "fincollab/core/task.hpp"

#include <string>
#include <vector>

namespace fincollab::eval {

/// Machine-readable line every decision report must end with.
inline constexpr const char *kDecisionFormat = "DECISION: target_price=<number>; buy=<yes|no>";

struct TaskDef {
  Task task;
  /// Uses {ticker} and {release_date}; the decision template also has
  /// {fundamental_report}, {sentiment_report} and {risk_report}.
  std::string prompt_template;
  std::vector<std::string> toolset;
  /// Criterion the task's report is judged on; empty for the decision task,
  /// which is scored on price and direction instead.
  std::string judge_criterion;
};

const TaskDef &task_definition(Task task);

struct SubReports {
  std::string fundamental;
  std::string sentiment;
  std::string risk;
};

/// Fills a sub-task prompt. Throws Error{InvalidArgument} for Task::Decision.
std::string task_prompt(Task task, const std::string &ticker, Date release_date);

/// Decision prompt embedding the three reports. Throws Error{MissingReport}
/// naming the first empty report.
std::string decision_prompt(const std::string &ticker, Date release_date, const SubReports &reports);

}  // namespace fincollab::eval
