#include "fincollab/eval/tasks.hpp"

#include "fincollab/core/error.hpp"
#include "fincollab/toolkit/financial_tools.hpp"

#include <array>
#include <map>

namespace fincollab::eval {

namespace {

/// Single pass, so slot-like text inside substituted values stays literal.
std::string fill(const std::string &text, const std::map<std::string, std::string> &values) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto open = text.find('{', pos);
    const auto close = open == std::string::npos ? std::string::npos : text.find('}', open);
    if (close == std::string::npos) break;
    out.append(text, pos, open - pos);
    auto it = values.find(text.substr(open + 1, close - open - 1));
    if (it != values.end()) {
      out += it->second;
    } else {
      out.append(text, open, close + 1 - open);
    }
    pos = close + 1;
  }
  if (pos < text.size()) out.append(text, pos);
  return out;
}

std::array<TaskDef, 4> make_definitions() {
  using toolkit::task_tool_names;
  return {{
      {Task::Fundamental,
       "Perform a fundamental analysis of {ticker} based on its 2023 annual report (10-K), released on "
       "{release_date}. Identify and discuss the key financial indicators such as revenue growth, margins, "
       "leverage, cash flow and valuation, and give your judgment. Only use data dated on or before {release_date}.",
       task_tool_names(Task::Fundamental), "fundamental"},
      {Task::Sentiment,
       "Analyse the market sentiment around {ticker} in the weeks before its 2023 annual report (10-K) was "
       "released on {release_date}. Gather recent company news and social media posts, summarise the prevailing "
       "sentiment and judge the market trend. Only use data dated on or before {release_date}.",
       task_tool_names(Task::Sentiment), "sentiment"},
      {Task::Risk,
       "Analyse the investment risks of {ticker} based on its 2023 annual report (10-K), released on "
       "{release_date}. Identify the main potential risks and give effective suggestions.",
       task_tool_names(Task::Risk), "risk"},
      {Task::Decision,
       "You are the chief investment officer deciding on {ticker}. Its 2023 annual report (10-K) was released on "
       "{release_date}. Using the three analyses below, predict the stock price one week after the release date "
       "and decide whether to buy the stock.\n\n"
       "## Fundamental analysis\n{fundamental_report}\n\n"
       "## Market sentiment analysis\n{sentiment_report}\n\n"
       "## Risk analysis\n{risk_report}\n\n"
       "End your final answer with exactly one line in this format:\n" +
           std::string(kDecisionFormat),
       {}, ""},
  }};
}

}  // namespace

const TaskDef &task_definition(Task task) {
  static const auto defs = make_definitions();
  return defs[static_cast<std::size_t>(task)];
}

std::string task_prompt(Task task, const std::string &ticker, Date release_date) {
  if (task == Task::Decision) throw Error(ErrorCode::InvalidArgument, "the decision prompt needs sub-task reports");
  return fill(task_definition(task).prompt_template, {{"ticker", ticker}, {"release_date", release_date.to_string()}});
}

std::string decision_prompt(const std::string &ticker, Date release_date, const SubReports &reports) {
  if (reports.fundamental.empty()) throw Error(ErrorCode::MissingReport, "fundamental report is missing");
  if (reports.sentiment.empty()) throw Error(ErrorCode::MissingReport, "sentiment report is missing");
  if (reports.risk.empty()) throw Error(ErrorCode::MissingReport, "risk report is missing");
  return fill(task_definition(Task::Decision).prompt_template, {{"ticker", ticker},
                                                                {"release_date", release_date.to_string()},
                                                                {"fundamental_report", reports.fundamental},
                                                                {"sentiment_report", reports.sentiment},
                                                                {"risk_report", reports.risk}});
}

}  // namespace fincollab::eval
