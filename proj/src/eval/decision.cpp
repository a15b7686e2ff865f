#include "fincollab/eval/decision.hpp"

#include <algorithm>
#include <regex>

namespace fincollab::eval {

namespace {

double parse_price(std::string text) {
  for (const char *sign : {"$", "\xE2\x82\xAC", "\xC2\xA3"}) {
    if (text.rfind(sign, 0) == 0) {
      text.erase(0, std::char_traits<char>::length(sign));
      break;
    }
  }
  static const std::regex grouped(R"(^\d{1,3}(,\d{3})+(\.\d+)?$)");
  static const std::regex plain(R"(^\d+(\.\d+)?$)");
  if (std::regex_match(text, grouped)) {
    text.erase(std::remove(text.begin(), text.end(), ','), text.end());
  } else if (!std::regex_match(text, plain)) {
    throw Error(ErrorCode::MalformedDecisionBlock, "target_price '" + text + "' is not a number");
  }
  const double value = std::stod(text);
  if (!(value > 0)) throw Error(ErrorCode::MalformedDecisionBlock, "target_price must be positive");
  return value;
}

}  // namespace

Decision extract_decision(std::string_view final_report) {
  const std::string text(final_report);
  const auto at = text.rfind("DECISION:");
  if (at == std::string::npos) throw Error(ErrorCode::MissingDecisionBlock, "no DECISION block in report");
  auto line_end = text.find('\n', at);
  const auto line = text.substr(at + 9, line_end == std::string::npos ? std::string::npos : line_end - at - 9);
  static const std::regex block(R"(^\s*target_price\s*=\s*([^;\s]+)\s*;\s*buy\s*=\s*([A-Za-z]+)\s*[.]?\s*$)");
  std::smatch m;
  if (!std::regex_match(line, m, block)) {
    throw Error(ErrorCode::MalformedDecisionBlock, "expected target_price=<number>; buy=<yes|no>, got '" + line + "'");
  }
  std::string buy = m[2];
  std::transform(buy.begin(), buy.end(), buy.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (buy != "yes" && buy != "no") throw Error(ErrorCode::MalformedDecisionBlock, "buy must be yes or no");
  return Decision{parse_price(m[1]), buy == "yes"};
}

DecisionRun run_decision_task(const SubReports &reports, const orchestrator::GroupStructure &structure,
                              const orchestrator::RunContext &ctx) {
  const auto prompt = decision_prompt(ctx.invocation.ticker, ctx.invocation.release_date, reports);
  auto outcome = orchestrator::run_conversation(structure, prompt, ctx);
  const auto decision = extract_decision(outcome.final_report);
  return {std::move(outcome), decision};
}

}  // namespace fincollab::eval
