#include "fincollab/eval/judge.hpp"

#include <cctype>
#include <regex>

namespace fincollab::eval {

namespace {

struct CriterionInfo {
  Criterion criterion;
  const char *name;
  const char *description;
  const char *subject;
};

constexpr std::array<CriterionInfo, 5> kInfo{{
    {Criterion::Fundamental, "fundamental",
     "Whether the AI-generated content considers commonly used model evaluation indicators and provides a "
     "comprehensive analysis.",
     "fundamental analysis"},
    {Criterion::Sentiment, "sentiment",
     "The quality of AI-generated content in analyzing market behavior and judging market trends based on market "
     "sentiment.",
     "market sentiment analysis"},
    {Criterion::Risk, "risk",
     "Whether the AI-generated content includes sufficient potential risk identification and provides effective "
     "suggestions.",
     "risk analysis"},
    {Criterion::Readability, "readability", "Precision and natural expression.", "readability"},
    {Criterion::Coherence, "coherence",
     "Whether the content is organized, grammatically correct, and easy to understand.", "coherence"},
}};

const CriterionInfo &info(Criterion c) { return kInfo[static_cast<std::size_t>(c)]; }

const char *const kFundamentalPrompt =
    "Please evaluate from the perspective of whether the fundamental indicators of the enterprise have been "
    "identified or discussed, eradicated and judgments or suggestions have been given. Please give a score of 1-5 "
    "based on your judgment. 1 represents a lack of fundamental analysis or nonsense, 3 represents a certain "
    "fundamental analysis capability but not sufficient, and 5 represents a relatively complete fundamental "
    "analysis.";

const char *const kReplyFormat = "Start your reply with \"Score: <1-5>\" and then give a short rationale.";
const char *const kNudge = "Your reply did not contain a valid score. Reply with \"Score: <1-5>\" where the score "
                           "is a whole number from 1 to 5, then a short rationale.";

}  // namespace

std::string_view to_string(Criterion criterion) noexcept { return info(criterion).name; }

Criterion parse_criterion(std::string_view name) {
  for (const auto &i : kInfo) {
    if (name == i.name) return i.criterion;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown criterion '" + std::string(name) + "'");
}

std::string_view indicator_description(Criterion criterion) noexcept { return info(criterion).description; }

std::string judge_prompt(Criterion criterion) {
  std::string body;
  if (criterion == Criterion::Fundamental) {
    body = kFundamentalPrompt;
  } else {
    const auto &i = info(criterion);
    const std::string subject = i.subject;
    body = "Please evaluate from the perspective of the following indicator: " + std::string(i.description) +
           " Please give a score of 1-5 based on your judgment. 1 represents a lack of " + subject +
           " or nonsense, 3 represents a certain " + subject + " capability but not sufficient, and 5 represents a " +
           "relatively complete " + subject + ".";
  }
  return body + "\n\n" + kReplyFormat;
}

std::optional<int> parse_judge_score(std::string_view reply) {
  static const std::regex labeled(R"((score|rating|grade)[^0-9\-\n]{0,12}(-?\d+(?:\.\d+)?))", std::regex::icase);
  static const std::regex number(R"(-?\d+(?:\.\d+)?)");
  const std::string text(reply);
  std::smatch m;
  std::string token;
  if (std::regex_search(text, m, labeled)) {
    token = m[2];
  } else if (std::regex_search(text, m, number)) {
    token = m[0];
  } else {
    return std::nullopt;
  }
  if (token.find('.') != std::string::npos || token.front() == '-' || token.size() > 1) return std::nullopt;
  const int value = token[0] - '0';
  if (value < 1 || value > 5) return std::nullopt;
  return value;
}

JudgeScore judge_report(const std::string &report, Criterion criterion, const backend::ChatBackend &judge,
                        const JudgeOptions &options) {
  if (report.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to judge");
  backend::ChatRequest request;
  request.agent = kJudgeAgent;
  request.system_prompt = judge_prompt(criterion);
  request.model_params = options.model_params;
  request.metadata = options.metadata;
  request.metadata["criterion"] = std::string(to_string(criterion));
  request.context.push_back(Message{0, std::string(kUserSender), "Report to evaluate:\n\n" + report, {}, {}, Scope::main()});
  std::string last;
  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    const auto reply = judge.complete(request);
    if (auto score = parse_judge_score(reply.content)) return JudgeScore{criterion, *score, reply.content};
    last = reply.content;
    const auto seq = request.context.back().seq;
    request.context.push_back(Message{seq + 1, kJudgeAgent, reply.content, {}, {}, Scope::main()});
    request.context.push_back(Message{seq + 2, std::string(kUserSender), kNudge, {}, {}, Scope::main()});
  }
  throw Error(ErrorCode::UnparsableJudgeOutput, std::string(to_string(criterion)) + " judge gave no score in " +
                                                    std::to_string(options.max_retries + 1) + " attempts; last: " +
                                                    last.substr(0, 80));
}

}  // namespace fincollab::eval
