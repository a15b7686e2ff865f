#pragma once

#include "fincollab/backend/backend.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>

namespace fincollab::eval {

enum class Criterion { Fundamental, Sentiment, Risk, Readability, Coherence };

inline constexpr std::array<Criterion, 5> kCriteria{Criterion::Fundamental, Criterion::Sentiment, Criterion::Risk,
                                                    Criterion::Readability, Criterion::Coherence};

std::string_view to_string(Criterion criterion) noexcept;
/// Throws Error{InvalidArgument}.
Criterion parse_criterion(std::string_view name);

/// Indicator description used to build the criterion's rubric.
std::string_view indicator_description(Criterion criterion) noexcept;

/// Full judge instruction for a criterion. The fundamental prompt is the
/// published one; the others follow the same 1/3/5 rubric.
std::string judge_prompt(Criterion criterion);

struct JudgeScore {
  Criterion criterion;
  int score = 0;
  std::string rationale;

  friend bool operator==(const JudgeScore &, const JudgeScore &) = default;
};

/// Score in a judge reply: a number right after "score", "rating" or "grade"
/// when present, otherwise the first number. None unless it is an integer in
/// 1..5.
std::optional<int> parse_judge_score(std::string_view reply);

inline constexpr const char *kJudgeAgent = "Judge";

struct JudgeOptions {
  backend::ModelParams model_params;
  /// Added to each request alongside "criterion".
  std::map<std::string, std::string> metadata;
  int max_retries = 2;
};

/// Asks `judge` to score `report`. An unparsable reply is echoed back with a
/// reminder of the format, up to max_retries times. Throws
/// Error{UnparsableJudgeOutput}, Error{InvalidArgument} for an empty report,
/// or whatever the backend throws.
JudgeScore judge_report(const std::string &report, Criterion criterion, const backend::ChatBackend &judge,
                        const JudgeOptions &options = {});

}  // namespace fincollab::eval
