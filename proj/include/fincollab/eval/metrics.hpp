#pragma once

#include "fincollab/core/date.hpp"
#include "fincollab/eval/judge.hpp"
#include "fincollab/toolkit/fixtures.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fincollab::eval {

/// One (ticker, structure) outcome: judge scores plus the decision and the
/// prices it is measured against.
struct EvalRecord {
  std::string ticker;
  std::string structure;
  std::map<Criterion, int> scores;
  double predicted_target_price = 0;
  bool buy_decision = false;
  double actual_release_price = 0;
  double actual_week_price = 0;

  /// Buying was right only if the price rose; a flat week counts against it.
  [[nodiscard]] bool buy_truth() const { return actual_week_price > actual_release_price; }
  [[nodiscard]] bool decision_correct() const { return buy_decision == buy_truth(); }

  friend bool operator==(const EvalRecord &, const EvalRecord &) = default;
};

/// |predicted - actual| / actual. Throws Error{NonPositiveActual}.
double price_diff(double predicted, double actual);

/// Fraction of records whose buy decision matches the realised move.
/// Throws Error{EmptyRecordSet}, Error{NonPositiveActual}.
double binary_accuracy(const std::vector<EvalRecord> &records);

/// Mean price_diff of the target price against the week-ahead price.
/// Throws Error{EmptyRecordSet}.
double mean_price_diff(const std::vector<EvalRecord> &records);

struct GroundTruth {
  double release_price = 0;
  double week_price = 0;
};

/// Close on the last trading day on or before `release`, and on the first
/// trading day on or after release + 7 days. `prices` must be date-sorted.
/// Throws Error{InvalidArgument} when either day is missing.
GroundTruth ground_truth(const std::vector<toolkit::PriceBar> &prices, Date release);

/// "66.7%" style rendering of a fraction.
std::string format_percent(double fraction, int decimals);

}  // namespace fincollab::eval
