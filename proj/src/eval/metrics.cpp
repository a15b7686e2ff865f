#include "fincollab/eval/metrics.hpp"

#include <cmath>
#include <cstdio>

namespace fincollab::eval {

namespace {

void require_positive(const EvalRecord &r) {
  if (!(r.actual_release_price > 0) || !(r.actual_week_price > 0)) {
    throw Error(ErrorCode::NonPositiveActual, r.ticker + "/" + r.structure + ": actual prices must be positive");
  }
}

}  // namespace

double price_diff(double predicted, double actual) {
  if (!(actual > 0)) throw Error(ErrorCode::NonPositiveActual, "actual price must be positive");
  return std::abs(predicted - actual) / actual;
}

double binary_accuracy(const std::vector<EvalRecord> &records) {
  if (records.empty()) throw Error(ErrorCode::EmptyRecordSet, "no records to score");
  std::size_t correct = 0;
  for (const auto &r : records) {
    require_positive(r);
    correct += r.decision_correct();
  }
  return static_cast<double>(correct) / static_cast<double>(records.size());
}

double mean_price_diff(const std::vector<EvalRecord> &records) {
  if (records.empty()) throw Error(ErrorCode::EmptyRecordSet, "no records to score");
  double sum = 0;
  for (const auto &r : records) {
    require_positive(r);
    sum += price_diff(r.predicted_target_price, r.actual_week_price);
  }
  return sum / static_cast<double>(records.size());
}

GroundTruth ground_truth(const std::vector<toolkit::PriceBar> &prices, Date release) {
  const toolkit::PriceBar *on_release = nullptr;
  const toolkit::PriceBar *week_later = nullptr;
  const auto target = release.plus_days(7);
  for (const auto &bar : prices) {
    if (bar.date <= release) on_release = &bar;
    if (!week_later && bar.date >= target) week_later = &bar;
  }
  if (!on_release) throw Error(ErrorCode::InvalidArgument, "no trading day on or before " + release.to_string());
  if (!week_later) throw Error(ErrorCode::InvalidArgument, "no trading day on or after " + target.to_string());
  return {on_release->close, week_later->close};
}

std::string format_percent(double fraction, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f%%", decimals, fraction * 100.0);
  return buf;
}

}  // namespace fincollab::eval
