#include "fincollab/eval/ensemble.hpp"

#include "fincollab/core/error.hpp"

#include <set>

namespace fincollab::eval {

namespace {

int tie_rank(StructureKind k) {
  switch (k) {
    case StructureKind::Horizontal: return 0;
    case StructureKind::Hybrid: return 1;
    case StructureKind::Vertical: return 2;
    default: return 3;
  }
}

/// True when `a` should win a tie against `b`.
bool preferred(StructureKind a, StructureKind b) {
  const auto sa = orchestrator::group_size(a), sb = orchestrator::group_size(b);
  if (sa != sb) return sa < sb;
  return tie_rank(a) < tie_rank(b);
}

}  // namespace

ScoreTable ScoreTable::from_rows(const std::vector<Row> &rows) {
  ScoreTable t;
  for (const auto &r : rows) t.set(r.structure, r.task, r.mean);
  return t;
}

void ScoreTable::set(StructureKind structure, Task task, double mean) {
  if (task == Task::Decision) throw Error(ErrorCode::InvalidArgument, "score tables cover sub-tasks only");
  if (structure == StructureKind::Ensemble) throw Error(ErrorCode::InvalidArgument, "ensemble is derived, not scored");
  if (!(mean >= 1.0 && mean <= 5.0)) throw Error(ErrorCode::InvalidArgument, "mean score outside [1, 5]");
  cells_[{structure, task}] = mean;
}

std::optional<double> ScoreTable::get(StructureKind structure, Task task) const {
  auto it = cells_.find({structure, task});
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

std::vector<StructureKind> ScoreTable::structures() const {
  std::set<StructureKind> kinds;
  for (const auto &[key, _] : cells_) kinds.insert(key.first);
  return {kinds.begin(), kinds.end()};
}

ScoreTable published_score_table() {
  using S = StructureKind;
  using T = Task;
  return ScoreTable::from_rows({
      {S::Single, T::Fundamental, 4.70},     {S::Single, T::Sentiment, 3.93},     {S::Single, T::Risk, 3.57},
      {S::Dual, T::Fundamental, 4.17},       {S::Dual, T::Sentiment, 3.90},       {S::Dual, T::Risk, 3.77},
      {S::Vertical, T::Fundamental, 3.20},   {S::Vertical, T::Sentiment, 3.43},   {S::Vertical, T::Risk, 4.23},
      {S::Horizontal, T::Fundamental, 3.97}, {S::Horizontal, T::Sentiment, 3.77}, {S::Horizontal, T::Risk, 3.83},
      {S::Hybrid, T::Fundamental, 4.03},     {S::Hybrid, T::Sentiment, 3.77},     {S::Hybrid, T::Risk, 3.72},
  });
}

std::map<Task, StructureKind> select_ensemble(const ScoreTable &table) {
  const auto kinds = table.structures();
  if (kinds.empty()) throw Error(ErrorCode::IncompleteTable, "score table is empty");
  std::map<Task, StructureKind> out;
  for (auto task : kSubTasks) {
    std::optional<StructureKind> best;
    double best_score = 0;
    for (auto k : kinds) {
      const auto score = table.get(k, task);
      if (!score) {
        throw Error(ErrorCode::IncompleteTable, "no " + std::string(to_string(task)) + " score for " +
                                                    std::string(orchestrator::to_string(k)));
      }
      if (!best || *score > best_score || (*score == best_score && preferred(k, *best))) {
        best = k;
        best_score = *score;
      }
    }
    out[task] = *best;
  }
  return out;
}

}  // namespace fincollab::eval
