#pragma once

#include "fincollab/core/task.hpp"
#include "fincollab/orchestrator/structure.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace fincollab::eval {

using orchestrator::StructureKind;

/// Mean judge score per (structure, sub-task).
class ScoreTable {
 public:
  struct Row {
    StructureKind structure;
    Task task;
    double mean;
  };

  ScoreTable() = default;
  /// Throws like set(); a repeated cell keeps the last value.
  static ScoreTable from_rows(const std::vector<Row> &rows);

  /// Throws Error{InvalidArgument} for the decision task, the ensemble label
  /// or a mean outside [1, 5].
  void set(StructureKind structure, Task task, double mean);
  [[nodiscard]] std::optional<double> get(StructureKind structure, Task task) const;
  /// Structures with at least one cell, in enum order.
  [[nodiscard]] std::vector<StructureKind> structures() const;
  [[nodiscard]] bool empty() const { return cells_.empty(); }

 private:
  std::map<std::pair<StructureKind, Task>, double> cells_;
};

/// Sub-task quality means from the published size and structure comparisons:
/// single and dual from the former, vertical, horizontal and hybrid from the
/// latter (its horizontal row is the triple-size row of the former).
ScoreTable published_score_table();

/// Best structure per sub-task by mean score. Ties go to the smaller group,
/// then Horizontal over Hybrid over Vertical. Throws Error{IncompleteTable}
/// when a structure present in the table lacks a sub-task.
std::map<Task, StructureKind> select_ensemble(const ScoreTable &table);

}  // namespace fincollab::eval
