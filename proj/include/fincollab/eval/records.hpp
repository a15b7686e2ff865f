#pragma once

#include "fincollab/eval/ensemble.hpp"
#include "fincollab/eval/metrics.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace fincollab::eval {

// Tab-separated record file. Columns:
//   ticker structure fundamental sentiment risk readability coherence
//   predicted_target_price buy_decision actual_release_price actual_week_price
// A score that was never produced is written as "-"; buy_decision is yes/no.

extern const std::vector<std::string> kRecordColumns;

std::string records_to_tsv(const std::vector<EvalRecord> &records);
/// Throws Error{ParseError} naming the offending line.
std::vector<EvalRecord> records_from_tsv(std::string_view text);

void write_records(const std::filesystem::path &path, const std::vector<EvalRecord> &records);
std::vector<EvalRecord> read_records(const std::filesystem::path &path);

/// Mean criterion score per structure over the records carrying it.
ScoreTable score_table_from_records(const std::vector<EvalRecord> &records);

/// Structure rows by sub-task columns, means to two decimals, "-" for gaps.
std::string render_score_table(const ScoreTable &table, const std::vector<StructureKind> &rows);
/// Reads a table in the render_score_table layout; "-" cells stay empty.
/// Throws Error{ParseError}.
ScoreTable parse_score_table(std::string_view text);
ScoreTable read_score_table(const std::filesystem::path &path);

/// Structure rows with average target-price difference (two decimals),
/// binary accuracy (one decimal) and a rank ordered by accuracy, then by
/// difference. Rows without records show "-".
std::string render_decision_table(const std::vector<EvalRecord> &records, const std::vector<StructureKind> &rows);

}  // namespace fincollab::eval
