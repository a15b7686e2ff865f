#pragma once

#include "fincollab/experiment/config.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fincollab::experiment {

enum class CellStatus { Terminated, TurnCapExceeded, Failed };

std::string_view to_string(CellStatus status) noexcept;
/// Throws Error{ParseError}.
CellStatus parse_cell_status(std::string_view text);

/// One (ticker, structure, task) unit of work.
struct CellEntry {
  std::string ticker;
  StructureKind structure = StructureKind::Single;
  Task task = Task::Fundamental;
  CellStatus status = CellStatus::Failed;
  /// Relative to the output directory; empty when nothing was written.
  std::string transcript;
  /// Ensemble sub-task cells: the structure whose report was used.
  std::optional<StructureKind> source;
  std::size_t turns_used = 0;
  std::string terminated_by;
  std::string error;
  std::vector<std::string> warnings;

  friend bool operator==(const CellEntry &, const CellEntry &) = default;
};

struct RunManifest {
  std::string config_hash;
  Json config;
  std::map<Task, StructureKind> ensemble_selection;
  std::vector<CellEntry> cells;
  /// Output name -> path relative to the output directory.
  std::map<std::string, std::string> outputs;

  /// True when every cell terminated normally.
  [[nodiscard]] bool complete() const;
  [[nodiscard]] const CellEntry *find(const std::string &ticker, StructureKind structure, Task task) const;
};

Json to_json(const RunManifest &manifest);
/// Throws Error{ParseError}.
RunManifest manifest_from_json(const Json &json);
RunManifest read_manifest(const std::filesystem::path &path);

inline constexpr const char *kManifestFile = "manifest.json";
inline constexpr const char *kRecordsFile = "eval_records.tsv";
inline constexpr const char *kJudgeScoresFile = "judge_scores.tsv";
inline constexpr const char *kScoreSummaryFile = "summary_scores.tsv";
inline constexpr const char *kDecisionSummaryFile = "summary_decisions.tsv";

/// Transcript path for a cell, relative to the output directory:
/// transcripts/<ticker>/<structure>/<task>.jsonl.
std::string transcript_path(const std::string &ticker, StructureKind structure, Task task);

/// Runs every configured cell, scores it, runs the decision cells, writes
/// transcripts, records, judge scores, summaries and the manifest under
/// config.output_dir. Throws Error{ConfigError} when the inputs cannot be
/// wired up; cell failures are recorded in the manifest instead.
RunManifest run_experiment(const ExperimentConfig &config);

/// Writes the structure x sub-task score table and the structure x
/// {avg diff, binary accuracy} table from the files the manifest lists.
/// Missing cells appear as "-". Returns the written paths.
std::vector<std::filesystem::path> emit_report(const RunManifest &manifest, const std::filesystem::path &output_dir);

}  // namespace fincollab::experiment
