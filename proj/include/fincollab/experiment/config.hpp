#pragma once

#include "fincollab/core/date.hpp"
#include "fincollab/core/error.hpp"
#include "fincollab/core/task.hpp"
#include "fincollab/core/tool.hpp"
#include "fincollab/orchestrator/structure.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fincollab::experiment {

using orchestrator::StructureKind;

struct BackendConfig {
  enum class Kind { Scripted, Live };
  Kind kind = Kind::Scripted;
  std::filesystem::path script;
  std::string base_url = "https://api.openai.com/v1";
  std::string api_key_env = "OPENAI_API_KEY";
  std::string model = "gpt-4-1106-preview";
  double temperature = 0.0;
  int max_tokens = 2048;
  int timeout_seconds = 120;
};

struct ExperimentConfig {
  std::vector<std::string> tickers;
  std::vector<StructureKind> structures;
  std::vector<Task> tasks{Task::Fundamental, Task::Sentiment, Task::Risk, Task::Decision};
  BackendConfig backend;
  /// Defaults to `backend`.
  std::optional<BackendConfig> judge;
  bool live_data = false;
  std::filesystem::path corpus_dir;
  std::filesystem::path fixture_dir;
  std::map<std::string, Date> release_dates;
  std::size_t main_turns = 40;
  std::size_t nested_turns = 10;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;
  /// "published" for the bundled table, otherwise a score-table file.
  std::string score_table;
  std::size_t chunk_size = 1000;
  std::size_t retrieve_k = 3;
  std::size_t embedding_dim = 256;
  std::size_t payload_budget = 4000;
  bool leakage_inclusive = true;
  /// Worker threads; 0 picks min(tickers, hardware threads, 8).
  std::size_t parallel = 0;
  /// Relative paths in the file resolve against this directory.
  std::filesystem::path base_dir;

  [[nodiscard]] bool has_structure(StructureKind kind) const;
  [[nodiscard]] bool has_task(Task task) const;
};

/// Parses the JSON config. Relative paths resolve against `base_dir`.
/// Throws Error{ConfigError} for unknown keys, bad values or broken invariants.
ExperimentConfig config_from_json(const Json &json, const std::filesystem::path &base_dir);
ExperimentConfig load_config(const std::filesystem::path &path);

/// Checks cross-field invariants; called by the loaders and again after
/// command-line overrides.
void validate_config(const ExperimentConfig &config);

/// Forces the scripted backend and fixture data. Throws Error{ConfigError}
/// when no script is configured.
void force_offline(ExperimentConfig &config);

/// Canonical JSON form with paths relative to base_dir; the output directory
/// and worker count are left out since they do not change results.
Json canonical_json(const ExperimentConfig &config);
/// FNV-1a 64 of canonical_json(config).dump(), as 16 hex digits.
std::string config_hash(const ExperimentConfig &config);

std::filesystem::path resolve(const ExperimentConfig &config, const std::filesystem::path &p);

}  // namespace fincollab::experiment
