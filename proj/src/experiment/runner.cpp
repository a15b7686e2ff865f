#include "fincollab/experiment/runner.hpp"

#include "fincollab/backend/http.hpp"
#include "fincollab/backend/scripted.hpp"
#include "fincollab/eval/decision.hpp"
#include "fincollab/eval/records.hpp"
#include "fincollab/experiment/rosters.hpp"
#include "fincollab/rag/index.hpp"
#include "fincollab/toolkit/financial_tools.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace fincollab::experiment {

using orchestrator::GroupStructure;

namespace {

[[noreturn]] void config_error(const std::string &what) { throw Error(ErrorCode::ConfigError, what); }

std::string label(StructureKind kind) { return std::string(orchestrator::to_string(kind)); }

void write_text(const std::filesystem::path &path, const std::string &text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
}

std::string read_text(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Runs fn(0..n-1) on `workers` threads. fn must not throw.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)> &fn) {
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (auto i = next++; i < n; i = next++) fn(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(workers, n); ++w) pool.emplace_back(drain);
  drain();
  for (auto &t : pool) t.join();
}

struct JudgeRow {
  std::string ticker;
  std::string structure;
  Task task;
  eval::Criterion criterion;
  int score;
};

std::string judge_rows_to_tsv(const std::vector<JudgeRow> &rows) {
  std::ostringstream out;
  out << "ticker\tstructure\ttask\tcriterion\tscore\n";
  for (const auto &r : rows) {
    out << r.ticker << '\t' << r.structure << '\t' << to_string(r.task) << '\t' << eval::to_string(r.criterion) << '\t'
        << r.score << '\n';
  }
  return out.str();
}

std::vector<JudgeRow> judge_rows_from_tsv(const std::string &text) {
  std::vector<JudgeRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    if (++line_no == 1 || line.empty()) continue;
    std::istringstream fields(line);
    std::string ticker, structure, task, criterion;
    int score = 0;
    if (!std::getline(fields, ticker, '\t') || !std::getline(fields, structure, '\t') ||
        !std::getline(fields, task, '\t') || !std::getline(fields, criterion, '\t') || !(fields >> score)) {
      throw Error(ErrorCode::ParseError, "judge scores line " + std::to_string(line_no) + " is malformed");
    }
    rows.push_back({ticker, structure, parse_task(task), eval::parse_criterion(criterion), score});
  }
  return rows;
}

eval::Criterion criterion_for(Task task) { return eval::parse_criterion(to_string(task)); }

/// What a finished cell leaves behind for later phases.
struct CellResult {
  CellEntry entry;
  std::string report;
  std::vector<std::pair<eval::Criterion, int>> scores;
  std::optional<eval::Decision> decision;
};

struct Company {
  Date release;
  std::optional<eval::GroundTruth> truth;
  std::string truth_error;
};

class Runner {
 public:
  explicit Runner(const ExperimentConfig &config) : config_(config), out_dir_(resolve(config, config.output_dir)) {
    wire_backends();
    wire_data();
  }

  RunManifest run();

 private:
  struct Job {
    std::string ticker;
    StructureKind cell_kind;
    StructureKind group_kind;
    Task task;
  };

  void wire_backends();
  void wire_data();
  const backend::ChatBackend &make_backend(const BackendConfig &b, std::vector<std::unique_ptr<backend::ChatBackend>> &keep);
  orchestrator::RunContext context(const std::string &ticker, StructureKind group_kind, Task task) const;
  CellResult run_cell(const Job &job, const GroupStructure &group, const std::string &prompt) const;
  CellResult run_subtask(const Job &job) const;
  CellResult run_decision(const Job &job, const eval::SubReports &reports) const;
  void judge(CellResult &result, const Job &job, const std::vector<eval::Criterion> &criteria) const;

  const ExperimentConfig &config_;
  std::filesystem::path out_dir_;
  std::vector<std::unique_ptr<backend::ChatBackend>> owned_;
  const backend::ChatBackend *agents_ = nullptr;
  const backend::ChatBackend *judge_ = nullptr;
  std::shared_ptr<toolkit::FixtureStore> fixtures_;
  toolkit::Providers providers_;
  std::unique_ptr<toolkit::ToolRegistry> tools_;
  std::map<std::string, Company> companies_;
  std::map<Task, StructureKind> selection_;
};

const backend::ChatBackend &Runner::make_backend(const BackendConfig &b,
                                                 std::vector<std::unique_ptr<backend::ChatBackend>> &keep) {
  if (b.kind == BackendConfig::Kind::Scripted) {
    const auto path = resolve(config_, b.script);
    if (!std::filesystem::exists(path)) config_error("script " + path.string() + " does not exist");
    try {
      keep.push_back(std::make_unique<backend::ScriptedBackend>(backend::ScriptedBackend::from_file(path)));
    } catch (const Error &e) {
      config_error(e.what());
    }
    return *keep.back();
  }
  backend::HttpBackendConfig http;
  http.base_url = b.base_url;
  http.api_key_env = b.api_key_env;
  http.timeout = std::chrono::seconds(b.timeout_seconds);
  keep.push_back(std::make_unique<backend::HttpChatBackend>(http));
  const auto &inner = *keep.back();
  keep.push_back(std::make_unique<backend::RetryingBackend>(inner, backend::RetryPolicy{}));
  return *keep.back();
}

void Runner::wire_backends() {
  agents_ = &make_backend(config_.backend, owned_);
  judge_ = config_.judge ? &make_backend(*config_.judge, owned_) : agents_;
}

void Runner::wire_data() {
  const auto corpus = resolve(config_, config_.corpus_dir);
  for (const auto &t : config_.tickers) {
    if (!std::filesystem::exists(corpus / rag::FilingLibrary::corpus_file_name(t))) {
      config_error("no corpus file for " + t + " in " + corpus.string());
    }
  }
  const auto fixture_dir = resolve(config_, config_.fixture_dir);
  if (!config_.live_data || !config_.fixture_dir.empty()) {
    try {
      fixtures_ = std::make_shared<toolkit::FixtureStore>(toolkit::FixtureStore::load(fixture_dir, config_.tickers));
    } catch (const Error &e) {
      config_error(e.what());
    }
  }
  providers_ = config_.live_data ? toolkit::live_providers_from_env() : toolkit::fixture_providers(fixtures_);

  auto embedder = std::make_shared<rag::HashEmbedder>(config_.embedding_dim, config_.seed);
  auto filings = std::make_shared<rag::FilingLibrary>(
      rag::FilingLibrary::load(corpus, config_.tickers, embedder, {config_.chunk_size, 0}));
  tools_ = std::make_unique<toolkit::ToolRegistry>(
      toolkit::standard_registry(providers_, filings, {config_.payload_budget, config_.retrieve_k}));

  for (const auto &t : config_.tickers) {
    Company c;
    if (auto it = config_.release_dates.find(t); it != config_.release_dates.end()) {
      c.release = it->second;
    } else if (fixtures_ && fixtures_->contains(t)) {
      c.release = fixtures_->get(t).release_date;
    } else {
      config_error("no release date for " + t);
    }
    if (config_.has_task(Task::Decision)) {
      try {
        c.truth = eval::ground_truth(providers_.prices->prices(t, c.release.plus_days(-14), c.release.plus_days(21)),
                                     c.release);
      } catch (const Error &e) {
        c.truth_error = e.what();
      }
    }
    companies_.emplace(t, c);
  }

  if (config_.has_structure(StructureKind::Ensemble)) {
    try {
      const auto table = config_.score_table == "published" ? eval::published_score_table()
                                                        : eval::read_score_table(resolve(config_, config_.score_table));
      selection_ = eval::select_ensemble(table);
    } catch (const Error &e) {
      config_error("score table: " + std::string(e.what()));
    }
  }
}

orchestrator::RunContext Runner::context(const std::string &ticker, StructureKind group_kind, Task task) const {
  const auto &company = companies_.at(ticker);
  orchestrator::RunContext ctx;
  ctx.backend = agents_;
  ctx.tools = tools_.get();
  ctx.invocation = {ticker, company.release, config_.leakage_inclusive};
  ctx.model_params = {config_.backend.model, config_.backend.temperature, config_.backend.max_tokens};
  ctx.metadata = {{"ticker", ticker},
                  {"task", std::string(to_string(task))},
                  {"structure", label(group_kind)},
                  {"release_date", company.release.to_string()},
                  {"window_start", company.release.plus_days(-30).to_string()},
                  {"seed", std::to_string(config_.seed)}};
  ctx.caps = {config_.main_turns, config_.nested_turns};
  return ctx;
}

CellResult Runner::run_cell(const Job &job, const GroupStructure &group, const std::string &prompt) const {
  CellResult r;
  r.entry.ticker = job.ticker;
  r.entry.structure = job.cell_kind;
  r.entry.task = job.task;
  if (job.cell_kind != job.group_kind) r.entry.source = job.group_kind;
  const auto rel = transcript_path(job.ticker, job.cell_kind, job.task);
  const auto ctx = context(job.ticker, job.group_kind, job.task);
  try {
    auto outcome = orchestrator::run_conversation(group, prompt, ctx);
    write_text(out_dir_ / rel, to_jsonl(outcome.transcript));
    r.entry.transcript = rel;
    r.entry.status = CellStatus::Terminated;
    r.entry.turns_used = outcome.turns_used;
    r.entry.terminated_by = outcome.terminated_by;
    r.entry.warnings = outcome.warnings;
    r.report = outcome.final_report;
  } catch (const orchestrator::ConversationError &e) {
    write_text(out_dir_ / rel, to_jsonl(e.transcript()));
    r.entry.transcript = rel;
    const bool cap = e.code() == ErrorCode::TurnCapExceeded || e.code() == ErrorCode::NestedTurnCapExceeded;
    r.entry.status = cap ? CellStatus::TurnCapExceeded : CellStatus::Failed;
    r.entry.turns_used = e.turn();
    r.entry.error = e.what();
  } catch (const Error &e) {
    r.entry.status = CellStatus::Failed;
    r.entry.error = e.what();
  }
  return r;
}

void Runner::judge(CellResult &result, const Job &job, const std::vector<eval::Criterion> &criteria) const {
  if (result.entry.status != CellStatus::Terminated) return;
  eval::JudgeOptions options;
  const auto &b = config_.judge ? *config_.judge : config_.backend;
  options.model_params = {b.model, b.temperature, b.max_tokens};
  options.metadata = {{"ticker", job.ticker}, {"task", std::string(to_string(job.task))},
                      {"structure", label(job.cell_kind)}};
  try {
    for (auto c : criteria) result.scores.emplace_back(c, eval::judge_report(result.report, c, *judge_, options).score);
  } catch (const Error &e) {
    result.entry.status = CellStatus::Failed;
    result.entry.error = std::string("judge: ") + e.what();
  }
}

CellResult Runner::run_subtask(const Job &job) const {
  const auto &company = companies_.at(job.ticker);
  auto result = run_cell(job, default_group(job.group_kind, job.task),
                         eval::task_prompt(job.task, job.ticker, company.release));
  judge(result, job, {criterion_for(job.task)});
  return result;
}

CellResult Runner::run_decision(const Job &job, const eval::SubReports &reports) const {
  const auto &company = companies_.at(job.ticker);
  CellResult result;
  result.entry = {job.ticker, job.cell_kind, Task::Decision, CellStatus::Failed, "", std::nullopt, 0, "", "", {}};
  if (!company.truth) {
    result.entry.error = "no ground truth: " + company.truth_error;
    return result;
  }
  std::string prompt;
  try {
    prompt = eval::decision_prompt(job.ticker, company.release, reports);
  } catch (const Error &e) {
    result.entry.error = e.what();
    return result;
  }
  const auto group =
      job.cell_kind == StructureKind::Ensemble ? ensemble_decision_group() : default_group(job.group_kind, Task::Decision);
  result = run_cell(job, group, prompt);
  if (result.entry.status != CellStatus::Terminated) return result;
  try {
    result.decision = eval::extract_decision(result.report);
  } catch (const Error &e) {
    result.entry.status = CellStatus::Failed;
    result.entry.error = e.what();
    return result;
  }
  judge(result, job, {eval::Criterion::Readability, eval::Criterion::Coherence});
  return result;
}

std::size_t worker_count(const ExperimentConfig &c) {
  if (c.parallel) return c.parallel;
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min({c.tickers.size(), hw, std::size_t{8}}));
}

RunManifest Runner::run() {
  using Key = std::tuple<std::string, StructureKind, Task>;
  std::map<Key, CellResult> results;
  std::vector<Job> jobs;
  std::vector<Key> aliases;
  for (const auto &t : config_.tickers) {
    for (auto kind : config_.structures) {
      for (auto task : config_.tasks) {
        if (task == Task::Decision) continue;
        if (kind != StructureKind::Ensemble) {
          jobs.push_back({t, kind, kind, task});
        } else if (config_.has_structure(selection_.at(task))) {
          aliases.emplace_back(t, kind, task);
        } else {
          jobs.push_back({t, kind, selection_.at(task), task});
        }
      }
    }
  }
  const auto workers = worker_count(config_);
  std::vector<CellResult> done(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t i) { done[i] = run_subtask(jobs[i]); });
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    results.emplace(Key{jobs[i].ticker, jobs[i].cell_kind, jobs[i].task}, std::move(done[i]));
  }
  for (const auto &[t, kind, task] : aliases) {
    const auto source = selection_.at(task);
    auto copy = results.at({t, source, task});
    copy.entry.structure = kind;
    copy.entry.source = source;
    results.emplace(Key{t, kind, task}, std::move(copy));
  }

  std::vector<Job> decisions;
  std::vector<eval::SubReports> inputs;
  if (config_.has_task(Task::Decision)) {
    for (const auto &t : config_.tickers) {
      for (auto kind : config_.structures) {
        auto report = [&](Task task) { return results.at({t, kind, task}).report; };
        decisions.push_back({t, kind, kind, Task::Decision});
        inputs.push_back({report(Task::Fundamental), report(Task::Sentiment), report(Task::Risk)});
      }
    }
  }
  std::vector<CellResult> decided(decisions.size());
  parallel_for(decisions.size(), workers, [&](std::size_t i) { decided[i] = run_decision(decisions[i], inputs[i]); });
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    results.emplace(Key{decisions[i].ticker, decisions[i].cell_kind, Task::Decision}, std::move(decided[i]));
  }

  RunManifest manifest;
  manifest.config_hash = config_hash(config_);
  manifest.config = canonical_json(config_);
  manifest.ensemble_selection = selection_;
  std::vector<JudgeRow> judge_rows;
  std::vector<eval::EvalRecord> records;
  for (const auto &t : config_.tickers) {
    for (auto kind : config_.structures) {
      eval::EvalRecord record;
      record.ticker = t;
      record.structure = label(kind);
      for (auto task : config_.tasks) {
        const auto &r = results.at({t, kind, task});
        manifest.cells.push_back(r.entry);
        for (const auto &[criterion, score] : r.scores) {
          judge_rows.push_back({t, label(kind), task, criterion, score});
          record.scores[criterion] = score;
        }
      }
      if (!config_.has_task(Task::Decision)) continue;
      const auto &d = results.at({t, kind, Task::Decision});
      if (d.entry.status != CellStatus::Terminated || !d.decision) continue;
      const auto &truth = *companies_.at(t).truth;
      record.predicted_target_price = d.decision->target_price;
      record.buy_decision = d.decision->buy;
      record.actual_release_price = truth.release_price;
      record.actual_week_price = truth.week_price;
      records.push_back(std::move(record));
    }
  }
  write_text(out_dir_ / kJudgeScoresFile, judge_rows_to_tsv(judge_rows));
  eval::write_records(out_dir_ / kRecordsFile, records);
  manifest.outputs = {{"judge_scores", kJudgeScoresFile},
                      {"records", kRecordsFile},
                      {"score_summary", kScoreSummaryFile},
                      {"decision_summary", kDecisionSummaryFile}};
  emit_report(manifest, out_dir_);
  write_text(out_dir_ / kManifestFile, to_json(manifest).dump(2) + "\n");
  return manifest;
}

std::vector<StructureKind> row_order(const RunManifest &manifest) {
  std::vector<StructureKind> rows;
  for (const auto &c : manifest.cells) {
    if (std::find(rows.begin(), rows.end(), c.structure) == rows.end()) rows.push_back(c.structure);
  }
  return rows;
}

}  // namespace

std::string_view to_string(CellStatus status) noexcept {
  switch (status) {
    case CellStatus::Terminated: return "terminated";
    case CellStatus::TurnCapExceeded: return "turn_cap_exceeded";
    case CellStatus::Failed: return "failed";
  }
  return "failed";
}

CellStatus parse_cell_status(std::string_view text) {
  for (auto s : {CellStatus::Terminated, CellStatus::TurnCapExceeded, CellStatus::Failed}) {
    if (text == to_string(s)) return s;
  }
  throw Error(ErrorCode::ParseError, "unknown cell status '" + std::string(text) + "'");
}

bool RunManifest::complete() const {
  return std::all_of(cells.begin(), cells.end(), [](const CellEntry &c) { return c.status == CellStatus::Terminated; });
}

const CellEntry *RunManifest::find(const std::string &ticker, StructureKind structure, Task task) const {
  for (const auto &c : cells) {
    if (c.ticker == ticker && c.structure == structure && c.task == task) return &c;
  }
  return nullptr;
}

std::string transcript_path(const std::string &ticker, StructureKind structure, Task task) {
  return "transcripts/" + ticker + "/" + label(structure) + "/" + std::string(to_string(task)) + ".jsonl";
}

Json to_json(const RunManifest &m) {
  Json cells = Json::array();
  for (const auto &c : m.cells) {
    Json j{{"ticker", c.ticker},
           {"structure", label(c.structure)},
           {"task", std::string(to_string(c.task))},
           {"status", std::string(to_string(c.status))},
           {"transcript", c.transcript},
           {"turns_used", c.turns_used},
           {"terminated_by", c.terminated_by},
           {"error", c.error},
           {"warnings", c.warnings}};
    if (c.source) j["source"] = label(*c.source);
    cells.push_back(std::move(j));
  }
  Json selection = Json::object();
  for (const auto &[task, kind] : m.ensemble_selection) selection[std::string(to_string(task))] = label(kind);
  return Json{{"config_hash", m.config_hash}, {"config", m.config},     {"ensemble_selection", selection},
              {"cells", cells},               {"outputs", m.outputs}};
}

RunManifest manifest_from_json(const Json &j) {
  try {
    RunManifest m;
    m.config_hash = j.at("config_hash").get<std::string>();
    m.config = j.at("config");
    for (const auto &[task, kind] : j.at("ensemble_selection").items()) {
      m.ensemble_selection[parse_task(task)] = orchestrator::parse_structure_kind(kind.get<std::string>());
    }
    for (const auto &c : j.at("cells")) {
      CellEntry e;
      e.ticker = c.at("ticker").get<std::string>();
      e.structure = orchestrator::parse_structure_kind(c.at("structure").get<std::string>());
      e.task = parse_task(c.at("task").get<std::string>());
      e.status = parse_cell_status(c.at("status").get<std::string>());
      e.transcript = c.at("transcript").get<std::string>();
      e.turns_used = c.at("turns_used").get<std::size_t>();
      e.terminated_by = c.at("terminated_by").get<std::string>();
      e.error = c.at("error").get<std::string>();
      e.warnings = c.at("warnings").get<std::vector<std::string>>();
      if (c.contains("source")) e.source = orchestrator::parse_structure_kind(c.at("source").get<std::string>());
      m.cells.push_back(std::move(e));
    }
    m.outputs = j.at("outputs").get<std::map<std::string, std::string>>();
    return m;
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::ParseError, std::string("manifest: ") + e.what());
  } catch (const Error &e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, std::string("manifest: ") + e.what());
  }
}

RunManifest read_manifest(const std::filesystem::path &path) {
  try {
    return manifest_from_json(Json::parse(read_text(path)));
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

RunManifest run_experiment(const ExperimentConfig &config) {
  validate_config(config);
  Runner runner(config);
  return runner.run();
}

std::vector<std::filesystem::path> emit_report(const RunManifest &manifest, const std::filesystem::path &output_dir) {
  auto output = [&](const std::string &name, const char *fallback) {
    auto it = manifest.outputs.find(name);
    return output_dir / (it == manifest.outputs.end() ? fallback : it->second);
  };
  const auto rows = row_order(manifest);

  std::vector<JudgeRow> judged;
  if (const auto path = output("judge_scores", kJudgeScoresFile); std::filesystem::exists(path)) {
    judged = judge_rows_from_tsv(read_text(path));
  }
  std::map<std::pair<StructureKind, Task>, std::pair<double, int>> sums;
  for (const auto &r : judged) {
    const auto kind = orchestrator::parse_structure_kind(r.structure);
    if (kind == StructureKind::Ensemble || r.task == Task::Decision) continue;
    auto &[sum, n] = sums[{kind, r.task}];
    sum += r.score;
    ++n;
  }
  eval::ScoreTable table;
  for (const auto &[key, acc] : sums) table.set(key.first, key.second, acc.first / acc.second);
  std::vector<StructureKind> score_rows;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(score_rows),
               [](StructureKind k) { return k != StructureKind::Ensemble; });

  std::vector<eval::EvalRecord> records;
  if (const auto path = output("records", kRecordsFile); std::filesystem::exists(path)) {
    records = eval::read_records(path);
  }

  const auto scores_path = output("score_summary", kScoreSummaryFile);
  const auto decisions_path = output("decision_summary", kDecisionSummaryFile);
  write_text(scores_path, eval::render_score_table(table, score_rows));
  write_text(decisions_path, eval::render_decision_table(records, rows));
  return {scores_path, decisions_path};
}

}  // namespace fincollab::experiment
