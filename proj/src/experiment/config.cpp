#include "fincollab/experiment/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

namespace fincollab::experiment {

namespace {

[[noreturn]] void fail(const std::string &what) { throw Error(ErrorCode::ConfigError, what); }

void check_keys(const Json &obj, const std::string &where, const std::set<std::string> &allowed) {
  if (!obj.is_object()) fail(where + " must be an object");
  for (const auto &[key, _] : obj.items()) {
    if (!allowed.count(key)) fail("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get(const Json &obj, const std::string &key, const std::string &where, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception &) {
    fail(where + "." + key + " has the wrong type");
  }
}

std::size_t get_count(const Json &obj, const std::string &key, const std::string &where, std::size_t fallback,
                      std::size_t minimum = 1) {
  if (!obj.contains(key)) return fallback;
  const auto &v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(minimum)) {
    fail(where + "." + key + " must be an integer >= " + std::to_string(minimum));
  }
  return v.get<std::size_t>();
}

BackendConfig backend_from_json(const Json &j, const std::string &where) {
  check_keys(j, where, {"kind", "script", "base_url", "api_key_env", "model", "temperature", "max_tokens",
                        "timeout_seconds"});
  BackendConfig b;
  const auto kind = get<std::string>(j, "kind", where, "scripted");
  if (kind == "scripted") {
    b.kind = BackendConfig::Kind::Scripted;
  } else if (kind == "live") {
    b.kind = BackendConfig::Kind::Live;
  } else {
    fail(where + ".kind must be \"scripted\" or \"live\"");
  }
  b.script = get<std::string>(j, "script", where, "");
  b.base_url = get<std::string>(j, "base_url", where, b.base_url);
  b.api_key_env = get<std::string>(j, "api_key_env", where, b.api_key_env);
  b.model = get<std::string>(j, "model", where, b.model);
  b.temperature = get<double>(j, "temperature", where, b.temperature);
  b.max_tokens = static_cast<int>(get_count(j, "max_tokens", where, b.max_tokens));
  b.timeout_seconds = static_cast<int>(get_count(j, "timeout_seconds", where, b.timeout_seconds));
  return b;
}

Json backend_to_json(const BackendConfig &b, const ExperimentConfig &c) {
  if (b.kind == BackendConfig::Kind::Scripted) {
    return {{"kind", "scripted"}, {"script", resolve(c, b.script).lexically_relative(c.base_dir).generic_string()}};
  }
  return {{"kind", "live"},           {"base_url", b.base_url},       {"api_key_env", b.api_key_env},
          {"model", b.model},         {"temperature", b.temperature}, {"max_tokens", b.max_tokens},
          {"timeout_seconds", b.timeout_seconds}};
}

std::string relative(const ExperimentConfig &c, const std::filesystem::path &p) {
  if (p.empty()) return "";
  return resolve(c, p).lexically_relative(c.base_dir).generic_string();
}

}  // namespace

bool ExperimentConfig::has_structure(StructureKind kind) const {
  return std::find(structures.begin(), structures.end(), kind) != structures.end();
}

bool ExperimentConfig::has_task(Task task) const { return std::find(tasks.begin(), tasks.end(), task) != tasks.end(); }

std::filesystem::path resolve(const ExperimentConfig &config, const std::filesystem::path &p) {
  if (p.empty() || p.is_absolute()) return p.lexically_normal();
  return (config.base_dir / p).lexically_normal();
}

ExperimentConfig config_from_json(const Json &j, const std::filesystem::path &base_dir) {
  const std::string where = "config";
  check_keys(j, where,
             {"tickers", "structures", "tasks", "backend", "judge", "data", "corpus_dir", "fixture_dir",
              "release_dates", "caps", "output_dir", "seed", "score_table", "retrieval", "payload_budget",
              "leakage_inclusive", "parallel"});
  ExperimentConfig c;
  c.base_dir = std::filesystem::absolute(base_dir).lexically_normal();
  c.tickers = get<std::vector<std::string>>(j, "tickers", where, {});
  try {
    for (const auto &s : get<std::vector<std::string>>(j, "structures", where, {})) {
      c.structures.push_back(orchestrator::parse_structure_kind(s));
    }
    if (j.contains("tasks")) {
      c.tasks.clear();
      for (const auto &t : get<std::vector<std::string>>(j, "tasks", where, {})) c.tasks.push_back(parse_task(t));
    }
  } catch (const Error &e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(e.what());
  }
  if (!j.contains("backend")) fail("config.backend is required");
  c.backend = backend_from_json(j.at("backend"), "backend");
  if (j.contains("judge")) c.judge = backend_from_json(j.at("judge"), "judge");
  const auto data = get<std::string>(j, "data", where, "fixtures");
  if (data != "fixtures" && data != "live") fail("config.data must be \"fixtures\" or \"live\"");
  c.live_data = data == "live";
  c.corpus_dir = get<std::string>(j, "corpus_dir", where, "");
  c.fixture_dir = get<std::string>(j, "fixture_dir", where, "");
  for (const auto &[ticker, date] : get<std::map<std::string, std::string>>(j, "release_dates", where, {})) {
    const auto d = Date::parse(date);
    if (!d) fail("release date '" + date + "' for " + ticker + " is not YYYY-MM-DD");
    c.release_dates.emplace(ticker, *d);
  }
  if (j.contains("caps")) {
    const auto &caps = j.at("caps");
    check_keys(caps, "caps", {"main_turns", "nested_turns"});
    c.main_turns = get_count(caps, "main_turns", "caps", c.main_turns);
    c.nested_turns = get_count(caps, "nested_turns", "caps", c.nested_turns);
  }
  c.output_dir = get<std::string>(j, "output_dir", where, "out");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) fail("config.seed must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  c.score_table = get<std::string>(j, "score_table", where, "");
  if (j.contains("retrieval")) {
    const auto &r = j.at("retrieval");
    check_keys(r, "retrieval", {"chunk_size", "k", "embedding_dim"});
    c.chunk_size = get_count(r, "chunk_size", "retrieval", c.chunk_size);
    c.retrieve_k = get_count(r, "k", "retrieval", c.retrieve_k);
    c.embedding_dim = get_count(r, "embedding_dim", "retrieval", c.embedding_dim);
  }
  c.payload_budget = get_count(j, "payload_budget", where, c.payload_budget);
  c.leakage_inclusive = get<bool>(j, "leakage_inclusive", where, true);
  c.parallel = get_count(j, "parallel", where, 0, 0);
  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) fail("cannot read config " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception &e) {
    fail(path.string() + ": " + e.what());
  }
  return config_from_json(j, std::filesystem::absolute(path).parent_path());
}

void validate_config(const ExperimentConfig &c) {
  if (c.tickers.empty()) fail("config.tickers must list at least one ticker");
  if (std::set<std::string>(c.tickers.begin(), c.tickers.end()).size() != c.tickers.size()) {
    fail("config.tickers has duplicates");
  }
  if (c.structures.empty()) fail("config.structures must list at least one structure");
  if (std::set<StructureKind>(c.structures.begin(), c.structures.end()).size() != c.structures.size()) {
    fail("config.structures has duplicates");
  }
  if (c.tasks.empty()) fail("config.tasks must list at least one task");
  if (std::set<Task>(c.tasks.begin(), c.tasks.end()).size() != c.tasks.size()) fail("config.tasks has duplicates");
  if (c.has_task(Task::Decision)) {
    for (auto t : kSubTasks) {
      if (!c.has_task(t)) fail("the decision task needs the " + std::string(to_string(t)) + " task");
    }
  }
  if (c.has_structure(StructureKind::Ensemble) && c.score_table.empty()) {
    fail("the ensemble structure needs a score_table (\"published\" or a file)");
  }
  for (const auto *b : {&c.backend, c.judge ? &*c.judge : nullptr}) {
    if (b && b->kind == BackendConfig::Kind::Scripted && b->script.empty()) fail("scripted backend needs a script path");
  }
  if (c.corpus_dir.empty()) fail("config.corpus_dir is required");
  if (!c.live_data && c.fixture_dir.empty()) fail("fixture data needs config.fixture_dir");
}

void force_offline(ExperimentConfig &c) {
  c.live_data = false;
  for (auto *b : {&c.backend, c.judge ? &*c.judge : nullptr}) {
    if (b && b->kind == BackendConfig::Kind::Live) {
      if (b->script.empty()) fail("--offline needs a scripted backend script in the config");
      b->kind = BackendConfig::Kind::Scripted;
    }
  }
  validate_config(c);
}

Json canonical_json(const ExperimentConfig &c) {
  Json j;
  j["tickers"] = c.tickers;
  j["structures"] = Json::array();
  for (auto s : c.structures) j["structures"].push_back(std::string(orchestrator::to_string(s)));
  j["tasks"] = Json::array();
  for (auto t : c.tasks) j["tasks"].push_back(std::string(to_string(t)));
  j["backend"] = backend_to_json(c.backend, c);
  if (c.judge) j["judge"] = backend_to_json(*c.judge, c);
  j["data"] = c.live_data ? "live" : "fixtures";
  j["corpus_dir"] = relative(c, c.corpus_dir);
  j["fixture_dir"] = relative(c, c.fixture_dir);
  Json dates = Json::object();
  for (const auto &[t, d] : c.release_dates) dates[t] = d.to_string();
  j["release_dates"] = dates;
  j["caps"] = {{"main_turns", c.main_turns}, {"nested_turns", c.nested_turns}};
  j["seed"] = c.seed;
  j["score_table"] = c.score_table == "published" || c.score_table.empty() ? c.score_table : relative(c, c.score_table);
  j["retrieval"] = {{"chunk_size", c.chunk_size}, {"k", c.retrieve_k}, {"embedding_dim", c.embedding_dim}};
  j["payload_budget"] = c.payload_budget;
  j["leakage_inclusive"] = c.leakage_inclusive;
  return j;
}

std::string config_hash(const ExperimentConfig &config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_json(config).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fincollab::experiment
