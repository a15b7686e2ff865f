#include "fincollab/backend/wire.hpp"
#include "fincollab/eval/ensemble.hpp"
#include "fincollab/eval/metrics.hpp"
#include "fincollab/experiment/config.hpp"
#include "fincollab/experiment/runner.hpp"
#include "fincollab/orchestrator/conversation.hpp"
#include "fincollab/rag/index.hpp"
#include "fincollab/toolkit/financial_tools.hpp"
#include "fincollab/toolkit/fixtures.hpp"

#include "corpus_gen.hpp"
#include "generators.hpp"
#include "script_helpers.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace fc = fincollab;
using fc::Json;
using fc::Message;
using fc::Rank;
using fc::Scope;
using fc::Task;
using fc::backend::ScriptRule;
using fc::eval::StructureKind;
using fc::orchestrator::GroupStructure;
using fc::orchestrator::Order;
using fc::testing::call_tool;
using fc::testing::say;

namespace {

const std::filesystem::path kGolden = FINCOLLAB_GOLDEN_DIR;
const std::filesystem::path kDemo = std::filesystem::path(FINCOLLAB_DATA_DIR) / "demo";

class Check {
 public:
  void expect(bool ok, const std::string &what) {
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    failed_ = failed_ || !ok;
  }
  void note(std::string detail) { detail_ = std::move(detail); }
  [[nodiscard]] bool ok() const { return !failed_; }
  [[nodiscard]] const std::vector<std::string> &failures() const { return failures_; }
  [[nodiscard]] const std::string &detail() const { return detail_; }

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
  std::string detail_;
};

fc::AgentSpec member(std::string name, Rank rank = Rank::Peer, std::set<std::string> tools = {}) {
  auto a = fc::testing::agent(std::move(name), rank);
  a.role_description = "Analyst " + a.name + ".";
  a.allowed_tools = std::move(tools);
  return a;
}

struct Harness {
  explicit Harness(std::vector<ScriptRule> rules, std::string fallback = "Noted.")
      : backend(std::move(rules), fc::backend::ChatResponse{std::move(fallback), {}}),
        tools(fc::testing::echo_registry()) {
    ctx.backend = &backend;
    ctx.tools = &tools;
    ctx.invocation = {"AAPL", fc::Date(2023, 11, 3), true};
    ctx.metadata = {{"ticker", "AAPL"}};
  }
  fc::backend::ScriptedBackend backend;
  fc::toolkit::ToolRegistry tools;
  fc::orchestrator::RunContext ctx;
};

std::vector<std::string> turn_speakers(const fc::Transcript &t) {
  std::vector<std::string> out;
  for (const auto &m : t.messages()) {
    if (m.scope.is_main() && m.from_agent() && m.tool_calls.empty()) out.push_back(m.sender);
  }
  return out;
}

std::string join(const std::vector<std::string> &v) {
  std::string out;
  for (const auto &s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------- 1

void round_robin(Check &c) {
  const GroupStructure abc = fc::orchestrator::Horizontal{{member("A"), member("B"), member("C")}};
  const std::vector<std::string> want = {"A", "B", "C", "A", "B", "C", "A"};
  const auto start = std::chrono::steady_clock::now();

  Harness terminating({say("A", 2, "wrap up TERMINATE")});
  const auto out = fc::orchestrator::run_conversation(abc, "task", terminating.ctx);
  c.expect(turn_speakers(out.transcript) == want, "terminated run speakers " + join(turn_speakers(out.transcript)));

  Harness capped({});
  capped.ctx.caps.main_turns = 7;
  try {
    (void)fc::orchestrator::run_conversation(abc, "task", capped.ctx);
    c.expect(false, "capped run did not stop at 7 turns");
  } catch (const fc::orchestrator::ConversationError &e) {
    c.expect(turn_speakers(e.transcript()) == want, "capped run speakers " + join(turn_speakers(e.transcript())));
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s in %.4f s", join(want).c_str(), elapsed);
  c.note(buf);
}

// ---------------------------------------------------------------- 2

void vertical_conformance(Check &c) {
  const GroupStructure vertical = fc::orchestrator::Vertical{
      member("L", Rank::Leader),
      {member("S1", Rank::Subordinate, {"lookup"}), member("S2", Rank::Subordinate, {"lookup"})}};
  Harness h({say("L", 0, "Plan: two steps.\n[S1] fetch AAPL close price"),
             call_tool("S1", 0, "lookup", {{"ticker", "AAPL"}}), say("S1", 1, "AAPL close is 100."),
             say("L", 1, "Step one done.\n[S2] assess the filing risks"), say("S2", 0, "Main risk: supply chain."),
             say("L", 2, "Both reports in. Final view: hold. TERMINATE")});
  const auto out = fc::orchestrator::run_conversation(vertical, "Analyse AAPL risk", h.ctx);

  std::map<std::string, std::uint64_t> nesting_of;
  for (const auto &m : out.transcript.messages()) {
    if (m.scope.is_nested()) nesting_of[m.scope.subordinate] = m.scope.nesting_id;
  }
  c.expect(nesting_of.size() == 2, "expected nestings for S1 and S2");

  std::size_t reappended = 0;
  for (const auto &m : out.transcript.messages()) {
    if (!m.scope.is_main() || (m.sender != "S1" && m.sender != "S2")) continue;
    ++reappended;
    const auto nested = fc::nested_messages(out.transcript, nesting_of[m.sender]);
    c.expect(!nested.empty() && nested.back().content == m.content, m.sender + " final differs from nested report");
  }
  c.expect(reappended == 2, "re-appended finals: " + std::to_string(reappended));

  std::size_t leaked = 0;
  for (const auto &m : fc::render_context(out.transcript, "S2")) {
    leaked += m.scope.is_nested() && (m.scope.subordinate == "S1" || m.scope.nesting_id == nesting_of["S1"]);
  }
  c.expect(leaked == 0, "S2 sees " + std::to_string(leaked) + " messages of S1's nesting");
  c.expect(out.terminated_by == "L", "terminated_by " + out.terminated_by);
  c.note("finals=" + std::to_string(reappended) + " cross-visible=" + std::to_string(leaked) +
         " terminated_by=" + out.terminated_by);
}

// ---------------------------------------------------------------- 3

void termination_authority(Check &c) {
  const GroupStructure hybrid = fc::orchestrator::Hybrid{
      member("L", Rank::Leader), {member("A", Rank::Subordinate), member("B", Rank::Subordinate)}};
  std::mt19937 rng(2024);
  std::size_t subordinate_endings = 0, subordinate_terminates = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t leader_stop = std::uniform_int_distribution<std::size_t>(0, 8)(rng);
    std::bernoulli_distribution terminate(0.7);
    std::vector<ScriptRule> rules;
    for (const char *s : {"A", "B"}) {
      for (std::size_t i = 0; i < 10; ++i) {
        const bool t = terminate(rng);
        subordinate_terminates += t && i < leader_stop;
        rules.push_back(say(s, i, t ? std::string("view ") + s + " TERMINATE" : std::string("view ") + s));
      }
    }
    for (std::size_t i = 0; i < leader_stop; ++i) rules.push_back(say("L", i, "keep going"));
    rules.push_back(say("L", leader_stop, "final analysis TERMINATE"));
    Harness h(rules);
    const auto out = fc::orchestrator::run_conversation(hybrid, "task", h.ctx);
    const auto speakers = turn_speakers(out.transcript);
    const bool leader_ended = out.terminated_by == "L" && !speakers.empty() && speakers.back() == "L";
    subordinate_endings += !leader_ended;
    c.expect(leader_ended, "trial " + std::to_string(trial) + " ended by " + out.terminated_by);
    c.expect(speakers.size() == 3 * leader_stop + 1,
             "trial " + std::to_string(trial) + " ran " + std::to_string(speakers.size()) + " turns");
  }
  c.expect(subordinate_terminates > 0, "no subordinate ever emitted TERMINATE before the leader");
  c.note("50 runs, " + std::to_string(subordinate_terminates) + " subordinate TERMINATEs, " +
         std::to_string(subordinate_endings) + " subordinate endings");
}

// ---------------------------------------------------------------- 4

void order_parsing(Check &c) {
  using O = std::optional<Order>;
  const std::vector<std::pair<std::string, O>> table = {
      // valid
      {"[S1] fetch the prices", Order{"S1", "fetch the prices"}},
      {"Plan first.\n[Analyst_B] compute the debt ratio for 2023", Order{"Analyst_B", "compute the debt ratio for 2023"}},
      {"  [S2]   trim me  \n", Order{"S2", "trim me"}},
      {"[S1]: colon form", Order{"S1", "colon form"}},
      {"[S1] read item 1A\nand item 7", Order{"S1", "read item 1A\nand item 7"}},
      {"\t[Analyst_A] tabbed", Order{"Analyst_A", "tabbed"}},
      {"Status ok.\r\n[S2] carriage return", Order{"S2", "carriage return"}},
      {"[S1] go terminate", Order{"S1", "go terminate"}},
      {"[S1] compare [2022] to [2023]", Order{"S1", "compare [2022] to [2023]"}},
      // unknown names still parse; the loop decides
      {"[Nobody] do something", Order{"Nobody", "do something"}},
      {"Next step.\n[S9] audit the cash flow", Order{"S9", "audit the cash flow"}},
      {"[CFO] explain margins", Order{"CFO", "explain margins"}},
      // no order
      {"no brackets here", std::nullopt},
      {"", std::nullopt},
      {"[S1]", std::nullopt},
      {"[S1]   \n  ", std::nullopt},
      {"text [S1] inline only", std::nullopt},
      {"[] empty name", std::nullopt},
      {"[S1 unclosed", std::nullopt},
      {"Summary without any delegation.", std::nullopt},
      // multiple orders
      {"[S1] first\n[S2] second", Order{"S2", "second"}},
      {"[S1] first\n[S2] second\nwith detail", Order{"S2", "second\nwith detail"}},
      {"[S2] a\n[S1] b\n[S2] c", Order{"S2", "c"}},
      {"[S1] fetch\nnotes [S2] inline", Order{"S1", "fetch\nnotes [S2] inline"}},
      {"[S1] x\n[S2]", std::nullopt},
      // TERMINATE-bearing
      {"All done. TERMINATE", std::nullopt},
      {"[S1] go TERMINATE", std::nullopt},
      {"TERMINATE\n[S1] fetch", std::nullopt},
      {"[S1] fetch\nTERMINATE", std::nullopt},
      {"Final view: hold.\n\nTERMINATE", std::nullopt},
  };
  c.expect(table.size() == 30, "table has " + std::to_string(table.size()) + " cases");
  std::size_t matched = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto got = fc::orchestrator::parse_order(table[i].first);
    const bool ok = got == table[i].second;
    matched += ok;
    c.expect(ok, "case " + std::to_string(i) + " got " + (got ? "[" + got->target + "] " + got->instruction : "none"));
  }

  const GroupStructure vertical = fc::orchestrator::Vertical{
      member("L", Rank::Leader), {member("S1", Rank::Subordinate), member("S2", Rank::Subordinate)}};
  Harness h({say("L", 0, "[S1] first\n[S9] unknown wins the parse"), say("L", 1, "[S2] do it"), say("S2", 0, "ok"),
             say("L", 2, "TERMINATE")});
  const auto out = fc::orchestrator::run_conversation(vertical, "task", h.ctx);
  std::size_t nestings = 0;
  for (const auto &m : out.transcript.messages()) nestings = std::max<std::size_t>(nestings, m.scope.nesting_id);
  c.expect(out.warnings.size() == 1 && out.warnings[0].find("S9") != std::string::npos, "unknown target not warned");
  c.expect(nestings == 1, "nestings " + std::to_string(nestings));
  c.expect(out.terminated_by == "L" && out.turns_used == 3, "loop did not continue to the leader's TERMINATE");
  c.note(std::to_string(matched) + "/" + std::to_string(table.size()) + " cases; unknown target skipped");
}

// ---------------------------------------------------------------- 5

void metric_arithmetic(Check &c) {
  std::vector<fc::eval::EvalRecord> records;
  std::size_t correct = 0;
  for (int i = 0; i < 30; ++i) {
    fc::eval::EvalRecord r;
    r.ticker = "T" + std::to_string(i);
    r.structure = "ensemble";
    r.actual_release_price = 100;
    r.actual_week_price = i % 2 ? 104 : 97;
    const bool rose = r.actual_week_price > r.actual_release_price;
    r.buy_decision = i < 20 ? rose : !rose;
    r.predicted_target_price = 101;
    correct += r.buy_decision == rose;
    records.push_back(r);
  }
  c.expect(correct == 20, "oracle counts " + std::to_string(correct) + " correct");
  const double acc = fc::eval::binary_accuracy(records);
  c.expect(std::fabs(acc - 0.667) <= 0.0005, "accuracy " + std::to_string(acc));
  c.expect(acc == 20.0 / 30.0, "accuracy differs from 20/30");
  const auto rendered = fc::eval::format_percent(acc, 1);
  c.expect(rendered == "66.7%", "rendered " + rendered);
  const double diff = fc::eval::price_diff(105, 100);
  c.expect(diff == 0.05, "price_diff(105,100) = " + std::to_string(diff));
  char buf[96];
  std::snprintf(buf, sizeof buf, "accuracy %.4f -> %s; price_diff(105,100) == %g", acc, rendered.c_str(), diff);
  c.note(buf);
}

// ---------------------------------------------------------------- 6

void ensemble_selection(Check &c) {
  struct Row {
    StructureKind s;
    double fundamental, sentiment, risk;
  };
  const Row published[] = {{StructureKind::Single, 4.70, 3.93, 3.57},
                           {StructureKind::Dual, 4.17, 3.90, 3.77},
                           {StructureKind::Horizontal, 3.97, 3.77, 3.83},
                           {StructureKind::Vertical, 3.20, 3.43, 4.23},
                           {StructureKind::Hybrid, 4.03, 3.77, 3.72}};
  fc::eval::ScoreTable table;
  const auto builtin = fc::eval::published_score_table();
  for (const auto &r : published) {
    table.set(r.s, Task::Fundamental, r.fundamental);
    table.set(r.s, Task::Sentiment, r.sentiment);
    table.set(r.s, Task::Risk, r.risk);
    c.expect(builtin.get(r.s, Task::Fundamental) == r.fundamental && builtin.get(r.s, Task::Sentiment) == r.sentiment &&
                 builtin.get(r.s, Task::Risk) == r.risk,
             "built-in table differs for " + std::string(fc::orchestrator::to_string(r.s)));
  }
  const std::map<Task, StructureKind> want = {
      {Task::Fundamental, StructureKind::Single}, {Task::Sentiment, StructureKind::Single}, {Task::Risk, StructureKind::Vertical}};
  const auto got = fc::eval::select_ensemble(table);
  c.expect(got == want, "selection differs");
  c.expect(fc::eval::select_ensemble(builtin) == want, "built-in selection differs");
  std::string shown;
  for (const auto &[task, s] : got) {
    shown += (shown.empty() ? "" : ", ") + std::string(fc::to_string(task)) + ": " + std::string(fc::orchestrator::to_string(s));
  }
  c.note("{" + shown + "}");
}

// ---------------------------------------------------------------- 7

double oracle_cosine(const std::vector<float> &a, const std::vector<float> &b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += double(a[i]) * double(b[i]);
    aa += double(a[i]) * double(a[i]);
    bb += double(b[i]) * double(b[i]);
  }
  if (aa == 0 || bb == 0) return 0;
  return ab / (std::sqrt(aa) * std::sqrt(bb));
}

std::vector<std::string> oracle_tokens(const std::string &text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

void rag_oracle(Check &c) {
  const auto docs = fc::testing::three_document_corpus(11);
  std::size_t total_tokens = 0;
  for (const auto &[_, text] : docs) total_tokens += oracle_tokens(text).size();
  c.expect(docs.size() == 3 && total_tokens >= 8000 && total_tokens <= 10000,
           "corpus has " + std::to_string(total_tokens) + " tokens");

  auto embedder = std::make_shared<const fc::rag::HashEmbedder>(256, 3);
  const fc::rag::ChunkingOptions opts{};
  const auto index = fc::rag::VectorIndex::build(embedder, docs, opts);

  struct Hit {
    std::string doc_id;
    std::size_t index;
    double score;
  };
  std::vector<Hit> all;
  for (const auto &[id, text] : docs) {
    for (const auto &ch : fc::rag::chunk_document(id, text, opts)) all.push_back({id, ch.index, 0.0});
  }
  std::mt19937 rng(77);
  std::size_t ties_seen = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto query = trial % 10 == 0 ? fc::rag::chunk_document(docs[0].first, docs[0].second, opts)[0].text
                                       : fc::testing::random_query(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, all.size() + 2)(rng);
    const auto q = embedder->embed(query).values;
    std::vector<Hit> want;
    for (const auto &[id, text] : docs) {
      for (const auto &ch : fc::rag::chunk_document(id, text, opts)) {
        want.push_back({id, ch.index, oracle_cosine(q, embedder->embed(ch.text).values)});
      }
    }
    std::stable_sort(want.begin(), want.end(), [](const Hit &a, const Hit &b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
      return a.index < b.index;
    });
    for (std::size_t i = 1; i < want.size(); ++i) ties_seen += want[i].score == want[i - 1].score;
    want.resize(std::min(k, want.size()));
    const auto got = index.retrieve(query, k);
    bool same = got.size() == want.size();
    for (std::size_t i = 0; same && i < got.size(); ++i) {
      same = got[i].chunk.doc_id == want[i].doc_id && got[i].chunk.index == want[i].index && got[i].score == want[i].score;
    }
    c.expect(same, "trial " + std::to_string(trial) + " k=" + std::to_string(k) + " differs from full scan");
  }
  c.expect(ties_seen > 0, "corpus produced no tied scores");

  std::string doc2500;
  for (int i = 0; i < 2500; ++i) doc2500 += (i ? " t" : "t") + std::to_string(i);
  std::vector<std::size_t> sizes;
  for (const auto &ch : fc::rag::chunk_document("d", doc2500, opts)) sizes.push_back(oracle_tokens(ch.text).size());
  c.expect(sizes == std::vector<std::size_t>{1000, 1000, 500}, "2,500-token chunk sizes wrong");

  for (const auto &[id, text] : docs) {
    std::string rebuilt;
    for (const auto &ch : fc::rag::chunk_document(id, text, opts)) rebuilt += ch.text;
    c.expect(rebuilt == text, id + " does not reconstruct");
  }
  c.note(std::to_string(total_tokens) + " tokens, 100 retrievals, " + std::to_string(ties_seen) +
         " tied pairs; sizes [1000,1000,500]");
}

// ---------------------------------------------------------------- 8

std::map<std::string, std::string> golden_release_dates() {
  std::ifstream in(kGolden / "release_dates.tsv");
  std::map<std::string, std::string> out;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    if (tab != std::string::npos) out[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return out;
}

const fc::ToolSpec *spec_for(const std::vector<fc::ToolSpec> &specs, const std::string &name) {
  for (const auto &s : specs) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

void leakage_guard(Check &c) {
  const auto releases = golden_release_dates();
  std::vector<fc::ToolSpec> specs = {fc::toolkit::stock_prices_spec(), fc::toolkit::company_news_spec(),
                                     fc::toolkit::social_posts_spec(), fc::toolkit::fundamentals_spec()};
  const std::regex iso(R"(^\d{4}-\d{2}-\d{2}$)");
  std::size_t files = 0, calls = 0, date_args = 0, violations = 0;
  for (const auto &e : std::filesystem::recursive_directory_iterator(kGolden)) {
    if (!e.is_regular_file() || e.path().extension() != ".jsonl") continue;
    ++files;
    const auto rel = e.path().lexically_relative(kGolden).generic_string();
    const auto it = releases.find(rel);
    c.expect(it != releases.end(), rel + " has no release date");
    if (it == releases.end()) continue;
    const auto release = fc::Date::from_string(it->second);
    std::ifstream in(e.path());
    for (std::string line; std::getline(in, line);) {
      if (line.empty()) continue;
      const auto record = Json::parse(line);
      for (const auto &call : record.at("tool_calls")) {
        ++calls;
        for (const auto &[key, value] : call.at("arguments").items()) {
          if (!value.is_string() || !std::regex_match(value.get<std::string>(), iso)) continue;
          ++date_args;
          if (value.get<std::string>() > it->second) {
            ++violations;
            c.expect(false, rel + ": " + call.at("name").get<std::string>() + " " + key + "=" + value.get<std::string>());
          }
        }
        if (const auto *spec = spec_for(specs, call.at("name").get<std::string>())) {
          try {
            const auto args = fc::toolkit::validate_arguments(*spec, call.at("arguments"));
            fc::toolkit::guard_date_range(*spec, args, {"", release, true});
          } catch (const fc::Error &err) {
            c.expect(false, rel + ": guard rejects recorded call: " + err.what());
          }
        }
      }
    }
  }
  c.expect(files >= 40, "only " + std::to_string(files) + " golden transcripts");
  c.expect(date_args > 0, "no dated tool calls in the golden set");

  const auto store = std::make_shared<fc::toolkit::FixtureStore>(
      fc::toolkit::FixtureStore::load(kDemo / "fixtures", {"ACME"}));
  const auto registry = fc::toolkit::standard_registry(fc::toolkit::fixture_providers(store), nullptr);
  const auto release = fc::Date(2023, 11, 15);
  const fc::toolkit::InvocationContext ctx{"ACME", release, true};
  const fc::ToolCall at_boundary{"c0", fc::toolkit::kGetStockPrices,
                                 {{"ticker", "ACME"}, {"start", "2023-11-01"}, {"end", release.to_string()}}};
  const fc::ToolCall past{"c1", fc::toolkit::kGetStockPrices,
                          {{"ticker", "ACME"}, {"start", "2023-11-01"}, {"end", release.plus_days(1).to_string()}}};
  try {
    (void)registry.invoke(at_boundary, ctx);
  } catch (const fc::Error &err) {
    c.expect(false, std::string("boundary call rejected: ") + err.what());
  }
  bool raised = false;
  try {
    (void)registry.invoke(past, ctx);
  } catch (const fc::toolkit::LeakageViolationError &err) {
    raised = err.code() == fc::ErrorCode::LeakageViolation && err.requested == release.plus_days(1);
  } catch (const fc::Error &) {
  }
  c.expect(raised, "release+1 call did not raise LeakageViolation");
  c.note(std::to_string(files) + " transcripts, " + std::to_string(calls) + " tool calls, " +
         std::to_string(date_args) + " date args, " + std::to_string(violations) + " violations; release+1 rejected");
}

// ---------------------------------------------------------------- 9

std::map<std::string, std::string> snapshot(const std::filesystem::path &root) {
  std::map<std::string, std::string> files;
  for (const auto &e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[e.path().lexically_relative(root).generic_string()] = fc::testing::read_file(e.path());
  }
  return files;
}

void determinism(Check &c) {
  fc::testing::TempDir a("accept_a"), b("accept_b");
  const auto start = std::chrono::steady_clock::now();
  std::vector<fc::experiment::RunManifest> manifests;
  for (const auto *dir : {&a, &b}) {
    auto config = fc::experiment::load_config(kDemo / "config.json");
    config.output_dir = dir->path();
    manifests.push_back(fc::experiment::run_experiment(config));
  }
  const double elapsed = seconds_since(start);
  const auto config = fc::experiment::load_config(kDemo / "config.json");
  c.expect(config.tickers.size() == 2 && config.structures.size() == 6 && config.tasks.size() == 4,
           "demo config is not 2 tickers x 6 structures x 4 tasks");
  for (const auto &m : manifests) {
    c.expect(m.cells.size() == 48, "cells " + std::to_string(m.cells.size()));
    c.expect(m.complete(), "run has failed cells");
  }
  const auto sa = snapshot(a.path()), sb = snapshot(b.path());
  c.expect(!sa.empty() && sa == sb, "outputs differ between runs");
  c.expect(elapsed < 60.0, "two runs took " + std::to_string(elapsed) + " s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "48 cells x2 in %.2f s, %zu files byte-identical", elapsed, sa.size());
  c.note(buf);
}

// ---------------------------------------------------------------- 10

void wire_round_trip(Check &c) {
  std::mt19937 rng(50);
  std::size_t messages = 0;
  for (int i = 0; i < 50; ++i) {
    const auto request = fc::testing::random_chat_request(rng);
    const auto back = fc::backend::decode_request(Json::parse(fc::backend::encode_request(request).dump()));
    const auto tag = "request " + std::to_string(i) + ": ";
    c.expect(back.agent == request.agent, tag + "agent");
    c.expect(back.system_prompt == request.system_prompt, tag + "system_prompt");
    c.expect(back.model_params == request.model_params, tag + "model_params");
    c.expect(back.tool_specs == request.tool_specs, tag + "tool_specs");
    c.expect(back.context.size() == request.context.size(), tag + "context size");
    for (std::size_t j = 0; j < std::min(back.context.size(), request.context.size()); ++j) {
      const auto &x = request.context[j];
      const auto &y = back.context[j];
      c.expect(x.sender == y.sender && x.content == y.content && x.tool_calls == y.tool_calls &&
                   x.tool_results == y.tool_results,
               tag + "message " + std::to_string(j));
      ++messages;
    }
  }
  c.note("50 requests, " + std::to_string(messages) + " messages");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check &)>>> criteria = {
      {"round-robin fidelity", round_robin},
      {"vertical nested-chat conformance", vertical_conformance},
      {"termination authority", termination_authority},
      {"order parsing", order_parsing},
      {"metric arithmetic", metric_arithmetic},
      {"ensemble selection", ensemble_selection},
      {"retrieval oracle equivalence", rag_oracle},
      {"leakage guard", leakage_guard},
      {"end-to-end determinism", determinism},
      {"wire round-trip", wire_round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    try {
      criteria[i].second(check);
    } catch (const std::exception &e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s [%zu] %s: %s\n", check.ok() ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                check.detail().c_str());
    for (const auto &f : check.failures()) std::printf("       %s\n", f.c_str());
    failed += !check.ok();
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
