#include "fincollab/backend/http.hpp"
#include "fincollab/backend/scripted.hpp"
#include "fincollab/backend/wire.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include "httplib.h"

#include <atomic>
#include <thread>

namespace fincollab::backend {
namespace {

ToolSpec stock_prices_spec() {
  return ToolSpec{"get_stock_prices",
                  "Daily prices for a ticker",
                  {{"ticker", ParamType::String, true, "Ticker symbol", std::nullopt, std::nullopt},
                   {"start", ParamType::Date, true, "First day", std::nullopt, std::nullopt},
                   {"end", ParamType::Date, true, "Last day", std::nullopt, std::nullopt}}};
}

ToolSpec retrieve_spec() {
  return ToolSpec{"retrieve_filing",
                  "Search the annual report",
                  {{"query", ParamType::String, true, "What to look for", std::nullopt, std::nullopt},
                   {"k", ParamType::Integer, false, "How many chunks", Json(3), 1.0}}};
}

ChatRequest request_for(std::string agent, std::vector<Message> context = {}) {
  ChatRequest r;
  r.agent = std::move(agent);
  r.system_prompt = "You are an analyst.";
  r.context = std::move(context);
  return r;
}

Message msg(std::uint64_t seq, std::string sender, std::string content) {
  Message m;
  m.seq = seq;
  m.sender = std::move(sender);
  m.content = std::move(content);
  return m;
}

ErrorCode code_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

const char *kScript = R"({
  "rules": [
    {"agent": "A", "turn": 0, "reply": {"content": "Hello TERMINATE"}},
    {"agent": "B", "last_message": "fetch", "reply": {"content": "fetching",
       "tool_calls": [{"name": "get_stock_prices",
                       "arguments": {"ticker": "{{ticker}}", "start": "2023-10-01", "end": "{{release_date}}"}}]}},
    {"metadata": {"task": "risk"}, "reply": {"content": "risk reply from {{agent}} turn {{turn}}"}}
  ],
  "default": {"content": "default TERMINATE"}
})";

TEST(ScriptedBackend, TurnZeroRule) {
  const auto backend = ScriptedBackend::from_json(Json::parse(kScript));
  const auto reply = backend.complete(request_for("A", {msg(0, "user", "task")}));
  EXPECT_EQ(reply.content, "Hello TERMINATE");
  EXPECT_TRUE(reply.tool_calls.empty());
}

TEST(ScriptedBackend, PatternRuleCarriesToolCallWithSubstitution) {
  const auto backend = ScriptedBackend::from_json(Json::parse(kScript));
  auto req = request_for("B", {msg(0, "user", "please fetch prices")});
  req.tool_specs.push_back(stock_prices_spec());
  req.metadata = {{"ticker", "IBM"}, {"release_date", "2023-11-15"}};
  const auto reply = backend.complete(req);
  ASSERT_EQ(reply.tool_calls.size(), 1u);
  EXPECT_EQ(reply.tool_calls[0].name, "get_stock_prices");
  EXPECT_EQ(reply.tool_calls[0].arguments,
            (Json{{"ticker", "IBM"}, {"start", "2023-10-01"}, {"end", "2023-11-15"}}));
}

// Replay oracle: for every rule, build a request that satisfies exactly that
// rule's matchers and check the reply equals the rule table entry.
TEST(ScriptedBackend, ReplayMatchesRuleTable) {
  const Json script = Json::parse(kScript);
  const auto backend = ScriptedBackend::from_json(script);

  auto a = request_for("A", {msg(0, "user", "x")});
  EXPECT_EQ(backend.complete(a).content, script["rules"][0]["reply"]["content"]);

  auto b = request_for("B", {msg(0, "user", "fetch")});
  b.tool_specs.push_back(stock_prices_spec());
  b.metadata = {{"ticker", "T"}, {"release_date", "D"}};
  const auto rb = backend.complete(b);
  EXPECT_EQ(rb.content, script["rules"][1]["reply"]["content"]);
  EXPECT_EQ(rb.tool_calls.size(), script["rules"][1]["reply"]["tool_calls"].size());

  auto c = request_for("C", {msg(0, "user", "x"), msg(1, "C", "earlier")});
  c.metadata = {{"task", "risk"}};
  EXPECT_EQ(backend.complete(c).content, "risk reply from C turn 1");

  // A on turn 1 no longer matches rule 0 and falls through to the default.
  auto a1 = request_for("A", {msg(0, "user", "x"), msg(1, "A", "hi")});
  EXPECT_EQ(backend.complete(a1).content, "default TERMINATE");
}

TEST(ScriptedBackend, DeterministicAcrossCalls) {
  const auto backend = ScriptedBackend::from_json(Json::parse(kScript));
  auto req = request_for("C", {msg(0, "user", "x")});
  req.metadata = {{"task", "risk"}};
  EXPECT_EQ(backend.complete(req), backend.complete(req));
}

TEST(ScriptedBackend, RejectsDuplicateToolSpecsBeforeDispatch) {
  const auto backend = ScriptedBackend::from_json(Json::parse(kScript));
  auto req = request_for("A");
  req.tool_specs = {stock_prices_spec(), stock_prices_spec()};
  EXPECT_EQ(code_of([&] { (void)backend.complete(req); }), ErrorCode::InvalidRequest);
}

TEST(ScriptedBackend, RejectsUnorderedContext) {
  const auto backend = ScriptedBackend::from_json(Json::parse(kScript));
  auto req = request_for("A", {msg(3, "user", "x"), msg(2, "user", "y")});
  EXPECT_EQ(code_of([&] { (void)backend.complete(req); }), ErrorCode::InvalidRequest);
}

TEST(ScriptedBackend, UnknownToolRequested) {
  const auto backend = ScriptedBackend::from_json(Json::parse(kScript));
  // Rule 1 fires but get_stock_prices is not offered.
  auto req = request_for("B", {msg(0, "user", "fetch")});
  EXPECT_EQ(code_of([&] { (void)backend.complete(req); }), ErrorCode::UnknownToolRequested);
}

TEST(ScriptedBackend, ScriptValidation) {
  EXPECT_EQ(code_of([] { (void)ScriptedBackend::from_json(Json::parse(R"({"rules": []})")); }),
            ErrorCode::ScriptError);
  EXPECT_EQ(code_of([] { (void)ScriptedBackend::from_json(Json::parse(R"({"default": {}})")); }),
            ErrorCode::ScriptError);
  EXPECT_EQ(code_of([] {
              (void)ScriptedBackend::from_json(
                  Json::parse(R"({"rules": [{"last_message": "(", "reply": {"content": "x"}}], "default": {"content": "d"}})"));
            }),
            ErrorCode::ScriptError);
  EXPECT_EQ(code_of([] {
              (void)ScriptedBackend::from_json(
                  Json::parse(R"({"rules": [{"turn": -1, "reply": {"content": "x"}}], "default": {"content": "d"}})"));
            }),
            ErrorCode::ScriptError);
}

TEST(Wire, EmptyContextEncodesOneSystemMessage) {
  const auto payload = encode_request(request_for("A"));
  ASSERT_EQ(payload["messages"].size(), 1u);
  EXPECT_EQ(payload["messages"][0]["role"], "system");
  EXPECT_EQ(payload["messages"][0]["content"], "You are an analyst.");
  EXPECT_FALSE(payload.contains("tools"));
}

TEST(Wire, ToolSchemaListsParamsWithRequiredMarkers) {
  auto req = request_for("A");
  req.tool_specs.push_back(retrieve_spec());
  const auto payload = encode_request(req);
  ASSERT_EQ(payload["tools"].size(), 1u);
  const auto &fn = payload["tools"][0]["function"];
  EXPECT_EQ(payload["tools"][0]["type"], "function");
  EXPECT_EQ(fn["name"], "retrieve_filing");
  EXPECT_EQ(fn["parameters"]["type"], "object");
  EXPECT_EQ(fn["parameters"]["properties"].size(), 2u);
  EXPECT_EQ(fn["parameters"]["properties"]["query"]["type"], "string");
  EXPECT_EQ(fn["parameters"]["properties"]["k"]["type"], "integer");
  EXPECT_EQ(fn["parameters"]["properties"]["k"]["default"], 3);
  EXPECT_EQ(fn["parameters"]["required"], Json::array({"query"}));
  EXPECT_EQ(decode_request(payload).tool_specs, req.tool_specs);
}

TEST(Wire, RoleMapping) {
  auto req = request_for("Analyst_A");
  req.context.push_back(msg(0, "user", "task"));
  req.context.push_back(msg(1, "Analyst_B", "my view"));
  auto own = msg(2, "Analyst_A", "");
  own.tool_calls.push_back({"call_1", "get_stock_prices", Json{{"ticker", "IBM"}}});
  req.context.push_back(own);
  auto tool = msg(3, "tool", "");
  tool.tool_results.push_back({"call_1", "get_stock_prices", "prices", std::nullopt});
  tool.tool_results.push_back({"call_2", "get_stock_prices", "", "LeakageViolation"});
  req.context.push_back(tool);
  const auto messages = encode_request(req)["messages"];
  ASSERT_EQ(messages.size(), 6u);
  EXPECT_EQ(messages[1]["role"], "user");
  EXPECT_FALSE(messages[1].contains("name"));
  EXPECT_EQ(messages[2]["role"], "user");
  EXPECT_EQ(messages[2]["name"], "Analyst_B");
  EXPECT_EQ(messages[3]["role"], "assistant");
  EXPECT_TRUE(messages[3]["content"].is_null());
  EXPECT_EQ(messages[3]["tool_calls"][0]["function"]["arguments"], R"({"ticker":"IBM"})");
  EXPECT_EQ(messages[4]["role"], "tool");
  EXPECT_EQ(messages[4]["tool_call_id"], "call_1");
  EXPECT_EQ(messages[5]["content"], "ERROR: LeakageViolation");
}

TEST(Wire, DecodeResponseWithToolCalls) {
  const auto body = Json::parse(R"({"choices": [{"message": {"role": "assistant", "content": null,
    "tool_calls": [{"id": "c0", "type": "function",
                    "function": {"name": "retrieve_filing", "arguments": "{\"query\": \"debt\", \"k\": 2}"}}]}}]})");
  const auto response = decode_response(body);
  EXPECT_TRUE(response.content.empty());
  ASSERT_EQ(response.tool_calls.size(), 1u);
  EXPECT_EQ(response.tool_calls[0].id, "c0");
  EXPECT_EQ(response.tool_calls[0].arguments, (Json{{"query", "debt"}, {"k", 2}}));
}

TEST(Wire, MalformedArgumentsNameTheCallIndex) {
  const auto body = Json::parse(R"({"choices": [{"message": {"role": "assistant", "content": "x",
    "tool_calls": [{"id": "c0", "function": {"name": "a", "arguments": "{}"}},
                   {"id": "c1", "function": {"name": "b", "arguments": "{oops"}}]}}]})");
  try {
    (void)decode_response(body);
    FAIL() << "expected DecodeError";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::DecodeError);
    EXPECT_NE(std::string(e.what()).find("tool_calls[1].function.arguments"), std::string::npos) << e.what();
  }
}

TEST(Wire, DecodeErrorsCarryFieldPath) {
  EXPECT_EQ(code_of([] { (void)decode_response(Json::parse(R"({"choices": []})")); }), ErrorCode::DecodeError);
  EXPECT_EQ(code_of([] { (void)decode_response(Json::parse(R"({"choices": [{"message": {"content": null}}]})")); }),
            ErrorCode::DecodeError);
  EXPECT_EQ(code_of([] { (void)decode_request(Json::parse(R"({"model": "m", "messages": []})")); }),
            ErrorCode::DecodeError);
}

void expect_semantically_equal(const ChatRequest &a, const ChatRequest &b) {
  EXPECT_EQ(a.agent, b.agent);
  EXPECT_EQ(a.system_prompt, b.system_prompt);
  EXPECT_EQ(a.model_params, b.model_params);
  EXPECT_EQ(a.tool_specs, b.tool_specs);
  ASSERT_EQ(a.context.size(), b.context.size());
  for (std::size_t i = 0; i < a.context.size(); ++i) {
    EXPECT_EQ(a.context[i].sender, b.context[i].sender) << i;
    EXPECT_EQ(a.context[i].content, b.context[i].content) << i;
    EXPECT_EQ(a.context[i].tool_calls, b.context[i].tool_calls) << i;
    EXPECT_EQ(a.context[i].tool_results, b.context[i].tool_results) << i;
  }
}

TEST(Wire, RandomRequestsRoundTrip) {
  std::mt19937 rng(42);
  for (int i = 0; i < 200; ++i) {
    const auto request = testing::random_chat_request(rng);
    // Through text as well, as a live server would see it.
    const auto decoded = decode_request(Json::parse(encode_request(request).dump()));
    expect_semantically_equal(request, decoded);
  }
}

TEST(Wire, ResponseRoundTrip) {
  ChatResponse r{"analysis", {{"c1", "retrieve_filing", Json{{"query", "q"}}}}};
  EXPECT_EQ(decode_response(encode_response(r)), r);
}

class FlakyBackend final : public ChatBackend {
 public:
  FlakyBackend(int failures, bool transient) : failures_(failures), transient_(transient) {}
  ChatResponse complete(const ChatRequest &) const override {
    if (calls_++ < failures_) {
      throw BackendFailure(transient_, "simulated");
    }
    return {"ok", {}};
  }
  [[nodiscard]] int calls() const { return calls_; }

 private:
  int failures_;
  bool transient_;
  mutable std::atomic<int> calls_{0};
};

TEST(Retry, TransientFailuresRetriedUpToLimit) {
  const RetryPolicy fast{3, std::chrono::milliseconds(0), 2.0};
  FlakyBackend three(3, true);
  EXPECT_EQ(RetryingBackend(three, fast).complete(request_for("A")).content, "ok");
  EXPECT_EQ(three.calls(), 4);

  FlakyBackend four(4, true);
  EXPECT_THROW((void)RetryingBackend(four, fast).complete(request_for("A")), BackendFailure);
  EXPECT_EQ(four.calls(), 4);
}

TEST(Retry, FatalFailureNotRetried) {
  FlakyBackend fatal(1, false);
  EXPECT_THROW((void)RetryingBackend(fatal, {3, std::chrono::milliseconds(0), 2.0}).complete(request_for("A")),
               BackendFailure);
  EXPECT_EQ(fatal.calls(), 1);
}

class LocalServer {
 public:
  explicit LocalServer(std::function<void(const httplib::Request &, httplib::Response &)> handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }
  [[nodiscard]] std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST(HttpBackend, PostsChatCompletionsShapeAndDecodes) {
  Json seen;
  std::string auth;
  LocalServer server([&](const httplib::Request &req, httplib::Response &res) {
    seen = Json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(encode_response({"Score: 4", {}}).dump(), "application/json");
  });
  ::setenv("FINCOLLAB_TEST_KEY", "secret", 1);
  HttpChatBackend backend({server.base_url(), "FINCOLLAB_TEST_KEY", std::chrono::seconds(5)});
  auto req = request_for("Judge", {msg(0, "user", "rate this")});
  req.tool_specs.push_back(retrieve_spec());
  EXPECT_EQ(backend.complete(req).content, "Score: 4");
  EXPECT_EQ(auth, "Bearer secret");
  EXPECT_EQ(seen, encode_request(req));
}

TEST(HttpBackend, StatusClassification) {
  int status = 500;
  LocalServer server([&](const httplib::Request &, httplib::Response &res) {
    res.status = status;
    res.set_content("{}", "application/json");
  });
  HttpChatBackend backend({server.base_url(), "FINCOLLAB_UNSET_KEY_VAR", std::chrono::seconds(5)});
  try {
    (void)backend.complete(request_for("A"));
    FAIL();
  } catch (const BackendFailure &e) {
    EXPECT_TRUE(e.transient());
  }
  status = 401;
  try {
    (void)backend.complete(request_for("A"));
    FAIL();
  } catch (const BackendFailure &e) {
    EXPECT_FALSE(e.transient());
  }
  status = 200;
  EXPECT_EQ(code_of([&] { (void)backend.complete(request_for("A")); }), ErrorCode::DecodeError);
}

TEST(HttpBackend, UnreachableEndpointIsTransient) {
  HttpChatBackend backend({"http://127.0.0.1:1/v1", "FINCOLLAB_UNSET_KEY_VAR", std::chrono::seconds(2)});
  try {
    (void)backend.complete(request_for("A"));
    FAIL();
  } catch (const BackendFailure &e) {
    EXPECT_TRUE(e.transient());
  }
}

}  // namespace
}  // namespace fincollab::backend
