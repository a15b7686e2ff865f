#include "generators.hpp"

namespace fincollab::testing {

namespace {

std::size_t uniform(std::mt19937 &rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::string random_text(std::mt19937 &rng, std::size_t max_words) {
  std::string out;
  const auto words = uniform(rng, 0, max_words);
  for (std::size_t i = 0; i < words; ++i) {
    if (i) out += uniform(rng, 0, 4) == 0 ? "\n" : " ";
    out += random_word(rng);
  }
  if (uniform(rng, 0, 5) == 0) {
    out += " \"quoted\" \\ tab\t unicode \xc3\xa9";
  }
  return out;
}

Json random_arguments(std::mt19937 &rng) {
  Json args = Json::object();
  const auto n = uniform(rng, 0, 3);
  for (std::size_t i = 0; i < n; ++i) {
    switch (uniform(rng, 0, 3)) {
      case 0: args[random_word(rng)] = random_word(rng); break;
      case 1: args[random_word(rng)] = static_cast<int>(uniform(rng, 0, 1000)); break;
      case 2: args[random_word(rng)] = uniform(rng, 0, 1) == 1; break;
      default: args[random_word(rng)] = Json::array({1, "two", nullptr}); break;
    }
  }
  return args;
}

ToolSpec random_tool_spec(std::mt19937 &rng, const std::string &name) {
  ToolSpec spec{name, random_text(rng, 6), {}};
  const auto n = uniform(rng, 0, 4);
  for (std::size_t i = 0; i < n; ++i) {
    ParamSpec p;
    p.name = "p" + std::to_string(i) + "_" + random_word(rng, 1, 4);
    p.type = static_cast<ParamType>(uniform(rng, 0, 4));
    p.required = uniform(rng, 0, 1) == 1;
    p.description = random_text(rng, 4);
    if (p.type == ParamType::Integer && uniform(rng, 0, 1)) {
      p.default_value = static_cast<int>(uniform(rng, 1, 9));
      p.minimum = 1.0;
    }
    spec.params.push_back(std::move(p));
  }
  return spec;
}

}  // namespace

std::string random_word(std::mt19937 &rng, std::size_t min_len, std::size_t max_len) {
  static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";
  std::string out;
  const auto len = uniform(rng, min_len, max_len);
  for (std::size_t i = 0; i < len; ++i) {
    out += kAlphabet[uniform(rng, 0, sizeof(kAlphabet) - 2)];
  }
  return out;
}

backend::ChatRequest random_chat_request(std::mt19937 &rng) {
  backend::ChatRequest request;
  const std::vector<std::string> agents{"Analyst_A", "Analyst_B", "Leader"};
  request.agent = agents[uniform(rng, 0, agents.size() - 1)];
  request.system_prompt = random_text(rng, 30);
  request.model_params.model = "model-" + random_word(rng, 1, 5);
  request.model_params.temperature = static_cast<double>(uniform(rng, 0, 20)) / 10.0;
  request.model_params.max_tokens = static_cast<int>(uniform(rng, 1, 8192));

  const auto tools = uniform(rng, 0, 4);
  for (std::size_t i = 0; i < tools; ++i) {
    request.tool_specs.push_back(random_tool_spec(rng, "tool_" + std::to_string(i) + "_" + random_word(rng, 1, 5)));
  }

  const auto length = uniform(rng, 0, 12);
  std::uint64_t seq = uniform(rng, 0, 5);
  for (std::size_t i = 0; i < length; ++i) {
    Message msg;
    msg.seq = seq;
    seq += uniform(rng, 1, 3);
    const bool previous_was_tool = !request.context.empty() && request.context.back().from_tool();
    const auto kind = uniform(rng, 0, previous_was_tool ? 2 : 3);
    if (kind == 0) {
      msg.sender = std::string(kUserSender);
      msg.content = random_text(rng, 12);
    } else if (kind == 3) {
      msg.sender = std::string(kToolSender);
      const auto results = uniform(rng, 1, 3);
      for (std::size_t r = 0; r < results; ++r) {
        ToolResult result{"call_" + random_word(rng, 3, 6), "tool_" + random_word(rng, 1, 4), {}, std::nullopt};
        if (uniform(rng, 0, 3) == 0) {
          result.error = "failure " + random_word(rng);
        } else {
          result.payload = random_text(rng, 20);
        }
        msg.tool_results.push_back(std::move(result));
      }
    } else {
      msg.sender = agents[uniform(rng, 0, agents.size() - 1)];
      msg.content = random_text(rng, 12);
      if (uniform(rng, 0, 2) == 0) {
        const auto calls = uniform(rng, 1, 2);
        for (std::size_t c = 0; c < calls; ++c) {
          msg.tool_calls.push_back({"call_" + random_word(rng, 3, 6), "tool_" + random_word(rng, 1, 4),
                                    random_arguments(rng)});
        }
      }
    }
    request.context.push_back(std::move(msg));
  }
  return request;
}

}  // namespace fincollab::testing
