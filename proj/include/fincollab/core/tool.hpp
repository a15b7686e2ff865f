#pragma once

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fincollab {

using Json = nlohmann::json;

enum class ParamType { String, Integer, Number, Boolean, Date };

std::string_view to_string(ParamType type) noexcept;

struct ParamSpec {
  std::string name;
  ParamType type = ParamType::String;
  bool required = false;
  std::string description;
  std::optional<Json> default_value;
  std::optional<double> minimum;

  friend bool operator==(const ParamSpec &, const ParamSpec &) = default;
};

/// A declared callable capability. Retrieval over filings is one of these.
struct ToolSpec {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;

  [[nodiscard]] const ParamSpec *find_param(std::string_view param) const;

  friend bool operator==(const ToolSpec &, const ToolSpec &) = default;
};

/// JSON Schema object for the tool's parameters, in the shape the
/// chat-completions "tools" array expects.
Json parameters_schema(const ToolSpec &spec);

/// Inverse of parameters_schema. Throws Error{DecodeError} naming the path.
ToolSpec tool_spec_from_schema(std::string name, std::string description, const Json &schema,
                               const std::string &path = "parameters");

struct ToolCall {
  std::string id;
  std::string name;
  Json arguments = Json::object();

  friend bool operator==(const ToolCall &, const ToolCall &) = default;
};

struct ToolResult {
  std::string call_id;
  std::string tool;
  std::string payload;
  std::optional<std::string> error;

  [[nodiscard]] bool ok() const { return !error.has_value(); }

  friend bool operator==(const ToolResult &, const ToolResult &) = default;
};

}  // namespace fincollab
