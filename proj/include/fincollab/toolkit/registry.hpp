#pragma once

#include "fincollab/core/date.hpp"
#include "fincollab/core/error.hpp"
#include "fincollab/core/tool.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace fincollab::toolkit {

/// Per-conversation facts a handler may rely on.
struct InvocationContext {
  std::string ticker;
  Date release_date;
  /// Whether data dated on the release day itself may be returned.
  bool leakage_inclusive = true;

  /// True when `d` is allowed under the leakage boundary.
  [[nodiscard]] bool permits(Date d) const { return leakage_inclusive ? d <= release_date : d < release_date; }
};

class ArgValidationError : public Error {
 public:
  ArgValidationError(std::string param, std::string reason);
  const std::string param;
  const std::string reason;
};

class LeakageViolationError : public Error {
 public:
  LeakageViolationError(std::string field, Date requested, Date limit);
  const std::string field;
  const Date requested;
  const Date limit;
};

/// Checks `arguments` against `spec` and returns them with defaults filled in.
/// Unknown keys, missing required params, wrong JSON types, malformed dates
/// and values under `minimum` all raise ArgValidationError.
Json validate_arguments(const ToolSpec &spec, const Json &arguments);

/// Every Date-typed argument must fall on or before the release date
/// (strictly before when the context is exclusive). Expects arguments that
/// already passed validate_arguments().
void guard_date_range(const ToolSpec &spec, const Json &arguments, const InvocationContext &context);

/// Cuts `payload` after `budget` whitespace tokens and appends a marker line.
std::string truncate_payload(const std::string &payload, std::size_t budget);
inline constexpr const char *kTruncationMarker = "[truncated]";

using ToolHandler = std::function<std::string(const Json &arguments, const InvocationContext &context)>;

class ToolRegistry {
 public:
  explicit ToolRegistry(std::size_t payload_budget = 4000) : payload_budget_(payload_budget) {}

  /// Throws Error{DuplicateTool}.
  ToolRegistry &register_tool(ToolSpec spec, ToolHandler handler);

  /// Validates, applies the leakage guard, runs the handler and truncates its
  /// payload. Throws Error{UnknownTool}, ArgValidationError,
  /// LeakageViolationError, or passes through Error{ProviderError}.
  [[nodiscard]] ToolResult invoke(const ToolCall &call, const InvocationContext &context) const;

  [[nodiscard]] bool contains(const std::string &name) const { return tools_.count(name) != 0; }
  [[nodiscard]] const ToolSpec *find(const std::string &name) const;
  /// Specs for `names`, in the given order. Throws Error{UnknownTool}.
  [[nodiscard]] std::vector<ToolSpec> specs(const std::vector<std::string> &names) const;
  [[nodiscard]] std::vector<std::string> names() const;
  [[nodiscard]] std::size_t payload_budget() const { return payload_budget_; }

 private:
  struct Entry {
    ToolSpec spec;
    ToolHandler handler;
  };
  std::map<std::string, Entry> tools_;
  std::size_t payload_budget_;
};

}  // namespace fincollab::toolkit
