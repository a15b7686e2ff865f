#include "fincollab/toolkit/registry.hpp"

#include "fincollab/rag/chunker.hpp"


namespace fincollab::toolkit {

ArgValidationError::ArgValidationError(std::string p, std::string r)
    : Error(ErrorCode::ArgValidation, p + ": " + r), param(std::move(p)), reason(std::move(r)) {}

LeakageViolationError::LeakageViolationError(std::string f, Date req, Date lim)
    : Error(ErrorCode::LeakageViolation,
            f + "=" + req.to_string() + " is after the release date " + lim.to_string()),
      field(std::move(f)),
      requested(req),
      limit(lim) {}

namespace {

void check_type(const ParamSpec &p, const Json &value) {
  switch (p.type) {
    case ParamType::String:
      if (!value.is_string()) throw ArgValidationError(p.name, "expected string");
      break;
    case ParamType::Integer:
      if (!value.is_number_integer()) throw ArgValidationError(p.name, "expected integer");
      break;
    case ParamType::Number:
      if (!value.is_number()) throw ArgValidationError(p.name, "expected number");
      break;
    case ParamType::Boolean:
      if (!value.is_boolean()) throw ArgValidationError(p.name, "expected boolean");
      break;
    case ParamType::Date:
      if (!value.is_string()) throw ArgValidationError(p.name, "expected date string");
      if (!Date::parse(value.get<std::string>())) throw ArgValidationError(p.name, "expected YYYY-MM-DD");
      break;
  }
  if (p.minimum && value.is_number() && value.get<double>() < *p.minimum) {
    throw ArgValidationError(p.name, "below minimum");
  }
}

}  // namespace

Json validate_arguments(const ToolSpec &spec, const Json &arguments) {
  if (!arguments.is_object()) {
    throw ArgValidationError("arguments", "expected object");
  }
  for (const auto &[key, _] : arguments.items()) {
    if (!spec.find_param(key)) throw ArgValidationError(key, "unknown parameter");
  }
  Json out = Json::object();
  for (const auto &p : spec.params) {
    auto it = arguments.find(p.name);
    if (it == arguments.end()) {
      if (p.required) throw ArgValidationError(p.name, "missing required parameter");
      if (p.default_value) out[p.name] = *p.default_value;
      continue;
    }
    check_type(p, *it);
    out[p.name] = *it;
  }
  return out;
}

void guard_date_range(const ToolSpec &spec, const Json &arguments, const InvocationContext &context) {
  for (const auto &p : spec.params) {
    if (p.type != ParamType::Date || !arguments.contains(p.name)) continue;
    const auto d = Date::from_string(arguments[p.name].get<std::string>());
    if (!context.permits(d)) throw LeakageViolationError(p.name, d, context.release_date);
  }
}

std::string truncate_payload(const std::string &payload, std::size_t budget) {
  const auto tokens = rag::tokenize(payload);
  if (tokens.size() <= budget) return payload;
  if (budget == 0) return kTruncationMarker;
  const auto &last = tokens[budget - 1];
  const auto end = static_cast<std::size_t>(last.data() - payload.data()) + last.size();
  return payload.substr(0, end) + "\n" + kTruncationMarker;
}

ToolRegistry &ToolRegistry::register_tool(ToolSpec spec, ToolHandler handler) {
  if (tools_.count(spec.name)) {
    throw Error(ErrorCode::DuplicateTool, spec.name);
  }
  auto name = spec.name;
  tools_.emplace(std::move(name), Entry{std::move(spec), std::move(handler)});
  return *this;
}

ToolResult ToolRegistry::invoke(const ToolCall &call, const InvocationContext &context) const {
  auto it = tools_.find(call.name);
  if (it == tools_.end()) {
    throw Error(ErrorCode::UnknownTool, call.name);
  }
  const auto &entry = it->second;
  const auto args = validate_arguments(entry.spec, call.arguments);
  guard_date_range(entry.spec, args, context);
  auto payload = entry.handler(args, context);
  return ToolResult{call.id, call.name, truncate_payload(payload, payload_budget_), std::nullopt};
}

const ToolSpec *ToolRegistry::find(const std::string &name) const {
  auto it = tools_.find(name);
  return it == tools_.end() ? nullptr : &it->second.spec;
}

std::vector<ToolSpec> ToolRegistry::specs(const std::vector<std::string> &names) const {
  std::vector<ToolSpec> out;
  for (const auto &n : names) {
    const auto *spec = find(n);
    if (!spec) throw Error(ErrorCode::UnknownTool, n);
    out.push_back(*spec);
  }
  return out;
}

std::vector<std::string> ToolRegistry::names() const {
  std::vector<std::string> out;
  for (const auto &[n, _] : tools_) out.push_back(n);
  return out;
}

}  // namespace fincollab::toolkit
