#include "fincollab/core/tool.hpp"

#include "fincollab/core/error.hpp"

#include <algorithm>

namespace fincollab {

std::string_view to_string(ParamType type) noexcept {
  switch (type) {
    case ParamType::String: return "string";
    case ParamType::Integer: return "integer";
    case ParamType::Number: return "number";
    case ParamType::Boolean: return "boolean";
    case ParamType::Date: return "date";
  }
  return "string";
}

const ParamSpec *ToolSpec::find_param(std::string_view param) const {
  for (const auto &p : params) {
    if (p.name == param) {
      return &p;
    }
  }
  return nullptr;
}

Json parameters_schema(const ToolSpec &spec) {
  Json properties = Json::object();
  Json required = Json::array();
  for (const auto &p : spec.params) {
    Json prop = Json::object();
    if (p.type == ParamType::Date) {
      prop["type"] = "string";
      prop["format"] = "date";
    } else {
      prop["type"] = std::string(to_string(p.type));
    }
    if (!p.description.empty()) {
      prop["description"] = p.description;
    }
    if (p.default_value) {
      prop["default"] = *p.default_value;
    }
    if (p.minimum) {
      prop["minimum"] = *p.minimum;
    }
    properties[p.name] = std::move(prop);
    if (p.required) {
      required.push_back(p.name);
    }
  }
  // Property order in the emitted object is alphabetical; keep declaration
  // order recoverable through the "x-order" extension.
  Json order = Json::array();
  for (const auto &p : spec.params) {
    order.push_back(p.name);
  }
  return Json{{"type", "object"},
              {"properties", std::move(properties)},
              {"required", std::move(required)},
              {"additionalProperties", false},
              {"x-order", std::move(order)}};
}

namespace {

[[noreturn]] void decode_fail(const std::string &path, const std::string &what) {
  throw Error(ErrorCode::DecodeError, path + ": " + what);
}

ParamType param_type_from_schema(const Json &prop, const std::string &path) {
  if (!prop.contains("type") || !prop["type"].is_string()) {
    decode_fail(path + ".type", "missing or not a string");
  }
  const auto type = prop["type"].get<std::string>();
  if (type == "string") {
    if (prop.contains("format") && prop["format"] == "date") {
      return ParamType::Date;
    }
    return ParamType::String;
  }
  if (type == "integer") return ParamType::Integer;
  if (type == "number") return ParamType::Number;
  if (type == "boolean") return ParamType::Boolean;
  decode_fail(path + ".type", "unsupported type '" + type + "'");
}

}  // namespace

ToolSpec tool_spec_from_schema(std::string name, std::string description, const Json &schema,
                               const std::string &path) {
  ToolSpec spec{std::move(name), std::move(description), {}};
  if (!schema.is_object()) {
    decode_fail(path, "not an object");
  }
  const Json properties = schema.value("properties", Json::object());
  if (!properties.is_object()) {
    decode_fail(path + ".properties", "not an object");
  }
  std::vector<std::string> order;
  if (schema.contains("x-order") && schema["x-order"].is_array()) {
    for (const auto &n : schema["x-order"]) {
      order.push_back(n.get<std::string>());
    }
  } else {
    for (const auto &[key, _] : properties.items()) {
      order.push_back(key);
    }
  }
  std::vector<std::string> required;
  if (schema.contains("required")) {
    if (!schema["required"].is_array()) {
      decode_fail(path + ".required", "not an array");
    }
    for (const auto &r : schema["required"]) {
      required.push_back(r.get<std::string>());
    }
  }
  for (const auto &param_name : order) {
    const std::string prop_path = path + ".properties." + param_name;
    if (!properties.contains(param_name)) {
      decode_fail(prop_path, "listed in x-order but not declared");
    }
    const Json &prop = properties[param_name];
    ParamSpec p;
    p.name = param_name;
    p.type = param_type_from_schema(prop, prop_path);
    p.required = std::find(required.begin(), required.end(), param_name) != required.end();
    p.description = prop.value("description", "");
    if (prop.contains("default")) {
      p.default_value = prop["default"];
    }
    if (prop.contains("minimum")) {
      p.minimum = prop["minimum"].get<double>();
    }
    spec.params.push_back(std::move(p));
  }
  return spec;
}

}  // namespace fincollab
