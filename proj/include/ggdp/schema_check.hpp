#pragma once

#include <string>
#include <vector>

#include "ggdp/error.hpp"
#include "ggdp/json_io.hpp"

namespace ggdp {

/// Validates a document against the JSON Schema keywords the shipped
/// report schema uses: type, enum, const, minimum, maximum, required,
/// properties, additionalProperties, items, minItems, $ref into
/// #/definitions or #/$defs. Unknown keywords are ignored.
class SchemaChecker {
 public:
  explicit SchemaChecker(json schema) : root_(std::move(schema)) {}

  std::vector<std::string> check(const json& doc) const {
    std::vector<std::string> errors;
    visit(root_, doc, "$", errors);
    return errors;
  }

 private:
  static bool type_matches(const std::string& type, const json& v) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "number") return v.is_number();
    if (type == "integer") return v.is_number_integer();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    throw InputError("reporting_cli", "schema uses unsupported type '" + type + "'");
  }

  const json& resolve(const std::string& ref) const {
    for (const char* prefix : {"#/definitions/", "#/$defs/"}) {
      const std::string p = prefix;
      if (ref.rfind(p, 0) == 0) {
        const auto section = p.substr(2, p.size() - 3);
        const auto name = ref.substr(p.size());
        if (root_.contains(section) && root_[section].contains(name)) return root_[section][name];
      }
    }
    throw InputError("reporting_cli", "unresolvable schema $ref " + ref);
  }

  void visit(const json& schema, const json& v, const std::string& path,
             std::vector<std::string>& errors) const {
    if (schema.is_boolean()) {
      if (!schema.get<bool>()) errors.push_back(path + ": not allowed");
      return;
    }
    if (schema.contains("$ref")) {
      visit(resolve(schema["$ref"].get<std::string>()), v, path, errors);
      return;
    }
    if (schema.contains("type")) {
      const auto& t = schema["type"];
      bool ok = false;
      if (t.is_string()) ok = type_matches(t.get<std::string>(), v);
      else
        for (const auto& alt : t) ok = ok || type_matches(alt.get<std::string>(), v);
      if (!ok) {
        errors.push_back(path + ": expected type " + t.dump());
        return;
      }
    }
    if (schema.contains("enum")) {
      bool found = false;
      for (const auto& e : schema["enum"]) found = found || e == v;
      if (!found) errors.push_back(path + ": value " + v.dump() + " not in enum");
    }
    if (schema.contains("const") && schema["const"] != v)
      errors.push_back(path + ": expected " + schema["const"].dump());
    if (v.is_number()) {
      if (schema.contains("minimum") && v.get<double>() < schema["minimum"].get<double>())
        errors.push_back(path + ": below minimum");
      if (schema.contains("maximum") && v.get<double>() > schema["maximum"].get<double>())
        errors.push_back(path + ": above maximum");
    }
    if (v.is_object()) {
      if (schema.contains("required"))
        for (const auto& r : schema["required"])
          if (!v.contains(r.get<std::string>()))
            errors.push_back(path + ": missing required '" + r.get<std::string>() + "'");
      const json props = schema.value("properties", json::object());
      for (const auto& [key, child] : v.items()) {
        if (props.contains(key)) {
          visit(props[key], child, path + "." + key, errors);
        } else if (schema.contains("additionalProperties")) {
          visit(schema["additionalProperties"], child, path + "." + key, errors);
        }
      }
    }
    if (v.is_array()) {
      if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>())
        errors.push_back(path + ": fewer than " + schema["minItems"].dump() + " items");
      if (schema.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i)
          visit(schema["items"], v[i], path + "[" + std::to_string(i) + "]", errors);
    }
  }

  json root_;
};

}  // namespace ggdp
