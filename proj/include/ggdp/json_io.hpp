#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ggdp/error.hpp"

namespace ggdp {

using json = nlohmann::json;

/// Formats a double with 17 significant digits, which round-trips every
/// finite IEEE double exactly.
inline std::string format_number(double v) {
  if (!std::isfinite(v)) throw ComputationError("report", "non-finite number in output");
  if (v == 0.0) v = 0.0;  // fold -0 into 0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_json(std::ostringstream& out, const json& j, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent >= 0) out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { out << "{}"; return; }
      out << '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out << ',';
        first = false;
        pad(depth + 1);
        out << json(key).dump() << (indent >= 0 ? ": " : ":");
        write_json(out, value, indent, depth + 1);
      }
      pad(depth);
      out << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { out << "[]"; return; }
      out << '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out << ',';
        first = false;
        pad(depth + 1);
        write_json(out, value, indent, depth + 1);
      }
      pad(depth);
      out << ']';
      return;
    }
    case json::value_t::number_float:
      out << format_number(j.get<double>());
      return;
    default:
      out << j.dump();
  }
}

}  // namespace detail

/// Serializes like json::dump but with every float at 17 significant
/// digits. Object keys keep nlohmann's sorted order, so output is stable.
inline std::string dump_json(const json& j, int indent = 2) {
  std::ostringstream out;
  detail::write_json(out, j, indent, 0);
  if (indent >= 0) out << '\n';
  return out.str();
}

inline std::string read_text_file(const std::string& path, const std::string& module) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(module, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text, const std::string& module) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(module, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace ggdp
