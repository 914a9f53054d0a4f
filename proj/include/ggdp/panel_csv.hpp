#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ggdp/error.hpp"
#include "ggdp/json_io.hpp"
#include "ggdp/panel.hpp"

namespace ggdp {

enum class CsvLayout { long_format, wide };

namespace csv {

/// Splits one CSV record. Handles double-quoted fields with "" escapes;
/// records spanning several lines are not supported.
inline std::vector<std::string> split_record(std::string_view line, int line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw InputError("panel_store", "line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline double parse_double(const std::string& text, int line_no) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw InputError("panel_store",
                     "line " + std::to_string(line_no) + ": unparseable number '" + text + "'");
  return v;
}

inline int parse_year(const std::string& text, int line_no) {
  int v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw InputError("panel_store",
                     "line " + std::to_string(line_no) + ": unparseable year '" + text + "'");
  return v;
}

}  // namespace csv

namespace detail {

struct SeriesBuilder {
  std::string unit;
  std::map<int, std::pair<double, int>> cells;  // year -> (value, line)
  int first_line = 0;
};

inline Panel finish_panel(std::map<SeriesKey, SeriesBuilder>& builders, std::string provenance) {
  Panel panel(std::move(provenance));
  for (auto& [key, b] : builders) {
    IndicatorSeries s{key.country, key.indicator, b.unit, {}};
    for (const auto& [year, cell] : b.cells) s.observations.push_back({year, cell.first});
    panel.add(std::move(s));
  }
  return panel;
}

inline void insert_cell(SeriesBuilder& b, const SeriesKey& key, const std::string& unit, int year,
                        double value, int line_no) {
  if (b.cells.empty() && b.unit.empty()) b.unit = unit;
  if (b.unit != unit)
    throw InputError("panel_store", "line " + std::to_string(line_no) + ": unit '" + unit +
                                        "' differs from '" + b.unit + "' earlier in " + key.str());
  auto [it, inserted] = b.cells.emplace(year, std::make_pair(value, line_no));
  if (!inserted)
    throw InputError("panel_store", "line " + std::to_string(line_no) + ": duplicate key (" +
                                        key.country + "," + key.indicator + "," +
                                        std::to_string(year) + "), first seen on line " +
                                        std::to_string(it->second.second));
}

}  // namespace detail

/// Parses CSV text.
///   long: header `country,indicator,unit,year,value`, one observation per row.
///   wide: header `country,indicator,unit,<year>,<year>,...`; blank cells are missing.
inline Panel parse_csv(const std::string& text, CsvLayout layout, std::string provenance = "csv") {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!csv::trim(line).empty()) {
      header = csv::split_record(line, line_no);
      break;
    }
  }
  if (header.empty()) throw InputError("panel_store", "empty file");
  for (auto& h : header) h = csv::trim(h);

  std::vector<int> year_cols;
  if (layout == CsvLayout::long_format) {
    const std::vector<std::string> expected = {"country", "indicator", "unit", "year", "value"};
    if (header != expected)
      throw InputError("panel_store", "line " + std::to_string(line_no) +
                                          ": long layout header must be "
                                          "country,indicator,unit,year,value");
  } else {
    if (header.size() < 4 || header[0] != "country" || header[1] != "indicator" ||
        header[2] != "unit")
      throw InputError("panel_store", "line " + std::to_string(line_no) +
                                          ": wide layout header must be "
                                          "country,indicator,unit,<years...>");
    for (std::size_t i = 3; i < header.size(); ++i)
      year_cols.push_back(csv::parse_year(header[i], line_no));
  }

  std::map<SeriesKey, detail::SeriesBuilder> builders;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    auto fields = csv::split_record(line, line_no);
    if (fields.size() != header.size())
      throw InputError("panel_store", "line " + std::to_string(line_no) + ": malformed row, expected " +
                                          std::to_string(header.size()) + " fields, got " +
                                          std::to_string(fields.size()));
    for (auto& f : fields) f = csv::trim(f);
    if (fields[0].empty() || fields[1].empty())
      throw InputError("panel_store",
                       "line " + std::to_string(line_no) + ": malformed row, empty country or indicator");
    SeriesKey key{fields[0], fields[1]};
    auto& b = builders[key];
    if (layout == CsvLayout::long_format) {
      detail::insert_cell(b, key, fields[2], csv::parse_year(fields[3], line_no),
                          csv::parse_double(fields[4], line_no), line_no);
    } else {
      if (b.first_line != 0)
        throw InputError("panel_store", "line " + std::to_string(line_no) + ": duplicate key " +
                                            key.str() + ", first seen on line " +
                                            std::to_string(b.first_line));
      b.first_line = line_no;
      b.unit = fields[2];
      for (std::size_t i = 0; i < year_cols.size(); ++i) {
        const auto& cell = fields[i + 3];
        if (cell.empty()) continue;
        detail::insert_cell(b, key, fields[2], year_cols[i], csv::parse_double(cell, line_no),
                            line_no);
      }
    }
  }
  return detail::finish_panel(builders, std::move(provenance));
}

inline Panel load_csv(const std::string& path, CsvLayout layout) {
  return parse_csv(read_text_file(path, "panel_store"), layout, "csv:" + path);
}

/// Long-layout CSV, rows ordered by (country, indicator, year).
inline std::string to_long_csv(const Panel& panel) {
  std::string out = "country,indicator,unit,year,value\n";
  for (const auto& [key, s] : panel.series()) {
    for (const auto& o : s.observations) {
      out += csv::quote(s.country) + ',' + csv::quote(s.indicator) + ',' + csv::quote(s.unit) + ',' +
             std::to_string(o.year) + ',' + format_number(o.value) + '\n';
    }
  }
  return out;
}

}  // namespace ggdp
