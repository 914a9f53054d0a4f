#pragma once

#include <string>

#include "ggdp/error.hpp"
#include "ggdp/json_io.hpp"
#include "ggdp/panel.hpp"

namespace ggdp {

inline constexpr int kPanelSchemaVersion = 1;

inline json panel_to_json(const Panel& panel) {
  json series = json::array();
  for (const auto& [key, s] : panel.series()) {
    json obs = json::array();
    for (const auto& o : s.observations) obs.push_back({{"year", o.year}, {"value", o.value}});
    series.push_back({{"country", s.country},
                      {"indicator", s.indicator},
                      {"unit", s.unit},
                      {"observations", std::move(obs)}});
  }
  json span = nullptr;
  if (auto ys = panel.year_span()) span = json::array({ys->first, ys->last});
  return {{"schema_version", kPanelSchemaVersion},
          {"provenance", panel.provenance()},
          {"year_span", span},
          {"series", std::move(series)}};
}

inline std::string save_panel(const Panel& panel) { return dump_json(panel_to_json(panel)); }

namespace detail {

inline const json& require(const json& obj, const char* field, json::value_t type,
                           const std::string& where) {
  if (!obj.is_object() || !obj.contains(field))
    throw InputError("panel_store", "schema violation: " + where + " missing '" + field + "'");
  const auto& v = obj.at(field);
  const bool ok = type == json::value_t::number_float ? v.is_number() : v.type() == type;
  if (!ok) throw InputError("panel_store", "schema violation: " + where + "." + field + " has wrong type");
  return v;
}

}  // namespace detail

inline Panel panel_from_json(const json& doc) {
  using detail::require;
  if (!doc.is_object() || !doc.contains("schema_version") || !doc["schema_version"].is_number_integer())
    throw InputError("panel_store", "schema violation: panel missing integer 'schema_version'");
  if (doc["schema_version"].get<int>() != kPanelSchemaVersion)
    throw InputError("panel_store",
                     "unsupported panel schema_version " + doc["schema_version"].dump());
  Panel panel(require(doc, "provenance", json::value_t::string, "panel").get<std::string>());

  const auto& list = require(doc, "series", json::value_t::array, "panel");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto where = "series[" + std::to_string(i) + "]";
    const auto& js = list[i];
    IndicatorSeries s;
    s.country = require(js, "country", json::value_t::string, where).get<std::string>();
    s.indicator = require(js, "indicator", json::value_t::string, where).get<std::string>();
    s.unit = require(js, "unit", json::value_t::string, where).get<std::string>();
    const auto& obs = require(js, "observations", json::value_t::array, where);
    for (std::size_t k = 0; k < obs.size(); ++k) {
      const auto w = where + ".observations[" + std::to_string(k) + "]";
      if (!obs[k].is_object() || !obs[k].contains("year") || !obs[k]["year"].is_number_integer())
        throw InputError("panel_store", "schema violation: " + w + " needs integer 'year'");
      const auto& value = require(obs[k], "value", json::value_t::number_float, w);
      s.observations.push_back({obs[k]["year"].get<int>(), value.get<double>()});
    }
    panel.add(std::move(s));
  }

  if (doc.contains("year_span") && !doc["year_span"].is_null()) {
    const auto& span = doc["year_span"];
    const auto actual = panel.year_span();
    if (!span.is_array() || span.size() != 2 || !actual ||
        span[0].get<int>() != actual->first || span[1].get<int>() != actual->last)
      throw InputError("panel_store", "schema violation: year_span inconsistent with series");
  }
  return panel;
}

inline Panel load_panel(const std::string& text) {
  return panel_from_json(parse_json(text, "panel_store"));
}

}  // namespace ggdp
