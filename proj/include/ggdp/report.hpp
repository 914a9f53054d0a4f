#pragma once

#include <string>
#include <vector>

#include "ggdp/accounting.hpp"
#include "ggdp/gm11.hpp"
#include "ggdp/grey_relational.hpp"
#include "ggdp/json_io.hpp"
#include "ggdp/stats_fit.hpp"

namespace ggdp {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct GraEntry {
  std::string country;
  std::string analysis;  // "primary" or the deduction category for secondary indicators
  std::vector<int> years;
  GreyRelationalResult result;
};

struct ForecastEntry {
  std::string country;
  std::string indicator;
  std::string unit;
  std::vector<int> years;
  std::vector<double> observed;
  ForecastResult forecast;
  std::vector<Diagnostic> diagnostics;
};

struct CorrelationEntry {
  std::string country;
  std::string x;
  std::string y;
  TrendMode mode = TrendMode::levels;
  TrendCorrelation value;
};

struct ImpactEntry {
  std::string country;
  std::string indicator;
  ImpactScore score;
};

struct BridgeInfo {
  std::string source;  // "paper" or "refit"
  LinearModel epcl;
  LinearModel epdl;
};

struct Report {
  std::string command;
  std::string timestamp;
  json config = json::object();
  BridgeInfo bridges;
  std::vector<GgdpAccount> accounts;
  std::vector<GraEntry> gra;
  std::vector<ForecastEntry> forecasts;
  std::vector<ImpactEntry> impact;
  std::vector<CorrelationEntry> correlations;
  std::vector<Warning> warnings;
  std::vector<std::string> notes;
};

namespace detail {

inline json vec_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline json mat_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace detail

inline json to_json(const Warning& w) { return {{"module", w.module}, {"message", w.message}}; }

inline json to_json(const LinearModel& m) {
  json j = {{"slope", m.slope}, {"intercept", m.intercept}, {"n_points", m.n_points}};
  j["r_squared"] = m.n_points == 0 ? json(nullptr) : json(m.r_squared);
  return j;
}

inline json to_json(const GgdpAccount& acc) {
  json rows = json::array();
  for (const auto& r : acc.rows)
    rows.push_back({{"year", r.year},
                    {"gdp", r.gdp},
                    {"rdm", r.rdm},
                    {"epcl", r.epcl},
                    {"epdl", r.epdl},
                    {"ggdp", r.ggdp},
                    {"methods",
                     {{"rdm", to_string(r.rdm_method)},
                      {"epcl", to_string(r.epcl_method)},
                      {"epdl", to_string(r.epdl_method)}}}});
  return {{"country", acc.country}, {"unit", acc.unit}, {"rows", std::move(rows)}};
}

inline json to_json(const GraEntry& e, bool full) {
  const auto& r = e.result;
  json grades = json::array();
  for (std::size_t i = 0; i < r.child_labels.size(); ++i)
    grades.push_back({{"label", r.child_labels[i]}, {"grade", r.grades(static_cast<Eigen::Index>(i))}});
  json ranking = json::array();
  for (const auto& c : r.ranking()) ranking.push_back(c.label);
  json j = {{"country", e.country},
            {"analysis", e.analysis},
            {"parent", r.parent_label},
            {"children", r.child_labels},
            {"years", e.years},
            {"rho", r.options.rho},
            {"normalize", r.options.normalize},
            {"a", r.a},
            {"b", r.b},
            {"grades", std::move(grades)},
            {"ranking", std::move(ranking)}};
  if (full) {
    j["coefficients"] = detail::mat_json(r.coefficients);
    j["normalized_parent"] = detail::vec_json(r.normalized_parent);
    j["normalized_children"] = detail::mat_json(r.normalized_children);
  }
  return j;
}

inline json to_json(const ForecastEntry& e) {
  const auto& m = e.forecast.model;
  json diags = json::array();
  for (const auto& d : e.diagnostics) {
    json dj = {{"kind", to_string(d.kind)}, {"value", d.value}, {"message", d.message}};
    dj["index"] = d.index ? json(*d.index) : json(nullptr);
    diags.push_back(std::move(dj));
  }
  return {{"country", e.country},
          {"indicator", e.indicator},
          {"unit", e.unit},
          {"a", m.a},
          {"u", m.u},
          {"n", m.n},
          {"shift", m.shift},
          {"q", m.residual_q},
          {"accuracy_class", to_string(m.accuracy_class)},
          {"years", e.years},
          {"observed", e.observed},
          {"fitted", m.fitted},
          {"horizon", e.forecast.horizon},
          {"forecast_years", e.forecast.years},
          {"forecast", e.forecast.values},
          {"diagnostics", std::move(diags)}};
}

inline json to_json(const ImpactEntry& e) {
  json years = json::array(), changes = json::array();
  for (const auto& o : e.score.pct_changes.observations) {
    years.push_back(o.year);
    changes.push_back(o.value);
  }
  return {{"country", e.country},
          {"indicator", e.indicator},
          {"years", std::move(years)},
          {"pct_changes", std::move(changes)},
          {"mean_abs_pct_change", e.score.mean_abs_pct_change}};
}

inline json to_json(const CorrelationEntry& e) {
  return {{"country", e.country},
          {"x", e.x},
          {"y", e.y},
          {"mode", to_string(e.mode)},
          {"r", e.value.r},
          {"n_points", e.value.n_points},
          {"first_year", e.value.first_year},
          {"last_year", e.value.last_year}};
}

inline json report_to_json(const Report& r, bool full) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["run"] = {{"command", r.command},
              {"timestamp", r.timestamp},
              {"tool_version", kToolVersion},
              {"config", r.config}};
  j["bridges"] = {{"source", r.bridges.source},
                  {"epcl", to_json(r.bridges.epcl)},
                  {"epdl", to_json(r.bridges.epdl)}};
  auto list = [](const auto& items, auto&& fn) {
    json out = json::array();
    for (const auto& x : items) out.push_back(fn(x));
    return out;
  };
  j["accounts"] = list(r.accounts, [](const auto& a) { return to_json(a); });
  j["gra"] = list(r.gra, [full](const auto& g) { return to_json(g, full); });
  j["forecasts"] = list(r.forecasts, [](const auto& f) { return to_json(f); });
  j["impact"] = list(r.impact, [](const auto& i) { return to_json(i); });
  j["correlations"] = list(r.correlations, [](const auto& c) { return to_json(c); });
  j["warnings"] = list(r.warnings, [](const auto& w) { return to_json(w); });
  j["notes"] = r.notes;
  return j;
}

}  // namespace ggdp
