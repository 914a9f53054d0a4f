#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ggdp/error.hpp"

namespace ggdp {

struct Observation {
  int year = 0;
  double value = 0.0;

  bool operator==(const Observation&) const = default;
};

struct SeriesKey {
  std::string country;    // ISO-3166 alpha-3
  std::string indicator;  // e.g. "GDP", "NRD_PCT_GNI", "RDM.energy_consumption_reduction"

  auto operator<=>(const SeriesKey&) const = default;
  std::string str() const { return country + "/" + indicator; }
};

/// One (country, indicator) time series. Loaders keep observations sorted
/// by year; validate() reports anything that slipped through otherwise.
struct IndicatorSeries {
  std::string country;
  std::string indicator;
  std::string unit;
  std::vector<Observation> observations;

  SeriesKey key() const { return {country, indicator}; }
  std::size_t size() const { return observations.size(); }
  bool empty() const { return observations.empty(); }

  std::vector<int> years() const {
    std::vector<int> out;
    out.reserve(observations.size());
    for (const auto& o : observations) out.push_back(o.year);
    return out;
  }

  std::vector<double> values() const {
    std::vector<double> out;
    out.reserve(observations.size());
    for (const auto& o : observations) out.push_back(o.value);
    return out;
  }

  std::optional<double> at(int year) const {
    auto it = std::lower_bound(observations.begin(), observations.end(), year,
                               [](const Observation& o, int y) { return o.year < y; });
    if (it == observations.end() || it->year != year) return std::nullopt;
    return it->value;
  }

  bool operator==(const IndicatorSeries&) const = default;
};

struct YearSpan {
  int first = 0;
  int last = 0;

  bool contains(int year) const { return year >= first && year <= last; }
  bool operator==(const YearSpan&) const = default;
};

/// Immutable-after-construction collection of series, at most one per key.
class Panel {
 public:
  Panel() = default;
  explicit Panel(std::string provenance) : provenance_(std::move(provenance)) {}

  /// Throws InputError on a duplicate key.
  void add(IndicatorSeries s) {
    auto key = s.key();
    if (series_.count(key))
      throw InputError("panel_store", "duplicate series " + key.str());
    series_.emplace(std::move(key), std::move(s));
  }

  const IndicatorSeries* find(const SeriesKey& key) const {
    auto it = series_.find(key);
    return it == series_.end() ? nullptr : &it->second;
  }

  const IndicatorSeries& get(const SeriesKey& key) const {
    if (const auto* s = find(key)) return *s;
    throw InputError("panel_store", "missing series " + key.str());
  }

  bool contains(const SeriesKey& key) const { return series_.count(key) != 0; }

  const std::map<SeriesKey, IndicatorSeries>& series() const { return series_; }
  std::size_t size() const { return series_.size(); }
  bool empty() const { return series_.empty(); }

  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  std::vector<std::string> countries() const {
    std::set<std::string> out;
    for (const auto& [k, _] : series_) out.insert(k.country);
    return {out.begin(), out.end()};
  }

  /// Min/max year over all observations; nullopt for a panel without any.
  std::optional<YearSpan> year_span() const {
    std::optional<YearSpan> span;
    for (const auto& [_, s] : series_) {
      for (const auto& o : s.observations) {
        if (!span) span = YearSpan{o.year, o.year};
        span->first = std::min(span->first, o.year);
        span->last = std::max(span->last, o.year);
      }
    }
    return span;
  }

  bool operator==(const Panel&) const = default;

 private:
  std::string provenance_;
  std::map<SeriesKey, IndicatorSeries> series_;
};

// ---------------------------------------------------------------------------
// Validation

enum class Severity { error, warning };

inline const char* to_string(Severity s) { return s == Severity::error ? "error" : "warning"; }

struct ValidationIssue {
  Severity severity;
  std::string key;
  std::optional<int> year;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return error_count() == 0; }
  bool empty() const { return issues.empty(); }

  std::size_t error_count() const {
    return static_cast<std::size_t>(std::count_if(
        issues.begin(), issues.end(), [](const auto& i) { return i.severity == Severity::error; }));
  }

  /// Throws InputError listing the first error, if there is one.
  void throw_if_errors() const {
    for (const auto& i : issues)
      if (i.severity == Severity::error)
        throw InputError("panel_store", "panel rejected: " + i.key + ": " + i.message +
                                            " (" + std::to_string(error_count()) + " error(s))");
  }
};

/// Fewest observations GM(1,1) can be fitted on.
inline constexpr std::size_t kMinForecastPoints = 4;

namespace detail {

inline std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace detail

/// Indicators holding money values. Their unit tags must say billions.
inline bool is_monetary_indicator(const std::string& indicator) {
  static const std::set<std::string> kMonetary = {"GDP", "GNI", "GGDP", "RDM", "EPCL", "EPDL"};
  if (kMonetary.count(indicator)) return true;
  const auto dot = indicator.find('.');
  return dot != std::string::npos && kMonetary.count(indicator.substr(0, dot));
}

inline bool is_billions_unit(const std::string& unit) {
  const auto u = detail::lower(unit);
  return u.find("billion") != std::string::npos || u.find("bn") != std::string::npos;
}

inline ValidationReport validate(const Panel& panel) {
  ValidationReport report;
  auto add = [&](Severity sev, const std::string& key, std::optional<int> year, std::string msg) {
    report.issues.push_back({sev, key, year, std::move(msg)});
  };

  std::map<std::string, std::string> unit_of_indicator;
  std::set<std::string> mismatch_reported;

  for (const auto& [key, s] : panel.series()) {
    const auto k = key.str();
    if (s.unit.empty()) add(Severity::error, k, std::nullopt, "empty unit tag");

    for (std::size_t i = 0; i < s.observations.size(); ++i) {
      const auto& o = s.observations[i];
      if (!std::isfinite(o.value)) add(Severity::error, k, o.year, "non-finite value");
      if (i > 0) {
        const int prev = s.observations[i - 1].year;
        if (o.year <= prev) {
          add(Severity::error, k, o.year, "non-increasing years");
        } else {
          for (int y = prev + 1; y < o.year; ++y)
            add(Severity::warning, k, y, "interior gap at " + std::to_string(y));
        }
      }
    }
    if (s.observations.size() < kMinForecastPoints)
      add(Severity::warning, k, std::nullopt,
          "series has " + std::to_string(s.observations.size()) +
              " points; GM(1,1) needs at least " + std::to_string(kMinForecastPoints));

    if (is_monetary_indicator(s.indicator) && !s.unit.empty() && !is_billions_unit(s.unit))
      add(Severity::error, k, std::nullopt,
          "monetary indicator " + s.indicator + " must be in billions, got unit '" + s.unit + "'");

    auto [it, inserted] = unit_of_indicator.emplace(s.indicator, s.unit);
    if (!inserted && it->second != s.unit && mismatch_reported.insert(s.indicator).second)
      add(Severity::error, k, std::nullopt,
          "unit mismatch for indicator " + s.indicator + " ('" + it->second + "' vs '" + s.unit +
              "')");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Gap filling and alignment

enum class GapPolicy { none, linear_interior };

/// `linear_interior` fills only years strictly between two observations;
/// the ends are never extrapolated.
inline IndicatorSeries fill_gaps(const IndicatorSeries& series, GapPolicy policy) {
  if (policy == GapPolicy::none || series.observations.size() < 2) return series;
  IndicatorSeries out = series;
  out.observations.clear();
  const auto& obs = series.observations;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    out.observations.push_back(obs[i]);
    if (i + 1 == obs.size()) break;
    const auto& lo = obs[i];
    const auto& hi = obs[i + 1];
    const double span = static_cast<double>(hi.year - lo.year);
    for (int y = lo.year + 1; y < hi.year; ++y) {
      const double t = static_cast<double>(y - lo.year) / span;
      out.observations.push_back({y, lo.value + t * (hi.value - lo.value)});
    }
  }
  return out;
}

/// Rectangular year × key matrix cut out of a panel.
struct AlignedMatrix {
  Eigen::MatrixXd values;  // rows = years, cols = keys
  std::vector<int> years;
  std::vector<SeriesKey> keys;
};

inline AlignedMatrix align(const Panel& panel, const std::vector<SeriesKey>& keys, YearSpan years,
                           GapPolicy policy = GapPolicy::none) {
  if (years.last < years.first) throw InputError("panel_store", "empty year range");
  AlignedMatrix out;
  out.keys = keys;
  for (int y = years.first; y <= years.last; ++y) out.years.push_back(y);
  out.values.resize(static_cast<Eigen::Index>(out.years.size()),
                    static_cast<Eigen::Index>(keys.size()));

  for (std::size_t c = 0; c < keys.size(); ++c) {
    const auto* s = panel.find(keys[c]);
    if (!s) throw InputError("panel_store", "missing series " + keys[c].str());
    const auto filled = fill_gaps(*s, policy);
    for (std::size_t r = 0; r < out.years.size(); ++r) {
      const auto v = filled.at(out.years[r]);
      if (!v)
        throw InputError("panel_store", "missing cell " + std::to_string(out.years[r]) + " in " +
                                            keys[c].str());
      out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = *v;
    }
  }
  return out;
}

}  // namespace ggdp
