#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ggdp/error.hpp"
#include "ggdp/panel.hpp"

namespace ggdp {

struct LinearModel {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
  std::size_t n_points = 0;

  double operator()(double x) const { return slope * x + intercept; }
};

inline double apply_linear(const LinearModel& m, double x) { return m.slope * x + m.intercept; }

namespace detail {

inline double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline void check_pair(std::span<const double> x, std::span<const double> y, const char* op) {
  if (x.size() != y.size())
    throw InputError("stats_fit", std::string(op) + ": length mismatch (" +
                                      std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
  if (x.size() < 2) throw InputError("stats_fit", std::string(op) + " needs at least 2 points");
}

}  // namespace detail

/// Closed-form simple least squares, centered sums.
/// r^2 = 1 - SSE/SST, taken as 1 when SST = 0 (y constant and fitted exactly).
inline LinearModel ols_fit(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y, "ols_fit");
  const double mx = detail::mean(x);
  const double my = detail::mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ComputationError("stats_fit", "ols_fit: degenerate x (all values equal)");

  LinearModel m;
  m.slope = sxy / sxx;
  m.intercept = my - m.slope * mx;
  m.n_points = x.size();

  double sse = 0.0, sst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - apply_linear(m, x[i]);
    sse += r * r;
    sst += (y[i] - my) * (y[i] - my);
  }
  m.r_squared = sst == 0.0 ? 1.0 : std::clamp(1.0 - sse / sst, 0.0, 1.0);
  return m;
}

/// Sample Pearson product-moment correlation.
inline double pearson(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y, "pearson");
  const double mx = detail::mean(x);
  const double my = detail::mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw ComputationError("stats_fit", "pearson: zero-variance input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

enum class TrendMode { levels, differences };

inline const char* to_string(TrendMode m) { return m == TrendMode::levels ? "levels" : "differences"; }

/// Correlation of two trends over their common years, either on the level
/// series or on their first differences.
struct TrendCorrelation {
  double r = 0.0;
  std::size_t n_points = 0;
  int first_year = 0;
  int last_year = 0;
};

inline TrendCorrelation trend_correlation(const IndicatorSeries& x, const IndicatorSeries& y,
                                          TrendMode mode = TrendMode::levels) {
  std::vector<int> years;
  std::vector<double> xv, yv;
  for (const auto& o : x.observations) {
    if (auto v = y.at(o.year)) {
      years.push_back(o.year);
      xv.push_back(o.value);
      yv.push_back(*v);
    }
  }
  if (years.size() < 2)
    throw InputError("stats_fit", "fewer than 2 common years between " + x.key().str() + " and " +
                                      y.key().str());
  if (mode == TrendMode::differences) {
    for (std::size_t i = 1; i < years.size(); ++i)
      if (years[i] != years[i - 1] + 1)
        throw InputError("stats_fit", "differences need consecutive common years; gap before " +
                                          std::to_string(years[i]));
    std::adjacent_difference(xv.begin(), xv.end(), xv.begin());
    std::adjacent_difference(yv.begin(), yv.end(), yv.begin());
    xv.erase(xv.begin());
    yv.erase(yv.begin());
  }
  return {pearson(xv, yv), xv.size(), years.front(), years.back()};
}

/// 100 (v(k) - v(k-1)) / v(k-1) for consecutive values.
inline std::vector<double> pct_change(std::span<const double> v) {
  std::vector<double> out;
  if (v.size() < 2) return out;
  out.reserve(v.size() - 1);
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k - 1] == 0.0)
      throw ComputationError("stats_fit", "pct_change: zero denominator at index " + std::to_string(k - 1));
    out.push_back(100.0 * (v[k] - v[k - 1]) / v[k - 1]);
  }
  return out;
}

/// Year-over-year percent changes; the series must have no year gaps.
/// Output observation years are the later year of each pair.
inline IndicatorSeries pct_change(const IndicatorSeries& s) {
  const auto years = s.years();
  for (std::size_t i = 1; i < years.size(); ++i)
    if (years[i] != years[i - 1] + 1)
      throw InputError("stats_fit", "pct_change: gap in years before " + std::to_string(years[i]) +
                                        " in " + s.key().str());
  const auto changes = pct_change(s.values());
  IndicatorSeries out{s.country, s.indicator, "percent change", {}};
  for (std::size_t k = 0; k < changes.size(); ++k) out.observations.push_back({years[k + 1], changes[k]});
  return out;
}

struct ImpactScore {
  std::string series_label;
  IndicatorSeries pct_changes;
  double mean_abs_pct_change = 0.0;
};

/// Mean absolute year-over-year percent change. Lower means the series
/// moved less.
inline ImpactScore climate_impact_score(const IndicatorSeries& s) {
  if (s.size() < 2)
    throw InputError("stats_fit", "climate_impact_score: " + s.key().str() +
                                      " has fewer than 2 points, no change computable");
  ImpactScore score;
  score.series_label = s.key().str();
  score.pct_changes = pct_change(s);
  double sum = 0.0;
  for (const auto& o : score.pct_changes.observations) sum += std::abs(o.value);
  score.mean_abs_pct_change = sum / static_cast<double>(score.pct_changes.size());
  return score;
}

}  // namespace ggdp
