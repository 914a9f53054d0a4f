#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ggdp/error.hpp"
#include "ggdp/panel.hpp"

namespace ggdp {

/// Accumulated generating operation (running sum).
inline std::vector<double> ago(std::span<const double> x) {
  std::vector<double> out(x.size());
  std::partial_sum(x.begin(), x.end(), out.begin());
  return out;
}

/// Inverse AGO: first element kept, then first differences.
inline std::vector<double> iago(std::span<const double> x) {
  std::vector<double> out(x.size());
  if (x.empty()) return out;
  out[0] = x[0];
  for (std::size_t k = 1; k < x.size(); ++k) out[k] = x[k] - x[k - 1];
  return out;
}

enum class AccuracyClass { excellent, good, qualified, weak, unqualified };

inline const char* to_string(AccuracyClass c) {
  switch (c) {
    case AccuracyClass::excellent: return "excellent";
    case AccuracyClass::good: return "good";
    case AccuracyClass::qualified: return "qualified";
    case AccuracyClass::weak: return "weak";
    case AccuracyClass::unqualified: return "unqualified";
  }
  return "unqualified";
}

/// Standard grey accuracy grades on the mean relative residual.
inline AccuracyClass classify_q(double q) {
  if (q <= 0.01) return AccuracyClass::excellent;
  if (q <= 0.05) return AccuracyClass::good;
  if (q <= 0.10) return AccuracyClass::qualified;
  if (q <= 0.20) return AccuracyClass::weak;
  return AccuracyClass::unqualified;
}

/// Development coefficients below this magnitude use the a -> 0 limit of the
/// time response.
inline constexpr double kDegenerateA = 1e-12;

struct Gm11Options {
  /// Shift non-positive input so its minimum becomes 1 before fitting.
  bool shift_nonpositive = false;
};

struct Gm11Model {
  double a = 0.0;          // development coefficient
  double u = 0.0;          // grey action
  double x0_first = 0.0;   // first observation, on the fitted (shifted) scale
  std::size_t n = 0;
  double shift = 0.0;      // added to the input before fitting; 0 if none
  std::vector<double> fitted;  // restored values, original scale
  double residual_q = 0.0;
  AccuracyClass accuracy_class = AccuracyClass::excellent;
};

struct ForecastResult {
  Gm11Model model;
  std::size_t horizon = 0;
  std::vector<double> values;
  std::vector<int> years;  // empty when the sample had no calendar years
};

struct QTest {
  double q = 0.0;
  AccuracyClass accuracy_class = AccuracyClass::excellent;
};

/// Mean absolute relative residual |(original - fitted) / original|.
inline QTest q_test(std::span<const double> original, std::span<const double> fitted) {
  if (original.size() != fitted.size())
    throw InputError("gm11_forecast", "q_test length mismatch");
  if (original.empty()) throw InputError("gm11_forecast", "q_test on empty series");
  double sum = 0.0;
  for (std::size_t k = 0; k < original.size(); ++k) {
    if (original[k] == 0.0)
      throw ComputationError("gm11_forecast",
                             "zero original value at index " + std::to_string(k) + " in q_test");
    sum += std::abs((original[k] - fitted[k]) / original[k]);
  }
  const double q = sum / static_cast<double>(original.size());
  return {q, classify_q(q)};
}

inline QTest q_test(const Gm11Model& model, std::span<const double> original) {
  if (model.shift == 0.0) return q_test(original, model.fitted);
  std::vector<double> o(original.begin(), original.end()), f = model.fitted;
  for (auto& v : o) v += model.shift;
  for (auto& v : f) v += model.shift;
  return q_test(o, f);
}

namespace detail {

/// Restored values for steps 1..count on the fitted scale: evaluates the
/// accumulated time response x1(k+1) = (x0(1) - u/a) e^{-a k} + u/a and
/// differences it.
inline std::vector<double> gm11_restore(double a, double u, double x0_first, std::size_t count) {
  std::vector<double> acc(count);
  const bool degenerate = std::abs(a) < kDegenerateA;
  const double ratio = degenerate ? 0.0 : u / a;
  for (std::size_t k = 0; k < count; ++k) {
    if (k == 0) {
      acc[k] = x0_first;
    } else if (degenerate) {
      acc[k] = x0_first + u * static_cast<double>(k);
    } else {
      acc[k] = (x0_first - ratio) / std::exp(a * static_cast<double>(k)) + ratio;
    }
  }
  return iago(acc);
}

}  // namespace detail

/// Least-squares GM(1,1) fit of x0(k) = -a z(k) + u, z(k) the background
/// value (x1(k) + x1(k-1)) / 2, solved in closed form.
inline Gm11Model fit_gm11(std::span<const double> series, const Gm11Options& opts = {}) {
  const std::size_t n = series.size();
  if (n < kMinForecastPoints)
    throw InputError("gm11_forecast", "GM(1,1) needs at least " +
                                          std::to_string(kMinForecastPoints) + " points, got " +
                                          std::to_string(n));
  for (std::size_t k = 0; k < n; ++k)
    if (!std::isfinite(series[k]))
      throw InputError("gm11_forecast", "non-finite value at index " + std::to_string(k));

  double shift = 0.0;
  const double lo = *std::min_element(series.begin(), series.end());
  if (lo <= 0.0) {
    if (!opts.shift_nonpositive) {
      const auto idx = std::find_if(series.begin(), series.end(), [](double v) { return v <= 0.0; }) -
                       series.begin();
      throw ComputationError("gm11_forecast",
                             "non-positive value at index " + std::to_string(idx) +
                                 "; enable shifting to fit such series");
    }
    shift = 1.0 - lo;
  }

  std::vector<double> x0(series.begin(), series.end());
  for (auto& v : x0) v += shift;
  const auto x1 = ago(x0);

  // Regress y = x0(k) on z(k), k = 2..n.
  const std::size_t m = n - 1;
  std::vector<double> z(m), y(m);
  for (std::size_t k = 1; k < n; ++k) {
    z[k - 1] = 0.5 * (x1[k] + x1[k - 1]);
    y[k - 1] = x0[k];
  }
  const double zbar = std::accumulate(z.begin(), z.end(), 0.0) / static_cast<double>(m);
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(m);
  double szz = 0.0, szy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    szz += (z[i] - zbar) * (z[i] - zbar);
    szy += (z[i] - zbar) * (y[i] - ybar);
  }
  if (!(szz > 0.0)) throw ComputationError("gm11_forecast", "singular normal equations (constant z)");

  Gm11Model model;
  model.a = -szy / szz;
  model.u = ybar + model.a * zbar;
  model.x0_first = x0[0];
  model.n = n;
  model.shift = shift;
  model.fitted = detail::gm11_restore(model.a, model.u, model.x0_first, n);
  if (shift != 0.0) {
    for (auto& v : model.fitted) v -= shift;
    model.fitted[0] = series[0];
  }

  const auto q = q_test(model, series);
  model.residual_q = q.q;
  model.accuracy_class = q.accuracy_class;
  return model;
}

inline constexpr std::size_t kDefaultHorizon = 10;

/// Extends the model `horizon` steps past the sample. `first_year`, when
/// given, labels the forecast with calendar years.
inline ForecastResult predict(const Gm11Model& model, std::size_t horizon,
                              std::optional<int> first_year = std::nullopt) {
  ForecastResult r;
  r.model = model;
  r.horizon = horizon;
  if (horizon == 0) return r;
  auto all = detail::gm11_restore(model.a, model.u, model.x0_first, model.n + horizon);
  for (std::size_t k = model.n; k < all.size(); ++k) r.values.push_back(all[k] - model.shift);
  if (first_year)
    for (std::size_t h = 0; h < horizon; ++h)
      r.years.push_back(*first_year + static_cast<int>(model.n + h));
  return r;
}

/// Fits a panel series, requiring contiguous years, and forecasts it.
inline ForecastResult forecast_series(const IndicatorSeries& s, std::size_t horizon,
                                      const Gm11Options& opts = {}) {
  const auto years = s.years();
  for (std::size_t i = 1; i < years.size(); ++i)
    if (years[i] != years[i - 1] + 1)
      throw InputError("gm11_forecast", s.key().str() + " has a gap before " +
                                            std::to_string(years[i]));
  const auto values = s.values();
  const auto model = fit_gm11(values, opts);
  return predict(model, horizon, years.empty() ? std::nullopt : std::optional<int>(years.front()));
}

// ---------------------------------------------------------------------------
// Applicability diagnostics (advisory only)

struct Diagnostic {
  enum class Kind { smoothness, unreliable, long_horizon } kind;
  std::optional<std::size_t> index;  // 0-based observation index, smoothness only
  double value = 0.0;
  std::string message;
};

/// Smoothness ratio x0(k) / x1(k-1) above this flags a jump.
inline constexpr double kSmoothnessLimit = 0.5;
/// First 0-based index whose smoothness ratio is checked.
inline constexpr std::size_t kSmoothnessFirstIndex = 3;

inline std::vector<Diagnostic> check_applicability(std::span<const double> series,
                                                   const Gm11Options& opts = {}) {
  const auto model = fit_gm11(series, opts);
  std::vector<double> x0(series.begin(), series.end());
  for (auto& v : x0) v += model.shift;
  const auto x1 = ago(x0);

  std::vector<Diagnostic> out;
  for (std::size_t k = kSmoothnessFirstIndex; k < x0.size(); ++k) {
    const double ratio = x0[k] / x1[k - 1];
    if (ratio > kSmoothnessLimit)
      out.push_back({Diagnostic::Kind::smoothness, k, ratio,
                     "smoothness ratio " + std::to_string(ratio) + " at index " +
                         std::to_string(k) + " exceeds 0.5"});
  }
  const double abs_a = std::abs(model.a);
  if (abs_a >= 2.0)
    out.push_back({Diagnostic::Kind::unreliable, std::nullopt, model.a,
                   "|a| >= 2: forecast unreliable"});
  if (abs_a >= 0.3)
    out.push_back({Diagnostic::Kind::long_horizon, std::nullopt, model.a,
                   "|a| >= 0.3: treat long-horizon forecasts with caution"});
  return out;
}

inline const char* to_string(Diagnostic::Kind k) {
  switch (k) {
    case Diagnostic::Kind::smoothness: return "smoothness";
    case Diagnostic::Kind::unreliable: return "unreliable";
    case Diagnostic::Kind::long_horizon: return "long_horizon";
  }
  return "";
}

}  // namespace ggdp
