#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ggdp/error.hpp"
#include "ggdp/panel.hpp"
#include "ggdp/stats_fit.hpp"

namespace ggdp {

enum class Deduction { rdm, epcl, epdl };

/// Where a deduction value came from.
enum class Method { measured, rollup, delta_gni, bridge_eq8, bridge_eq9 };

inline const char* to_string(Deduction d) {
  switch (d) {
    case Deduction::rdm: return "RDM";
    case Deduction::epcl: return "EPCL";
    case Deduction::epdl: return "EPDL";
  }
  return "";
}

inline const char* to_string(Method m) {
  switch (m) {
    case Method::measured: return "measured";
    case Method::rollup: return "rollup";
    case Method::delta_gni: return "delta_gni";
    case Method::bridge_eq8: return "bridge_eq8";
    case Method::bridge_eq9: return "bridge_eq9";
  }
  return "";
}

inline Method method_from_string(const std::string& s) {
  for (auto m : {Method::measured, Method::rollup, Method::delta_gni, Method::bridge_eq8,
                 Method::bridge_eq9})
    if (s == to_string(m)) return m;
  throw InputError("ggdp_accounting", "unknown deduction source '" + s + "'");
}

// ---------------------------------------------------------------------------
// Indicator vocabulary

inline constexpr const char* kGdp = "GDP";
inline constexpr const char* kGni = "GNI";
inline constexpr const char* kGgdp = "GGDP";
inline constexpr const char* kDeltaGni = "NRD_PCT_GNI";

/// Secondary indicators per deduction category. Panel indicator ids are
/// "<CATEGORY>.<component>", e.g. "RDM.energy_consumption_reduction".
inline const std::vector<std::string>& secondary_vocabulary(Deduction d) {
  static const std::vector<std::string> rdm = {
      "cultivated_land_depletion",    "energy_consumption_reduction",
      "water_consumption_reduction",  "freshwater_fishing_depletion",
      "live_wood_accumulation",       "additional_forest_land_value"};
  static const std::vector<std::string> epcl = {"actual_governance", "virtual_governance"};
  static const std::vector<std::string> epdl = {"accelerated_depreciation", "human_health_loss",
                                                "natural_disaster_loss"};
  switch (d) {
    case Deduction::rdm: return rdm;
    case Deduction::epcl: return epcl;
    case Deduction::epdl: return epdl;
  }
  return rdm;
}

inline std::string secondary_indicator_id(Deduction d, const std::string& component) {
  return std::string(to_string(d)) + "." + component;
}

// ---------------------------------------------------------------------------
// Bridges

/// Default bridge coefficients (selected with bridge = "paper"):
/// EPCL = 0.1009 RDM + 932.2 and EPDL = 0.07316 RDM + 1179, billions of US$.
/// n_points = 0 marks a model not fitted on local data (r_squared unknown).
inline LinearModel default_epcl_bridge() {
  return {0.1009, 932.2, std::numeric_limits<double>::quiet_NaN(), 0};
}
inline LinearModel default_epdl_bridge() {
  return {0.07316, 1179.0, std::numeric_limits<double>::quiet_NaN(), 0};
}

namespace detail {

inline double bridge_value(double rdm, const LinearModel& model, const char* target, int year,
                           const std::string& country, std::vector<Warning>& warnings) {
  const double v = apply_linear(model, rdm);
  if (v < 0.0) {
    warnings.push_back({"ggdp_accounting", std::string("negative bridge estimate for ") + target +
                                               " clamped to 0 (" + country + " " +
                                               std::to_string(year) + ")"});
    return 0.0;
  }
  return v;
}

inline IndicatorSeries apply_bridge(const IndicatorSeries& rdm, const LinearModel& model,
                                    const char* target, std::vector<Warning>& warnings) {
  IndicatorSeries out{rdm.country, target, rdm.unit, {}};
  for (const auto& o : rdm.observations)
    out.observations.push_back(
        {o.year, bridge_value(o.value, model, target, o.year, rdm.country, warnings)});
  return out;
}

}  // namespace detail

struct BridgeEstimate {
  IndicatorSeries series;
  Method method;
  std::vector<Warning> warnings;
};

inline BridgeEstimate epcl_bridge(const IndicatorSeries& rdm,
                                  const LinearModel& model = default_epcl_bridge()) {
  BridgeEstimate e{{}, Method::bridge_eq8, {}};
  e.series = detail::apply_bridge(rdm, model, "EPCL", e.warnings);
  return e;
}

inline BridgeEstimate epdl_bridge(const IndicatorSeries& rdm,
                                  const LinearModel& model = default_epdl_bridge()) {
  BridgeEstimate e{{}, Method::bridge_eq9, {}};
  e.series = detail::apply_bridge(rdm, model, "EPDL", e.warnings);
  return e;
}

// ---------------------------------------------------------------------------
// RDM from GNI

/// Multiplier turning a depletion-share series into a fraction, read off
/// its unit tag: percent -> 0.01, fraction/share/ratio -> 1.
inline double delta_scale(const IndicatorSeries& delta) {
  const auto u = detail::lower(delta.unit);
  if (u.find("percent") != std::string::npos || u.find('%') != std::string::npos) return 0.01;
  if (u.find("fraction") != std::string::npos || u.find("share") != std::string::npos ||
      u.find("ratio") != std::string::npos)
    return 1.0;
  throw InputError("ggdp_accounting", "cannot tell whether " + delta.key().str() + " unit '" +
                                          delta.unit + "' is a percent or a fraction");
}

/// RDM(y) = delta(y) * GNI(y).
inline IndicatorSeries rdm_from_gni(const IndicatorSeries& gni, const IndicatorSeries& delta) {
  if (gni.years() != delta.years())
    throw InputError("ggdp_accounting", "rdm_from_gni: mismatched years between " +
                                            gni.key().str() + " and " + delta.key().str());
  const double scale = delta_scale(delta);
  IndicatorSeries out{gni.country, "RDM", gni.unit, {}};
  for (std::size_t i = 0; i < gni.observations.size(); ++i) {
    const double d = delta.observations[i].value * scale;
    const int year = gni.observations[i].year;
    if (!(d >= 0.0 && d <= 1.0))
      throw InputError("ggdp_accounting", "delta " + std::to_string(d) + " outside [0, 1] in " +
                                              std::to_string(year) + " for " + gni.country);
    out.observations.push_back({year, d * gni.observations[i].value});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Secondary rollups

struct SecondaryBundle {
  Deduction category;
  /// Indicator ids are either bare component names or "<CATEGORY>.<name>".
  std::vector<IndicatorSeries> components;
};

inline std::string component_name(Deduction category, const std::string& indicator) {
  const auto prefix = std::string(to_string(category)) + ".";
  return indicator.rfind(prefix, 0) == 0 ? indicator.substr(prefix.size()) : indicator;
}

/// Unweighted yearly sum of the bundle's components.
inline IndicatorSeries rollup(const SecondaryBundle& bundle) {
  if (bundle.components.empty())
    throw InputError("ggdp_accounting", std::string("empty ") + to_string(bundle.category) + " bundle");
  const auto& vocab = secondary_vocabulary(bundle.category);
  const auto& first = bundle.components.front();
  const auto years = first.years();
  IndicatorSeries out{first.country, to_string(bundle.category), first.unit, {}};
  for (int y : years) out.observations.push_back({y, 0.0});

  for (const auto& c : bundle.components) {
    const auto name = component_name(bundle.category, c.indicator);
    if (std::find(vocab.begin(), vocab.end(), name) == vocab.end())
      throw InputError("ggdp_accounting", "unknown " + std::string(to_string(bundle.category)) +
                                              " component '" + name + "'");
    if (c.years() != years)
      throw InputError("ggdp_accounting", "mismatched years in " +
                                              std::string(to_string(bundle.category)) +
                                              " bundle (" + c.indicator + ")");
    for (std::size_t i = 0; i < years.size(); ++i) {
      const double v = c.observations[i].value;
      if (v < 0.0)
        throw InputError("ggdp_accounting", "negative value in " + c.indicator + " at " +
                                                std::to_string(years[i]));
      out.observations[i].value += v;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Accounts

struct AccountRow {
  int year = 0;
  double gdp = 0.0;
  double rdm = 0.0;
  double epcl = 0.0;
  double epdl = 0.0;
  double ggdp = 0.0;
  Method rdm_method = Method::measured;
  Method epcl_method = Method::measured;
  Method epdl_method = Method::measured;

  bool operator==(const AccountRow&) const = default;
};

struct GgdpAccount {
  std::string country;
  std::string unit;
  std::vector<AccountRow> rows;
  std::vector<Warning> warnings;

  IndicatorSeries series(const std::string& indicator) const {
    IndicatorSeries s{country, indicator, unit, {}};
    for (const auto& r : rows) {
      double v = 0.0;
      if (indicator == kGdp) v = r.gdp;
      else if (indicator == "RDM") v = r.rdm;
      else if (indicator == "EPCL") v = r.epcl;
      else if (indicator == "EPDL") v = r.epdl;
      else if (indicator == kGgdp) v = r.ggdp;
      else throw InputError("ggdp_accounting", "account has no column " + indicator);
      s.observations.push_back({r.year, v});
    }
    return s;
  }
};

/// GGDP = GDP - RDM - EPCL - EPDL, evaluated left to right. Negative
/// deductions are rejected; a negative result is kept with a warning.
inline AccountRow make_row(int year, double gdp, double rdm, double epcl, double epdl,
                           const std::string& country, std::vector<Warning>& warnings) {
  const std::array<std::pair<const char*, double>, 3> deductions = {
      {{"RDM", rdm}, {"EPCL", epcl}, {"EPDL", epdl}}};
  for (const auto& [name, v] : deductions)
    if (!(v >= 0.0))
      throw InputError("ggdp_accounting", std::string("negative deduction ") + name + " for " +
                                              country + " in " + std::to_string(year));
  AccountRow row;
  row.year = year;
  row.gdp = gdp;
  row.rdm = rdm;
  row.epcl = epcl;
  row.epdl = epdl;
  row.ggdp = gdp - rdm - epcl - epdl;
  if (row.ggdp < 0.0)
    warnings.push_back({"ggdp_accounting", "negative_ggdp: " + country + " " + std::to_string(year)});
  return row;
}

inline GgdpAccount compute_ggdp(const IndicatorSeries& gdp, const IndicatorSeries& rdm,
                                const IndicatorSeries& epcl, const IndicatorSeries& epdl) {
  const auto years = gdp.years();
  for (const auto* s : {&rdm, &epcl, &epdl})
    if (s->years() != years)
      throw InputError("ggdp_accounting", "compute_ggdp: mismatched years between GDP and " +
                                              s->indicator);
  GgdpAccount acc{gdp.country, gdp.unit, {}, {}};
  for (std::size_t i = 0; i < years.size(); ++i)
    acc.rows.push_back(make_row(years[i], gdp.observations[i].value, rdm.observations[i].value,
                                epcl.observations[i].value, epdl.observations[i].value,
                                gdp.country, acc.warnings));
  return acc;
}

/// Per-deduction source preference plus the bridge models in force.
struct AccountStrategy {
  std::vector<Method> rdm{Method::measured, Method::rollup, Method::delta_gni};
  std::vector<Method> epcl{Method::measured, Method::rollup, Method::bridge_eq8};
  std::vector<Method> epdl{Method::measured, Method::rollup, Method::bridge_eq9};
  LinearModel epcl_model = default_epcl_bridge();
  LinearModel epdl_model = default_epdl_bridge();
  std::optional<YearSpan> years;
  GapPolicy gap_policy = GapPolicy::none;

  const std::vector<Method>& order(Deduction d) const {
    return d == Deduction::rdm ? rdm : d == Deduction::epcl ? epcl : epdl;
  }

  void check() const {
    for (auto d : {Deduction::rdm, Deduction::epcl, Deduction::epdl}) {
      for (auto m : order(d)) {
        const bool ok = m == Method::measured || m == Method::rollup ||
                        (m == Method::delta_gni && d == Deduction::rdm) ||
                        (m == Method::bridge_eq8 && d == Deduction::epcl) ||
                        (m == Method::bridge_eq9 && d == Deduction::epdl);
        if (!ok)
          throw InputError("ggdp_accounting", std::string(to_string(m)) + " cannot supply " +
                                                  to_string(d));
      }
    }
  }
};

namespace detail {

inline const IndicatorSeries* find_series(const Panel& panel, const std::string& country,
                                          const std::string& indicator) {
  return panel.find({country, indicator});
}

inline void require_unit(const IndicatorSeries& s, const std::string& unit) {
  if (s.unit != unit)
    throw InputError("ggdp_accounting", s.key().str() + " unit '" + s.unit +
                                            "' differs from GDP unit '" + unit + "'");
}

/// Series restricted to the given years (years it lacks are dropped).
inline IndicatorSeries restrict_to(const IndicatorSeries& s, const std::set<int>& years) {
  IndicatorSeries out = s;
  out.observations.clear();
  for (const auto& o : s.observations)
    if (years.count(o.year)) out.observations.push_back(o);
  return out;
}

inline std::set<int> year_set(const IndicatorSeries& s) {
  const auto y = s.years();
  return {y.begin(), y.end()};
}

}  // namespace detail

/// Non-bridge source of a deduction for one country: measured series,
/// rollup of whatever secondary components the panel holds (over their
/// common years), or delta x GNI. Nullopt when the panel lacks the inputs.
inline std::optional<IndicatorSeries> deduction_source(const Panel& panel, const std::string& country,
                                                       Deduction d, Method m,
                                                       GapPolicy gap = GapPolicy::none) {
  switch (m) {
    case Method::measured: {
      const auto* s = detail::find_series(panel, country, to_string(d));
      if (!s) return std::nullopt;
      return fill_gaps(*s, gap);
    }
    case Method::rollup: {
      SecondaryBundle bundle{d, {}};
      for (const auto& name : secondary_vocabulary(d))
        if (const auto* s = detail::find_series(panel, country, secondary_indicator_id(d, name)))
          bundle.components.push_back(fill_gaps(*s, gap));
      // Unknown components under this prefix are a vocabulary error.
      const auto prefix = std::string(to_string(d)) + ".";
      for (const auto& [key, s] : panel.series())
        if (key.country == country && key.indicator.rfind(prefix, 0) == 0) {
          const auto name = key.indicator.substr(prefix.size());
          const auto& vocab = secondary_vocabulary(d);
          if (std::find(vocab.begin(), vocab.end(), name) == vocab.end())
            throw InputError("ggdp_accounting", "unknown " + std::string(to_string(d)) +
                                                    " component '" + name + "'");
        }
      if (bundle.components.empty()) return std::nullopt;
      auto common = detail::year_set(bundle.components.front());
      for (const auto& c : bundle.components) {
        std::set<int> keep;
        for (int y : c.years())
          if (common.count(y)) keep.insert(y);
        common = std::move(keep);
      }
      for (auto& c : bundle.components) c = detail::restrict_to(c, common);
      return rollup(bundle);
    }
    case Method::delta_gni: {
      if (d != Deduction::rdm) return std::nullopt;
      const auto* gni = detail::find_series(panel, country, kGni);
      const auto* delta = detail::find_series(panel, country, kDeltaGni);
      if (!gni || !delta) return std::nullopt;
      const auto g = fill_gaps(*gni, gap);
      const auto dl = fill_gaps(*delta, gap);
      std::set<int> common;
      for (int y : g.years())
        if (dl.at(y)) common.insert(y);
      return rdm_from_gni(detail::restrict_to(g, common), detail::restrict_to(dl, common));
    }
    default:
      return std::nullopt;
  }
}

/// Builds one country's account. Each year takes every deduction from the
/// first source in the strategy's order that covers that year; bridges
/// apply to the RDM resolved for the same year.
inline GgdpAccount build_account(const Panel& panel, const std::string& country,
                                 const AccountStrategy& strategy = {}) {
  strategy.check();
  const auto* gdp_raw = detail::find_series(panel, country, kGdp);
  if (!gdp_raw) throw InputError("ggdp_accounting", "no GDP series for " + country);
  const auto gdp = fill_gaps(*gdp_raw, strategy.gap_policy);

  GgdpAccount acc{country, gdp.unit, {}, {}};

  std::map<std::pair<Deduction, Method>, std::optional<IndicatorSeries>> sources;
  for (auto d : {Deduction::rdm, Deduction::epcl, Deduction::epdl})
    for (auto m : strategy.order(d)) {
      auto s = deduction_source(panel, country, d, m, strategy.gap_policy);
      if (s && m != Method::delta_gni) detail::require_unit(*s, gdp.unit);
      if (s && m == Method::delta_gni) detail::require_unit(*detail::find_series(panel, country, kGni), gdp.unit);
      sources[{d, m}] = std::move(s);
    }

  auto resolve = [&](Deduction d, int year, std::optional<double> rdm_value,
                     Method& method) -> double {
    for (auto m : strategy.order(d)) {
      if (m == Method::bridge_eq8 || m == Method::bridge_eq9) {
        if (!rdm_value) continue;
        method = m;
        const auto& model = m == Method::bridge_eq8 ? strategy.epcl_model : strategy.epdl_model;
        return detail::bridge_value(*rdm_value, model, to_string(d), year, country, acc.warnings);
      }
      const auto& s = sources[{d, m}];
      if (!s) continue;
      if (auto v = s->at(year)) {
        method = m;
        return *v;
      }
    }
    throw InputError("ggdp_accounting", "unresolvable deduction " + std::string(to_string(d)) +
                                            " for " + country + " in " + std::to_string(year));
  };

  for (const auto& o : gdp.observations) {
    if (strategy.years && !strategy.years->contains(o.year)) continue;
    AccountRow methods;
    const double rdm = resolve(Deduction::rdm, o.year, std::nullopt, methods.rdm_method);
    const double epcl = resolve(Deduction::epcl, o.year, rdm, methods.epcl_method);
    const double epdl = resolve(Deduction::epdl, o.year, rdm, methods.epdl_method);
    auto row = make_row(o.year, o.value, rdm, epcl, epdl, country, acc.warnings);
    row.rdm_method = methods.rdm_method;
    row.epcl_method = methods.epcl_method;
    row.epdl_method = methods.epdl_method;
    acc.rows.push_back(row);
  }
  if (acc.rows.empty())
    throw InputError("ggdp_accounting", "no GDP observations for " + country + " in the year range");
  return acc;
}

/// Refits the EPCL or EPDL bridge on RDM pooled across countries, using
/// only non-bridge sources so the fit never feeds on its own output.
inline LinearModel refit_bridge(const Panel& panel, const std::vector<std::string>& countries,
                                Deduction target, GapPolicy gap = GapPolicy::none) {
  if (target == Deduction::rdm)
    throw InputError("ggdp_accounting", "bridges estimate EPCL or EPDL, not RDM");
  std::vector<double> xs, ys;
  for (const auto& c : countries) {
    std::optional<IndicatorSeries> rdm;
    for (auto m : {Method::measured, Method::rollup, Method::delta_gni})
      if ((rdm = deduction_source(panel, c, Deduction::rdm, m, gap))) break;
    std::optional<IndicatorSeries> y;
    for (auto m : {Method::measured, Method::rollup})
      if ((y = deduction_source(panel, c, target, m, gap))) break;
    if (!rdm || !y) continue;
    for (const auto& o : rdm->observations)
      if (auto v = y->at(o.year)) {
        xs.push_back(o.value);
        ys.push_back(*v);
      }
  }
  if (xs.size() < 2)
    throw InputError("ggdp_accounting", std::string("refit needs at least 2 (RDM, ") +
                                            to_string(target) + ") pairs, found " +
                                            std::to_string(xs.size()));
  return ols_fit(xs, ys);
}

}  // namespace ggdp
