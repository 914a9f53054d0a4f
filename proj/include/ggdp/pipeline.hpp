#pragma once

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ggdp/accounting.hpp"
#include "ggdp/error.hpp"
#include "ggdp/fetch.hpp"
#include "ggdp/gm11.hpp"
#include "ggdp/grey_relational.hpp"
#include "ggdp/json_io.hpp"
#include "ggdp/panel.hpp"
#include "ggdp/panel_csv.hpp"
#include "ggdp/panel_json.hpp"
#include "ggdp/report.hpp"
#include "ggdp/report_schema.hpp"
#include "ggdp/schema_check.hpp"
#include "ggdp/stats_fit.hpp"
#include "ggdp/svg.hpp"

namespace ggdp {

inline constexpr const char* kDefaultApiBase = "https://api.worldbank.org/v2";
inline constexpr const char* kApiBaseEnv = "GGDP_API_BASE";

enum class InputFormat { csv_long, csv_wide, panel_json };

struct InputSpec {
  std::string path;
  InputFormat format = InputFormat::csv_long;
};

/// One remote series to pull: `remote` is the provider's indicator code,
/// `indicator` the local id it is stored under.
struct FetchSpec {
  std::string country;
  std::string indicator;
  std::string remote;
  double scale = 1.0;
  std::optional<std::string> unit;
};

struct RunConfig {
  std::vector<InputSpec> inputs;
  std::vector<FetchSpec> fetch;
  std::string api_base = kDefaultApiBase;
  std::vector<std::string> countries;  // empty: every country holding GDP
  std::optional<YearSpan> years;
  GapPolicy gap_policy = GapPolicy::none;

  GraOptions gra;
  std::string gra_parent = kGgdp;
  std::vector<std::string> gra_children{"GDP", "RDM", "EPCL", "EPDL"};
  bool gra_secondary = true;

  std::size_t horizon = kDefaultHorizon;
  bool shift_nonpositive = false;
  std::vector<std::string> forecast_indicators{kGgdp};

  std::string bridge = "paper";  // "paper" | "refit"
  std::vector<std::string> impact_indicators{"SURFACE_TEMP", "CO2_EMISSIONS"};
  std::vector<std::pair<std::string, std::string>> correlation_pairs{{kGgdp, "CPI"}};
  TrendMode trend_mode = TrendMode::levels;

  std::string out_dir = "out";
  bool full = false;

  void check() const {
    if (years && years->last < years->first) throw InputError("reporting_cli", "empty year range");
    gra.check();
    if (bridge != "paper" && bridge != "refit")
      throw InputError("reporting_cli", "bridge must be 'paper' or 'refit', got '" + bridge + "'");
  }
};

namespace detail {

inline const char* to_string(InputFormat f) {
  switch (f) {
    case InputFormat::csv_long: return "long";
    case InputFormat::csv_wide: return "wide";
    case InputFormat::panel_json: return "json";
  }
  return "";
}

inline InputFormat input_format_from(const std::string& s, const std::string& path) {
  if (s == "long") return InputFormat::csv_long;
  if (s == "wide") return InputFormat::csv_wide;
  if (s == "json") return InputFormat::panel_json;
  if (s.empty())
    return std::filesystem::path(path).extension() == ".json" ? InputFormat::panel_json
                                                               : InputFormat::csv_long;
  throw InputError("reporting_cli", "unknown input format '" + s + "'");
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  try {
    return j[key].get<T>();
  } catch (const json::exception&) {
    throw InputError("reporting_cli", std::string("config field '") + key + "' has the wrong type");
  }
}

}  // namespace detail

/// Relative input paths resolve against `base_dir` (the config file's
/// directory).
inline RunConfig config_from_json(const json& j, const std::filesystem::path& base_dir = {}) {
  using detail::get_or;
  if (!j.is_object()) throw InputError("reporting_cli", "config must be a JSON object");
  static const std::set<std::string> known = {
      "inputs", "fetch", "api_base", "countries", "years", "gap_policy", "gra", "forecast",
      "bridge", "impact", "correlations", "out", "full"};
  for (const auto& [k, _] : j.items())
    if (!known.count(k)) throw InputError("reporting_cli", "unknown config field '" + k + "'");

  RunConfig c;
  for (const auto& in : j.value("inputs", json::array())) {
    const auto path = in.is_string() ? in.get<std::string>() : get_or<std::string>(in, "path", "");
    if (path.empty()) throw InputError("reporting_cli", "input without path");
    const auto fmt = in.is_string() ? std::string() : get_or<std::string>(in, "format", "");
    auto p = std::filesystem::path(path);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    c.inputs.push_back({p.lexically_normal().string(), detail::input_format_from(fmt, path)});
  }
  for (const auto& f : j.value("fetch", json::array())) {
    FetchSpec s;
    s.country = get_or<std::string>(f, "country", "");
    s.indicator = get_or<std::string>(f, "indicator", "");
    s.remote = get_or<std::string>(f, "remote", "");
    s.scale = get_or<double>(f, "scale", 1.0);
    if (f.contains("unit")) s.unit = get_or<std::string>(f, "unit", "");
    if (s.country.empty() || s.indicator.empty() || s.remote.empty())
      throw InputError("reporting_cli", "fetch entries need country, indicator and remote");
    c.fetch.push_back(std::move(s));
  }
  c.api_base = get_or<std::string>(j, "api_base", c.api_base);
  c.countries = get_or<std::vector<std::string>>(j, "countries", {});
  if (j.contains("years")) {
    const auto& y = j["years"];
    c.years = YearSpan{get_or<int>(y, "from", 0), get_or<int>(y, "to", 0)};
  }
  const auto gap = get_or<std::string>(j, "gap_policy", "none");
  if (gap == "none") c.gap_policy = GapPolicy::none;
  else if (gap == "linear_interior") c.gap_policy = GapPolicy::linear_interior;
  else throw InputError("reporting_cli", "unknown gap_policy '" + gap + "'");

  if (j.contains("gra")) {
    const auto& g = j["gra"];
    c.gra.rho = get_or<double>(g, "rho", c.gra.rho);
    c.gra.normalize = get_or<bool>(g, "normalize", c.gra.normalize);
    c.gra_parent = get_or<std::string>(g, "parent", c.gra_parent);
    c.gra_children = get_or<std::vector<std::string>>(g, "children", c.gra_children);
    c.gra_secondary = get_or<bool>(g, "secondary", c.gra_secondary);
  }
  if (j.contains("forecast")) {
    const auto& f = j["forecast"];
    const auto h = get_or<long long>(f, "horizon", static_cast<long long>(c.horizon));
    if (h < 0) throw InputError("reporting_cli", "horizon must be >= 0");
    c.horizon = static_cast<std::size_t>(h);
    c.shift_nonpositive = get_or<bool>(f, "shift", c.shift_nonpositive);
    c.forecast_indicators = get_or<std::vector<std::string>>(f, "indicators", c.forecast_indicators);
  }
  c.bridge = get_or<std::string>(j, "bridge", c.bridge);
  if (j.contains("impact"))
    c.impact_indicators = get_or<std::vector<std::string>>(j["impact"], "indicators", c.impact_indicators);
  if (j.contains("correlations")) {
    const auto& cj = j["correlations"];
    if (cj.contains("pairs")) {
      c.correlation_pairs.clear();
      for (const auto& p : cj["pairs"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
          throw InputError("reporting_cli", "correlation pairs must be [x, y] string pairs");
        c.correlation_pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
      }
    }
    const auto mode = get_or<std::string>(cj, "mode", "levels");
    if (mode == "levels") c.trend_mode = TrendMode::levels;
    else if (mode == "differences") c.trend_mode = TrendMode::differences;
    else throw InputError("reporting_cli", "unknown correlation mode '" + mode + "'");
  }
  c.out_dir = get_or<std::string>(j, "out", c.out_dir);
  c.full = get_or<bool>(j, "full", c.full);
  c.check();
  return c;
}

inline RunConfig load_config(const std::string& path) {
  const auto text = read_text_file(path, "reporting_cli");
  return config_from_json(parse_json(text, "reporting_cli"),
                          std::filesystem::path(path).parent_path());
}

/// The effective configuration, echoed into reports. The output directory
/// is left out so identical runs into different directories match.
inline json config_to_json(const RunConfig& c) {
  json inputs = json::array();
  for (const auto& in : c.inputs)
    inputs.push_back({{"path", in.path}, {"format", detail::to_string(in.format)}});
  json fetch = json::array();
  for (const auto& f : c.fetch) {
    json fj = {{"country", f.country}, {"indicator", f.indicator}, {"remote", f.remote}, {"scale", f.scale}};
    if (f.unit) fj["unit"] = *f.unit;
    fetch.push_back(std::move(fj));
  }
  json pairs = json::array();
  for (const auto& [x, y] : c.correlation_pairs) pairs.push_back({x, y});
  json j = {{"inputs", inputs},
            {"fetch", fetch},
            {"api_base", c.api_base},
            {"countries", c.countries},
            {"gap_policy", c.gap_policy == GapPolicy::none ? "none" : "linear_interior"},
            {"gra",
             {{"rho", c.gra.rho},
              {"normalize", c.gra.normalize},
              {"parent", c.gra_parent},
              {"children", c.gra_children},
              {"secondary", c.gra_secondary}}},
            {"forecast",
             {{"horizon", c.horizon}, {"shift", c.shift_nonpositive}, {"indicators", c.forecast_indicators}}},
            {"bridge", c.bridge},
            {"impact", {{"indicators", c.impact_indicators}}},
            {"correlations", {{"pairs", pairs}, {"mode", to_string(c.trend_mode)}}},
            {"full", c.full}};
  if (c.years) j["years"] = {{"from", c.years->first}, {"to", c.years->last}};
  return j;
}

// ---------------------------------------------------------------------------
// Output staging

/// Files produced by a command, written all-or-nothing by commit().
struct OutputSet {
  std::map<std::string, std::string> files;  // name relative to out_dir -> contents

  /// Writes every file to a temporary name, then renames them into place.
  /// On failure the temporaries are removed and nothing is renamed.
  void commit(const std::filesystem::path& out_dir) const {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("reporting_cli", "cannot create " + out_dir.string() + ": " + ec.message());
    std::vector<std::pair<fs::path, fs::path>> staged;
    auto cleanup = [&] {
      for (const auto& [tmp, _] : staged) fs::remove(tmp, ec);
    };
    for (const auto& [name, contents] : files) {
      const auto dest = out_dir / name;
      const auto tmp = out_dir / ("." + name + ".tmp");
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      staged.emplace_back(tmp, dest);
      f << contents;
      f.close();
      if (!f) {
        cleanup();
        throw IoError("reporting_cli", "cannot write " + tmp.string());
      }
    }
    for (const auto& [tmp, dest] : staged) {
      fs::rename(tmp, dest, ec);
      if (ec) {
        cleanup();
        throw IoError("reporting_cli", "cannot rename into " + dest.string() + ": " + ec.message());
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Pipeline stages

inline Panel load_inputs(const RunConfig& config) {
  if (config.inputs.empty()) throw InputError("reporting_cli", "no input panels configured");
  Panel merged("merged");
  std::string provenance;
  for (const auto& in : config.inputs) {
    Panel p;
    switch (in.format) {
      case InputFormat::csv_long: p = load_csv(in.path, CsvLayout::long_format); break;
      case InputFormat::csv_wide: p = load_csv(in.path, CsvLayout::wide); break;
      case InputFormat::panel_json: p = load_panel(read_text_file(in.path, "panel_store")); break;
    }
    for (const auto& [_, s] : p.series()) merged.add(s);
    provenance += (provenance.empty() ? "" : "; ") + p.provenance();
  }
  merged.set_provenance(provenance);
  return merged;
}

/// Countries to run: the configured list (each must hold GDP), else every
/// country in the panel with a GDP series.
inline std::vector<std::string> resolve_countries(const Panel& panel, const RunConfig& config) {
  std::vector<std::string> out;
  if (config.countries.empty()) {
    for (const auto& c : panel.countries())
      if (panel.contains({c, kGdp})) out.push_back(c);
    if (out.empty()) throw InputError("reporting_cli", "panel holds no GDP series");
    return out;
  }
  for (const auto& c : config.countries) {
    if (!panel.contains({c, kGdp})) throw InputError("reporting_cli", "unknown country " + c + " (no GDP series)");
    out.push_back(c);
  }
  return out;
}

/// Runs `fn` for every country concurrently and returns results in input
/// order. The first exception (in input order) propagates.
template <typename Fn>
auto map_countries(const std::vector<std::string>& countries, Fn fn) {
  using R = decltype(fn(countries.front()));
  std::vector<std::future<R>> futures;
  for (const auto& c : countries) futures.push_back(std::async(std::launch::async, fn, c));
  std::vector<R> out;
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

inline std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) now = static_cast<std::time_t>(std::atoll(epoch));
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Workspace {
  Panel panel;
  std::vector<std::string> countries;
  std::vector<GgdpAccount> accounts;
  Report report;

  const GgdpAccount& account(const std::string& country) const {
    for (const auto& a : accounts)
      if (a.country == country) return a;
    throw InputError("reporting_cli", "no account for " + country);
  }

  /// Account columns come from the account, anything else from the panel.
  std::optional<IndicatorSeries> series(const std::string& country, const std::string& indicator,
                                        GapPolicy gap) const {
    static const std::set<std::string> account_columns = {"GDP", "RDM", "EPCL", "EPDL", "GGDP"};
    if (account_columns.count(indicator)) return account(country).series(indicator);
    if (const auto* s = panel.find({country, indicator})) return fill_gaps(*s, gap);
    return std::nullopt;
  }
};

/// Loads and validates inputs, resolves bridges and builds every account.
inline Workspace prepare(const RunConfig& config, const std::string& command) {
  config.check();
  Workspace ws;
  ws.panel = load_inputs(config);
  const auto validation = validate(ws.panel);
  validation.throw_if_errors();
  ws.countries = resolve_countries(ws.panel, config);

  AccountStrategy strategy;
  strategy.years = config.years;
  strategy.gap_policy = config.gap_policy;
  ws.report.bridges.source = config.bridge;
  if (config.bridge == "refit") {
    strategy.epcl_model = refit_bridge(ws.panel, ws.panel.countries(), Deduction::epcl, config.gap_policy);
    strategy.epdl_model = refit_bridge(ws.panel, ws.panel.countries(), Deduction::epdl, config.gap_policy);
  }
  ws.report.bridges.epcl = strategy.epcl_model;
  ws.report.bridges.epdl = strategy.epdl_model;

  ws.accounts = map_countries(ws.countries, [&](const std::string& c) {
    return build_account(ws.panel, c, strategy);
  });

  ws.report.command = command;
  ws.report.timestamp = utc_timestamp();
  ws.report.config = config_to_json(config);
  for (const auto& i : validation.issues)
    ws.report.warnings.push_back(
        {"panel_store", i.key + (i.year ? " " + std::to_string(*i.year) : "") + ": " + i.message});
  for (const auto& a : ws.accounts)
    ws.report.warnings.insert(ws.report.warnings.end(), a.warnings.begin(), a.warnings.end());
  ws.report.accounts = ws.accounts;
  return ws;
}

namespace detail {

inline std::vector<double> to_doubles(const std::vector<int>& v) { return {v.begin(), v.end()}; }

inline void self_check(const json& report) {
  static const SchemaChecker checker(json::parse(kReportSchema));
  const auto errors = checker.check(report);
  if (!errors.empty())
    throw ComputationError("reporting_cli", "report fails its schema: " + errors.front() + " (" +
                                                std::to_string(errors.size()) + " issue(s))");
}

}  // namespace detail

/// Serializes and schema-checks the report into the output set.
inline void emit_report(const Report& report, bool full, OutputSet& out) {
  const auto j = report_to_json(report, full);
  detail::self_check(j);
  out.files["report.json"] = dump_json(j);
}

inline std::string ggdp_svg(const GgdpAccount& acc) {
  PlotSpec spec;
  spec.title = acc.country + ": GDP vs GGDP";
  spec.x_label = "year";
  spec.y_label = acc.unit;
  spec.kind = PlotKind::line;
  PlotSeries gdp{"GDP", {}, {}, false}, ggdp{"GGDP", {}, {}, false};
  for (const auto& r : acc.rows) {
    gdp.x.push_back(r.year);
    gdp.y.push_back(r.gdp);
    ggdp.x.push_back(r.year);
    ggdp.y.push_back(r.ggdp);
  }
  spec.series = {gdp, ggdp};
  return render_svg(spec);
}

inline OutputSet cmd_compute(const RunConfig& config) {
  auto ws = prepare(config, "compute");
  OutputSet out;
  Panel accounts_panel("ggdp accounts");
  for (const auto& acc : ws.accounts) {
    for (const auto* ind : {"GDP", "RDM", "EPCL", "EPDL", "GGDP"}) accounts_panel.add(acc.series(ind));
    out.files["ggdp_" + acc.country + ".svg"] = ggdp_svg(acc);
  }
  out.files["ggdp.csv"] = to_long_csv(accounts_panel);
  emit_report(ws.report, config.full, out);
  return out;
}

namespace detail {

inline std::string gra_svg(const GraEntry& e) {
  PlotSpec spec;
  spec.title = e.country + ": grey relational grades vs " + e.result.parent_label;
  spec.x_label = "indicator";
  spec.y_label = "grade";
  spec.kind = PlotKind::bar;
  PlotSeries s{"grade", {}, {}, false};
  for (const auto& c : e.result.ranking()) {
    spec.categories.push_back(c.label);
    s.y.push_back(c.grade);
  }
  spec.series = {s};
  return render_svg(spec);
}

/// Runs GRA of `parent` against `children` over their common years.
inline std::optional<GraEntry> run_gra(const std::string& country, const std::string& analysis,
                                       const IndicatorSeries& parent,
                                       std::vector<IndicatorSeries> children, const GraOptions& opts,
                                       std::vector<Warning>& warnings) {
  auto common = year_set(parent);
  for (const auto& c : children) {
    std::set<int> keep;
    for (int y : c.years())
      if (common.count(y)) keep.insert(y);
    common = std::move(keep);
  }
  if (common.size() < 2) {
    warnings.push_back({"grey_relational", country + " " + analysis + ": fewer than 2 common years, skipped"});
    return std::nullopt;
  }
  const auto p = restrict_to(parent, common);
  for (auto& c : children) c = restrict_to(c, common);
  return GraEntry{country, analysis, p.years(), gra(p, children, opts)};
}

}  // namespace detail

inline OutputSet cmd_gra(const RunConfig& config) {
  auto ws = prepare(config, "gra");
  OutputSet out;
  for (const auto& country : ws.countries) {
    const auto parent = ws.series(country, config.gra_parent, config.gap_policy);
    if (!parent) throw InputError("reporting_cli", "GRA parent " + config.gra_parent + " missing for " + country);
    std::vector<IndicatorSeries> children;
    for (const auto& ind : config.gra_children) {
      auto s = ws.series(country, ind, config.gap_policy);
      if (!s) throw InputError("reporting_cli", "GRA child " + ind + " missing for " + country);
      children.push_back(std::move(*s));
    }
    if (auto e = detail::run_gra(country, "primary", *parent, children, config.gra, ws.report.warnings)) {
      out.files["gra_" + country + ".svg"] = detail::gra_svg(*e);
      ws.report.gra.push_back(std::move(*e));
    }

    if (!config.gra_secondary) continue;
    const auto& acc = ws.account(country);
    for (auto d : {Deduction::rdm, Deduction::epcl, Deduction::epdl}) {
      std::vector<IndicatorSeries> components;
      for (const auto& name : secondary_vocabulary(d))
        if (auto s = ws.series(country, secondary_indicator_id(d, name), config.gap_policy)) {
          s->indicator = name;
          components.push_back(std::move(*s));
        }
      if (components.empty()) continue;
      if (auto e = detail::run_gra(country, to_string(d), acc.series(to_string(d)), components, config.gra,
                                   ws.report.warnings)) {
        out.files["gra_" + country + "_" + to_string(d) + ".svg"] = detail::gra_svg(*e);
        ws.report.gra.push_back(std::move(*e));
      }
    }
  }
  emit_report(ws.report, config.full, out);
  return out;
}

inline std::string forecast_svg(const ForecastEntry& e) {
  PlotSpec spec;
  spec.title = e.country + ": " + e.indicator + " GM(1,1) forecast";
  spec.x_label = "year";
  spec.y_label = e.unit;
  spec.kind = PlotKind::line;
  PlotSeries observed{"observed", detail::to_doubles(e.years), e.observed, true};
  PlotSeries curve{"fitted + forecast", detail::to_doubles(e.years), e.forecast.model.fitted, false};
  for (std::size_t h = 0; h < e.forecast.values.size(); ++h) {
    curve.x.push_back(e.forecast.years[h]);
    curve.y.push_back(e.forecast.values[h]);
  }
  spec.series = {observed, curve};
  if (!e.years.empty()) spec.marker_x = e.years.back() + 0.5;
  return render_svg(spec);
}

inline OutputSet cmd_forecast(const RunConfig& config) {
  auto ws = prepare(config, "forecast");
  OutputSet out;
  const Gm11Options opts{config.shift_nonpositive};
  for (const auto& country : ws.countries) {
    for (const auto& ind : config.forecast_indicators) {
      const auto s = ws.series(country, ind, config.gap_policy);
      if (!s) {
        ws.report.warnings.push_back({"gm11_forecast", country + "/" + ind + " not in panel, skipped"});
        continue;
      }
      ForecastEntry e{country, ind, s->unit, s->years(), s->values(),
                      forecast_series(*s, config.horizon, opts), {}};
      e.diagnostics = check_applicability(e.observed, opts);
      for (const auto& d : e.diagnostics)
        ws.report.warnings.push_back({"gm11_forecast", country + "/" + ind + ": " + d.message});
      out.files["forecast_" + country + "_" + ind + ".svg"] = forecast_svg(e);
      ws.report.forecasts.push_back(std::move(e));
    }
    for (const auto& [xi, yi] : config.correlation_pairs) {
      const auto x = ws.series(country, xi, config.gap_policy);
      const auto y = ws.series(country, yi, config.gap_policy);
      if (!x || !y) {
        ws.report.warnings.push_back(
            {"stats_fit", country + ": correlation " + xi + " vs " + yi + " skipped, series missing"});
        continue;
      }
      ws.report.correlations.push_back({country, xi, yi, config.trend_mode, trend_correlation(*x, *y, config.trend_mode)});
    }
  }
  ws.report.notes.push_back(std::string("trend correlations are Pearson r on ") +
                            (config.trend_mode == TrendMode::levels ? "level series" : "first differences") +
                            " over common years; 'trend' admits both readings (set correlations.mode)");
  emit_report(ws.report, config.full, out);
  return out;
}

inline OutputSet cmd_impact(const RunConfig& config) {
  auto ws = prepare(config, "impact");
  OutputSet out;
  for (const auto& country : ws.countries) {
    PlotSpec spec;
    spec.title = country + ": year-over-year change";
    spec.x_label = "year";
    spec.y_label = "percent change (each series scaled to its own range)";
    spec.kind = PlotKind::overlay;
    std::vector<std::string> indicators = config.impact_indicators;
    indicators.push_back(kGgdp);
    for (const auto& ind : indicators) {
      const auto s = ws.series(country, ind, config.gap_policy);
      if (!s) {
        ws.report.warnings.push_back({"stats_fit", country + "/" + ind + " not in panel, skipped"});
        continue;
      }
      ImpactEntry e{country, ind, climate_impact_score(*s)};
      PlotSeries ps{ind, {}, {}, false};
      for (const auto& o : e.score.pct_changes.observations) {
        ps.x.push_back(o.year);
        ps.y.push_back(o.value);
      }
      spec.series.push_back(std::move(ps));
      ws.report.impact.push_back(std::move(e));
    }
    if (!spec.series.empty()) out.files["impact_" + country + ".svg"] = render_svg(spec);
  }
  ws.report.notes.push_back("impact score = mean absolute year-over-year percent change; closer to 0 is better");
  emit_report(ws.report, config.full, out);
  return out;
}

/// Pulls every configured series through `get` and packages the panel as
/// long CSV plus panel JSON.
inline OutputSet cmd_fetch(const RunConfig& config, const HttpGet& get, const FetchOptions& opts = {}) {
  config.check();
  if (config.fetch.empty()) throw InputError("reporting_cli", "no fetch entries configured");
  if (!config.years) throw InputError("reporting_cli", "fetch needs a year range");
  std::vector<std::future<IndicatorSeries>> jobs;
  for (const auto& spec : config.fetch)
    jobs.push_back(std::async(std::launch::async, [&, spec] {
      auto s = fetch_indicator(get, config.api_base, spec.country, spec.remote, *config.years, opts);
      s.indicator = spec.indicator;
      if (spec.unit) s.unit = *spec.unit;
      for (auto& o : s.observations) o.value *= spec.scale;
      return s;
    }));
  Panel panel("fetch:" + config.api_base);
  for (auto& j : jobs) panel.add(j.get());
  OutputSet out;
  out.files["panel.csv"] = to_long_csv(panel);
  out.files["panel.json"] = save_panel(panel);
  return out;
}

inline std::string api_base_from_env(const std::string& fallback) {
  const char* env = std::getenv(kApiBaseEnv);
  return env && *env ? std::string(env) : fallback;
}

inline json validation_to_json(const ValidationReport& r) {
  json issues = json::array();
  for (const auto& i : r.issues) {
    json ij = {{"severity", to_string(i.severity)}, {"key", i.key}, {"message", i.message}};
    ij["year"] = i.year ? json(*i.year) : json(nullptr);
    issues.push_back(std::move(ij));
  }
  return {{"ok", r.ok()}, {"issues", issues}};
}

}  // namespace ggdp
