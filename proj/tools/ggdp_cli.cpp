#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ggdp/http_transport.hpp"
#include "ggdp/pipeline.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string out;
  std::vector<std::string> inputs;
  std::vector<std::string> countries;
  std::optional<double> rho;
  bool no_normalize = false;
  std::optional<long long> horizon;
  std::string bridge;
  bool full = false;
};

ggdp::RunConfig resolve_config(const Overrides& o) {
  ggdp::RunConfig c;
  if (!o.config.empty()) c = ggdp::load_config(o.config);
  for (const auto& in : o.inputs)
    c.inputs.push_back({in, std::filesystem::path(in).extension() == ".json"
                                ? ggdp::InputFormat::panel_json
                                : ggdp::InputFormat::csv_long});
  if (!o.countries.empty()) c.countries = o.countries;
  if (!o.out.empty()) c.out_dir = o.out;
  if (o.rho) c.gra.rho = *o.rho;
  if (o.no_normalize) c.gra.normalize = false;
  if (o.horizon) {
    if (*o.horizon < 0) throw ggdp::InputError("reporting_cli", "--horizon must be >= 0");
    c.horizon = static_cast<std::size_t>(*o.horizon);
  }
  if (!o.bridge.empty()) c.bridge = o.bridge;
  if (o.full) c.full = true;
  c.api_base = ggdp::api_base_from_env(c.api_base);
  c.check();
  return c;
}

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "Run configuration (JSON)");
  sub->add_option("--out", o.out, "Output directory");
  sub->add_option("--input", o.inputs, "Extra input panel (.csv long layout or .json)");
  sub->add_option("--country", o.countries, "Restrict to these ISO alpha-3 codes");
}

void add_analysis(CLI::App* sub, Overrides& o) {
  sub->add_option("--rho", o.rho, "GRA resolution coefficient in (0,1]");
  sub->add_flag("--no-normalize", o.no_normalize, "Skip column-mean normalization before GRA");
  sub->add_option("--horizon", o.horizon, "GM(1,1) forecast steps");
  sub->add_option("--bridge", o.bridge, "EPCL/EPDL bridge coefficients")
      ->check(CLI::IsMember({"paper", "refit"}));
  sub->add_flag("--full", o.full, "Include full GRA matrices in the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Green GDP accounting, grey relational analysis and GM(1,1) forecasting"};
  app.require_subcommand(1);
  Overrides o;

  auto* compute = app.add_subcommand("compute", "Build GGDP accounts, ggdp.csv and per-country SVGs");
  auto* gra = app.add_subcommand("gra", "Grey relational grades against GGDP and deductions");
  auto* forecast = app.add_subcommand("forecast", "GM(1,1) forecasts and trend correlations");
  auto* impact = app.add_subcommand("impact", "Year-over-year change scores for climate indicators");
  auto* fetch = app.add_subcommand("fetch", "Download configured series from a World Bank style API");
  auto* validate = app.add_subcommand("validate", "Check input panels and print the validation report");
  for (auto* sub : {compute, gra, forecast, impact, fetch, validate}) add_common(sub, o);
  for (auto* sub : {compute, gra, forecast, impact}) add_analysis(sub, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const auto config = resolve_config(o);
    if (validate->parsed()) {
      const auto report = ggdp::validate(ggdp::load_inputs(config));
      std::cout << ggdp::dump_json(ggdp::validation_to_json(report));
      return report.ok() ? 0 : 1;
    }

    ggdp::OutputSet out;
    if (compute->parsed()) out = ggdp::cmd_compute(config);
    else if (gra->parsed()) out = ggdp::cmd_gra(config);
    else if (forecast->parsed()) out = ggdp::cmd_forecast(config);
    else if (impact->parsed()) out = ggdp::cmd_impact(config);
    else if (fetch->parsed()) out = ggdp::cmd_fetch(config, ggdp::make_http_transport());
    out.commit(config.out_dir);
    for (const auto& [name, _] : out.files)
      std::cout << (std::filesystem::path(config.out_dir) / name).string() << '\n';
    return 0;
  } catch (const ggdp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: [reporting_cli] " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: [reporting_cli] " << e.what() << '\n';
    return 2;
  }
}
