#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <thread>

#include "ggdp/error.hpp"
#include "ggdp/json_io.hpp"
#include "ggdp/panel.hpp"

namespace ggdp {

struct HttpResponse {
  int status = 0;  // 0 = no response (connection failure, timeout)
  std::string body;
};

/// Performs one HTTP GET. Swappable so tests never touch the network.
using HttpGet = std::function<HttpResponse(const std::string& url)>;

struct FetchOptions {
  int retries = 2;
  std::chrono::milliseconds backoff{500};  // doubled after every retry
  int per_page = 1000;
  std::function<void(std::chrono::milliseconds)> sleep = [](std::chrono::milliseconds d) {
    std::this_thread::sleep_for(d);
  };
};

inline bool is_transient_status(int status) {
  return status == 0 || status == 429 || (status >= 500 && status <= 599);
}

inline std::string world_bank_url(const std::string& api_base, const std::string& country,
                                  const std::string& indicator_id, YearSpan years, int per_page,
                                  int page) {
  std::string base = api_base;
  while (!base.empty() && base.back() == '/') base.pop_back();
  return base + "/country/" + country + "/indicator/" + indicator_id +
         "?format=json&date=" + std::to_string(years.first) + ":" + std::to_string(years.last) +
         "&per_page=" + std::to_string(per_page) + "&page=" + std::to_string(page);
}

/// GET with up to `retries` extra attempts on transient failures.
inline HttpResponse get_with_retry(const HttpGet& get, const std::string& url,
                                   const FetchOptions& opts) {
  auto delay = opts.backoff;
  for (int attempt = 0;; ++attempt) {
    HttpResponse res = get(url);
    if (res.status >= 200 && res.status < 300) return res;
    if (!is_transient_status(res.status) || attempt >= opts.retries)
      throw HttpError(res.status, url);
    if (opts.sleep) opts.sleep(delay);
    delay *= 2;
  }
}

namespace detail {

inline int json_int(const json& v, const std::string& what) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      const int out = std::stoi(v.get<std::string>(), &used);
      if (used == v.get<std::string>().size()) return out;
    } catch (const std::exception&) {
    }
  }
  throw IoError("panel_store", "malformed response: bad " + what);
}

/// "GDP (current US$)" -> "current US$"; names without a trailing
/// parenthetical are used whole.
inline std::string unit_from_indicator_name(const std::string& name) {
  const auto close = name.rfind(')');
  const auto open = name.rfind('(');
  if (close != std::string::npos && open != std::string::npos && open < close &&
      close == name.find_last_not_of(' ')) {
    auto inner = name.substr(open + 1, close - open - 1);
    if (!inner.empty()) return inner;
  }
  return name;
}

}  // namespace detail

/// Fetches one indicator for one country from a World Bank v2 style API
/// (`[ {page, pages, ...}, [ {date, value, indicator{id,value}}, ... ] ]`),
/// following pagination. Null values are skipped.
inline IndicatorSeries fetch_indicator(const HttpGet& get, const std::string& api_base,
                                       const std::string& country, const std::string& indicator_id,
                                       YearSpan years, const FetchOptions& opts = {}) {
  std::map<int, double> cells;
  std::string unit;
  int pages = 1;
  for (int page = 1; page <= pages; ++page) {
    const auto url = world_bank_url(api_base, country, indicator_id, years, opts.per_page, page);
    const auto res = get_with_retry(get, url, opts);

    json doc;
    try {
      doc = json::parse(res.body);
    } catch (const json::parse_error& e) {
      throw IoError("panel_store", "malformed JSON from " + url + ": " + e.what());
    }
    if (!doc.is_array() || doc.empty() || !doc[0].is_object())
      throw IoError("panel_store", "malformed response from " + url + ": expected [metadata, data]");
    if (doc[0].contains("message"))
      throw IoError("panel_store", "remote API error from " + url + ": " + doc[0]["message"].dump());
    if (!doc[0].contains("pages")) throw IoError("panel_store", "malformed response: missing pages");
    pages = detail::json_int(doc[0]["pages"], "pages");

    if (doc.size() < 2 || doc[1].is_null()) continue;
    if (!doc[1].is_array()) throw IoError("panel_store", "malformed response: data is not a list");
    for (const auto& row : doc[1]) {
      if (!row.is_object() || !row.contains("date") || !row.contains("value"))
        throw IoError("panel_store", "malformed response: observation without date/value");
      if (row["value"].is_null()) continue;
      if (!row["value"].is_number())
        throw IoError("panel_store", "malformed response: non-numeric value");
      const int year = detail::json_int(row["date"], "date");
      if (!years.contains(year)) continue;
      if (unit.empty() && row.contains("indicator") && row["indicator"].is_object() &&
          row["indicator"].contains("value") && row["indicator"]["value"].is_string())
        unit = detail::unit_from_indicator_name(row["indicator"]["value"].get<std::string>());
      if (!cells.emplace(year, row["value"].get<double>()).second)
        throw IoError("panel_store", "malformed response: year " + std::to_string(year) +
                                         " returned twice");
    }
  }
  if (cells.empty())
    throw IoError("panel_store", "zero observations returned for " + country + "/" + indicator_id);

  IndicatorSeries s{country, indicator_id, unit.empty() ? indicator_id : unit, {}};
  for (const auto& [y, v] : cells) s.observations.push_back({y, v});
  return s;
}

}  // namespace ggdp
