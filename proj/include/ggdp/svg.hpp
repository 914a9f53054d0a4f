#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "ggdp/error.hpp"

namespace ggdp {

enum class PlotKind { line, bar, overlay };

struct PlotSeries {
  std::string label;
  std::vector<double> x;  // ignored for bar plots
  std::vector<double> y;
  bool points = false;    // markers instead of a polyline
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  PlotKind kind = PlotKind::line;
  std::vector<PlotSeries> series;
  std::vector<std::string> categories;  // bar plots: one label per value
  std::optional<double> marker_x;       // vertical dashed line, e.g. sample/forecast boundary
};

namespace svg {

inline constexpr double kWidth = 800;
inline constexpr double kHeight = 480;
inline constexpr double kLeft = 80;
inline constexpr double kRight = 180;  // legend column
inline constexpr double kTop = 50;
inline constexpr double kBottom = 60;

inline const char* const kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                       "#66a61e", "#e6ab02", "#a6761d", "#666666"};

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

inline std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline const char* color(std::size_t i) {
  return kPalette[i % (sizeof kPalette / sizeof kPalette[0])];
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  void widen() {
    if (hi - lo <= 0.0) {
      const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.05;
      lo -= pad;
      hi += pad;
    }
  }
  double map(double v, double out_lo, double out_hi) const {
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

inline Range range_of(const std::vector<double>& v) {
  Range r{*std::min_element(v.begin(), v.end()), *std::max_element(v.begin(), v.end())};
  r.widen();
  return r;
}

}  // namespace svg

/// Standalone SVG for a line, bar, or overlay chart. Overlay charts scale
/// each series to its own range so mixed units share one frame; the legend
/// then lists each series' min and max.
inline std::string render_svg(const PlotSpec& spec) {
  using namespace svg;
  if (spec.series.empty()) throw InputError("reporting_cli", "render_svg: empty plot spec");
  for (const auto& s : spec.series) {
    if (s.y.empty()) throw InputError("reporting_cli", "render_svg: series '" + s.label + "' is empty");
    if (spec.kind != PlotKind::bar && s.x.size() != s.y.size())
      throw InputError("reporting_cli", "render_svg: x/y length mismatch in '" + s.label + "'");
    for (double v : s.y)
      if (!std::isfinite(v)) throw InputError("reporting_cli", "render_svg: non-finite value in '" + s.label + "'");
    for (double v : s.x)
      if (!std::isfinite(v)) throw InputError("reporting_cli", "render_svg: non-finite x in '" + s.label + "'");
  }

  const double px0 = kLeft, px1 = kWidth - kRight;
  const double py0 = kHeight - kBottom, py1 = kTop;  // y grows downward

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(kWidth / 2) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" +
         escape(spec.title) + "</text>\n";
  out += "<g class=\"axes\" stroke=\"black\">\n";
  out += "<line x1=\"" + num(px0) + "\" y1=\"" + num(py0) + "\" x2=\"" + num(px1) + "\" y2=\"" + num(py0) + "\"/>\n";
  out += "<line x1=\"" + num(px0) + "\" y1=\"" + num(py0) + "\" x2=\"" + num(px0) + "\" y2=\"" + num(py1) + "\"/>\n";
  out += "</g>\n";
  out += "<text x=\"" + num((px0 + px1) / 2) + "\" y=\"" + num(kHeight - 15) +
         "\" text-anchor=\"middle\" font-size=\"12\">" + escape(spec.x_label) + "</text>\n";
  out += "<text x=\"18\" y=\"" + num((py0 + py1) / 2) + "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 " +
         num((py0 + py1) / 2) + ")\">" + escape(spec.y_label) + "</text>\n";

  std::vector<std::string> legend;

  if (spec.kind == PlotKind::bar) {
    std::vector<double> all{0.0};
    std::size_t slots = 0;
    for (const auto& s : spec.series) {
      all.insert(all.end(), s.y.begin(), s.y.end());
      slots = std::max(slots, s.y.size());
    }
    const auto yr = range_of(all);
    const double group_w = (px1 - px0) / static_cast<double>(slots);
    const double bar_w = group_w * 0.8 / static_cast<double>(spec.series.size());
    const double zero = yr.map(0.0, py0, py1);
    for (std::size_t si = 0; si < spec.series.size(); ++si) {
      const auto& s = spec.series[si];
      out += "<g class=\"series\" fill=\"" + std::string(color(si)) + "\">\n";
      for (std::size_t k = 0; k < s.y.size(); ++k) {
        const double x = px0 + group_w * (static_cast<double>(k) + 0.1) + bar_w * static_cast<double>(si);
        const double y = yr.map(s.y[k], py0, py1);
        out += "<rect x=\"" + num(x) + "\" y=\"" + num(std::min(y, zero)) + "\" width=\"" + num(bar_w) +
               "\" height=\"" + num(std::abs(zero - y)) + "\"/>\n";
      }
      out += "</g>\n";
      legend.push_back(s.label);
    }
    for (std::size_t k = 0; k < spec.categories.size(); ++k) {
      const double x = px0 + group_w * (static_cast<double>(k) + 0.5);
      out += "<text x=\"" + num(x) + "\" y=\"" + num(py0 + 16) +
             "\" text-anchor=\"middle\" font-size=\"10\">" + escape(spec.categories[k]) + "</text>\n";
    }
    out += "<text x=\"" + num(px0 - 6) + "\" y=\"" + num(py1 + 4) + "\" text-anchor=\"end\" font-size=\"10\">" +
           tick(yr.hi) + "</text>\n";
    out += "<text x=\"" + num(px0 - 6) + "\" y=\"" + num(py0 + 4) + "\" text-anchor=\"end\" font-size=\"10\">" +
           tick(yr.lo) + "</text>\n";
  } else {
    std::vector<double> xs;
    for (const auto& s : spec.series) xs.insert(xs.end(), s.x.begin(), s.x.end());
    if (spec.marker_x) xs.push_back(*spec.marker_x);
    const auto xr = range_of(xs);

    Range shared;
    if (spec.kind == PlotKind::line) {
      std::vector<double> ys;
      for (const auto& s : spec.series) ys.insert(ys.end(), s.y.begin(), s.y.end());
      shared = range_of(ys);
      out += "<text x=\"" + num(px0 - 6) + "\" y=\"" + num(py1 + 4) +
             "\" text-anchor=\"end\" font-size=\"10\">" + tick(shared.hi) + "</text>\n";
      out += "<text x=\"" + num(px0 - 6) + "\" y=\"" + num(py0 + 4) +
             "\" text-anchor=\"end\" font-size=\"10\">" + tick(shared.lo) + "</text>\n";
    }
    out += "<text x=\"" + num(px0) + "\" y=\"" + num(py0 + 16) + "\" text-anchor=\"middle\" font-size=\"10\">" +
           tick(xr.lo) + "</text>\n";
    out += "<text x=\"" + num(px1) + "\" y=\"" + num(py0 + 16) + "\" text-anchor=\"middle\" font-size=\"10\">" +
           tick(xr.hi) + "</text>\n";

    for (std::size_t si = 0; si < spec.series.size(); ++si) {
      const auto& s = spec.series[si];
      const auto yr = spec.kind == PlotKind::overlay ? range_of(s.y) : shared;
      if (s.points) {
        out += "<g class=\"series\" fill=\"" + std::string(color(si)) + "\">\n";
        for (std::size_t k = 0; k < s.y.size(); ++k)
          out += "<circle cx=\"" + num(xr.map(s.x[k], px0, px1)) + "\" cy=\"" +
                 num(yr.map(s.y[k], py0, py1)) + "\" r=\"3\"/>\n";
        out += "</g>\n";
      } else {
        out += "<polyline class=\"series\" fill=\"none\" stroke=\"" + std::string(color(si)) +
               "\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < s.y.size(); ++k) {
          if (k) out += ' ';
          out += num(xr.map(s.x[k], px0, px1)) + "," + num(yr.map(s.y[k], py0, py1));
        }
        out += "\"/>\n";
      }
      legend.push_back(spec.kind == PlotKind::overlay
                           ? s.label + " [" + tick(yr.lo) + ", " + tick(yr.hi) + "]"
                           : s.label);
    }

    if (spec.marker_x) {
      const double mx = xr.map(*spec.marker_x, px0, px1);
      out += "<line class=\"marker\" x1=\"" + num(mx) + "\" y1=\"" + num(py0) + "\" x2=\"" + num(mx) +
             "\" y2=\"" + num(py1) + "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
    }
  }

  out += "<g class=\"legend\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < legend.size(); ++i) {
    const double y = kTop + 10 + 20 * static_cast<double>(i);
    out += "<rect x=\"" + num(px1 + 15) + "\" y=\"" + num(y - 9) + "\" width=\"10\" height=\"10\" fill=\"" +
           color(i) + "\"/>\n";
    out += "<text x=\"" + num(px1 + 30) + "\" y=\"" + num(y) + "\">" + escape(legend[i]) + "</text>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace ggdp
