#include <gtest/gtest.h>

#include <regex>
#include <string>

#include "ggdp/svg.hpp"

using namespace ggdp;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

PlotSpec two_lines() {
  PlotSpec spec{"GDP vs GGDP", "year", "US$ bn", PlotKind::line, {}, {}, std::nullopt};
  spec.series.push_back({"GDP", {2000, 2001, 2002}, {10, 12, 15}, false});
  spec.series.push_back({"GGDP", {2000, 2001, 2002}, {8, 9, 11}, false});
  return spec;
}

}  // namespace

TEST(RenderSvg, SingleLineHasOnePolylineWithAllPoints) {
  PlotSpec spec{"t", "x", "y", PlotKind::line, {{"s", {1, 2, 3}, {4, 5, 6}, false}}, {}, std::nullopt};
  const auto svg = render_svg(spec);
  EXPECT_EQ(count(svg, "<polyline"), 1u);
  const std::regex points(R"(points="([^"]*)\")");
  std::smatch m;
  ASSERT_TRUE(std::regex_search(svg, m, points));
  const std::string pts = m[1];
  EXPECT_EQ(count(pts, ","), 3u);
  EXPECT_EQ(count(pts, " "), 2u);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("</svg>\n"), std::string::npos);
}

TEST(RenderSvg, LegendListsEverySeries) {
  const auto svg = render_svg(two_lines());
  const auto legend = svg.substr(svg.find("<g class=\"legend\""));
  EXPECT_EQ(count(legend, "<text"), 2u);
  EXPECT_NE(legend.find(">GDP<"), std::string::npos);
  EXPECT_NE(legend.find(">GGDP<"), std::string::npos);
  EXPECT_EQ(count(svg, "<polyline"), 2u);
}

TEST(RenderSvg, ByteIdenticalAcrossCalls) {
  EXPECT_EQ(render_svg(two_lines()), render_svg(two_lines()));
}

TEST(RenderSvg, BarAndOverlay) {
  PlotSpec bar{"grades", "", "grade", PlotKind::bar, {{"grade", {}, {0.9, 0.7, 0.6}, false}},
               {"GDP", "RDM", "EPCL"}, std::nullopt};
  const auto b = render_svg(bar);
  EXPECT_EQ(count(b, "<rect x="), 3u + 1u + 1u);  // bars, background, legend swatch
  EXPECT_NE(b.find(">EPCL<"), std::string::npos);

  PlotSpec overlay{"impact", "year", "", PlotKind::overlay,
                   {{"temp", {1, 2}, {14, 15}, false}, {"co2", {1, 2}, {5000, 5200}, false}}, {},
                   1.5};
  const auto o = render_svg(overlay);
  EXPECT_NE(o.find("temp [14, 15]"), std::string::npos);
  EXPECT_NE(o.find("class=\"marker\""), std::string::npos);
}

TEST(RenderSvg, EscapesText) {
  PlotSpec spec{"a<b & c", "x", "y", PlotKind::line, {{"s", {1, 2}, {1, 2}, true}}, {}, std::nullopt};
  const auto svg = render_svg(spec);
  EXPECT_NE(svg.find("a&lt;b &amp; c"), std::string::npos);
  EXPECT_EQ(count(svg, "<circle"), 2u);
}

TEST(RenderSvg, Errors) {
  PlotSpec empty{"t", "x", "y", PlotKind::line, {}, {}, std::nullopt};
  EXPECT_THROW(render_svg(empty), InputError);
  PlotSpec nan{"t", "x", "y", PlotKind::line, {{"s", {1, 2}, {1, std::nan("")}, false}}, {}, std::nullopt};
  EXPECT_THROW(render_svg(nan), InputError);
  PlotSpec mismatch{"t", "x", "y", PlotKind::line, {{"s", {1}, {1, 2}, false}}, {}, std::nullopt};
  EXPECT_THROW(render_svg(mismatch), InputError);
}
