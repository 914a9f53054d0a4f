#include <gtest/gtest.h>

#include <map>
#include <string>
#include <vector>

#include "ggdp/fetch.hpp"
#include "test_support.hpp"

using namespace ggdp;
using ggdp::testing::wb_page;

namespace {

/// Serves canned responses keyed by the `page` query value and records
/// every requested URL.
struct MockTransport {
  std::map<int, std::vector<HttpResponse>> pages;  // page -> responses in call order
  std::vector<std::string> calls;

  HttpGet get() {
    return [this](const std::string& url) {
      calls.push_back(url);
      const auto pos = url.find("&page=");
      const int page = std::stoi(url.substr(pos + 6));
      auto& queue = pages.at(page);
      HttpResponse r = queue.front();
      if (queue.size() > 1) queue.erase(queue.begin());
      return r;
    };
  }
};

FetchOptions no_sleep() {
  FetchOptions o;
  o.sleep = nullptr;
  return o;
}

}  // namespace

TEST(Fetch, SkipsNullValues) {
  MockTransport t;
  t.pages[1] = {{200, wb_page(1, 1, {{2002, 3.0}, {2001, nullptr}, {2000, 1.0}})}};
  const auto s = fetch_indicator(t.get(), "http://mock/v2", "USA", "NY.GDP.MKTP.CD", {2000, 2002}, no_sleep());
  EXPECT_EQ(s.country, "USA");
  EXPECT_EQ(s.indicator, "NY.GDP.MKTP.CD");
  EXPECT_EQ(s.unit, "current US$");
  EXPECT_EQ(s.observations, (std::vector<Observation>{{2000, 1.0}, {2002, 3.0}}));
}

TEST(Fetch, RequestCarriesQueryParameters) {
  MockTransport t;
  t.pages[1] = {{200, wb_page(1, 1, {{2000, 1.0}})}};
  fetch_indicator(t.get(), "http://mock/v2/", "USA", "NY.GDP.MKTP.CD", {1990, 2020}, no_sleep());
  ASSERT_EQ(t.calls.size(), 1u);
  EXPECT_EQ(t.calls[0],
            "http://mock/v2/country/USA/indicator/NY.GDP.MKTP.CD?format=json&date=1990:2020&per_page=1000&page=1");
}

TEST(Fetch, NotFoundIsTypedAndNotRetried) {
  MockTransport t;
  t.pages[1] = {{404, "not found"}};
  try {
    fetch_indicator(t.get(), "http://mock/v2", "USA", "BAD", {2000, 2002}, no_sleep());
    FAIL() << "expected HttpError";
  } catch (const HttpError& e) {
    EXPECT_EQ(e.status(), 404);
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
  EXPECT_EQ(t.calls.size(), 1u);
}

TEST(Fetch, MergesPagesInYearOrder) {
  // The API lists newest first; page 1 holds 2005..2003, page 2 holds 2002..2000.
  MockTransport t;
  t.pages[1] = {{200, wb_page(1, 2, {{2005, 50.0}, {2004, 40.0}, {2003, 30.0}})}};
  t.pages[2] = {{200, wb_page(2, 2, {{2002, 20.0}, {2001, nullptr}, {2000, 0.5}})}};
  const auto s = fetch_indicator(t.get(), "http://mock/v2", "USA", "X", {2000, 2005}, no_sleep());
  EXPECT_EQ(s.years(), (std::vector<int>{2000, 2002, 2003, 2004, 2005}));
  EXPECT_EQ(s.values(), (std::vector<double>{0.5, 20.0, 30.0, 40.0, 50.0}));
  EXPECT_EQ(t.calls.size(), 2u);
}

TEST(Fetch, RetriesTransientFailuresWithBackoff) {
  MockTransport t;
  t.pages[1] = {{503, ""}, {0, ""}, {200, wb_page(1, 1, {{2000, 1.0}})}};
  std::vector<std::chrono::milliseconds> sleeps;
  FetchOptions opts;
  opts.backoff = std::chrono::milliseconds(100);
  opts.sleep = [&](std::chrono::milliseconds d) { sleeps.push_back(d); };
  const auto s = fetch_indicator(t.get(), "http://mock", "USA", "X", {2000, 2000}, opts);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(t.calls.size(), 3u);
  EXPECT_EQ(sleeps, (std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(100),
                                                            std::chrono::milliseconds(200)}));
}

TEST(Fetch, GivesUpAfterTwoRetries) {
  MockTransport t;
  t.pages[1] = {{500, ""}};
  try {
    fetch_indicator(t.get(), "http://mock", "USA", "X", {2000, 2000}, no_sleep());
    FAIL() << "expected HttpError";
  } catch (const HttpError& e) {
    EXPECT_EQ(e.status(), 500);
  }
  EXPECT_EQ(t.calls.size(), 3u);
}

TEST(Fetch, MalformedAndEmptyResponses) {
  MockTransport bad;
  bad.pages[1] = {{200, "<html>"}};
  EXPECT_THROW(fetch_indicator(bad.get(), "http://mock", "USA", "X", {2000, 2001}, no_sleep()), IoError);

  MockTransport remote_error;
  remote_error.pages[1] = {{200, R"([{"message":[{"id":"120","key":"Invalid value"}]}])"}};
  EXPECT_THROW(fetch_indicator(remote_error.get(), "http://mock", "USA", "X", {2000, 2001}, no_sleep()),
               IoError);

  MockTransport empty;
  empty.pages[1] = {{200, R"([{"page":1,"pages":0,"per_page":50,"total":0},null])"}};
  EXPECT_THROW(fetch_indicator(empty.get(), "http://mock", "USA", "X", {2000, 2001}, no_sleep()), IoError);

  MockTransport all_null;
  all_null.pages[1] = {{200, wb_page(1, 1, {{2000, nullptr}})}};
  EXPECT_THROW(fetch_indicator(all_null.get(), "http://mock", "USA", "X", {2000, 2001}, no_sleep()), IoError);
}

TEST(Fetch, UnitFromIndicatorName) {
  EXPECT_EQ(detail::unit_from_indicator_name("Adjusted savings: natural resources depletion (% of GNI)"),
            "% of GNI");
  EXPECT_EQ(detail::unit_from_indicator_name("Consumer price index"), "Consumer price index");
}
