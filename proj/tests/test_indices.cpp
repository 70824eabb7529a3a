#include <doctest.h>

#include <cmath>
#include <vector>

#include "mobevt/core/error.hpp"
#include "mobevt/core/rng.hpp"
#include "mobevt/graph/network.hpp"
#include "mobevt/indices/indices.hpp"

using namespace mobevt;
using core::Date;
using namespace mobevt::indices;

namespace {

RawIndexSeries daily_series(Date start, const std::vector<double>& values) {
  RawIndexSeries s;
  s.name = "test";
  for (std::size_t i = 0; i < values.size(); ++i) {
    s.observations.push_back({start.plus_days(static_cast<std::int64_t>(i)), values[i]});
  }
  return s;
}

}  // namespace

TEST_CASE("weekly average of a constant week is the constant") {
  // 2020-01-13 is a Monday; one full week.
  const auto daily = daily_series(Date(2020, 1, 13), std::vector<double>(7, 3.25));
  const auto result = weekly_average(daily, Date(2020, 1, 13), Date(2020, 1, 19));
  REQUIRE(result.series.observations.size() == 1);
  CHECK(result.series.observations[0].date == Date(2020, 1, 13));
  CHECK(result.series.observations[0].value == 3.25);
  CHECK(result.empty_weeks.empty());
}

TEST_CASE("weekly average of 1..7 is 4") {
  const auto daily = daily_series(Date(2020, 1, 13), {1, 2, 3, 4, 5, 6, 7});
  const auto result = weekly_average(daily, Date(2020, 1, 13), Date(2020, 1, 19));
  REQUIRE(result.series.observations.size() == 1);
  CHECK(result.series.observations[0].value == doctest::Approx(4.0));
}

TEST_CASE("weekly average: empty window is empty, gaps are reported") {
  const auto daily = daily_series(Date(2020, 1, 13), {1, 2, 3});
  const auto empty = weekly_average(daily, Date(2021, 1, 4), Date(2021, 1, 10));
  CHECK(empty.series.observations.empty());
  CHECK(empty.empty_weeks.size() == 1);

  // Two-week window with data only in the first week.
  const auto gappy = weekly_average(daily, Date(2020, 1, 13), Date(2020, 1, 26));
  CHECK(gappy.series.observations.size() == 1);
  REQUIRE(gappy.empty_weeks.size() == 1);
  CHECK(gappy.empty_weeks[0] == Date(2020, 1, 20));
}

TEST_CASE("weeks run Monday through Sunday") {
  // Sunday Jan 19 and Monday Jan 20 belong to different weeks.
  RawIndexSeries s;
  s.name = "w";
  s.observations = {{Date(2020, 1, 19), 10.0}, {Date(2020, 1, 20), 20.0}};
  const auto result = weekly_average(s, Date(2020, 1, 13), Date(2020, 1, 26));
  REQUIRE(result.series.observations.size() == 2);
  CHECK(result.series.observations[0].date == Date(2020, 1, 13));
  CHECK(result.series.observations[0].value == 10.0);
  CHECK(result.series.observations[1].date == Date(2020, 1, 20));
  CHECK(result.series.observations[1].value == 20.0);
}

TEST_CASE("zscore of {1,2,3} is {-1,0,1}") {
  const auto norm = zscore(daily_series(Date(2020, 1, 1), {1, 2, 3}));
  REQUIRE(norm.observations.size() == 3);
  CHECK(norm.observations[0].value == doctest::Approx(-1.0));
  CHECK(norm.observations[1].value == doctest::Approx(0.0));
  CHECK(norm.observations[2].value == doctest::Approx(1.0));
  CHECK(norm.mean_used == doctest::Approx(2.0));
  CHECK(norm.sd_used == doctest::Approx(1.0));
}

TEST_CASE("zscore hand computation for {10,20,40,50}") {
  // mean 30; squared deviations 400+100+100+400 = 1000; sample sd
  // sqrt(1000/3).
  const auto norm = zscore(daily_series(Date(2020, 1, 1), {10, 20, 40, 50}));
  const double sd = std::sqrt(1000.0 / 3.0);
  CHECK(norm.mean_used == doctest::Approx(30.0));
  CHECK(norm.sd_used == doctest::Approx(sd));
  CHECK(norm.observations[0].value == doctest::Approx(-20.0 / sd));
  CHECK(norm.observations[3].value == doctest::Approx(20.0 / sd));
}

TEST_CASE("zscore output has mean 0 and sample sd 1 within 1e-10") {
  core::Rng rng(99);
  std::vector<double> values;
  for (int i = 0; i < 200; ++i) values.push_back(rng.normal() * 17.0 + 5.0);
  const auto norm = zscore(daily_series(Date(2019, 1, 1), values));
  std::vector<double> out;
  for (const auto& obs : norm.observations) out.push_back(obs.value);
  CHECK(std::abs(core::mean(out)) < 1e-10);
  CHECK(std::abs(core::sample_sd(out) - 1.0) < 1e-10);
}

TEST_CASE("zscore is invariant under positive affine transforms") {
  core::Rng rng(7);
  std::vector<double> values;
  for (int i = 0; i < 40; ++i) values.push_back(rng.normal());
  const auto base = zscore(daily_series(Date(2020, 1, 1), values));
  std::vector<double> affine;
  for (double v : values) affine.push_back(2.5 * v + 11.0);
  const auto transformed = zscore(daily_series(Date(2020, 1, 1), affine));
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(transformed.observations[i].value ==
          doctest::Approx(base.observations[i].value).epsilon(1e-12));
  }
}

TEST_CASE("zscore errors: constant series and too-few observations") {
  CHECK_THROWS_AS(zscore(daily_series(Date(2020, 1, 1), {5, 5, 5})), DataError);
  CHECK_THROWS_AS(zscore(daily_series(Date(2020, 1, 1), {5})), DataError);
}

TEST_CASE("air mobility index equals snapshot edge counts") {
  CHECK(air_mobility_index(graph::TemporalNetwork{}).observations.empty());

  const Date day(2020, 2, 2);
  std::vector<ingest::FlightRecord> flights = {
      {"AAA", "BBB", day}, {"BBB", "AAA", day}, {"AAA", "CCC", day}};
  graph::TemporalNetwork net;
  net.granularity = graph::Granularity::weekly;
  net.snapshots.push_back(graph::build_snapshot(flights, day));
  const auto ami = air_mobility_index(net);
  REQUIRE(ami.observations.size() == 1);
  CHECK(ami.observations[0].date == day);
  CHECK(ami.observations[0].value == 3.0);
  CHECK(ami.name == "ami_w");
}

TEST_CASE("align: identical dates keep every row") {
  const auto a = zscore(daily_series(Date(2020, 1, 1), {1, 2, 3, 4}));
  const auto b = zscore(daily_series(Date(2020, 1, 1), {4, 3, 2, 1}));
  const auto table = align({a, b});
  CHECK(table.dates.size() == 4);
  CHECK(table.dropped.empty());
  CHECK(table.columns[0].size() == 4);
}

TEST_CASE("align: offset date is dropped and reported") {
  const auto a = zscore(daily_series(Date(2020, 1, 1), {1, 2, 3}));
  auto b = zscore(daily_series(Date(2020, 1, 1), {3, 2, 1}));
  b.observations[2].date = Date(2020, 1, 9);  // breaks the overlap on day 3
  const auto table = align({a, b});
  CHECK(table.dates.size() == 2);
  REQUIRE(table.dropped.size() == 2);
  CHECK(table.dropped[0] == Date(2020, 1, 3));
  CHECK(table.dropped[1] == Date(2020, 1, 9));
}

TEST_CASE("align: three series with a 30-date common core") {
  const auto ramp = [](std::size_t n, double slope) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = slope * static_cast<double>(i) + 1.0;
    return v;
  };
  // a: Jan 1..Feb 2 (33 days), b: Dec 30..Jan 30 (32 days), c: Jan 1..30.
  const auto a = zscore(daily_series(Date(2020, 1, 1), ramp(33, 0.5)));
  const auto b = zscore(daily_series(Date(2019, 12, 30), ramp(32, 1.5)));
  const auto c = zscore(daily_series(Date(2020, 1, 1), ramp(30, -2.0)));
  const auto table = align({a, b, c});
  CHECK(table.dates.size() == 30);
  CHECK(table.dates.front() == Date(2020, 1, 1));
  CHECK(table.dates.back() == Date(2020, 1, 30));
}

TEST_CASE("align: empty intersection is an error") {
  const auto a = zscore(daily_series(Date(2020, 1, 1), {1, 2}));
  const auto b = zscore(daily_series(Date(2021, 1, 1), {1, 2}));
  CHECK_THROWS_AS(align({a, b}), DataError);
  CHECK_THROWS_AS(align({}), ConfigError);
}

TEST_CASE("weekly average of a constant series is constant") {
  const auto daily = daily_series(Date(2020, 1, 13), std::vector<double>(35, 2.5));
  const auto result = weekly_average(daily, Date(2020, 1, 13), Date(2020, 2, 16));
  REQUIRE(result.series.observations.size() == 5);
  for (const auto& obs : result.series.observations) CHECK(obs.value == 2.5);
}

TEST_CASE("monthly air mobility over 2000-2020 yields 248 observations") {
  const auto days = core::month_15ths_in(Date(2000, 1, 1), Date(2020, 8, 31));
  const auto net =
      graph::build_temporal_network({}, days, graph::Granularity::monthly);
  const auto ami = air_mobility_index(net);
  CHECK(ami.observations.size() == 248);
  CHECK(ami.name == "ami_m");
}
