#include <doctest.h>

#include <cmath>

#include "mobevt/core/csv.hpp"
#include "mobevt/core/date.hpp"
#include "mobevt/core/error.hpp"
#include "mobevt/core/linalg.hpp"
#include "mobevt/core/optimize.hpp"
#include "mobevt/core/rng.hpp"
#include "mobevt/core/stats.hpp"

using namespace mobevt;
using core::Date;

TEST_CASE("date round trips through serial days") {
  const Date d(2020, 2, 29);
  CHECK(Date::from_serial(d.serial()) == d);
  CHECK(Date(1970, 1, 1).serial() == 0);
  CHECK(Date(2020, 1, 13).weekday() == 1);  // Monday
  CHECK(Date(2020, 2, 2).weekday() == 0);   // Sunday
}

TEST_CASE("date validation rejects impossible days") {
  CHECK_THROWS_AS(Date(2020, 13, 1), ParseError);
  CHECK_THROWS_AS(Date(2021, 2, 29), ParseError);
  CHECK_NOTHROW(Date(2020, 2, 29));
}

TEST_CASE("week starts on Monday") {
  CHECK(Date(2020, 1, 19).week_start() == Date(2020, 1, 13));  // Sunday -> prior Monday
  CHECK(Date(2020, 1, 13).week_start() == Date(2020, 1, 13));
  CHECK(Date(2020, 1, 15).week_start() == Date(2020, 1, 13));
}

TEST_CASE("paper sampling conventions give 32 Sundays and 248 month 15ths") {
  CHECK(core::sundays_in(Date(2020, 1, 13), Date(2020, 8, 25)).size() == 32);
  CHECK(core::month_15ths_in(Date(2000, 1, 1), Date(2020, 8, 31)).size() == 248);
}

TEST_CASE("date patterns") {
  CHECK(core::parse_date("02/03/2020", "MM/DD/YYYY") == Date(2020, 2, 3));
  CHECK(core::parse_iso_date("2020-02-03") == Date(2020, 2, 3));
  CHECK_THROWS_AS(core::parse_iso_date("2020-13-01"), ParseError);
  CHECK_THROWS_AS(core::parse_iso_date("2020-02-03x"), ParseError);
}

TEST_CASE("csv parser handles quotes and reports line numbers") {
  const auto file = core::parse_csv("a,b\n1,\"x,\"\"y\"\n\n2,z\n");
  REQUIRE(file.header.size() == 2);
  REQUIRE(file.rows.size() == 2);
  CHECK(file.rows[0].fields[1] == "x,\"y");
  CHECK(file.rows[0].line == 2);
  CHECK(file.rows[1].line == 4);  // blank line skipped, numbering preserved
  CHECK(file.column("b") == 1);
  CHECK_THROWS_AS(file.column("missing"), ConfigError);
}

TEST_CASE("csv parser rejects bad utf8") {
  std::string bad = "a,b\n1,2\n";
  bad += static_cast<char>(0xFF);
  CHECK_THROWS_AS(core::parse_csv(bad), ParseError);
}

TEST_CASE("format_g17 round trips doubles") {
  for (double v : {0.1, -3.14159, 1e300, 1.0 / 3.0, -0.0}) {
    CHECK(std::stod(core::format_g17(v)) == v);
  }
}

TEST_CASE("quantile type 7 matches hand values") {
  const std::vector<double> vals = {1.0, 1.0, 2.0};
  CHECK(core::quantile_sorted(vals, 0.5) == 1.0);
  CHECK(core::quantile_sorted(vals, 0.25) == 1.0);
  CHECK(core::quantile_sorted(vals, 0.75) == doctest::Approx(1.5));
}

TEST_CASE("lu solve and invert agree on a small system") {
  core::Mat a(2, 2);
  a(0, 0) = 4.0;
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  a(1, 1) = 3.0;
  const auto x = core::solve_lu(a, {1.0, 2.0});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == doctest::Approx(1.0 / 11.0));
  CHECK((*x)[1] == doctest::Approx(7.0 / 11.0));
  const auto inv = core::invert(a);
  REQUIRE(inv.has_value());
  CHECK((*inv)(0, 0) == doctest::Approx(3.0 / 11.0));
}

TEST_CASE("singular systems are reported") {
  core::Mat a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 4.0;
  CHECK_FALSE(core::solve_lu(a, {1.0, 2.0}).has_value());
  CHECK_FALSE(core::invert(a).has_value());
}

TEST_CASE("deficient_columns flags an exact copy") {
  core::Mat design(5, 3);
  core::Rng rng(3);
  for (std::size_t i = 0; i < 5; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = rng.normal();
    design(i, 2) = 2.0 * design(i, 1);
  }
  const auto bad = core::deficient_columns(design);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0] == 2);
}

TEST_CASE("rng substreams are deterministic and distinct") {
  auto a1 = core::Rng::substream(42, "stage", 7);
  auto a2 = core::Rng::substream(42, "stage", 7);
  auto b = core::Rng::substream(42, "stage", 8);
  const double v1 = a1.uniform01();
  CHECK(v1 == a2.uniform01());
  CHECK(v1 != b.uniform01());
}

TEST_CASE("nelder-mead minimizes a shifted quadratic") {
  const auto f = [](std::span<const double> x) {
    const double a = x[0] - 3.0;
    const double b = x[1] + 1.0;
    return a * a + 2.0 * b * b;
  };
  const std::vector<double> start = {0.0, 0.0};
  const std::vector<double> step = {0.5, 0.5};
  const auto res = core::nelder_mead(f, start, step);
  REQUIRE(res.converged);
  CHECK(res.point[0] == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(res.point[1] == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("central hessian of a quadratic is its coefficient matrix") {
  const auto f = [](std::span<const double> x) {
    return 2.0 * x[0] * x[0] + 3.0 * x[0] * x[1] + 5.0 * x[1] * x[1];
  };
  const std::vector<double> at = {0.3, -0.2};
  const auto h = core::central_hessian(f, at, 1e-4);
  CHECK(h[0][0] == doctest::Approx(4.0).epsilon(1e-5));
  CHECK(h[0][1] == doctest::Approx(3.0).epsilon(1e-5));
  CHECK(h[1][1] == doctest::Approx(10.0).epsilon(1e-5));
}
