/*
 * Copyright (c) 2026, mobevt authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "mobevt/core/date.hpp"

#include <array>
#include <cstdio>

#include "mobevt/core/error.hpp"

namespace mobevt::core {

bool is_leap_year(int year) noexcept {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) noexcept {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap_year(year)) return 29;
  return kDays[static_cast<std::size_t>(month - 1)];
}

Date::Date(int year, int month, int day) : year_(year), month_(month), day_(day) {
  if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) {
    throw ParseError("invalid calendar date " + std::to_string(year) + "-" +
                     std::to_string(month) + "-" + std::to_string(day));
  }
}

// Civil-from-days / days-from-civil, the usual era-based arithmetic.
std::int64_t Date::serial() const noexcept {
  const auto y = static_cast<std::int64_t>(year_) - (month_ <= 2 ? 1 : 0);
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<std::uint64_t>(y - era * 400);
  const auto m = static_cast<std::uint64_t>(month_);
  const auto d = static_cast<std::uint64_t>(day_);
  const std::uint64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const std::uint64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date Date::from_serial(std::int64_t days) {
  const std::int64_t z = days + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<std::uint64_t>(z - era * 146097);
  const std::uint64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const std::uint64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::uint64_t mp = (5 * doy + 2) / 153;
  const auto d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  const auto m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  return Date(static_cast<int>(y + (m <= 2 ? 1 : 0)), m, d);
}

int Date::weekday() const noexcept {
  const std::int64_t s = serial();
  // 1970-01-01 is a Thursday.
  return static_cast<int>(((s % 7) + 7 + 4) % 7);
}

Date Date::week_start() const {
  const int offset = (weekday() + 6) % 7;  // Monday-based week
  return plus_days(-offset);
}

std::string Date::month_label() const {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year_, month_);
  return buf;
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year_, month_, day_);
  return buf;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

Date parse_date(std::string_view text, std::string_view pattern) {
  int year = -1, month = -1, day = -1;
  std::size_t ti = 0;
  std::size_t pi = 0;
  while (pi < pattern.size()) {
    const char p = pattern[pi];
    if (p == 'Y' || p == 'M' || p == 'D') {
      std::size_t run = 0;
      while (pi + run < pattern.size() && pattern[pi + run] == p) ++run;
      if (ti + run > text.size() || !all_digits(text.substr(ti, run))) {
        throw ParseError("date '" + std::string(text) + "' does not match pattern '" +
                         std::string(pattern) + "'");
      }
      const int value = to_int(text.substr(ti, run));
      if (p == 'Y') year = value;
      if (p == 'M') month = value;
      if (p == 'D') day = value;
      ti += run;
      pi += run;
    } else {
      if (ti >= text.size() || text[ti] != p) {
        throw ParseError("date '" + std::string(text) + "' does not match pattern '" +
                         std::string(pattern) + "'");
      }
      ++ti;
      ++pi;
    }
  }
  if (ti != text.size()) {
    throw ParseError("trailing characters in date '" + std::string(text) + "'");
  }
  if (year < 0 || month < 0 || day < 0) {
    throw ConfigError("date pattern '" + std::string(pattern) +
                      "' must contain Y, M and D fields");
  }
  return Date(year, month, day);
}

Date parse_iso_date(std::string_view text) { return parse_date(text, "YYYY-MM-DD"); }

std::vector<Date> sundays_in(Date start, Date end) {
  std::vector<Date> out;
  if (end < start) return out;
  Date d = start.plus_days((7 - start.weekday()) % 7);
  while (d <= end) {
    out.push_back(d);
    d = d.plus_days(7);
  }
  return out;
}

std::vector<Date> month_15ths_in(Date start, Date end) {
  std::vector<Date> out;
  if (end < start) return out;
  int y = start.year();
  int m = start.month();
  while (true) {
    const Date mid(y, m, 15);
    if (mid > end) break;
    if (mid >= start) out.push_back(mid);
    if (++m > 12) {
      m = 1;
      ++y;
    }
  }
  return out;
}

}  // namespace mobevt::core
