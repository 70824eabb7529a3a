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
#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mobevt::core {

/// Proleptic Gregorian calendar date. Construction validates the triple, so
/// a Date value is always a real calendar day.
class Date {
 public:
  Date() : year_(1970), month_(1), day_(1) {}
  Date(int year, int month, int day);

  int year() const noexcept { return year_; }
  int month() const noexcept { return month_; }
  int day() const noexcept { return day_; }

  /// Days since 1970-01-01 (negative before).
  std::int64_t serial() const noexcept;
  static Date from_serial(std::int64_t days);

  /// 0 = Sunday ... 6 = Saturday.
  int weekday() const noexcept;

  Date plus_days(std::int64_t n) const { return from_serial(serial() + n); }

  /// Monday of the Monday-through-Sunday week containing this date.
  Date week_start() const;

  /// "YYYY-MM" label, used as the calendar-month block key.
  std::string month_label() const;

  std::string to_string() const;  // ISO-8601 YYYY-MM-DD

  friend bool operator==(const Date& a, const Date& b) = default;
  friend std::strong_ordering operator<=>(const Date& a, const Date& b) = default;

 private:
  int year_;
  int month_;
  int day_;
};

bool is_leap_year(int year) noexcept;
int days_in_month(int year, int month) noexcept;

/// Parse an ISO-8601 date (YYYY-MM-DD). Throws ParseError on malformed input.
Date parse_iso_date(std::string_view text);

/// Parse with an explicit pattern built from the tokens YYYY, MM, DD and
/// literal separator characters, e.g. "MM/DD/YYYY". Throws ParseError.
Date parse_date(std::string_view text, std::string_view pattern);

/// All Sundays d with start <= d <= end, ascending.
std::vector<Date> sundays_in(Date start, Date end);

/// The 15th of every calendar month intersecting [start, end], restricted to
/// 15ths inside the window, ascending.
std::vector<Date> month_15ths_in(Date start, Date end);

}  // namespace mobevt::core
