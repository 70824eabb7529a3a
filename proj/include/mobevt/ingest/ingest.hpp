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

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mobevt/core/date.hpp"

namespace mobevt::ingest {

using core::Date;

/// One directed flight leg that departed and landed.
struct FlightRecord {
  std::string origin;       // IATA code, uppercase
  std::string destination;  // IATA code, uppercase
  Date date;

  friend bool operator==(const FlightRecord&, const FlightRecord&) = default;
};

struct AirportLocation {
  double latitude = 0.0;   // degrees, [-90, 90]
  double longitude = 0.0;  // degrees, [-180, 180]
};

struct AirportRegistry {
  std::map<std::string, AirportLocation> entries;

  bool contains(const std::string& code) const { return entries.count(code) > 0; }
};

struct SeriesObservation {
  Date date;
  double value = 0.0;

  friend bool operator==(const SeriesObservation&, const SeriesObservation&) = default;
};

/// strict: the first bad row aborts the parse. lenient: bad rows are
/// collected into the result's error report and good rows kept.
enum class ParseMode { strict, lenient };

struct RowError {
  std::size_t line = 0;
  std::string message;
};

struct FlightSchema {
  std::string origin_column = "origin";
  std::string destination_column = "destination";
  std::string date_column = "date";
  std::string cancelled_column;  // empty: no cancellation handling
  std::string date_format = "YYYY-MM-DD";
  char delimiter = ',';
};

struct SeriesSchema {
  std::string date_column = "date";
  std::string value_column = "value";
  std::string date_format = "YYYY-MM-DD";
  char delimiter = ',';
};

struct AirportSchema {
  std::string code_column = "code";
  std::string latitude_column = "latitude";
  std::string longitude_column = "longitude";
  char delimiter = ',';
};

struct FlightParseResult {
  std::vector<FlightRecord> records;
  std::size_t dropped_cancelled = 0;
  std::vector<RowError> errors;  // non-empty only in lenient mode
};

struct SeriesParseResult {
  std::vector<SeriesObservation> observations;  // sorted ascending by date
  std::vector<RowError> errors;
};

/// Parse flight legs from delimiter-separated text with a header row. Rows
/// whose configured cancellation column is truthy are dropped (they never
/// departed). Input order is preserved.
FlightParseResult parse_flights(std::string_view source, const FlightSchema& schema,
                                ParseMode mode = ParseMode::strict);

/// Parse a (date, value) series. Observations come back sorted ascending by
/// date; duplicate dates are rejected.
SeriesParseResult parse_series(std::string_view source, const SeriesSchema& schema,
                               ParseMode mode = ParseMode::strict);

/// Parse the airport registry. Always strict: a broken registry is a setup
/// problem, not a data-cleaning one.
AirportRegistry parse_airports(std::string_view source, const AirportSchema& schema);

struct ValidationReport {
  struct Item {
    FlightRecord record;
    std::string unknown_code;
  };
  std::vector<Item> unresolved;

  bool ok() const noexcept { return unresolved.empty(); }
};

/// List every flight whose origin or destination is absent from the
/// registry. Unresolved codes are data in the report, not errors.
ValidationReport validate_airports(std::span<const FlightRecord> flights,
                                   const AirportRegistry& registry);

/// Round-trip-exact CSV serialization of a series (date,value header).
std::string serialize_series(std::span<const SeriesObservation> observations);

}  // namespace mobevt::ingest
