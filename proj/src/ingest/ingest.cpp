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
#include "mobevt/ingest/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "mobevt/core/csv.hpp"
#include "mobevt/core/error.hpp"

namespace mobevt::ingest {

namespace {

using core::CsvFile;
using core::CsvRow;

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

double parse_number(const std::string& cell, std::size_t line, const char* what) {
  const std::string t = trim(cell);
  if (t.empty()) throw ParseError(std::string("empty ") + what + " cell", line);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ParseError(std::string("non-numeric ") + what + " value '" + t + "'", line);
  }
  if (!std::isfinite(v)) {
    throw ParseError(std::string(what) + " value '" + t + "' is not finite", line);
  }
  return v;
}

bool truthy_cancellation(const std::string& cell) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec == std::errc{} && res.ptr == t.data() + t.size()) return v != 0.0;
  const std::string u = upper(t);
  return u == "TRUE" || u == "T" || u == "YES" || u == "Y";
}

void check_width(const CsvRow& row, std::size_t expected) {
  if (row.fields.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) + " columns, got " +
                         std::to_string(row.fields.size()),
                     row.line);
  }
}

// Runs `body` per row, routing ParseErrors per the mode.
template <typename Body>
void for_each_row(const CsvFile& file, ParseMode mode, std::vector<RowError>& errors,
                  Body&& body) {
  for (const CsvRow& row : file.rows) {
    try {
      body(row);
    } catch (const ParseError& e) {
      if (mode == ParseMode::strict) throw;
      errors.push_back({row.line, e.what()});
    }
  }
}

}  // namespace

FlightParseResult parse_flights(std::string_view source, const FlightSchema& schema,
                                ParseMode mode) {
  const CsvFile file = core::parse_csv(source, schema.delimiter);
  const std::size_t c_origin = file.column(schema.origin_column);
  const std::size_t c_dest = file.column(schema.destination_column);
  const std::size_t c_date = file.column(schema.date_column);
  const bool has_cancel = !schema.cancelled_column.empty();
  const std::size_t c_cancel = has_cancel ? file.column(schema.cancelled_column) : 0;

  FlightParseResult result;
  result.records.reserve(file.rows.size());
  for_each_row(file, mode, result.errors, [&](const CsvRow& row) {
    check_width(row, file.header.size());
    if (has_cancel && truthy_cancellation(row.fields[c_cancel])) {
      ++result.dropped_cancelled;
      return;
    }
    FlightRecord rec;
    rec.origin = upper(trim(row.fields[c_origin]));
    rec.destination = upper(trim(row.fields[c_dest]));
    if (rec.origin.empty() || rec.destination.empty()) {
      throw ParseError("empty airport code", row.line);
    }
    if (rec.origin == rec.destination) {
      throw ParseError("origin equals destination ('" + rec.origin + "')", row.line);
    }
    try {
      rec.date = core::parse_date(trim(row.fields[c_date]), schema.date_format);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), row.line);
    }
    result.records.push_back(std::move(rec));
  });
  return result;
}

SeriesParseResult parse_series(std::string_view source, const SeriesSchema& schema,
                               ParseMode mode) {
  const CsvFile file = core::parse_csv(source, schema.delimiter);
  const std::size_t c_date = file.column(schema.date_column);
  const std::size_t c_value = file.column(schema.value_column);

  SeriesParseResult result;
  std::vector<std::pair<std::size_t, SeriesObservation>> rows;  // keep line for dedup
  rows.reserve(file.rows.size());
  for_each_row(file, mode, result.errors, [&](const CsvRow& row) {
    check_width(row, file.header.size());
    SeriesObservation obs;
    try {
      obs.date = core::parse_date(trim(row.fields[c_date]), schema.date_format);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), row.line);
    }
    obs.value = parse_number(row.fields[c_value], row.line, "series");
    rows.emplace_back(row.line, obs);
  });

  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second.date < b.second.date;
  });
  result.observations.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].second.date == rows[i - 1].second.date) {
      const std::string msg = "duplicate date " + rows[i].second.date.to_string();
      if (mode == ParseMode::strict) throw ParseError(msg, rows[i].first);
      result.errors.push_back({rows[i].first, msg});
      continue;
    }
    result.observations.push_back(rows[i].second);
  }
  // Keep the error report in line order, not date order.
  std::sort(result.errors.begin(), result.errors.end(),
            [](const RowError& a, const RowError& b) { return a.line < b.line; });
  return result;
}

AirportRegistry parse_airports(std::string_view source, const AirportSchema& schema) {
  const CsvFile file = core::parse_csv(source, schema.delimiter);
  const std::size_t c_code = file.column(schema.code_column);
  const std::size_t c_lat = file.column(schema.latitude_column);
  const std::size_t c_lon = file.column(schema.longitude_column);

  AirportRegistry registry;
  for (const CsvRow& row : file.rows) {
    check_width(row, file.header.size());
    const std::string code = upper(trim(row.fields[c_code]));
    if (code.empty()) throw ParseError("empty airport code", row.line);
    AirportLocation loc;
    loc.latitude = parse_number(row.fields[c_lat], row.line, "latitude");
    loc.longitude = parse_number(row.fields[c_lon], row.line, "longitude");
    if (loc.latitude < -90.0 || loc.latitude > 90.0) {
      throw ParseError("latitude out of range for " + code, row.line);
    }
    if (loc.longitude < -180.0 || loc.longitude > 180.0) {
      throw ParseError("longitude out of range for " + code, row.line);
    }
    if (!registry.entries.emplace(code, loc).second) {
      throw ParseError("duplicate airport code " + code, row.line);
    }
  }
  return registry;
}

ValidationReport validate_airports(std::span<const FlightRecord> flights,
                                   const AirportRegistry& registry) {
  ValidationReport report;
  for (const FlightRecord& f : flights) {
    if (!registry.contains(f.origin)) report.unresolved.push_back({f, f.origin});
    if (!registry.contains(f.destination)) report.unresolved.push_back({f, f.destination});
  }
  return report;
}

std::string serialize_series(std::span<const SeriesObservation> observations) {
  std::string out = "date,value\n";
  for (const SeriesObservation& obs : observations) {
    out += obs.date.to_string();
    out += ',';
    out += core::format_g17(obs.value);
    out += '\n';
  }
  return out;
}

}  // namespace mobevt::ingest
