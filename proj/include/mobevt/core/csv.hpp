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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mobevt::core {

/// One data row with its 1-based source line number (header is line 1).
struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

struct CsvFile {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  /// Index of a header column; throws ConfigError when absent or ambiguous.
  std::size_t column(std::string_view name) const;
};

/// Parse delimiter-separated text with a mandatory header row. Fields may be
/// double-quoted with "" escapes; embedded newlines inside quotes are not
/// supported. Input must be valid UTF-8. Blank lines are skipped.
CsvFile parse_csv(std::string_view text, char delimiter = ',');

bool is_valid_utf8(std::string_view text);

/// Quote a field if it contains the delimiter, a quote, or a newline.
std::string csv_escape(std::string_view field, char delimiter = ',');

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Locale-independent float formatting: 17 significant digits (round-trip
/// exact) for machine files, fixed decimals for the human-readable variants,
/// shortest round-trip for labels.
std::string format_g17(double value);
std::string format_fixed(double value, int decimals);
std::string format_compact(double value);

}  // namespace mobevt::core
