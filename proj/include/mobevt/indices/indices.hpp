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

#include <string>
#include <vector>

#include "mobevt/core/date.hpp"
#include "mobevt/graph/network.hpp"
#include "mobevt/ingest/ingest.hpp"

namespace mobevt::indices {

using core::Date;
using ingest::SeriesObservation;

enum class IndexKind { driving_trend, air_mobility, covid_count, price, generic };

/// A time-indexed series before normalization: driving trend, air mobility,
/// a COVID count, or a price.
struct RawIndexSeries {
  std::string name;
  IndexKind kind = IndexKind::generic;
  std::vector<SeriesObservation> observations;  // strictly increasing dates
};

/// A z-scored series together with the window constants used, so the
/// original scale stays recoverable.
struct NormalizedSeries {
  std::string source_name;
  std::vector<SeriesObservation> observations;
  double mean_used = 0.0;
  double sd_used = 1.0;
};

struct WeeklyAverageResult {
  RawIndexSeries series;          // one observation per week, keyed by Monday
  std::vector<Date> empty_weeks;  // gap report: week starts with no data
};

/// Arithmetic mean of the daily values in each Monday-through-Sunday week
/// intersecting [window_start, window_end]. Weeks with no observations are
/// omitted and reported.
WeeklyAverageResult weekly_average(const RawIndexSeries& daily, Date window_start,
                                   Date window_end);

/// (x - mean) / sd over the series' full window, sample sd (n-1). Throws on
/// fewer than 2 observations or a constant series.
NormalizedSeries zscore(const RawIndexSeries& raw);

/// Edge count of each snapshot, as a series keyed by snapshot day.
RawIndexSeries air_mobility_index(const graph::TemporalNetwork& network);

/// Inner join of several normalized series on date.
struct AlignedTable {
  std::vector<Date> dates;                   // common dates, ascending
  std::vector<std::string> names;            // one per input series
  std::vector<std::vector<double>> columns;  // columns[s][row]
  std::vector<Date> dropped;                 // dates missing from >= 1 series
};

AlignedTable align(const std::vector<NormalizedSeries>& series);

}  // namespace mobevt::indices
