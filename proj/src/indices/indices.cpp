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
#include "mobevt/indices/indices.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mobevt/core/error.hpp"
#include "mobevt/core/stats.hpp"

namespace mobevt::indices {

WeeklyAverageResult weekly_average(const RawIndexSeries& daily, Date window_start,
                                   Date window_end) {
  if (window_end < window_start) throw ConfigError("empty aggregation window");

  std::map<std::int64_t, std::pair<double, std::int64_t>> weeks;  // Monday serial -> (sum, n)
  for (const auto& obs : daily.observations) {
    if (obs.date < window_start || window_end < obs.date) continue;
    const std::int64_t key = obs.date.week_start().serial();
    auto& [sum, n] = weeks[key];
    sum += obs.value;
    n += 1;
  }

  WeeklyAverageResult result;
  result.series.name = daily.name;
  result.series.kind = daily.kind;
  for (Date monday = window_start.week_start(); monday <= window_end;
       monday = monday.plus_days(7)) {
    const auto it = weeks.find(monday.serial());
    if (it == weeks.end()) {
      result.empty_weeks.push_back(monday);
      continue;
    }
    const auto& [sum, n] = it->second;
    result.series.observations.push_back({monday, sum / static_cast<double>(n)});
  }
  return result;
}

NormalizedSeries zscore(const RawIndexSeries& raw) {
  if (raw.observations.size() < 2) {
    throw DataError("series '" + raw.name + "' needs at least 2 observations to normalize");
  }
  std::vector<double> values;
  values.reserve(raw.observations.size());
  for (const auto& obs : raw.observations) values.push_back(obs.value);
  const double mu = core::mean(values);
  const double sd = core::sample_sd(values);
  if (!(sd > 0.0)) {
    throw DataError("series '" + raw.name + "' is constant; z-score undefined");
  }
  NormalizedSeries out;
  out.source_name = raw.name;
  out.mean_used = mu;
  out.sd_used = sd;
  out.observations.reserve(raw.observations.size());
  for (const auto& obs : raw.observations) {
    out.observations.push_back({obs.date, (obs.value - mu) / sd});
  }
  return out;
}

RawIndexSeries air_mobility_index(const graph::TemporalNetwork& network) {
  RawIndexSeries out;
  out.kind = IndexKind::air_mobility;
  out.name = network.granularity == graph::Granularity::weekly ? "ami_w" : "ami_m";
  out.observations.reserve(network.snapshots.size());
  for (const auto& snap : network.snapshots) {
    out.observations.push_back({snap.timestamp, static_cast<double>(snap.edge_count())});
  }
  return out;
}

AlignedTable align(const std::vector<NormalizedSeries>& series) {
  if (series.empty()) throw ConfigError("align needs at least one series");

  std::set<std::int64_t> common;
  std::set<std::int64_t> all;
  for (std::size_t s = 0; s < series.size(); ++s) {
    std::set<std::int64_t> dates;
    for (const auto& obs : series[s].observations) dates.insert(obs.date.serial());
    all.insert(dates.begin(), dates.end());
    if (s == 0) {
      common = std::move(dates);
    } else {
      std::set<std::int64_t> next;
      std::set_intersection(common.begin(), common.end(), dates.begin(), dates.end(),
                            std::inserter(next, next.begin()));
      common = std::move(next);
    }
  }
  if (common.empty()) throw DataError("aligned series share no dates");

  AlignedTable table;
  for (auto serial : common) table.dates.push_back(Date::from_serial(serial));
  for (auto serial : all) {
    if (common.count(serial) == 0) table.dropped.push_back(Date::from_serial(serial));
  }
  table.columns.resize(series.size());
  for (std::size_t s = 0; s < series.size(); ++s) {
    table.names.push_back(series[s].source_name);
    std::map<std::int64_t, double> lookup;
    for (const auto& obs : series[s].observations) lookup[obs.date.serial()] = obs.value;
    table.columns[s].reserve(common.size());
    for (auto serial : common) table.columns[s].push_back(lookup.at(serial));
  }
  return table;
}

}  // namespace mobevt::indices
