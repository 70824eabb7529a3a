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
#include "mobevt/evt/blocks.hpp"

#include <algorithm>

#include "mobevt/core/error.hpp"

namespace mobevt::evt {

BlockMinimaResult block_minima(std::span<const ingest::SeriesObservation> series) {
  if (series.empty()) throw DataError("block minima of an empty series");

  BlockMinimaResult result;
  result.series.orientation = Orientation::minima;

  auto sorted = std::vector<ingest::SeriesObservation>(series.begin(), series.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.date < b.date; });

  std::map<std::string, double> minima;  // ordered by label
  for (const auto& obs : sorted) {
    const std::string label = obs.date.month_label();
    const auto it = minima.find(label);
    if (it == minima.end() || obs.value < it->second) minima[label] = obs.value;
  }

  // Walk every calendar month between the first and last observation so
  // gaps are visible, then index the kept blocks 1..n.
  core::Date cursor(sorted.front().date.year(), sorted.front().date.month(), 1);
  const core::Date last(sorted.back().date.year(), sorted.back().date.month(), 1);
  while (cursor <= last) {
    const std::string label = cursor.month_label();
    const auto it = minima.find(label);
    if (it == minima.end()) {
      result.empty_months.push_back(label);
    } else {
      Block block;
      block.label = label;
      block.extremum = it->second;
      result.series.blocks.push_back(std::move(block));
    }
    cursor = cursor.month() == 12 ? core::Date(cursor.year() + 1, 1, 1)
                                  : core::Date(cursor.year(), cursor.month() + 1, 1);
  }
  for (std::size_t i = 0; i < result.series.blocks.size(); ++i) {
    result.series.blocks[i].covariates["t"] = static_cast<double>(i + 1);
  }
  return result;
}

BlockSeries negate(const BlockSeries& blocks) {
  if (blocks.orientation != Orientation::minima) {
    throw DataError("negate expects a minima-oriented block series");
  }
  BlockSeries out = blocks;
  out.orientation = Orientation::maxima;
  for (Block& b : out.blocks) b.extremum = -b.extremum;
  return out;
}

void attach_covariate(BlockSeries& blocks, const std::string& name,
                      const std::map<std::string, double>& by_month) {
  for (Block& b : blocks.blocks) {
    const auto it = by_month.find(b.label);
    if (it == by_month.end()) {
      throw DataError("covariate '" + name + "' has no value for month " + b.label);
    }
    b.covariates[name] = it->second;
  }
}

}  // namespace mobevt::evt
