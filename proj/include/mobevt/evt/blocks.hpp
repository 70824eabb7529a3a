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

#include <map>
#include <span>
#include <string>
#include <vector>

#include "mobevt/ingest/ingest.hpp"

namespace mobevt::evt {

enum class Orientation { minima, maxima };

/// One calendar-month block: its extremum and the covariates attached to it.
/// The covariate "t" is the 1-based block counter.
struct Block {
  std::string label;  // "YYYY-MM"
  double extremum = 0.0;
  std::map<std::string, double> covariates;
};

struct BlockSeries {
  std::vector<Block> blocks;  // labels strictly increasing
  Orientation orientation = Orientation::maxima;
};

struct BlockMinimaResult {
  BlockSeries series;
  std::vector<std::string> empty_months;  // gap report
};

/// Monthly block minima of a series. Months with no observations are omitted
/// and reported. Each block gets the covariate t = 1, 2, ... in order.
BlockMinimaResult block_minima(std::span<const ingest::SeriesObservation> series);

/// Flip minima to maxima: extrema negated, covariates untouched. Throws
/// DataError when called on a maxima series.
BlockSeries negate(const BlockSeries& blocks);

/// Join a covariate onto the blocks by month label; every block must find a
/// value. Throws DataError naming the first missing month.
void attach_covariate(BlockSeries& blocks, const std::string& name,
                      const std::map<std::string, double>& by_month);

}  // namespace mobevt::evt
