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

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mobevt/core/date.hpp"
#include "mobevt/core/exec.hpp"
#include "mobevt/ingest/ingest.hpp"

namespace mobevt::graph {

using core::Date;
using core::Exec;

enum class Granularity { weekly, monthly };

/// Unordered airport pair with canonical ordering (first < second).
using AirportPair = std::pair<std::string, std::string>;

inline AirportPair make_pair_key(const std::string& a, const std::string& b) {
  return a < b ? AirportPair{a, b} : AirportPair{b, a};
}

/// Undirected multigraph of one sample day. Edge multiplicities count flight
/// legs between an airport pair; degree therefore counts departed-plus-landed
/// flight operations, not distinct neighbours.
struct NetworkSnapshot {
  Date timestamp;
  Granularity granularity = Granularity::weekly;
  std::set<std::string> nodes;
  std::map<AirportPair, std::int64_t> edge_multiplicity;

  std::size_t node_count() const noexcept { return nodes.size(); }

  /// Total flight legs: the sum of multiplicities.
  std::int64_t edge_count() const noexcept {
    std::int64_t total = 0;
    for (const auto& [pair, mult] : edge_multiplicity) total += mult;
    return total;
  }

  /// Number of distinct connected airport pairs (the 0/1 adjacency view).
  std::size_t simple_edge_count() const noexcept { return edge_multiplicity.size(); }

  bool empty() const noexcept { return nodes.empty(); }
};

/// Six-number summary of a snapshot's degree sequence.
struct DegreeSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

struct TemporalNetwork {
  std::vector<NetworkSnapshot> snapshots;  // strictly increasing timestamps
  Granularity granularity = Granularity::weekly;
};

/// Build the snapshot for one day: only flights dated exactly `day`
/// contribute, each leg adds 1 to its unordered pair.
NetworkSnapshot build_snapshot(std::span<const ingest::FlightRecord> flights, Date day,
                               Granularity granularity = Granularity::weekly);

/// Departed-plus-landed flight count at `airport`; throws DataError when the
/// airport is not a node of the snapshot.
std::int64_t degree(const NetworkSnapshot& snapshot, const std::string& airport);

/// Degree sequence over all nodes, sorted ascending.
std::vector<std::int64_t> degree_sequence(const NetworkSnapshot& snapshot);

/// Six-number summary (type-7 quartiles); throws DataError on an empty
/// snapshot.
DegreeSummary degree_summary(const NetworkSnapshot& snapshot);

/// Fraction of nodes at each realized degree; sums to 1.
std::map<std::int64_t, double> degree_distribution(const NetworkSnapshot& snapshot);

/// One snapshot per sample day. Days must be strictly increasing. Snapshots
/// are independent, so the OpenMP path builds them concurrently.
TemporalNetwork build_temporal_network(std::span<const ingest::FlightRecord> flights,
                                       std::span<const Date> sample_days,
                                       Granularity granularity,
                                       Exec exec = Exec::openmp);

}  // namespace mobevt::graph
