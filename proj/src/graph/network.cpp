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
#include "mobevt/graph/network.hpp"

#include <algorithm>
#include <unordered_map>

#include "mobevt/core/error.hpp"
#include "mobevt/core/stats.hpp"

namespace mobevt::graph {

NetworkSnapshot build_snapshot(std::span<const ingest::FlightRecord> flights, Date day,
                               Granularity granularity) {
  NetworkSnapshot snap;
  snap.timestamp = day;
  snap.granularity = granularity;
  for (const auto& f : flights) {
    if (f.date != day) continue;
    snap.edge_multiplicity[make_pair_key(f.origin, f.destination)] += 1;
    snap.nodes.insert(f.origin);
    snap.nodes.insert(f.destination);
  }
  return snap;
}

std::int64_t degree(const NetworkSnapshot& snapshot, const std::string& airport) {
  if (snapshot.nodes.count(airport) == 0) {
    throw DataError("airport '" + airport + "' is not a node of snapshot " +
                    snapshot.timestamp.to_string());
  }
  std::int64_t d = 0;
  for (const auto& [pair, mult] : snapshot.edge_multiplicity) {
    if (pair.first == airport || pair.second == airport) d += mult;
  }
  return d;
}

std::vector<std::int64_t> degree_sequence(const NetworkSnapshot& snapshot) {
  std::unordered_map<std::string, std::int64_t> deg;
  deg.reserve(snapshot.nodes.size());
  for (const auto& [pair, mult] : snapshot.edge_multiplicity) {
    deg[pair.first] += mult;
    deg[pair.second] += mult;
  }
  std::vector<std::int64_t> seq;
  seq.reserve(snapshot.nodes.size());
  for (const auto& node : snapshot.nodes) seq.push_back(deg[node]);
  std::sort(seq.begin(), seq.end());
  return seq;
}

DegreeSummary degree_summary(const NetworkSnapshot& snapshot) {
  if (snapshot.empty()) {
    throw DataError("degree summary of empty snapshot " + snapshot.timestamp.to_string());
  }
  const auto seq = degree_sequence(snapshot);
  std::vector<double> vals(seq.begin(), seq.end());
  DegreeSummary s;
  s.min = vals.front();
  s.max = vals.back();
  s.q1 = core::quantile_sorted(vals, 0.25);
  s.median = core::quantile_sorted(vals, 0.50);
  s.q3 = core::quantile_sorted(vals, 0.75);
  s.mean = core::mean(vals);
  return s;
}

std::map<std::int64_t, double> degree_distribution(const NetworkSnapshot& snapshot) {
  if (snapshot.empty()) {
    throw DataError("degree distribution of empty snapshot " +
                    snapshot.timestamp.to_string());
  }
  const auto seq = degree_sequence(snapshot);
  std::map<std::int64_t, std::int64_t> counts;
  for (auto d : seq) counts[d] += 1;
  std::map<std::int64_t, double> dist;
  const auto n = static_cast<double>(seq.size());
  for (const auto& [d, c] : counts) dist[d] = static_cast<double>(c) / n;
  return dist;
}

TemporalNetwork build_temporal_network(std::span<const ingest::FlightRecord> flights,
                                       std::span<const Date> sample_days,
                                       Granularity granularity, Exec exec) {
  for (std::size_t i = 1; i < sample_days.size(); ++i) {
    if (!(sample_days[i - 1] < sample_days[i])) {
      throw ConfigError("sample days must be strictly increasing");
    }
  }
  // Bucket flights by day once so each snapshot only scans its own flights.
  std::unordered_map<std::int64_t, std::vector<ingest::FlightRecord>> by_day;
  {
    std::unordered_map<std::int64_t, std::size_t> wanted;
    for (std::size_t i = 0; i < sample_days.size(); ++i) wanted.emplace(sample_days[i].serial(), i);
    for (const auto& f : flights) {
      if (wanted.count(f.date.serial()) > 0) by_day[f.date.serial()].push_back(f);
    }
  }

  TemporalNetwork net;
  net.granularity = granularity;
  net.snapshots.resize(sample_days.size());
  core::for_index(sample_days.size(), exec, [&](std::size_t i) {
    const auto it = by_day.find(sample_days[i].serial());
    if (it == by_day.end()) {
      net.snapshots[i] = build_snapshot({}, sample_days[i], granularity);
    } else {
      net.snapshots[i] = build_snapshot(it->second, sample_days[i], granularity);
    }
  });
  return net;
}

}  // namespace mobevt::graph
