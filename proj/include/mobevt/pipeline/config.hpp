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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mobevt/core/date.hpp"
#include "mobevt/evt/fit.hpp"
#include "mobevt/ingest/ingest.hpp"

namespace mobevt::pipeline {

struct CovidSourceConfig {
  std::string name;
  std::filesystem::path path;
  ingest::SeriesSchema schema;
};

struct ScenarioConfig {
  std::string name;
  std::map<std::string, double> covariates;
  std::vector<double> return_periods;
};

/// Everything a run needs, loaded from one JSON file. Relative input paths
/// resolve against the config file's directory; a relative out_dir resolves
/// against the working directory.
struct PipelineConfig {
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
  int threads = 0;  // 0: library default

  core::Date window_start;  // weekly analysis window
  core::Date window_end;
  core::Date monthly_start;  // monthly network + block minima window
  core::Date monthly_end;

  ingest::ParseMode parse_mode = ingest::ParseMode::strict;

  std::filesystem::path flights_path;
  ingest::FlightSchema flight_schema;
  std::optional<std::filesystem::path> airports_path;
  ingest::AirportSchema airport_schema;
  std::filesystem::path prices_path;
  ingest::SeriesSchema price_schema;
  std::filesystem::path mobility_path;
  ingest::SeriesSchema mobility_schema;
  std::vector<CovidSourceConfig> covid_sources;

  std::vector<double> tau_grid;
  std::size_t bootstrap_replicates = 1000;

  std::vector<evt::GevSpec> gev_specs;
  std::string gev_covariate_scale = "raw";  // or "normalized"
  std::size_t gev_restarts = 5;
  std::vector<ScenarioConfig> scenarios;
  double curve_r_min = 2.0;
  double curve_r_max = 100.0;
  std::size_t curve_points = 25;

  std::string digest;  // stable hex digest of the effective configuration
};

struct ConfigOverrides {
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

/// Parse and validate the JSON config, apply overrides, compute the digest.
/// Every validation error names the offending config path.
PipelineConfig load_config(const std::filesystem::path& config_path,
                           const ConfigOverrides& overrides = {});

}  // namespace mobevt::pipeline
