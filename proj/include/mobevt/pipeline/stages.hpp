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

#include "mobevt/pipeline/config.hpp"

namespace mobevt::pipeline {

inline constexpr const char* kToolVersion = "0.1.0";

struct StageResult {
  std::string name;
  std::vector<std::string> outputs;  // paths relative to out_dir, in write order
  std::vector<std::string> warnings;
  bool ok = true;
};

/// Deliberately carries no wall-clock timestamps: identical configs must
/// produce byte-identical output trees, manifest included. Stage order
/// records the execution sequence instead.
struct RunManifest {
  std::string tool_version = kToolVersion;
  std::string config_digest;
  std::uint64_t seed = 0;
  std::vector<StageResult> stages;
  std::string failed_stage;  // empty on success
};

/// Weekly + monthly snapshot summary tables.
StageResult cmd_build_network(const PipelineConfig& config);

/// Normalized index series (driving trend, air mobility, COVID variables,
/// price) with mean/sd sidecars.
StageResult cmd_indices(const PipelineConfig& config);

/// Quantile-regression table over the configured tau grid plus per-tau
/// fitted-line data.
StageResult cmd_quantreg(const PipelineConfig& config);

/// GEV model selection, parameter table, return levels, curves and
/// diagnostics.
StageResult cmd_gev(const PipelineConfig& config);

/// All stages in dependency order; a failure halts the run with prior
/// outputs retained and the manifest marking the failure point.
RunManifest cmd_run_all(const PipelineConfig& config);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& out_dir);

/// Run one stage and write a single-stage manifest, as the CLI subcommands
/// do.
RunManifest run_single_stage(const PipelineConfig& config, const std::string& stage_name);

}  // namespace mobevt::pipeline
