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
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mobevt/core/error.hpp"
#include "mobevt/core/exec.hpp"
#include "mobevt/pipeline/config.hpp"
#include "mobevt/pipeline/stages.hpp"

namespace {

// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numerical
// failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct CliArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, CliArgs& args) {
  cmd->add_option("--config", args.config_path, "Path to the JSON config file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out_dir, "Output directory (overrides config and MOBEVT_OUT_DIR)");
  cmd->add_option("--seed", args.seed, "Random seed (overrides config)");
  cmd->add_option("--threads", args.threads, "Worker threads for parallel sections");
}

mobevt::pipeline::PipelineConfig load(const CliArgs& args) {
  mobevt::pipeline::ConfigOverrides overrides;
  if (!args.out_dir.empty()) {
    overrides.out_dir = args.out_dir;
  } else if (const char* env = std::getenv("MOBEVT_OUT_DIR"); env != nullptr && *env != '\0') {
    overrides.out_dir = std::string(env);
  }
  overrides.seed = args.seed;
  overrides.threads = args.threads;
  auto cfg = mobevt::pipeline::load_config(args.config_path, overrides);
  if (cfg.threads > 0) mobevt::core::set_threads(cfg.threads);
  return cfg;
}

void report(const mobevt::pipeline::RunManifest& manifest) {
  for (const auto& stage : manifest.stages) {
    std::cout << stage.name << ": " << (stage.ok ? "ok" : "failed") << ", "
              << stage.outputs.size() << " file(s)";
    if (!stage.warnings.empty()) std::cout << ", " << stage.warnings.size() << " warning(s)";
    std::cout << "\n";
    for (const auto& warning : stage.warnings) std::cout << "  warning: " << warning << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal airline networks, mobility indices, quantile regression and "
               "extreme-value models for price series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mobevt::pipeline::kToolVersion);

  CliArgs args;
  std::string stage_for_subcommand;
  for (const char* name : {"build-network", "indices", "quantreg", "gev", "run-all"}) {
    auto* cmd = app.add_subcommand(name);
    add_common(cmd, args);
    cmd->callback([&, name] { stage_for_subcommand = name; });
  }
  app.get_subcommand("build-network")->description("Weekly and monthly snapshot summaries");
  app.get_subcommand("indices")->description("Normalized index series with mean/sd sidecars");
  app.get_subcommand("quantreg")->description("Quantile-regression tables and line data");
  app.get_subcommand("gev")->description("GEV model selection, return levels, diagnostics");
  app.get_subcommand("run-all")->description("All stages in dependency order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const auto cfg = load(args);
    if (stage_for_subcommand == "run-all") {
      report(mobevt::pipeline::cmd_run_all(cfg));
    } else {
      report(mobevt::pipeline::run_single_stage(cfg, stage_for_subcommand));
    }
    return kExitOk;
  } catch (const mobevt::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mobevt::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const mobevt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
