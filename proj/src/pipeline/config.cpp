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
#include "mobevt/pipeline/config.hpp"

#include <json.hpp>

#include "mobevt/core/csv.hpp"
#include "mobevt/core/error.hpp"
#include "mobevt/core/stats.hpp"

namespace mobevt::pipeline {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& reason) {
  throw ConfigError("config: " + path + ": " + reason);
}

const json& require(const json& node, const std::string& key, const std::string& path) {
  const auto it = node.find(key);
  if (it == node.end()) fail(path + "." + key, "missing");
  return *it;
}

std::string get_string(const json& node, const std::string& key, const std::string& path) {
  const json& v = require(node, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected string");
  return v.get<std::string>();
}

std::string get_string_or(const json& node, const std::string& key, const std::string& path,
                          const std::string& fallback) {
  const auto it = node.find(key);
  if (it == node.end()) return fallback;
  if (!it->is_string()) fail(path + "." + key, "expected string");
  return it->get<std::string>();
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected number");
  return v.get<double>();
}

core::Date get_date(const json& node, const std::string& key, const std::string& path) {
  const std::string s = get_string(node, key, path);
  try {
    return core::parse_iso_date(s);
  } catch (const ParseError& e) {
    fail(path + "." + key, e.what());
  }
}

char get_delimiter(const json& node, const std::string& path) {
  const std::string d = get_string_or(node, "delimiter", path, ",");
  if (d.size() != 1) fail(path + ".delimiter", "expected a single character");
  return d[0];
}

ingest::SeriesSchema series_schema(const json& node, const std::string& path) {
  ingest::SeriesSchema schema;
  schema.date_column = get_string_or(node, "date", path, "date");
  schema.value_column = get_string_or(node, "value", path, "value");
  schema.date_format = get_string_or(node, "date_format", path, "YYYY-MM-DD");
  schema.delimiter = get_delimiter(node, path);
  return schema;
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::filesystem::path& p) {
  return p.is_absolute() ? p : base / p;
}

}  // namespace

PipelineConfig load_config(const std::filesystem::path& config_path,
                           const ConfigOverrides& overrides) {
  json root;
  try {
    root = json::parse(core::read_file(config_path));
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + config_path.string() + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  const std::filesystem::path base = config_path.has_parent_path()
                                         ? config_path.parent_path()
                                         : std::filesystem::path(".");

  PipelineConfig cfg;
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) fail("seed", "expected unsigned integer");
    cfg.seed = root["seed"].get<std::uint64_t>();
  }
  cfg.out_dir = get_string_or(root, "out_dir", "", "out");
  if (root.contains("threads")) {
    cfg.threads = static_cast<int>(get_number(root["threads"], "threads"));
  }

  const json& window = require(root, "window", "");
  cfg.window_start = get_date(window, "start", "window");
  cfg.window_end = get_date(window, "end", "window");
  if (!(cfg.window_start < cfg.window_end)) fail("window", "start must precede end");

  if (root.contains("monthly_window")) {
    const json& mw = root["monthly_window"];
    cfg.monthly_start = get_date(mw, "start", "monthly_window");
    cfg.monthly_end = get_date(mw, "end", "monthly_window");
    if (!(cfg.monthly_start < cfg.monthly_end)) fail("monthly_window", "start must precede end");
  } else {
    cfg.monthly_start = cfg.window_start;
    cfg.monthly_end = cfg.window_end;
  }

  const std::string mode = get_string_or(root, "parse_mode", "", "strict");
  if (mode == "strict") {
    cfg.parse_mode = ingest::ParseMode::strict;
  } else if (mode == "lenient") {
    cfg.parse_mode = ingest::ParseMode::lenient;
  } else {
    fail("parse_mode", "expected 'strict' or 'lenient'");
  }

  const json& inputs = require(root, "inputs", "");
  {
    const json& fl = require(inputs, "flights", "inputs");
    cfg.flights_path = resolve(base, get_string(fl, "path", "inputs.flights"));
    cfg.flight_schema.origin_column = get_string_or(fl, "origin", "inputs.flights", "origin");
    cfg.flight_schema.destination_column =
        get_string_or(fl, "destination", "inputs.flights", "destination");
    cfg.flight_schema.date_column = get_string_or(fl, "date", "inputs.flights", "date");
    cfg.flight_schema.cancelled_column = get_string_or(fl, "cancelled", "inputs.flights", "");
    cfg.flight_schema.date_format =
        get_string_or(fl, "date_format", "inputs.flights", "YYYY-MM-DD");
    cfg.flight_schema.delimiter = get_delimiter(fl, "inputs.flights");
  }
  if (inputs.contains("airports")) {
    const json& ap = inputs["airports"];
    cfg.airports_path = resolve(base, get_string(ap, "path", "inputs.airports"));
    cfg.airport_schema.code_column = get_string_or(ap, "code", "inputs.airports", "code");
    cfg.airport_schema.latitude_column =
        get_string_or(ap, "latitude", "inputs.airports", "latitude");
    cfg.airport_schema.longitude_column =
        get_string_or(ap, "longitude", "inputs.airports", "longitude");
    cfg.airport_schema.delimiter = get_delimiter(ap, "inputs.airports");
  }
  {
    const json& pr = require(inputs, "prices", "inputs");
    cfg.prices_path = resolve(base, get_string(pr, "path", "inputs.prices"));
    cfg.price_schema = series_schema(pr, "inputs.prices");
  }
  {
    const json& mo = require(inputs, "mobility", "inputs");
    cfg.mobility_path = resolve(base, get_string(mo, "path", "inputs.mobility"));
    cfg.mobility_schema = series_schema(mo, "inputs.mobility");
  }
  if (inputs.contains("covid")) {
    const json& cv = inputs["covid"];
    if (!cv.is_array()) fail("inputs.covid", "expected array");
    for (std::size_t i = 0; i < cv.size(); ++i) {
      const std::string path = "inputs.covid[" + std::to_string(i) + "]";
      CovidSourceConfig src;
      src.name = get_string(cv[i], "name", path);
      src.path = resolve(base, get_string(cv[i], "path", path));
      src.schema = series_schema(cv[i], path);
      cfg.covid_sources.push_back(std::move(src));
    }
  }

  if (root.contains("quantreg")) {
    const json& qr = root["quantreg"];
    const json& taus = require(qr, "tau_grid", "quantreg");
    if (!taus.is_array() || taus.empty()) fail("quantreg.tau_grid", "expected non-empty array");
    for (std::size_t i = 0; i < taus.size(); ++i) {
      const double tau = get_number(taus[i], "quantreg.tau_grid[" + std::to_string(i) + "]");
      if (!(tau > 0.0 && tau < 1.0)) {
        fail("quantreg.tau_grid[" + std::to_string(i) + "]", "tau must lie in (0, 1)");
      }
      cfg.tau_grid.push_back(tau);
    }
    if (qr.contains("bootstrap_replicates")) {
      cfg.bootstrap_replicates =
          static_cast<std::size_t>(get_number(qr["bootstrap_replicates"],
                                              "quantreg.bootstrap_replicates"));
    }
  }

  if (root.contains("gev")) {
    const json& gev = root["gev"];
    if (gev.contains("specs")) {
      const json& specs = gev["specs"];
      if (!specs.is_array()) fail("gev.specs", "expected array");
      for (std::size_t i = 0; i < specs.size(); ++i) {
        const std::string path = "gev.specs[" + std::to_string(i) + "]";
        evt::GevSpec spec;
        spec.name = get_string(specs[i], "name", path);
        for (const auto& key : {"location", "logscale"}) {
          if (!specs[i].contains(key)) continue;
          if (!specs[i][key].is_array()) fail(path + "." + key, "expected array");
          for (const auto& term : specs[i][key]) {
            if (!term.is_string()) fail(path + "." + key, "expected array of strings");
            if (std::string(key) == "location") {
              spec.location_terms.push_back(term.get<std::string>());
            } else {
              spec.logscale_terms.push_back(term.get<std::string>());
            }
          }
        }
        cfg.gev_specs.push_back(std::move(spec));
      }
    }
    cfg.gev_covariate_scale = get_string_or(gev, "covariate_scale", "gev", "raw");
    if (cfg.gev_covariate_scale != "raw" && cfg.gev_covariate_scale != "normalized") {
      fail("gev.covariate_scale", "expected 'raw' or 'normalized'");
    }
    if (gev.contains("restarts")) {
      cfg.gev_restarts = static_cast<std::size_t>(get_number(gev["restarts"], "gev.restarts"));
    }
    if (gev.contains("scenarios")) {
      const json& sc = gev["scenarios"];
      if (!sc.is_array()) fail("gev.scenarios", "expected array");
      for (std::size_t i = 0; i < sc.size(); ++i) {
        const std::string path = "gev.scenarios[" + std::to_string(i) + "]";
        ScenarioConfig scenario;
        scenario.name = get_string(sc[i], "name", path);
        const json& cov = require(sc[i], "covariates", path);
        if (!cov.is_object()) fail(path + ".covariates", "expected object");
        for (const auto& [key, value] : cov.items()) {
          scenario.covariates[key] = get_number(value, path + ".covariates." + key);
        }
        const json& rp = require(sc[i], "return_periods", path);
        if (!rp.is_array() || rp.empty()) fail(path + ".return_periods", "expected non-empty array");
        for (const auto& r : rp) {
          const double years = get_number(r, path + ".return_periods");
          if (!(years > 1.0)) fail(path + ".return_periods", "return periods must exceed 1");
          scenario.return_periods.push_back(years);
        }
        cfg.scenarios.push_back(std::move(scenario));
      }
    }
    if (gev.contains("curve")) {
      const json& curve = gev["curve"];
      cfg.curve_r_min = curve.contains("r_min") ? get_number(curve["r_min"], "gev.curve.r_min")
                                                : cfg.curve_r_min;
      cfg.curve_r_max = curve.contains("r_max") ? get_number(curve["r_max"], "gev.curve.r_max")
                                                : cfg.curve_r_max;
      if (curve.contains("points")) {
        cfg.curve_points =
            static_cast<std::size_t>(get_number(curve["points"], "gev.curve.points"));
      }
      if (!(cfg.curve_r_min > 1.0) || !(cfg.curve_r_max > cfg.curve_r_min) ||
          cfg.curve_points < 2) {
        fail("gev.curve", "need 1 < r_min < r_max and at least 2 points");
      }
    }
  }

  // Overrides land both in the struct and in the digested document, so the
  // digest reflects the effective run.
  if (overrides.seed) {
    cfg.seed = *overrides.seed;
    root["seed"] = cfg.seed;
  }
  // out_dir and threads stay out of the digest: neither changes what the
  // pipeline computes, and runs into different directories or with different
  // worker counts must stay byte-identical.
  if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
  if (overrides.threads) cfg.threads = *overrides.threads;
  root.erase("threads");
  root.erase("out_dir");

  char digest[24];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(core::fnv1a64(root.dump())));
  cfg.digest = digest;
  return cfg;
}

}  // namespace mobevt::pipeline
