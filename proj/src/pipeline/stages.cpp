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
#include "mobevt/pipeline/stages.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

#include "mobevt/core/csv.hpp"
#include "mobevt/core/error.hpp"
#include "mobevt/core/stats.hpp"
#include "mobevt/evt/analysis.hpp"
#include "mobevt/evt/blocks.hpp"
#include "mobevt/graph/network.hpp"
#include "mobevt/indices/indices.hpp"
#include "mobevt/quantreg/quantreg.hpp"

namespace mobevt::pipeline {

namespace {

using core::Date;
using core::format_fixed;
using core::format_g17;
using json = nlohmann::ordered_json;

std::string fmt_opt(double v) { return std::isnan(v) ? "" : format_g17(v); }

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-';
    out += ok ? c : '_';
  }
  return out.empty() ? "unnamed" : out;
}

/// Writes name.csv plus a JSON mirror with identical cell content.
void write_table(const PipelineConfig& cfg, StageResult& stage, const std::string& name,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::string csv;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j > 0) csv += ',';
    csv += core::csv_escape(header[j]);
  }
  csv += '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) csv += ',';
      csv += core::csv_escape(row[j]);
    }
    csv += '\n';
  }
  core::write_file(cfg.out_dir / (name + ".csv"), csv);
  stage.outputs.push_back(name + ".csv");

  json mirror;
  mirror["columns"] = header;
  mirror["rows"] = rows;
  core::write_file(cfg.out_dir / (name + ".json"), mirror.dump(2) + "\n");
  stage.outputs.push_back(name + ".json");
}

void write_json(const PipelineConfig& cfg, StageResult& stage, const std::string& name,
                const json& doc) {
  core::write_file(cfg.out_dir / name, doc.dump(2) + "\n");
  stage.outputs.push_back(name);
}

ingest::FlightParseResult load_flights(const PipelineConfig& cfg, StageResult& stage) {
  const auto parsed =
      ingest::parse_flights(core::read_file(cfg.flights_path), cfg.flight_schema,
                            cfg.parse_mode);
  if (parsed.dropped_cancelled > 0) {
    stage.warnings.push_back(std::to_string(parsed.dropped_cancelled) +
                             " cancelled flight row(s) dropped");
  }
  if (!parsed.errors.empty()) {
    stage.warnings.push_back(std::to_string(parsed.errors.size()) +
                             " malformed flight row(s) skipped (lenient mode)");
  }
  if (parsed.records.empty()) stage.warnings.push_back("flights file has no usable rows");
  return parsed;
}

std::vector<ingest::SeriesObservation> load_series(const std::filesystem::path& path,
                                                   const ingest::SeriesSchema& schema,
                                                   const PipelineConfig& cfg,
                                                   StageResult& stage,
                                                   const std::string& label) {
  const auto parsed = ingest::parse_series(core::read_file(path), schema, cfg.parse_mode);
  if (!parsed.errors.empty()) {
    stage.warnings.push_back(label + ": " + std::to_string(parsed.errors.size()) +
                             " bad row(s) skipped (lenient mode)");
  }
  if (parsed.observations.empty()) throw DataError(label + " series is empty");
  return parsed.observations;
}

indices::RawIndexSeries as_raw(const std::string& name, indices::IndexKind kind,
                               std::vector<ingest::SeriesObservation> obs) {
  indices::RawIndexSeries raw;
  raw.name = name;
  raw.kind = kind;
  raw.observations = std::move(obs);
  return raw;
}

/// Weekly average over the analysis window, gaps reported as warnings.
/// Boundary weeks that only partially overlap the window are dropped so
/// every emitted index covers the same set of complete Monday-through-Sunday
/// weeks.
indices::RawIndexSeries weekly_of(const PipelineConfig& cfg, StageResult& stage,
                                  const indices::RawIndexSeries& daily) {
  auto result = indices::weekly_average(daily, cfg.window_start, cfg.window_end);
  for (const Date& monday : result.empty_weeks) {
    stage.warnings.push_back(daily.name + ": no observations in week of " +
                             monday.to_string());
  }
  auto& obs = result.series.observations;
  const auto partial = [&](const ingest::SeriesObservation& o) {
    return o.date < cfg.window_start || cfg.window_end < o.date.plus_days(6);
  };
  for (const auto& o : obs) {
    if (partial(o)) {
      stage.warnings.push_back(daily.name + ": partial week of " + o.date.to_string() +
                               " dropped");
    }
  }
  obs.erase(std::remove_if(obs.begin(), obs.end(), partial), obs.end());
  return std::move(result.series);
}

/// Weekly air mobility, keyed by the Sunday sample day.
indices::RawIndexSeries weekly_ami_raw(const PipelineConfig& cfg,
                                       std::span<const ingest::FlightRecord> flights) {
  const auto sundays = core::sundays_in(cfg.window_start, cfg.window_end);
  const auto network =
      graph::build_temporal_network(flights, sundays, graph::Granularity::weekly);
  return indices::air_mobility_index(network);
}

/// The same series re-keyed to the Monday starting each Sunday's week, so
/// the weekly indices align on a common date key.
indices::RawIndexSeries weekly_ami(const PipelineConfig& cfg,
                                   std::span<const ingest::FlightRecord> flights) {
  auto raw = weekly_ami_raw(cfg, flights);
  for (auto& obs : raw.observations) obs.date = obs.date.week_start();
  return raw;
}

indices::RawIndexSeries monthly_ami(const PipelineConfig& cfg,
                                    std::span<const ingest::FlightRecord> flights) {
  const auto mids = core::month_15ths_in(cfg.monthly_start, cfg.monthly_end);
  const auto network =
      graph::build_temporal_network(flights, mids, graph::Granularity::monthly);
  return indices::air_mobility_index(network);
}

void write_index(const PipelineConfig& cfg, StageResult& stage, const std::string& file_stem,
                 const indices::NormalizedSeries& series) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(series.observations.size());
  for (const auto& obs : series.observations) {
    rows.push_back({obs.date.to_string(), format_g17(obs.value)});
  }
  write_table(cfg, stage, file_stem, {"date", "value"}, rows);

  json meta;
  meta["source"] = series.source_name;
  meta["mean"] = series.mean_used;
  meta["sd"] = series.sd_used;
  meta["observations"] = series.observations.size();
  write_json(cfg, stage, file_stem + ".meta.json", meta);
}

void write_raw_series(const PipelineConfig& cfg, StageResult& stage,
                      const std::string& file_stem, const indices::RawIndexSeries& series) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(series.observations.size());
  for (const auto& obs : series.observations) {
    rows.push_back({obs.date.to_string(), format_g17(obs.value)});
  }
  write_table(cfg, stage, file_stem, {"date", "value"}, rows);
}

struct WeeklyIndexSet {
  indices::NormalizedSeries price;
  indices::NormalizedSeries driving;
  indices::NormalizedSeries ami;
};

WeeklyIndexSet build_weekly_indices(const PipelineConfig& cfg, StageResult& stage,
                                    std::span<const ingest::FlightRecord> flights) {
  WeeklyIndexSet set;
  const auto prices = load_series(cfg.prices_path, cfg.price_schema, cfg, stage, "price");
  set.price = indices::zscore(
      weekly_of(cfg, stage, as_raw("price", indices::IndexKind::price, prices)));
  const auto mobility =
      load_series(cfg.mobility_path, cfg.mobility_schema, cfg, stage, "mobility");
  set.driving = indices::zscore(
      weekly_of(cfg, stage, as_raw("driving", indices::IndexKind::driving_trend, mobility)));
  set.ami = indices::zscore(weekly_ami(cfg, flights));
  return set;
}

}  // namespace

StageResult cmd_build_network(const PipelineConfig& cfg) {
  StageResult stage;
  stage.name = "build-network";
  const auto parsed = load_flights(cfg, stage);

  if (cfg.airports_path) {
    const auto registry = ingest::parse_airports(core::read_file(*cfg.airports_path),
                                                 cfg.airport_schema);
    const auto report = ingest::validate_airports(parsed.records, registry);
    if (!report.ok()) {
      stage.warnings.push_back(std::to_string(report.unresolved.size()) +
                               " flight endpoint(s) missing from the airport registry");
      std::vector<std::vector<std::string>> rows;
      for (const auto& item : report.unresolved) {
        rows.push_back({item.record.date.to_string(), item.record.origin,
                        item.record.destination, item.unknown_code});
      }
      write_table(cfg, stage, "unknown_airports",
                  {"date", "origin", "destination", "unknown_code"}, rows);
    }
  }

  const auto summarize = [&](const graph::TemporalNetwork& net, const std::string& name) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& snap : net.snapshots) {
      if (snap.empty()) {
        stage.warnings.push_back("no flights on " + snap.timestamp.to_string());
        rows.push_back({snap.timestamp.to_string(), "0", "0", "", "", "", "", "", ""});
        continue;
      }
      const auto s = graph::degree_summary(snap);
      rows.push_back({snap.timestamp.to_string(), std::to_string(snap.node_count()),
                      std::to_string(snap.edge_count()), format_g17(s.min), format_g17(s.q1),
                      format_g17(s.median), format_g17(s.mean), format_g17(s.q3),
                      format_g17(s.max)});
    }
    write_table(cfg, stage, name,
                {"date", "nodes", "edges", "min", "q1", "median", "mean", "q3", "max"}, rows);
  };

  const auto sundays = core::sundays_in(cfg.window_start, cfg.window_end);
  summarize(graph::build_temporal_network(parsed.records, sundays, graph::Granularity::weekly),
            "network_weekly");
  const auto mids = core::month_15ths_in(cfg.monthly_start, cfg.monthly_end);
  summarize(graph::build_temporal_network(parsed.records, mids, graph::Granularity::monthly),
            "network_monthly");
  return stage;
}

StageResult cmd_indices(const PipelineConfig& cfg) {
  StageResult stage;
  stage.name = "indices";
  const auto parsed = load_flights(cfg, stage);

  const auto weekly = build_weekly_indices(cfg, stage, parsed.records);
  write_index(cfg, stage, "index_price", weekly.price);
  write_index(cfg, stage, "index_driving", weekly.driving);
  write_index(cfg, stage, "index_ami_w", weekly.ami);
  write_raw_series(cfg, stage, "ami_w_raw", weekly_ami_raw(cfg, parsed.records));

  const auto ami_m = monthly_ami(cfg, parsed.records);
  write_raw_series(cfg, stage, "ami_m_raw", ami_m);
  write_index(cfg, stage, "index_ami_m", indices::zscore(ami_m));

  for (const auto& covid : cfg.covid_sources) {
    const auto obs = load_series(covid.path, covid.schema, cfg, stage, covid.name);
    const auto norm = indices::zscore(weekly_of(
        cfg, stage, as_raw(covid.name, indices::IndexKind::covid_count, obs)));
    write_index(cfg, stage, "index_" + sanitize(covid.name), norm);
  }
  return stage;
}

StageResult cmd_quantreg(const PipelineConfig& cfg) {
  StageResult stage;
  stage.name = "quantreg";
  if (cfg.tau_grid.empty()) {
    throw ConfigError("quantreg.tau_grid is required for the quantreg stage");
  }
  const auto parsed = load_flights(cfg, stage);
  const auto weekly = build_weekly_indices(cfg, stage, parsed.records);

  const auto table = indices::align({weekly.price, weekly.driving, weekly.ami});
  for (const Date& dropped : table.dropped) {
    stage.warnings.push_back("alignment dropped " + dropped.to_string());
  }
  const std::size_t n = table.dates.size();
  const std::vector<std::string> names = {"const", "driving", "ami_w"};
  core::Mat design(n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = table.columns[1][i];
    design(i, 2) = table.columns[2][i];
  }
  const std::vector<double>& response = table.columns[0];

  quantreg::FitOptions options;
  options.bootstrap_replicates = cfg.bootstrap_replicates;
  options.seed = cfg.seed;
  const auto fits = quantreg::fit_profile(design, response, cfg.tau_grid, names, options);

  std::vector<std::string> header = {"row"};
  for (double tau : cfg.tau_grid) header.push_back("tau_" + core::format_compact(tau));

  const auto make_rows = [&](bool std_errors) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t j = 0; j < names.size(); ++j) {
      std::vector<std::string> row = {names[j]};
      for (const auto& f : fits) {
        row.push_back(format_g17(std_errors ? f.std_errors[j] : f.coefficients[j]));
      }
      rows.push_back(std::move(row));
    }
    if (!std_errors) {
      std::vector<std::string> r2 = {"pseudo_r2"};
      for (const auto& f : fits) r2.push_back(format_g17(f.pseudo_r2));
      rows.push_back(std::move(r2));
      std::vector<std::string> obj = {"objective"};
      for (const auto& f : fits) obj.push_back(format_g17(f.objective));
      rows.push_back(std::move(obj));
    }
    return rows;
  };
  write_table(cfg, stage, "quantreg_estimates", header, make_rows(false));
  if (cfg.bootstrap_replicates > 0) {
    write_table(cfg, stage, "quantreg_std_errors", header, make_rows(true));
  }

  // Human-readable variant: estimate (se), three decimals.
  {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t j = 0; j < names.size(); ++j) {
      std::vector<std::string> row = {names[j]};
      for (const auto& f : fits) {
        std::string cell = format_fixed(f.coefficients[j], 3);
        if (!f.std_errors.empty() && !std::isnan(f.std_errors[j])) {
          cell += " (" + format_fixed(f.std_errors[j], 3) + ")";
        }
        row.push_back(std::move(cell));
      }
      rows.push_back(std::move(row));
    }
    std::vector<std::string> r2 = {"pseudo_r2"};
    for (const auto& f : fits) r2.push_back(format_fixed(f.pseudo_r2, 3));
    rows.push_back(std::move(r2));
    write_table(cfg, stage, "quantreg_report", header, rows);
  }

  json doc;
  doc["n_obs"] = n;
  doc["bootstrap"] = {{"replicates", cfg.bootstrap_replicates}, {"seed", cfg.seed}};
  doc["taus"] = cfg.tau_grid;
  doc["coefficients"] = json::array();
  for (std::size_t j = 0; j < names.size(); ++j) {
    json coef;
    coef["name"] = names[j];
    coef["estimates"] = json::array();
    coef["std_errors"] = json::array();
    for (const auto& f : fits) {
      coef["estimates"].push_back(f.coefficients[j]);
      if (!f.std_errors.empty() && !std::isnan(f.std_errors[j])) {
        coef["std_errors"].push_back(f.std_errors[j]);
      } else {
        coef["std_errors"].push_back(nullptr);
      }
    }
    doc["coefficients"].push_back(coef);
  }
  doc["pseudo_r2"] = json::array();
  doc["objective"] = json::array();
  for (const auto& f : fits) {
    doc["pseudo_r2"].push_back(f.pseudo_r2);
    doc["objective"].push_back(f.objective);
  }
  write_json(cfg, stage, "quantreg_table.json", doc);

  // Fitted lines per tau: sweep one covariate over its observed range with
  // the other held at its sample mean.
  {
    constexpr std::size_t kPoints = 25;
    std::vector<std::vector<std::string>> rows;
    std::vector<double> means(names.size(), 0.0);
    for (std::size_t j = 1; j < names.size(); ++j) {
      means[j] = core::mean(table.columns[j]);
    }
    for (std::size_t t = 0; t < fits.size(); ++t) {
      for (std::size_t j = 1; j < names.size(); ++j) {
        const auto [lo_it, hi_it] =
            std::minmax_element(table.columns[j].begin(), table.columns[j].end());
        const double lo = *lo_it;
        const double hi = *hi_it;
        for (std::size_t g = 0; g < kPoints; ++g) {
          const double x = lo + (hi - lo) * static_cast<double>(g) /
                                    static_cast<double>(kPoints - 1);
          double yhat = fits[t].coefficients[0];
          for (std::size_t o = 1; o < names.size(); ++o) {
            yhat += fits[t].coefficients[o] * (o == j ? x : means[o]);
          }
          rows.push_back({format_g17(cfg.tau_grid[t]), names[j], format_g17(x),
                          format_g17(yhat)});
        }
      }
    }
    write_table(cfg, stage, "quantreg_lines", {"tau", "covariate", "x", "yhat"}, rows);
  }
  return stage;
}

StageResult cmd_gev(const PipelineConfig& cfg) {
  StageResult stage;
  stage.name = "gev";
  if (cfg.gev_specs.empty()) {
    stage.warnings.push_back("no gev specs configured; stage skipped");
    return stage;
  }
  const auto parsed = load_flights(cfg, stage);

  auto prices = load_series(cfg.prices_path, cfg.price_schema, cfg, stage, "price");
  std::erase_if(prices, [&](const ingest::SeriesObservation& o) {
    return o.date < cfg.monthly_start || cfg.monthly_end < o.date;
  });
  if (prices.empty()) throw DataError("no price observations in the monthly window");

  auto block_result = evt::block_minima(prices);
  for (const auto& month : block_result.empty_months) {
    stage.warnings.push_back("no price observations in month " + month);
  }

  // Monthly air mobility as a block covariate, on the configured scale.
  // Boundary months whose 15th falls outside the window have a price block
  // but no network sample; drop them and renumber t over the kept sequence.
  {
    const auto ami = monthly_ami(cfg, parsed.records);
    std::map<std::string, double> by_month;
    if (cfg.gev_covariate_scale == "normalized") {
      const auto norm = indices::zscore(ami);
      for (const auto& obs : norm.observations) by_month[obs.date.month_label()] = obs.value;
    } else {
      for (const auto& obs : ami.observations) by_month[obs.date.month_label()] = obs.value;
    }
    auto& blocks = block_result.series.blocks;
    for (const auto& b : blocks) {
      if (by_month.count(b.label) == 0) {
        stage.warnings.push_back("month " + b.label +
                                 " dropped: no mid-month network sample in the window");
      }
    }
    std::erase_if(blocks, [&](const evt::Block& b) { return by_month.count(b.label) == 0; });
    if (blocks.empty()) throw DataError("no monthly blocks with network coverage");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      blocks[i].covariates["t"] = static_cast<double>(i + 1);
    }
    evt::attach_covariate(block_result.series, "ami_m", by_month);
  }

  evt::GevFitOptions options;
  options.seed = cfg.seed;
  options.restarts = cfg.gev_restarts;
  options.covariate_scale = cfg.gev_covariate_scale;
  const auto selection = evt::model_selection(block_result.series, cfg.gev_specs, options);

  std::size_t converged_fits = 0;
  {
    std::vector<std::vector<std::string>> rows;
    std::size_t rank = 0;
    for (const auto& row : selection.rows) {
      ++rank;
      if (row.fit) {
        const auto& f = *row.fit;
        if (f.converged) ++converged_fits;
        rows.push_back({std::to_string(rank), row.spec.name, row.spec.description(),
                        std::to_string(f.params.size()), format_g17(f.log_likelihood),
                        format_g17(f.aic), format_g17(f.bic),
                        f.converged ? "true" : "false", f.covariate_scale, ""});
      } else {
        stage.warnings.push_back("fit failed for '" + row.spec.name + "': " + row.error);
        rows.push_back({std::to_string(rank), row.spec.name, row.spec.description(), "", "",
                        "", "", "false", "", row.error});
      }
    }
    write_table(cfg, stage, "gev_models",
                {"rank", "model", "description", "n_params", "log_likelihood", "aic", "bic",
                 "converged", "covariate_scale", "error"},
                rows);
  }
  if (converged_fits == 0) throw NumericError("every GEV fit failed");

  {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::vector<std::string>> human;
    for (const auto& row : selection.rows) {
      if (!row.fit) continue;
      const auto& f = *row.fit;
      for (std::size_t j = 0; j < f.params.size(); ++j) {
        rows.push_back({row.spec.name, f.param_names[j], format_g17(f.params[j]),
                        f.se_available ? fmt_opt(f.std_errors[j]) : ""});
        std::string cell = format_fixed(f.params[j], 3);
        if (f.se_available && !std::isnan(f.std_errors[j])) {
          cell += " (" + format_fixed(f.std_errors[j], 3) + ")";
        }
        human.push_back({row.spec.name, f.param_names[j], std::move(cell)});
      }
    }
    write_table(cfg, stage, "gev_params", {"model", "parameter", "estimate", "std_error"},
                rows);
    write_table(cfg, stage, "gev_params_report", {"model", "parameter", "estimate_se"}, human);
  }

  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : selection.rows) {
      if (!row.fit || !row.fit->converged) continue;
      for (const auto& scenario : cfg.scenarios) {
        for (double r : scenario.return_periods) {
          try {
            const auto level = evt::return_level(*row.fit, r, scenario.covariates);
            rows.push_back({row.spec.name, scenario.name, format_g17(r),
                            format_g17(level.level)});
          } catch (const DataError& e) {
            stage.warnings.push_back("scenario '" + scenario.name + "' skipped for '" +
                                     row.spec.name + "': " + e.what());
            break;
          }
        }
      }
    }
    write_table(cfg, stage, "return_levels", {"model", "scenario", "return_period", "level"},
                rows);
  }

  {
    std::vector<std::vector<std::string>> rows;
    const double log_lo = std::log(cfg.curve_r_min);
    const double log_hi = std::log(cfg.curve_r_max);
    for (const auto& row : selection.rows) {
      if (!row.fit || !row.fit->converged) continue;
      for (const auto& scenario : cfg.scenarios) {
        bool usable = true;
        for (std::size_t g = 0; g < cfg.curve_points && usable; ++g) {
          const double r = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(g) /
                                                 static_cast<double>(cfg.curve_points - 1));
          try {
            const auto level = evt::return_level(*row.fit, r, scenario.covariates);
            rows.push_back({row.spec.name, scenario.name, format_g17(r),
                            format_g17(level.level)});
          } catch (const DataError&) {
            usable = false;  // already warned in the scenario table
          }
        }
      }
    }
    write_table(cfg, stage, "return_level_curves",
                {"model", "scenario", "return_period", "level"}, rows);
  }

  for (const auto& row : selection.rows) {
    if (!row.fit || !row.fit->converged) continue;
    const auto bundle = evt::diagnostics(*row.fit);
    const std::string stem = sanitize(row.spec.name);
    {
      std::vector<std::vector<std::string>> rows_qq;
      for (std::size_t i = 0; i < bundle.qq_theoretical.size(); ++i) {
        rows_qq.push_back({format_g17(bundle.qq_theoretical[i]),
                           format_g17(bundle.qq_empirical[i])});
      }
      write_table(cfg, stage, "qq_" + stem, {"theoretical", "empirical"}, rows_qq);
    }
    {
      std::vector<std::vector<std::string>> rows_d;
      for (std::size_t i = 0; i < bundle.grid_x.size(); ++i) {
        rows_d.push_back({"model", format_g17(bundle.grid_x[i]),
                          format_g17(bundle.grid_density[i])});
      }
      for (std::size_t i = 0; i < bundle.hist_centers.size(); ++i) {
        rows_d.push_back({"histogram", format_g17(bundle.hist_centers[i]),
                          format_g17(bundle.hist_density[i])});
      }
      write_table(cfg, stage, "density_" + stem, {"source", "x", "density"}, rows_d);
    }
  }
  return stage;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& out_dir) {
  json doc;
  doc["tool_version"] = manifest.tool_version;
  doc["config_digest"] = manifest.config_digest;
  doc["seed"] = manifest.seed;
  doc["stages"] = json::array();
  for (const auto& stage : manifest.stages) {
    json s;
    s["name"] = stage.name;
    s["ok"] = stage.ok;
    s["outputs"] = stage.outputs;
    s["warnings"] = stage.warnings;
    doc["stages"].push_back(s);
  }
  if (!manifest.failed_stage.empty()) doc["failed_stage"] = manifest.failed_stage;
  core::write_file(out_dir / "run_manifest.json", doc.dump(2) + "\n");
}

RunManifest cmd_run_all(const PipelineConfig& cfg) {
  RunManifest manifest;
  manifest.config_digest = cfg.digest;
  manifest.seed = cfg.seed;

  using StageFn = StageResult (*)(const PipelineConfig&);
  const std::pair<const char*, StageFn> sequence[] = {
      {"build-network", &cmd_build_network},
      {"indices", &cmd_indices},
      {"quantreg", &cmd_quantreg},
      {"gev", &cmd_gev},
  };
  for (const auto& [name, fn] : sequence) {
    try {
      manifest.stages.push_back(fn(cfg));
    } catch (const Error& e) {
      StageResult failed;
      failed.name = name;
      failed.ok = false;
      failed.warnings.push_back(e.what());
      manifest.stages.push_back(std::move(failed));
      manifest.failed_stage = name;
      write_manifest(manifest, cfg.out_dir);
      throw;
    }
  }
  write_manifest(manifest, cfg.out_dir);
  return manifest;
}

RunManifest run_single_stage(const PipelineConfig& cfg, const std::string& stage_name) {
  RunManifest manifest;
  manifest.config_digest = cfg.digest;
  manifest.seed = cfg.seed;
  StageResult result;
  try {
    if (stage_name == "build-network") {
      result = cmd_build_network(cfg);
    } else if (stage_name == "indices") {
      result = cmd_indices(cfg);
    } else if (stage_name == "quantreg") {
      result = cmd_quantreg(cfg);
    } else if (stage_name == "gev") {
      result = cmd_gev(cfg);
    } else {
      throw ConfigError("unknown stage '" + stage_name + "'");
    }
  } catch (const Error&) {
    StageResult failed;
    failed.name = stage_name;
    failed.ok = false;
    manifest.stages.push_back(std::move(failed));
    manifest.failed_stage = stage_name;
    write_manifest(manifest, cfg.out_dir);
    throw;
  }
  manifest.stages.push_back(std::move(result));
  write_manifest(manifest, cfg.out_dir);
  return manifest;
}

}  // namespace mobevt::pipeline
