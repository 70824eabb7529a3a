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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mobevt/core/exec.hpp"
#include "mobevt/evt/blocks.hpp"

namespace mobevt::evt {

using core::Exec;

/// Model structure: which covariates enter the location and the log-scale.
/// Empty term lists give the stationary model. The shape is constant; shape
/// covariates are not supported.
struct GevSpec {
  std::string name;  // display label, e.g. "model1"
  std::vector<std::string> location_terms;
  std::vector<std::string> logscale_terms;

  std::size_t parameter_count() const noexcept {
    return 1 + location_terms.size() + 1 + logscale_terms.size() + 1;
  }
  std::vector<std::string> parameter_names() const;
  std::string description() const;
};

struct OptimDiagnostics {
  std::size_t restarts = 0;
  std::size_t iterations = 0;      // of the winning run
  std::size_t evaluations = 0;     // across all runs
  double best_value = 0.0;         // negative log-likelihood
  bool simplex_converged = false;
};

/// Fitted GEV model. Parameters live on the scale the likelihood was
/// maximized on: for minima input the series is negated internally, so the
/// parameters describe the negated (maxima) variable; return levels and
/// probabilities map results back to the original scale.
struct GevFit {
  GevSpec spec;
  std::vector<std::string> param_names;
  std::vector<double> params;
  std::vector<double> std_errors;
  bool se_available = false;
  double log_likelihood = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  std::size_t n_blocks = 0;
  bool converged = false;
  OptimDiagnostics diagnostics;
  Orientation data_orientation = Orientation::maxima;  // orientation of the input
  std::string covariate_scale = "raw";  // record: raw or normalized covariates
  BlockSeries fitted_blocks;            // maxima scale, used by diagnostics

  double xi() const { return params.back(); }
  /// Location and scale at a covariate assignment.
  double mu_at(const std::map<std::string, double>& covariates) const;
  double sigma_at(const std::map<std::string, double>& covariates) const;
};

/// Negative log-likelihood of a maxima-oriented block series under the
/// spec's parameter vector (location terms, log-scale terms, shape last).
/// Support violations return a large finite penalty so derivative-free
/// search stays total.
double negative_log_likelihood(const BlockSeries& blocks, const GevSpec& spec,
                               std::span<const double> params);

struct GevFitOptions {
  std::uint64_t seed = 0;
  std::size_t restarts = 5;  // seeded random restarts on top of the moment start
  Exec exec = Exec::openmp;
  std::string covariate_scale = "raw";
};

/// Maximum-likelihood fit via Nelder-Mead with seeded restarts. Minima input
/// is negated internally. Standard errors come from the inverse
/// finite-difference observed information; when that matrix is singular the
/// fit is returned with SEs marked unavailable.
GevFit fit_gev(const BlockSeries& blocks, const GevSpec& spec,
               const GevFitOptions& options = {});

struct ModelSelectionRow {
  GevSpec spec;
  std::optional<GevFit> fit;
  std::string error;  // non-empty when the fit failed
};

struct ModelSelectionTable {
  std::vector<ModelSelectionRow> rows;  // ascending AIC, failures last
};

/// Fit every spec and rank by AIC. Individual fit failures are recorded
/// per-row. Fits are independent; the OpenMP path runs them concurrently.
ModelSelectionTable model_selection(const BlockSeries& blocks,
                                    std::span<const GevSpec> specs,
                                    const GevFitOptions& options = {});

}  // namespace mobevt::evt
