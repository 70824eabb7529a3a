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
#include <string>
#include <vector>

#include "mobevt/evt/fit.hpp"

namespace mobevt::evt {

struct ReturnLevelResult {
  double return_period = 0.0;                   // years, > 1
  std::map<std::string, double> scenario;       // covariate values used
  double level = 0.0;                           // original (minima) scale when applicable
  std::string model;                            // fit's spec name
};

/// Level exceeded on average once every r years under the fitted model at
/// the given covariate scenario. For minima-oriented fits the result is
/// mapped back to the original scale (a low quantile of the raw variable).
ReturnLevelResult return_level(const GevFit& fit, double r_years,
                               const std::map<std::string, double>& scenario);

/// For maxima fits, P(Z > z); for minima fits, P(Y < z), both at the
/// scenario's covariate values.
double exceedance_probability(const GevFit& fit, double z,
                              const std::map<std::string, double>& scenario);

/// Q-Q and density-comparison data for a converged fit. Residuals are the
/// standard-Gumbel transforms of the fitted blocks.
struct DiagnosticBundle {
  std::vector<double> qq_theoretical;  // -log(-log(i/(n+1)))
  std::vector<double> qq_empirical;    // sorted residuals
  std::vector<double> hist_centers;
  std::vector<double> hist_density;
  std::vector<double> grid_x;
  std::vector<double> grid_density;    // standard Gumbel density on grid_x
};

DiagnosticBundle diagnostics(const GevFit& fit);

/// Gumbel residuals of the fitted blocks, unsorted (block order).
std::vector<double> gumbel_residuals(const GevFit& fit);

}  // namespace mobevt::evt
