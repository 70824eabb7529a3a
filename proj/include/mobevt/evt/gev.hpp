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

namespace mobevt::evt {

/// Shape values below this magnitude take the Gumbel limit branch.
inline constexpr double kXiTolerance = 1e-6;

/// GEV distribution function (maxima convention). Outside the support the
/// value is 0 below a xi>0 lower endpoint and 1 above a xi<0 upper endpoint.
/// Throws ConfigError when sigma <= 0.
double gev_cdf(double z, double mu, double sigma, double xi);

/// GEV density; 0 outside the support.
double gev_pdf(double z, double mu, double sigma, double xi);

/// Inverse CDF at probability p in (0, 1).
double gev_quantile(double p, double mu, double sigma, double xi);

/// Standard Gumbel density exp(-x - exp(-x)), used by the diagnostics grid.
double gumbel_pdf(double x);

}  // namespace mobevt::evt
