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
#include "mobevt/evt/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "mobevt/core/error.hpp"
#include "mobevt/evt/gev.hpp"

namespace mobevt::evt {

ReturnLevelResult return_level(const GevFit& fit, double r_years,
                               const std::map<std::string, double>& scenario) {
  if (!(r_years > 1.0)) {
    throw ConfigError("return period must exceed 1 year, got " + std::to_string(r_years));
  }
  const double mu = fit.mu_at(scenario);
  const double sigma = fit.sigma_at(scenario);
  const double xi = fit.xi();

  // z_r on the fitted (maxima) scale: the (1 - 1/r) quantile.
  const double y = -std::log1p(-1.0 / r_years);  // -log(1 - 1/r)
  double z;
  if (std::abs(xi) < kXiTolerance) {
    z = mu - sigma * std::log(y);
  } else {
    z = mu + sigma * (std::pow(y, -xi) - 1.0) / xi;
  }

  ReturnLevelResult out;
  out.return_period = r_years;
  out.scenario = scenario;
  out.model = fit.spec.name;
  out.level = fit.data_orientation == Orientation::minima ? -z : z;
  return out;
}

double exceedance_probability(const GevFit& fit, double z,
                              const std::map<std::string, double>& scenario) {
  const double mu = fit.mu_at(scenario);
  const double sigma = fit.sigma_at(scenario);
  const double xi = fit.xi();
  if (fit.data_orientation == Orientation::minima) {
    // P(Y < z) = P(-Y > -z) with -Y the fitted variable.
    return 1.0 - gev_cdf(-z, mu, sigma, xi);
  }
  return 1.0 - gev_cdf(z, mu, sigma, xi);
}

std::vector<double> gumbel_residuals(const GevFit& fit) {
  const double xi = fit.xi();
  std::vector<double> residuals;
  residuals.reserve(fit.fitted_blocks.blocks.size());
  for (const Block& block : fit.fitted_blocks.blocks) {
    const double mu = fit.mu_at(block.covariates);
    const double sigma = fit.sigma_at(block.covariates);
    const double u = (block.extremum - mu) / sigma;
    if (std::abs(xi) < kXiTolerance) {
      residuals.push_back(u);
      continue;
    }
    const double b = 1.0 + xi * u;
    if (b <= 0.0) {
      throw NumericError("support violated in residual transform at block " + block.label);
    }
    residuals.push_back(std::log1p(xi * u) / xi);
  }
  return residuals;
}

DiagnosticBundle diagnostics(const GevFit& fit) {
  if (!fit.converged) {
    throw ConfigError("diagnostics require a converged fit");
  }
  DiagnosticBundle out;
  out.qq_empirical = gumbel_residuals(fit);
  std::sort(out.qq_empirical.begin(), out.qq_empirical.end());
  const std::size_t n = out.qq_empirical.size();
  out.qq_theoretical.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double p = static_cast<double>(i) / static_cast<double>(n + 1);
    out.qq_theoretical.push_back(-std::log(-std::log(p)));
  }

  const double lo = out.qq_empirical.front();
  const double hi = out.qq_empirical.back();
  const auto bins = std::max<std::size_t>(8, static_cast<std::size_t>(
                                                 std::lround(std::sqrt(static_cast<double>(n)))));
  const double width = (hi - lo) > 0.0 ? (hi - lo) / static_cast<double>(bins) : 1.0;
  std::vector<std::size_t> counts(bins, 0);
  for (double r : out.qq_empirical) {
    auto idx = static_cast<std::size_t>((r - lo) / width);
    if (idx >= bins) idx = bins - 1;
    counts[idx] += 1;
  }
  for (std::size_t b = 0; b < bins; ++b) {
    out.hist_centers.push_back(lo + (static_cast<double>(b) + 0.5) * width);
    out.hist_density.push_back(static_cast<double>(counts[b]) /
                               (static_cast<double>(n) * width));
  }

  const double grid_lo = lo - 1.0;
  const double grid_hi = hi + 1.0;
  constexpr std::size_t kGridPoints = 201;
  for (std::size_t g = 0; g < kGridPoints; ++g) {
    const double x = grid_lo + (grid_hi - grid_lo) * static_cast<double>(g) /
                                   static_cast<double>(kGridPoints - 1);
    out.grid_x.push_back(x);
    out.grid_density.push_back(gumbel_pdf(x));
  }
  return out;
}

}  // namespace mobevt::evt
