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
#include "mobevt/evt/gev.hpp"

#include <cmath>
#include <string>

#include "mobevt/core/error.hpp"

namespace mobevt::evt {

namespace {

void check_sigma(double sigma) {
  if (!(sigma > 0.0)) {
    throw ConfigError("GEV scale must be positive, got " + std::to_string(sigma));
  }
}

}  // namespace

double gev_cdf(double z, double mu, double sigma, double xi) {
  check_sigma(sigma);
  const double u = (z - mu) / sigma;
  if (std::abs(xi) < kXiTolerance) {
    return std::exp(-std::exp(-u));
  }
  const double b = 1.0 + xi * u;
  if (b <= 0.0) return xi > 0.0 ? 0.0 : 1.0;
  // b^(-1/xi) via log1p for accuracy near the branch point.
  return std::exp(-std::exp(-std::log1p(xi * u) / xi));
}

double gev_pdf(double z, double mu, double sigma, double xi) {
  check_sigma(sigma);
  const double u = (z - mu) / sigma;
  if (std::abs(xi) < kXiTolerance) {
    const double t = std::exp(-u);
    return t * std::exp(-t) / sigma;
  }
  const double b = 1.0 + xi * u;
  if (b <= 0.0) return 0.0;
  const double log_b = std::log1p(xi * u);
  const double t = std::exp(-log_b / xi);  // b^(-1/xi)
  return t / b * std::exp(-t) / sigma;     // b^(-1/xi - 1) exp(-b^(-1/xi)) / sigma
}

double gev_quantile(double p, double mu, double sigma, double xi) {
  check_sigma(sigma);
  if (!(p > 0.0 && p < 1.0)) {
    throw ConfigError("GEV quantile needs p in (0, 1), got " + std::to_string(p));
  }
  const double y = -std::log(p);
  if (std::abs(xi) < kXiTolerance) return mu - sigma * std::log(y);
  return mu + sigma * (std::pow(y, -xi) - 1.0) / xi;
}

double gumbel_pdf(double x) { return std::exp(-x - std::exp(-x)); }

}  // namespace mobevt::evt
