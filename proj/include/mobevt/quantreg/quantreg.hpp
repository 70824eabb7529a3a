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
#include <span>
#include <string>
#include <vector>

#include "mobevt/core/exec.hpp"
#include "mobevt/core/linalg.hpp"

namespace mobevt::quantreg {

using core::Exec;
using core::Mat;

/// Pinball (check) loss: tau*z for z >= 0, (tau-1)*z otherwise.
double pinball_loss(double z, double tau);

/// Sum of pinball losses of the residuals y - X b.
double pinball_objective(const Mat& design, std::span<const double> response,
                         std::span<const double> coefficients, double tau);

/// Conditional-quantile regression problem. The design carries a leading
/// intercept column of ones.
struct QuantileProblem {
  std::vector<double> response;
  Mat design;                             // n x (p+1)
  double tau = 0.5;
  std::vector<std::string> column_names;  // optional; defaults to x0..xp

  void validate() const;  // throws ConfigError / NumericError
};

struct BootstrapMeta {
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::size_t valid_replicates = 0;
};

struct SolverDiagnostics {
  std::size_t iterations = 0;
  double duality_gap = 0.0;
  bool interior_point_converged = false;
  bool polished = false;       // snapped to an interpolating vertex
  bool used_enumeration = false;  // basis-enumeration fallback engaged
};

struct QuantileFit {
  double tau = 0.5;
  std::vector<double> coefficients;
  std::vector<double> std_errors;  // empty when bootstrap disabled
  double objective = 0.0;          // attained pinball loss
  double pseudo_r2 = 0.0;
  std::size_t n_obs = 0;
  BootstrapMeta bootstrap;
  SolverDiagnostics diagnostics;
};

struct FitOptions {
  std::size_t bootstrap_replicates = 1000;  // 0 disables standard errors
  std::uint64_t seed = 0;
  Exec exec = Exec::openmp;
  double gap_tolerance = 1e-9;  // relative duality gap
};

/// Minimize the pinball objective. Primary solver is a primal-dual interior
/// point on the LP formulation, snapped to the best interpolating vertex;
/// for n <= 200 a full basis enumeration backs it up if the interior point
/// fails to converge. Standard errors are a seeded pair-resampling
/// bootstrap.
QuantileFit fit(const QuantileProblem& problem, const FitOptions& options = {});

/// Intercept-only fit: the exact minimum over b0 of the pinball objective.
struct RestrictedFit {
  double intercept = 0.0;
  double objective = 0.0;
};
RestrictedFit restricted_fit(std::span<const double> response, double tau);

/// Koenker-Machado goodness of fit: 1 - fitted/restricted objective.
double pseudo_r2(double fit_objective, double restricted_objective);

/// One independent fit per tau, ordered like `taus`. Fits are independent,
/// so the OpenMP path runs them concurrently. Bootstrap resampling depends
/// only on (seed, replicate), giving every tau the same resampled rows.
std::vector<QuantileFit> fit_profile(const Mat& design, std::span<const double> response,
                                     std::span<const double> taus,
                                     const std::vector<std::string>& column_names = {},
                                     const FitOptions& options = {});

}  // namespace mobevt::quantreg
