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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mobevt::core {

struct NelderMeadOptions {
  std::size_t max_iterations = 5000;
  /// Converged when the simplex diameter falls below this, relative to the
  /// best vertex magnitude.
  double diameter_tolerance = 1e-8;
};

struct NelderMeadResult {
  std::vector<double> point;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Derivative-free simplex minimization. The objective may return large
/// finite penalty values for infeasible points; it must never return NaN.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> start, std::span<const double> step,
                             const NelderMeadOptions& options = {});

/// Central-difference Hessian with per-coordinate steps h_i = step_scale *
/// (1 + |x_i|). Used for observed-information standard errors.
std::vector<std::vector<double>> central_hessian(
    const std::function<double(std::span<const double>)>& f, std::span<const double> x,
    double step_scale = 1e-4);

/// Central-difference gradient at step h_i = step_scale * (1 + |x_i|).
std::vector<double> central_gradient(
    const std::function<double(std::span<const double>)>& f, std::span<const double> x,
    double step_scale);

}  // namespace mobevt::core
