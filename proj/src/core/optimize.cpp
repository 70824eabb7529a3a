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
#include "mobevt/core/optimize.hpp"

#include <algorithm>
#include <cmath>

namespace mobevt::core {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> start, std::span<const double> step,
                             const NelderMeadOptions& options) {
  const std::size_t dim = start.size();
  NelderMeadResult result;
  std::size_t evals = 0;
  const auto eval = [&](std::span<const double> x) {
    ++evals;
    return objective(x);
  };

  // Simplex: start plus one perturbed vertex per coordinate.
  std::vector<std::vector<double>> vertex(dim + 1, std::vector<double>(start.begin(), start.end()));
  std::vector<double> value(dim + 1);
  for (std::size_t j = 0; j < dim; ++j) {
    vertex[j + 1][j] += step[j] != 0.0 ? step[j] : 1e-4;
  }
  for (std::size_t v = 0; v <= dim; ++v) value[v] = eval(vertex[v]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), reflected(dim), trial(dim);

  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    result.iterations = iter;
    for (std::size_t v = 0; v <= dim; ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[dim];
    const std::size_t second_worst = order[dim == 0 ? 0 : dim - 1];

    // Relative simplex diameter.
    double diameter = 0.0;
    double best_norm = 0.0;
    for (std::size_t j = 0; j < dim; ++j) best_norm = std::max(best_norm, std::abs(vertex[best][j]));
    for (std::size_t v = 0; v <= dim; ++v) {
      for (std::size_t j = 0; j < dim; ++j) {
        diameter = std::max(diameter, std::abs(vertex[v][j] - vertex[best][j]));
      }
    }
    if (diameter <= options.diameter_tolerance * (1.0 + best_norm)) {
      result.converged = true;
      break;
    }

    for (std::size_t j = 0; j < dim; ++j) {
      double acc = 0.0;
      for (std::size_t v = 0; v <= dim; ++v) {
        if (v != worst) acc += vertex[v][j];
      }
      centroid[j] = acc / static_cast<double>(dim);
    }

    for (std::size_t j = 0; j < dim; ++j) {
      reflected[j] = centroid[j] + kReflect * (centroid[j] - vertex[worst][j]);
    }
    const double f_reflected = eval(reflected);

    if (f_reflected < value[best]) {
      for (std::size_t j = 0; j < dim; ++j) {
        trial[j] = centroid[j] + kExpand * (reflected[j] - centroid[j]);
      }
      const double f_expanded = eval(trial);
      if (f_expanded < f_reflected) {
        vertex[worst] = trial;
        value[worst] = f_expanded;
      } else {
        vertex[worst] = reflected;
        value[worst] = f_reflected;
      }
    } else if (f_reflected < value[second_worst]) {
      vertex[worst] = reflected;
      value[worst] = f_reflected;
    } else {
      const bool outside = f_reflected < value[worst];
      const auto& toward = outside ? reflected : vertex[worst];
      for (std::size_t j = 0; j < dim; ++j) {
        trial[j] = centroid[j] + kContract * (toward[j] - centroid[j]);
      }
      const double f_contracted = eval(trial);
      if (f_contracted < (outside ? f_reflected : value[worst])) {
        vertex[worst] = trial;
        value[worst] = f_contracted;
      } else {
        for (std::size_t v = 0; v <= dim; ++v) {
          if (v == best) continue;
          for (std::size_t j = 0; j < dim; ++j) {
            vertex[v][j] = vertex[best][j] + kShrink * (vertex[v][j] - vertex[best][j]);
          }
          value[v] = eval(vertex[v]);
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t v = 1; v <= dim; ++v) {
    if (value[v] < value[best]) best = v;
  }
  result.point = vertex[best];
  result.value = value[best];
  result.evaluations = evals;
  return result;
}

std::vector<double> central_gradient(
    const std::function<double(std::span<const double>)>& f, std::span<const double> x,
    double step_scale) {
  const std::size_t dim = x.size();
  std::vector<double> grad(dim);
  std::vector<double> pt(x.begin(), x.end());
  for (std::size_t i = 0; i < dim; ++i) {
    const double h = step_scale * (1.0 + std::abs(x[i]));
    const double xi = pt[i];
    pt[i] = xi + h;
    const double fp = f(pt);
    pt[i] = xi - h;
    const double fm = f(pt);
    pt[i] = xi;
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

std::vector<std::vector<double>> central_hessian(
    const std::function<double(std::span<const double>)>& f, std::span<const double> x,
    double step_scale) {
  const std::size_t dim = x.size();
  std::vector<std::vector<double>> h(dim, std::vector<double>(dim, 0.0));
  std::vector<double> pt(x.begin(), x.end());
  std::vector<double> step(dim);
  for (std::size_t i = 0; i < dim; ++i) step[i] = step_scale * (1.0 + std::abs(x[i]));

  const double f0 = f(pt);
  for (std::size_t i = 0; i < dim; ++i) {
    const double xi = pt[i];
    pt[i] = xi + step[i];
    const double fp = f(pt);
    pt[i] = xi - step[i];
    const double fm = f(pt);
    pt[i] = xi;
    h[i][i] = (fp - 2.0 * f0 + fm) / (step[i] * step[i]);
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      const double xi = pt[i];
      const double xj = pt[j];
      pt[i] = xi + step[i];
      pt[j] = xj + step[j];
      const double fpp = f(pt);
      pt[j] = xj - step[j];
      const double fpm = f(pt);
      pt[i] = xi - step[i];
      pt[j] = xj + step[j];
      const double fmp = f(pt);
      pt[j] = xj - step[j];
      const double fmm = f(pt);
      pt[i] = xi;
      pt[j] = xj;
      h[i][j] = h[j][i] = (fpp - fpm - fmp + fmm) / (4.0 * step[i] * step[j]);
    }
  }
  return h;
}

}  // namespace mobevt::core
