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
#include "mobevt/core/linalg.hpp"

#include <cmath>

namespace mobevt::core {

namespace {

struct Lu {
  Mat lu;
  std::vector<std::size_t> perm;
  bool ok = false;
};

Lu factor(Mat a) {
  const std::size_t n = a.rows();
  Lu out{std::move(a), {}, true};
  out.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(out.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(out.lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (!(best > 0.0) || !std::isfinite(best)) {
      out.ok = false;
      return out;
    }
    if (piv != k) {
      std::swap(out.perm[k], out.perm[piv]);
      for (std::size_t j = 0; j < n; ++j) std::swap(out.lu(k, j), out.lu(piv, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = out.lu(i, k) / out.lu(k, k);
      out.lu(i, k) = m;
      for (std::size_t j = k + 1; j < n; ++j) out.lu(i, j) -= m * out.lu(k, j);
    }
  }
  return out;
}

std::vector<double> lu_solve(const Lu& f, const std::vector<double>& b) {
  const std::size_t n = f.lu.rows();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
    x[ii] /= f.lu(ii, ii);
  }
  return x;
}

}  // namespace

std::optional<std::vector<double>> solve_lu(Mat a, std::vector<double> b) {
  const Lu f = factor(std::move(a));
  if (!f.ok) return std::nullopt;
  auto x = lu_solve(f, b);
  for (double v : x) {
    if (!std::isfinite(v)) return std::nullopt;
  }
  return x;
}

std::optional<Mat> invert(const Mat& a) {
  const std::size_t n = a.rows();
  const Lu f = factor(a);
  if (!f.ok) return std::nullopt;
  Mat inv(n, n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e.assign(n, 0.0);
    e[j] = 1.0;
    const auto col = lu_solve(f, e);
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(col[i])) return std::nullopt;
      inv(i, j) = col[i];
    }
  }
  return inv;
}

std::vector<std::size_t> deficient_columns(const Mat& design, double rel_tol) {
  const std::size_t n = design.rows();
  const std::size_t p = design.cols();
  std::vector<std::vector<double>> q;
  std::vector<std::size_t> bad;
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<double> v(n);
    double norm0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = design(i, j);
      norm0 += v[i] * v[i];
    }
    norm0 = std::sqrt(norm0);
    for (const auto& u : q) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += u[i] * v[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= dot * u[i];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm <= rel_tol * (norm0 > 0.0 ? norm0 : 1.0)) {
      bad.push_back(j);
      continue;
    }
    for (double& x : v) x /= norm;
    q.push_back(std::move(v));
  }
  return bad;
}

}  // namespace mobevt::core
