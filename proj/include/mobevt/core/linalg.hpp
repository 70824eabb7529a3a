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
#include <optional>
#include <vector>

namespace mobevt::core {

/// Row-major dense matrix. All problems here are tiny (p <= ~8), so the
/// solvers below are plain unblocked factorizations.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<double>& data() const noexcept { return a_; }
  std::vector<double>& data() noexcept { return a_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

/// Solve A x = b by LU with partial pivoting; nullopt when numerically
/// singular.
std::optional<std::vector<double>> solve_lu(Mat a, std::vector<double> b);

/// Inverse by LU; nullopt when numerically singular.
std::optional<Mat> invert(const Mat& a);

/// Column indices j where the design loses rank (modified Gram-Schmidt with
/// a relative tolerance). Empty result means full column rank.
std::vector<std::size_t> deficient_columns(const Mat& design, double rel_tol = 1e-10);

}  // namespace mobevt::core
