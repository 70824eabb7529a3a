// Test-only brute-force oracle for pinball-loss regression. Independent of
// the library solver: it enumerates every size-k subset of observations,
// solves the interpolating system with its own Gaussian elimination, and
// keeps the loss minimizer. Some optimal solution interpolates k points
// (generic position), so the enumeration is exact on continuous data.
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace oracle {

struct Result {
  std::vector<double> coefficients;
  double objective = 0.0;
};

inline double pinball_objective(const std::vector<std::vector<double>>& design,
                                const std::vector<double>& response,
                                const std::vector<double>& coef, double tau) {
  double total = 0.0;
  for (std::size_t i = 0; i < design.size(); ++i) {
    double fitted = 0.0;
    for (std::size_t j = 0; j < coef.size(); ++j) fitted += design[i][j] * coef[j];
    const double z = response[i] - fitted;
    total += z >= 0.0 ? tau * z : (tau - 1.0) * z;
  }
  return total;
}

inline std::optional<std::vector<double>> gauss_solve(std::vector<std::vector<double>> a,
                                                      std::vector<double> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-12) return std::nullopt;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double m = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= m * a[col][c];
      b[r] -= m * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

inline Result brute_force(const std::vector<std::vector<double>>& design,
                          const std::vector<double>& response, double tau) {
  const std::size_t n = design.size();
  const std::size_t k = design[0].size();
  Result best;
  bool have = false;
  std::vector<std::size_t> subset(k);
  for (std::size_t j = 0; j < k; ++j) subset[j] = j;
  while (true) {
    std::vector<std::vector<double>> a(k, std::vector<double>(k));
    std::vector<double> b(k);
    for (std::size_t r = 0; r < k; ++r) {
      a[r] = design[subset[r]];
      b[r] = response[subset[r]];
    }
    if (const auto sol = gauss_solve(a, b)) {
      const double obj = pinball_objective(design, response, *sol, tau);
      if (std::isfinite(obj) && (!have || obj < best.objective)) {
        best = {*sol, obj};
        have = true;
      }
    }
    std::size_t j = k;
    bool advanced = false;
    while (j > 0) {
      --j;
      if (subset[j] < n - (k - j)) {
        ++subset[j];
        for (std::size_t t = j + 1; t < k; ++t) subset[t] = subset[t - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return best;
}

}  // namespace oracle
