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
#include "mobevt/quantreg/quantreg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "mobevt/core/error.hpp"
#include "mobevt/core/rng.hpp"
#include "mobevt/core/stats.hpp"

namespace mobevt::quantreg {

double pinball_loss(double z, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw ConfigError("tau must lie in (0, 1), got " + std::to_string(tau));
  }
  return z >= 0.0 ? tau * z : (tau - 1.0) * z;
}

double pinball_objective(const Mat& design, std::span<const double> response,
                         std::span<const double> coefficients, double tau) {
  const std::size_t n = design.rows();
  const std::size_t k = design.cols();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fitted = 0.0;
    for (std::size_t j = 0; j < k; ++j) fitted += design(i, j) * coefficients[j];
    const double z = response[i] - fitted;
    total += z >= 0.0 ? tau * z : (tau - 1.0) * z;
  }
  return total;
}

void QuantileProblem::validate() const {
  const std::size_t n = design.rows();
  const std::size_t k = design.cols();
  if (!(tau > 0.0 && tau < 1.0)) {
    throw ConfigError("tau must lie in (0, 1), got " + std::to_string(tau));
  }
  if (k == 0) throw ConfigError("design has no columns");
  if (response.size() != n) throw ConfigError("response length does not match design rows");
  if (n < k) throw ConfigError("need at least as many observations as coefficients");
  for (double y : response) {
    if (!std::isfinite(y)) throw ConfigError("non-finite response entry");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (design(i, 0) != 1.0) throw ConfigError("leading design column must be all ones");
    for (std::size_t j = 0; j < k; ++j) {
      if (!std::isfinite(design(i, j))) throw ConfigError("non-finite design entry");
    }
  }
  if (!column_names.empty() && column_names.size() != k) {
    throw ConfigError("column_names length does not match design columns");
  }
}

namespace {

std::vector<std::string> effective_names(const QuantileProblem& problem) {
  if (!problem.column_names.empty()) return problem.column_names;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < problem.design.cols(); ++j) {
    names.push_back("x" + std::to_string(j));
  }
  return names;
}

void check_rank(const Mat& design, const std::vector<std::string>& names) {
  const auto bad = core::deficient_columns(design);
  if (bad.empty()) return;
  std::string msg = "rank-deficient design; collinear column(s):";
  for (auto j : bad) msg += " " + names[j];
  throw NumericError(msg);
}

struct IpResult {
  std::vector<double> coefficients;
  std::size_t iterations = 0;
  double gap = 0.0;
  bool converged = false;
};

// Primal-dual interior point with a Mehrotra corrector on the bounded-dual
// LP of the pinball problem:
//   max  y'd   s.t.  X'd = (1 - tau) X'1,  0 <= d <= 1.
// The multipliers of the equality constraints are the regression
// coefficients.
IpResult interior_point(const Mat& design, std::span<const double> response, double tau,
                        double gap_tolerance) {
  const std::size_t n = design.rows();
  const std::size_t k = design.cols();
  constexpr double kBeta = 0.9995;
  constexpr std::size_t kMaxIter = 100;

  IpResult out;
  std::vector<double> d(n, 1.0 - tau), s(n, tau), z(n), w(n);
  std::vector<double> coef(k, 0.0);

  // Least-squares start for the coefficients.
  {
    Mat gram(k, k);
    std::vector<double> xty(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t a = 0; a < k; ++a) {
        xty[a] += design(i, a) * response[i];
        for (std::size_t b = 0; b <= a; ++b) gram(a, b) += design(i, a) * design(i, b);
      }
    }
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) gram(a, b) = gram(b, a);
    }
    const auto ls = core::solve_lu(gram, xty);
    if (!ls) return out;  // singular Gram matrix; caller falls back
    coef = *ls;
  }

  std::vector<double> resid(n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fitted = 0.0;
    for (std::size_t j = 0; j < k; ++j) fitted += design(i, j) * coef[j];
    resid[i] = response[i] - fitted;
    scale += std::abs(resid[i]);
  }
  const double eps0 = 1e-3 * (1.0 + scale / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::max(resid[i], 0.0) + eps0;
    z[i] = std::max(-resid[i], 0.0) + eps0;
  }

  std::vector<double> q(n), dd(n), dz(n), dw(n), dcoef(k), rhs_vec(n), work(n);
  std::vector<double> ddz_aff(n), dsw_aff(n);

  const auto primal_value = [&] {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += response[i] * d[i];
    return v;
  };

  for (std::size_t iter = 0; iter < kMaxIter; ++iter) {
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap += z[i] * d[i] + w[i] * s[i];
    out.iterations = iter;
    out.gap = gap;
    if (gap < gap_tolerance * (1.0 + std::abs(primal_value()))) {
      out.converged = true;
      break;
    }

    // Dual residual r = y - X beta, recomputed to avoid drift.
    for (std::size_t i = 0; i < n; ++i) {
      double fitted = 0.0;
      for (std::size_t j = 0; j < k; ++j) fitted += design(i, j) * coef[j];
      resid[i] = response[i] - fitted;
      q[i] = 1.0 / (z[i] / d[i] + w[i] / s[i]);
    }

    // Normal equations M dcoef = X' (q .* rhs) with M = X' diag(q) X.
    const auto solve_step = [&](const std::vector<double>& rhs) -> bool {
      Mat m(k, k);
      std::vector<double> v(k, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double qi = q[i];
        for (std::size_t a = 0; a < k; ++a) {
          const double xa = design(i, a);
          v[a] += xa * qi * rhs[i];
          for (std::size_t b = 0; b <= a; ++b) m(a, b) += xa * qi * design(i, b);
        }
      }
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) m(a, b) = m(b, a);
      }
      const auto sol = core::solve_lu(std::move(m), std::move(v));
      if (!sol) return false;
      dcoef = *sol;
      return true;
    };

    // Predictor (affine) direction.
    if (!solve_step(resid)) return out;
    for (std::size_t i = 0; i < n; ++i) {
      double xd = 0.0;
      for (std::size_t j = 0; j < k; ++j) xd += design(i, j) * dcoef[j];
      dd[i] = q[i] * (resid[i] - xd);
      dz[i] = -z[i] - (z[i] / d[i]) * dd[i];
      dw[i] = -w[i] + (w[i] / s[i]) * dd[i];
    }

    const auto step_length = [&](bool primal) {
      double f = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (primal) {
          if (dd[i] < 0.0) f = std::min(f, kBeta * d[i] / -dd[i]);
          if (dd[i] > 0.0) f = std::min(f, kBeta * s[i] / dd[i]);  // ds = -dd
        } else {
          if (dz[i] < 0.0) f = std::min(f, kBeta * z[i] / -dz[i]);
          if (dw[i] < 0.0) f = std::min(f, kBeta * w[i] / -dw[i]);
        }
      }
      return f;
    };

    double fp = step_length(true);
    double fd = step_length(false);

    if (std::min(fp, fd) < 1.0) {
      // Mehrotra corrector.
      double g = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        g += (z[i] + fd * dz[i]) * (d[i] + fp * dd[i]) +
             (w[i] + fd * dw[i]) * (s[i] - fp * dd[i]);
      }
      const double ratio = g / gap;
      const double mu = gap * ratio * ratio * ratio / (2.0 * static_cast<double>(n));

      for (std::size_t i = 0; i < n; ++i) {
        ddz_aff[i] = dd[i] * dz[i];
        dsw_aff[i] = -dd[i] * dw[i];
        rhs_vec[i] = resid[i] - mu * (1.0 / s[i] - 1.0 / d[i]) + dsw_aff[i] / s[i] -
                     ddz_aff[i] / d[i];
      }
      if (!solve_step(rhs_vec)) return out;
      for (std::size_t i = 0; i < n; ++i) {
        double xd = 0.0;
        for (std::size_t j = 0; j < k; ++j) xd += design(i, j) * dcoef[j];
        dd[i] = q[i] * (rhs_vec[i] - xd);
        dz[i] = (mu - ddz_aff[i]) / d[i] - z[i] - (z[i] / d[i]) * dd[i];
        dw[i] = (mu - dsw_aff[i]) / s[i] - w[i] + (w[i] / s[i]) * dd[i];
      }
      fp = step_length(true);
      fd = step_length(false);
    }

    for (std::size_t i = 0; i < n; ++i) {
      d[i] += fp * dd[i];
      s[i] -= fp * dd[i];
      z[i] += fd * dz[i];
      w[i] += fd * dw[i];
    }
    for (std::size_t j = 0; j < k; ++j) coef[j] += fd * dcoef[j];
  }

  for (double c : coef) {
    if (!std::isfinite(c)) {
      out.converged = false;
      return out;
    }
  }
  out.coefficients = std::move(coef);
  if (out.coefficients.empty()) out.converged = false;
  return out;
}

// Exact objective at the basic solution interpolating the rows `subset`.
std::optional<std::vector<double>> basic_solution(const Mat& design,
                                                  std::span<const double> response,
                                                  std::span<const std::size_t> subset) {
  const std::size_t k = design.cols();
  Mat m(k, k);
  std::vector<double> b(k);
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t i = subset[r];
    for (std::size_t j = 0; j < k; ++j) m(r, j) = design(i, j);
    b[r] = response[i];
  }
  return core::solve_lu(std::move(m), std::move(b));
}

struct Candidate {
  std::vector<double> coefficients;
  double objective = 0.0;
};

// Some optimal solution interpolates k observations; snap the interior-point
// iterate to the best nearby vertex so vertex-unique optima (the sample
// median, say) come back exact.
std::optional<Candidate> polish(const Mat& design, std::span<const double> response,
                                double tau, std::span<const double> ip_coef) {
  const std::size_t n = design.rows();
  const std::size_t k = design.cols();

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<double> abs_resid(n);
  for (std::size_t i = 0; i < n; ++i) {
    double fitted = 0.0;
    for (std::size_t j = 0; j < k; ++j) fitted += design(i, j) * ip_coef[j];
    abs_resid[i] = std::abs(response[i] - fitted);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (abs_resid[a] != abs_resid[b]) return abs_resid[a] < abs_resid[b];
    return a < b;
  });

  // For a single column every vertex is cheap; otherwise search the k+4
  // smallest residuals.
  const std::size_t pool = k == 1 ? std::min<std::size_t>(n, 4096)
                                  : std::min<std::size_t>(n, k + 4);

  std::optional<Candidate> best;
  std::vector<std::size_t> subset(k);
  std::vector<std::size_t> pick(k);
  const auto consider = [&](std::span<const std::size_t> rows) {
    const auto sol = basic_solution(design, response, rows);
    if (!sol) return;
    const double obj = pinball_objective(design, response, *sol, tau);
    if (!std::isfinite(obj)) return;
    if (!best || obj < best->objective) best = Candidate{*sol, obj};
  };

  if (k == 1) {
    for (std::size_t c = 0; c < pool; ++c) {
      subset[0] = order[c];
      consider(subset);
    }
    return best;
  }

  // All k-subsets of the candidate pool.
  for (std::size_t j = 0; j < k; ++j) pick[j] = j;
  while (true) {
    for (std::size_t j = 0; j < k; ++j) subset[j] = order[pick[j]];
    consider(subset);
    std::size_t j = k;
    while (j > 0) {
      --j;
      if (pick[j] < pool - (k - j)) {
        ++pick[j];
        for (std::size_t t = j + 1; t < k; ++t) pick[t] = pick[t - 1] + 1;
        break;
      }
      if (j == 0) return best;
    }
  }
}

// Exhaustive basis enumeration; exact for generic data, O(n^k) so only used
// as the small-n fallback.
std::optional<Candidate> enumerate_bases(const Mat& design, std::span<const double> response,
                                         double tau) {
  const std::size_t n = design.rows();
  const std::size_t k = design.cols();
  std::optional<Candidate> best;
  std::vector<std::size_t> subset(k);
  for (std::size_t j = 0; j < k; ++j) subset[j] = j;
  while (true) {
    if (const auto sol = basic_solution(design, response, subset)) {
      const double obj = pinball_objective(design, response, *sol, tau);
      if (std::isfinite(obj) && (!best || obj < best->objective)) {
        best = Candidate{*sol, obj};
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

struct SolveResult {
  std::vector<double> coefficients;
  double objective = 0.0;
  SolverDiagnostics diagnostics;
};

SolveResult solve(const Mat& design, std::span<const double> response, double tau,
                  double gap_tolerance) {
  SolveResult result;
  const IpResult ip = interior_point(design, response, tau, gap_tolerance);
  result.diagnostics.iterations = ip.iterations;
  result.diagnostics.duality_gap = ip.gap;
  result.diagnostics.interior_point_converged = ip.converged;

  if (ip.converged) {
    result.coefficients = ip.coefficients;
    result.objective = pinball_objective(design, response, ip.coefficients, tau);
    if (const auto vertex = polish(design, response, tau, ip.coefficients)) {
      if (vertex->objective <= result.objective) {
        result.coefficients = vertex->coefficients;
        result.objective = vertex->objective;
        result.diagnostics.polished = true;
      }
    }
    return result;
  }

  if (design.rows() <= 200) {
    if (const auto best = enumerate_bases(design, response, tau)) {
      result.coefficients = best->coefficients;
      result.objective = best->objective;
      result.diagnostics.used_enumeration = true;
      return result;
    }
  }
  throw NumericError("quantile solver did not converge after " +
                     std::to_string(ip.iterations) + " iterations (duality gap " +
                     std::to_string(ip.gap) + ")");
}

}  // namespace

RestrictedFit restricted_fit(std::span<const double> response, double tau) {
  if (response.empty()) throw ConfigError("restricted fit of empty response");
  if (!(tau > 0.0 && tau < 1.0)) {
    throw ConfigError("tau must lie in (0, 1), got " + std::to_string(tau));
  }
  std::vector<double> sorted(response.begin(), response.end());
  std::sort(sorted.begin(), sorted.end());
  const double n_tau = static_cast<double>(sorted.size()) * tau;
  auto k = static_cast<std::size_t>(std::ceil(n_tau - 1e-9));
  if (k == 0) k = 1;

  const auto objective_at = [&](double b0) {
    double total = 0.0;
    for (double y : response) {
      const double z = y - b0;
      total += z >= 0.0 ? tau * z : (tau - 1.0) * z;
    }
    return total;
  };

  RestrictedFit best{sorted[k - 1], objective_at(sorted[k - 1])};
  // Integer n*tau: the whole segment between the two order statistics is
  // optimal; evaluate the upper endpoint too.
  if (std::abs(n_tau - std::round(n_tau)) < 1e-9 && k < sorted.size()) {
    const double alt_obj = objective_at(sorted[k]);
    if (alt_obj < best.objective) best = {sorted[k], alt_obj};
  }
  return best;
}

double pseudo_r2(double fit_objective, double restricted_objective) {
  if (!(restricted_objective > 0.0)) {
    throw DataError("pseudo R2 undefined: restricted objective is zero (constant response)");
  }
  return 1.0 - fit_objective / restricted_objective;
}

namespace {

QuantileFit fit_impl(const QuantileProblem& problem, const FitOptions& options,
                     bool with_bootstrap) {
  const std::size_t n = problem.design.rows();
  const std::size_t k = problem.design.cols();

  QuantileFit out;
  out.tau = problem.tau;
  out.n_obs = n;

  const SolveResult solved =
      solve(problem.design, problem.response, problem.tau, options.gap_tolerance);
  out.coefficients = solved.coefficients;
  out.objective = solved.objective;
  out.diagnostics = solved.diagnostics;

  const RestrictedFit restricted = restricted_fit(problem.response, problem.tau);
  out.pseudo_r2 =
      restricted.objective > 0.0 ? pseudo_r2(out.objective, restricted.objective) : 0.0;

  out.bootstrap.seed = options.seed;
  out.bootstrap.replicates = with_bootstrap ? options.bootstrap_replicates : 0;
  if (out.bootstrap.replicates > 0) {
    const std::size_t reps = out.bootstrap.replicates;
    std::vector<std::vector<double>> estimates(reps);
    std::vector<char> valid(reps, 0);
    core::for_index(reps, options.exec, [&](std::size_t rep) {
      core::Rng rng = core::Rng::substream(options.seed, "qr_bootstrap", rep);
      Mat design(n, k);
      std::vector<double> response(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto pick = static_cast<std::size_t>(rng.uniform_index(n));
        for (std::size_t j = 0; j < k; ++j) design(i, j) = problem.design(pick, j);
        response[i] = problem.response[pick];
      }
      if (!core::deficient_columns(design).empty()) return;  // degenerate resample
      try {
        const SolveResult rep_fit =
            solve(design, response, problem.tau, options.gap_tolerance);
        estimates[rep] = rep_fit.coefficients;
        valid[rep] = 1;
      } catch (const NumericError&) {
        // left invalid; deterministic because it depends only on the draw
      }
    });

    std::vector<std::vector<double>> per_coef(k);
    for (std::size_t rep = 0; rep < reps; ++rep) {
      if (!valid[rep]) continue;
      for (std::size_t j = 0; j < k; ++j) per_coef[j].push_back(estimates[rep][j]);
    }
    out.bootstrap.valid_replicates = per_coef.empty() ? 0 : per_coef[0].size();
    out.std_errors.assign(k, std::numeric_limits<double>::quiet_NaN());
    if (out.bootstrap.valid_replicates >= 2) {
      for (std::size_t j = 0; j < k; ++j) out.std_errors[j] = core::sample_sd(per_coef[j]);
    }
  }
  return out;
}

}  // namespace

QuantileFit fit(const QuantileProblem& problem, const FitOptions& options) {
  problem.validate();
  check_rank(problem.design, effective_names(problem));
  return fit_impl(problem, options, /*with_bootstrap=*/true);
}

std::vector<QuantileFit> fit_profile(const Mat& design, std::span<const double> response,
                                     std::span<const double> taus,
                                     const std::vector<std::string>& column_names,
                                     const FitOptions& options) {
  QuantileProblem base;
  base.design = design;
  base.response.assign(response.begin(), response.end());
  base.column_names = column_names;
  base.tau = taus.empty() ? 0.5 : taus[0];
  base.validate();
  for (double tau : taus) {
    if (!(tau > 0.0 && tau < 1.0)) {
      throw ConfigError("tau must lie in (0, 1), got " + std::to_string(tau));
    }
  }
  check_rank(design, effective_names(base));

  std::vector<QuantileFit> fits(taus.size());
  FitOptions inner = options;
  inner.exec = Exec::serial;  // parallelism lives on the tau loop
  core::for_index(taus.size(), options.exec, [&](std::size_t t) {
    QuantileProblem problem = base;
    problem.tau = taus[t];
    fits[t] = fit_impl(problem, inner, /*with_bootstrap=*/true);
  });
  return fits;
}

}  // namespace mobevt::quantreg
