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
#include "mobevt/evt/fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "mobevt/core/error.hpp"
#include "mobevt/core/linalg.hpp"
#include "mobevt/core/optimize.hpp"
#include "mobevt/core/rng.hpp"
#include "mobevt/core/stats.hpp"
#include "mobevt/evt/gev.hpp"

namespace mobevt::evt {

namespace {

constexpr double kPenaltyBase = 1e10;
constexpr double kLogSigmaCap = 50.0;
constexpr double kExpCap = 700.0;

struct TermLayout {
  std::size_t loc_begin = 0;   // location intercept index
  std::size_t ls_begin = 0;    // log-scale intercept index
  std::size_t xi_index = 0;
};

TermLayout layout_of(const GevSpec& spec) {
  TermLayout l;
  l.loc_begin = 0;
  l.ls_begin = 1 + spec.location_terms.size();
  l.xi_index = l.ls_begin + 1 + spec.logscale_terms.size();
  return l;
}

double covariate_of(const Block& block, const std::string& name) {
  const auto it = block.covariates.find(name);
  if (it == block.covariates.end()) {
    throw DataError("block " + block.label + " has no covariate '" + name + "'");
  }
  return it->second;
}

}  // namespace

std::vector<std::string> GevSpec::parameter_names() const {
  std::vector<std::string> names;
  names.push_back("mu0");
  for (const auto& term : location_terms) names.push_back("mu_" + term);
  names.push_back("logsigma0");
  for (const auto& term : logscale_terms) names.push_back("logsigma_" + term);
  names.push_back("xi");
  return names;
}

std::string GevSpec::description() const {
  std::string mu = "mu";
  for (const auto& t : location_terms) mu += "+" + t;
  std::string ls = "logsigma";
  for (const auto& t : logscale_terms) ls += "+" + t;
  if (location_terms.empty() && logscale_terms.empty()) return "stationary";
  return "mu(" + mu.substr(3) + ") logsigma(" + ls.substr(9) + ")";
}

double GevFit::mu_at(const std::map<std::string, double>& covariates) const {
  const TermLayout l = layout_of(spec);
  double mu = params[l.loc_begin];
  for (std::size_t j = 0; j < spec.location_terms.size(); ++j) {
    const auto it = covariates.find(spec.location_terms[j]);
    if (it == covariates.end()) {
      throw DataError("scenario is missing covariate '" + spec.location_terms[j] + "'");
    }
    mu += params[l.loc_begin + 1 + j] * it->second;
  }
  return mu;
}

double GevFit::sigma_at(const std::map<std::string, double>& covariates) const {
  const TermLayout l = layout_of(spec);
  double h = params[l.ls_begin];
  for (std::size_t j = 0; j < spec.logscale_terms.size(); ++j) {
    const auto it = covariates.find(spec.logscale_terms[j]);
    if (it == covariates.end()) {
      throw DataError("scenario is missing covariate '" + spec.logscale_terms[j] + "'");
    }
    h += params[l.ls_begin + 1 + j] * it->second;
  }
  return std::exp(h);
}

double negative_log_likelihood(const BlockSeries& blocks, const GevSpec& spec,
                               std::span<const double> params) {
  if (blocks.orientation != Orientation::maxima) {
    throw DataError("likelihood expects a maxima-oriented block series");
  }
  const TermLayout l = layout_of(spec);
  if (params.size() != spec.parameter_count()) {
    throw ConfigError("parameter vector length does not match spec");
  }
  const double xi = params[l.xi_index];

  double total = 0.0;
  double penalty = 0.0;
  bool violated = false;
  for (const Block& block : blocks.blocks) {
    double mu = params[l.loc_begin];
    for (std::size_t j = 0; j < spec.location_terms.size(); ++j) {
      mu += params[l.loc_begin + 1 + j] * covariate_of(block, spec.location_terms[j]);
    }
    double h = params[l.ls_begin];
    for (std::size_t j = 0; j < spec.logscale_terms.size(); ++j) {
      h += params[l.ls_begin + 1 + j] * covariate_of(block, spec.logscale_terms[j]);
    }
    if (std::abs(h) > kLogSigmaCap) {
      violated = true;
      penalty += std::abs(h) - kLogSigmaCap;
      continue;
    }
    const double sigma = std::exp(h);
    const double u = (block.extremum - mu) / sigma;

    if (std::abs(xi) < kXiTolerance) {
      if (-u > kExpCap) {
        violated = true;
        penalty += -u - kExpCap;
        continue;
      }
      total += h + u + std::exp(-u);
    } else {
      const double b = 1.0 + xi * u;
      if (b <= 0.0) {
        violated = true;
        penalty += 1.0 - b;
        continue;
      }
      const double log_b = std::log1p(xi * u);
      const double exponent = -log_b / xi;  // b^(-1/xi) = exp(exponent)
      if (exponent > kExpCap) {
        violated = true;
        penalty += exponent - kExpCap;
        continue;
      }
      total += h + (1.0 + 1.0 / xi) * log_b + std::exp(exponent);
    }
  }
  if (violated) return kPenaltyBase + penalty;
  if (!std::isfinite(total)) return kPenaltyBase + 1e3;
  return total;
}

namespace {

// Internal standardized parameterization: covariates are centered and scaled
// before optimization, which keeps the simplex well-conditioned when raw
// covariates live on wildly different scales (a month counter up to 248 next
// to raw edge counts in the tens of thousands). The mapping back to the raw
// parameterization is exact and linear.
struct Standardizer {
  std::vector<double> loc_center, loc_scale;
  std::vector<double> ls_center, ls_scale;
  TermLayout layout;
  std::size_t k = 0;

  static Standardizer build(const BlockSeries& blocks, const GevSpec& spec) {
    Standardizer s;
    s.layout = layout_of(spec);
    s.k = spec.parameter_count();
    const auto stats_for = [&](const std::string& term) {
      std::vector<double> col;
      col.reserve(blocks.blocks.size());
      for (const auto& b : blocks.blocks) col.push_back(covariate_of(b, term));
      const double m = core::mean(col);
      double sd = 0.0;
      if (col.size() >= 2) {
        double acc = 0.0;
        for (double v : col) acc += (v - m) * (v - m);
        sd = std::sqrt(acc / static_cast<double>(col.size() - 1));
      }
      // Constant columns stay untouched (scale 1, center 0); the optimizer
      // simply sees a flat direction.
      if (!(sd > 0.0)) return std::pair<double, double>{0.0, 1.0};
      return std::pair<double, double>{m, sd};
    };
    for (const auto& term : spec.location_terms) {
      const auto [m, sd] = stats_for(term);
      s.loc_center.push_back(m);
      s.loc_scale.push_back(sd);
    }
    for (const auto& term : spec.logscale_terms) {
      const auto [m, sd] = stats_for(term);
      s.ls_center.push_back(m);
      s.ls_scale.push_back(sd);
    }
    return s;
  }

  BlockSeries standardized_blocks(const BlockSeries& blocks, const GevSpec& spec) const {
    BlockSeries out = blocks;
    for (auto& block : out.blocks) {
      for (std::size_t j = 0; j < spec.location_terms.size(); ++j) {
        auto& v = block.covariates[spec.location_terms[j]];
        v = (v - loc_center[j]) / loc_scale[j];
      }
      for (std::size_t j = 0; j < spec.logscale_terms.size(); ++j) {
        const auto& term = spec.logscale_terms[j];
        // A term may appear in both groups; standardize once with the
        // location constants in that case (they are identical by
        // construction since they come from the same column).
        if (std::find(spec.location_terms.begin(), spec.location_terms.end(), term) !=
            spec.location_terms.end()) {
          continue;
        }
        auto& v = block.covariates[term];
        v = (v - ls_center[j]) / ls_scale[j];
      }
    }
    return out;
  }

  /// Raw parameters from standardized ones (exact linear map).
  std::vector<double> to_raw(std::span<const double> std_params) const {
    std::vector<double> raw(std_params.begin(), std_params.end());
    double shift = 0.0;
    for (std::size_t j = 0; j < loc_scale.size(); ++j) {
      const std::size_t idx = layout.loc_begin + 1 + j;
      raw[idx] = std_params[idx] / loc_scale[j];
      shift += std_params[idx] * loc_center[j] / loc_scale[j];
    }
    raw[layout.loc_begin] = std_params[layout.loc_begin] - shift;
    shift = 0.0;
    for (std::size_t j = 0; j < ls_scale.size(); ++j) {
      const std::size_t idx = layout.ls_begin + 1 + j;
      raw[idx] = std_params[idx] / ls_scale[j];
      shift += std_params[idx] * ls_center[j] / ls_scale[j];
    }
    raw[layout.ls_begin] = std_params[layout.ls_begin] - shift;
    return raw;
  }

  /// Jacobian d raw / d standardized, for covariance transport.
  core::Mat jacobian() const {
    core::Mat j(k, k);
    for (std::size_t i = 0; i < k; ++i) j(i, i) = 1.0;
    for (std::size_t t = 0; t < loc_scale.size(); ++t) {
      const std::size_t idx = layout.loc_begin + 1 + t;
      j(idx, idx) = 1.0 / loc_scale[t];
      j(layout.loc_begin, idx) = -loc_center[t] / loc_scale[t];
    }
    for (std::size_t t = 0; t < ls_scale.size(); ++t) {
      const std::size_t idx = layout.ls_begin + 1 + t;
      j(idx, idx) = 1.0 / ls_scale[t];
      j(layout.ls_begin, idx) = -ls_center[t] / ls_scale[t];
    }
    return j;
  }
};

}  // namespace

GevFit fit_gev(const BlockSeries& blocks, const GevSpec& spec, const GevFitOptions& options) {
  for (const auto* terms : {&spec.location_terms, &spec.logscale_terms}) {
    std::set<std::string> seen;
    for (const auto& term : *terms) {
      if (!seen.insert(term).second) {
        throw ConfigError("covariate '" + term + "' listed twice in one term group");
      }
    }
  }
  const BlockSeries maxima =
      blocks.orientation == Orientation::minima ? negate(blocks) : blocks;
  const std::size_t n = maxima.blocks.size();
  const std::size_t k = spec.parameter_count();
  if (n < 3 + k) {
    throw ConfigError("need at least " + std::to_string(3 + k) + " blocks to fit '" +
                      spec.description() + "', got " + std::to_string(n));
  }
  for (const auto& term : spec.location_terms) covariate_of(maxima.blocks.front(), term);
  for (const auto& term : spec.logscale_terms) covariate_of(maxima.blocks.front(), term);

  const Standardizer stdz = Standardizer::build(maxima, spec);
  const BlockSeries work = stdz.standardized_blocks(maxima, spec);
  const TermLayout layout = layout_of(spec);

  const auto objective = [&](std::span<const double> p) {
    return negative_log_likelihood(work, spec, p);
  };

  // Moment-based Gumbel start: sigma0 = sd*sqrt(6)/pi, mu0 = mean - 0.5772*sigma0.
  std::vector<double> extrema;
  extrema.reserve(n);
  for (const auto& b : work.blocks) extrema.push_back(b.extremum);
  const double m = core::mean(extrema);
  const double sd = core::sample_sd(extrema);
  const double sigma0 = std::max(sd * std::sqrt(6.0) / 3.141592653589793238463, 1e-8);
  std::vector<double> start(k, 0.0);
  start[layout.loc_begin] = m - 0.5772156649015329 * sigma0;
  start[layout.ls_begin] = std::log(sigma0);
  start[layout.xi_index] = 0.1;

  std::vector<double> step(k, 0.1);
  step[layout.loc_begin] = 0.25 * sigma0;
  for (std::size_t j = 0; j < spec.location_terms.size(); ++j) {
    step[layout.loc_begin + 1 + j] = 0.25 * sigma0;
  }
  step[layout.ls_begin] = 0.25;
  step[layout.xi_index] = 0.1;

  core::NelderMeadOptions nm;
  nm.diameter_tolerance = 1e-8;
  nm.max_iterations = 2000 + 600 * k;

  const std::size_t runs = options.restarts + 1;
  std::vector<core::NelderMeadResult> results(runs);
  core::for_index(runs, options.exec, [&](std::size_t run) {
    std::vector<double> x0 = start;
    if (run > 0) {
      core::Rng rng = core::Rng::substream(options.seed, "gev_restart", run);
      for (std::size_t j = 0; j < k; ++j) x0[j] += 2.0 * step[j] * rng.normal();
    }
    results[run] = core::nelder_mead(objective, x0, step, nm);
  });

  std::size_t best = 0;
  std::size_t total_evals = 0;
  for (std::size_t run = 0; run < runs; ++run) {
    total_evals += results[run].evaluations;
    if (results[run].value < results[best].value) best = run;
  }

  // Tighten from the winner with a small simplex.
  std::vector<double> refine_step(k);
  for (std::size_t j = 0; j < k; ++j) {
    refine_step[j] = 1e-3 * (1.0 + std::abs(results[best].point[j]));
  }
  core::NelderMeadResult final_run = core::nelder_mead(objective, results[best].point,
                                                       refine_step, nm);
  total_evals += final_run.evaluations;
  if (results[best].value < final_run.value) {
    final_run.point = results[best].point;
    final_run.value = results[best].value;
    final_run.converged = results[best].converged;
  }

  if (!(final_run.value < kPenaltyBase)) {
    throw NumericError("GEV fit for '" + spec.description() +
                       "' never left the support penalty region (best value " +
                       std::to_string(final_run.value) + " after " +
                       std::to_string(total_evals) + " evaluations)");
  }

  GevFit fit;
  fit.spec = spec;
  fit.param_names = spec.parameter_names();
  fit.params = stdz.to_raw(final_run.point);
  fit.n_blocks = n;
  fit.log_likelihood = -final_run.value;
  fit.aic = 2.0 * static_cast<double>(k) - 2.0 * fit.log_likelihood;
  fit.bic = static_cast<double>(k) * std::log(static_cast<double>(n)) -
            2.0 * fit.log_likelihood;
  fit.converged = final_run.converged;
  fit.diagnostics.restarts = options.restarts;
  fit.diagnostics.iterations = final_run.iterations;
  fit.diagnostics.evaluations = total_evals;
  fit.diagnostics.best_value = final_run.value;
  fit.diagnostics.simplex_converged = final_run.converged;
  fit.data_orientation = blocks.orientation;
  fit.covariate_scale = options.covariate_scale;
  fit.fitted_blocks = maxima;

  // Observed information in the standardized space, covariance transported
  // through the (exact) linear reparameterization.
  fit.std_errors.assign(k, std::numeric_limits<double>::quiet_NaN());
  fit.se_available = false;
  const auto hess = core::central_hessian(objective, final_run.point, 1e-4);
  core::Mat info(k, k);
  bool finite = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      info(i, j) = hess[i][j];
      if (!std::isfinite(info(i, j))) finite = false;
    }
  }
  if (finite) {
    if (const auto cov_std = core::invert(info)) {
      const core::Mat jac = stdz.jacobian();
      core::Mat cov(k, k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          double acc = 0.0;
          for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) {
              acc += jac(i, a) * (*cov_std)(a, b) * jac(j, b);
            }
          }
          cov(i, j) = acc;
        }
      }
      bool ok = true;
      for (std::size_t i = 0; i < k; ++i) {
        if (!(cov(i, i) > 0.0) || !std::isfinite(cov(i, i))) ok = false;
      }
      if (ok) {
        for (std::size_t i = 0; i < k; ++i) fit.std_errors[i] = std::sqrt(cov(i, i));
        fit.se_available = true;
      }
    }
  }

  // Support condition must hold at the estimate for every block.
  const double check = negative_log_likelihood(maxima, spec, fit.params);
  if (!(check < kPenaltyBase)) {
    throw NumericError("fitted parameters violate the support condition");
  }
  return fit;
}

ModelSelectionTable model_selection(const BlockSeries& blocks, std::span<const GevSpec> specs,
                                    const GevFitOptions& options) {
  if (specs.empty()) throw ConfigError("model selection needs at least one spec");
  std::vector<ModelSelectionRow> rows(specs.size());
  GevFitOptions inner = options;
  inner.exec = Exec::serial;  // parallelism lives on the spec loop
  core::for_index(specs.size(), options.exec, [&](std::size_t i) {
    rows[i].spec = specs[i];
    try {
      rows[i].fit = fit_gev(blocks, specs[i], inner);
    } catch (const Error& e) {
      rows[i].error = e.what();
    }
  });

  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double aic_a = rows[a].fit ? rows[a].fit->aic : std::numeric_limits<double>::infinity();
    const double aic_b = rows[b].fit ? rows[b].fit->aic : std::numeric_limits<double>::infinity();
    return aic_a < aic_b;
  });
  ModelSelectionTable table;
  table.rows.reserve(rows.size());
  for (auto i : order) table.rows.push_back(std::move(rows[i]));
  return table;
}

}  // namespace mobevt::evt
