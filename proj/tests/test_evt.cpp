#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mobevt/core/error.hpp"
#include "mobevt/core/optimize.hpp"
#include "mobevt/core/rng.hpp"
#include "mobevt/evt/analysis.hpp"
#include "mobevt/evt/blocks.hpp"
#include "mobevt/evt/fit.hpp"
#include "mobevt/evt/gev.hpp"

using namespace mobevt;
using core::Date;
using core::Rng;
using namespace mobevt::evt;

namespace {

BlockSeries maxima_series(const std::vector<double>& extrema) {
  BlockSeries s;
  s.orientation = Orientation::maxima;
  int year = 2000;
  int month = 1;
  for (double z : extrema) {
    Block b;
    b.label = Date(year, month, 1).month_label();
    b.extremum = z;
    b.covariates["t"] = static_cast<double>(s.blocks.size() + 1);
    s.blocks.push_back(std::move(b));
    if (++month > 12) {
      month = 1;
      ++year;
    }
  }
  return s;
}

BlockSeries sample_stationary(Rng& rng, std::size_t n, double mu, double sigma, double xi) {
  std::vector<double> z(n);
  for (auto& v : z) v = rng.gev(mu, sigma, xi);
  return maxima_series(z);
}

// Test-local GEV density, for the quadrature oracle (independent of gev_pdf).
double oracle_density(double z, double mu, double sigma, double xi) {
  const double u = (z - mu) / sigma;
  const double b = 1.0 + xi * u;
  if (b <= 0.0) return 0.0;
  const double t = std::pow(b, -1.0 / xi);
  return std::pow(b, -1.0 / xi - 1.0) * std::exp(-t) / sigma;
}

double simpson(double lo, double hi, std::size_t intervals,
               const std::function<double(double)>& f) {
  double acc = f(lo) + f(hi);
  for (std::size_t i = 1; i < intervals; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(intervals);
    acc += f(x) * (i % 2 == 0 ? 2.0 : 4.0);
  }
  return acc * (hi - lo) / (3.0 * static_cast<double>(intervals));
}

const GevFitOptions kFastFit{17, 2, core::Exec::serial, "raw"};

}  // namespace

TEST_CASE("gev_cdf closed forms at the location") {
  CHECK(gev_cdf(0.0, 0.0, 1.0, 0.3) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(gev_cdf(5.0, 5.0, 2.0, -0.4) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(gev_cdf(1.0, 0.0, 1.0, 0.0) ==
        doctest::Approx(std::exp(-std::exp(-1.0))).epsilon(1e-12));
  CHECK_THROWS_AS(gev_cdf(0.0, 0.0, 0.0, 0.1), ConfigError);
  CHECK_THROWS_AS(gev_cdf(0.0, 0.0, -1.0, 0.1), ConfigError);
}

TEST_CASE("gev_cdf outside the support") {
  // xi > 0: lower endpoint mu - sigma/xi.
  CHECK(gev_cdf(-10.01, 0.0, 1.0, 0.1) == 0.0);
  // xi < 0: upper endpoint mu + sigma/|xi|.
  CHECK(gev_cdf(10.01, 0.0, 1.0, -0.1) == 1.0);
}

TEST_CASE("gev_cdf against a quadrature oracle") {
  // mu=0, sigma=1, xi=0.2: support starts at -5.
  const double target = gev_cdf(1.0, 0.0, 1.0, 0.2);
  const double integral = simpson(-5.0, 1.0, 20000, [](double z) {
    return oracle_density(z, 0.0, 1.0, 0.2);
  });
  CHECK(target == doctest::Approx(integral).epsilon(1e-8));
}

TEST_CASE("gumbel branch agreement at +-xi_tol") {
  Rng rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    const double mu = rng.normal() * 5.0;
    const double sigma = 0.5 + rng.uniform01() * 3.0;
    const double z = mu + (rng.uniform01() * 6.0 - 3.0) * sigma;
    const double at_zero = gev_cdf(z, mu, sigma, 0.0);
    CHECK(std::abs(gev_cdf(z, mu, sigma, 1.0000001e-6) - at_zero) < 1e-6);
    CHECK(std::abs(gev_cdf(z, mu, sigma, -1.0000001e-6) - at_zero) < 1e-6);
  }
}

TEST_CASE("negative log-likelihood hand value at a single block") {
  // z = mu, sigma = 1, xi = 0.1: log(1) + 11*log(1) + 1 = 1.
  auto blocks = maxima_series({4.0});
  GevSpec spec{"m0", {}, {}};
  CHECK(negative_log_likelihood(blocks, spec, std::vector<double>{4.0, 0.0, 0.1}) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("support violations return the penalty, not infinity") {
  auto blocks = maxima_series({0.0, 100.0});
  GevSpec spec{"m0", {}, {}};
  // xi = -1: upper endpoint mu + sigma < 100.
  const double value =
      negative_log_likelihood(blocks, spec, std::vector<double>{0.0, 0.0, -1.0});
  CHECK(value >= 1e10);
  CHECK(std::isfinite(value));
}

TEST_CASE("truth beats a perturbed location on Gumbel data") {
  Rng rng(41);
  std::vector<double> z(1000);
  for (auto& v : z) v = rng.gumbel(0.0, 1.0);
  auto blocks = maxima_series(z);
  GevSpec spec{"m0", {}, {}};
  const double at_truth =
      negative_log_likelihood(blocks, spec, std::vector<double>{0.0, 0.0, 0.0});
  const double at_shifted =
      negative_log_likelihood(blocks, spec, std::vector<double>{1.0, 0.0, 0.0});
  CHECK(at_truth < at_shifted);
}

TEST_CASE("finite-difference gradient passes a Richardson check") {
  Rng rng(19);
  auto blocks = sample_stationary(rng, 400, 10.0, 2.0, 0.15);
  GevSpec spec{"m0", {}, {}};
  const auto f = [&](std::span<const double> p) {
    return negative_log_likelihood(blocks, spec, p);
  };
  const std::vector<double> at = {9.8, std::log(2.1), 0.12};
  const auto g_h = core::central_gradient(f, at, 1e-4);
  const auto g_h2 = core::central_gradient(f, at, 5e-5);
  for (std::size_t i = 0; i < at.size(); ++i) {
    const double richardson = (4.0 * g_h2[i] - g_h[i]) / 3.0;
    CHECK(std::abs(g_h2[i] - richardson) <= 1e-5 * (1.0 + std::abs(richardson)));
  }
}

TEST_CASE("block minima: hand fixtures") {
  std::vector<ingest::SeriesObservation> obs = {{Date(2020, 1, 5), 3.0},
                                                {Date(2020, 1, 10), 1.0},
                                                {Date(2020, 1, 20), 2.0}};
  const auto result = block_minima(obs);
  REQUIRE(result.series.blocks.size() == 1);
  CHECK(result.series.blocks[0].extremum == 1.0);
  CHECK(result.series.blocks[0].label == "2020-01");
  CHECK(result.series.orientation == Orientation::minima);

  obs.push_back({Date(2020, 2, 1), -4.0});
  const auto two = block_minima(obs);
  REQUIRE(two.series.blocks.size() == 2);
  CHECK(two.series.blocks[1].extremum == -4.0);
  CHECK(two.series.blocks[0].covariates.at("t") == 1.0);
  CHECK(two.series.blocks[1].covariates.at("t") == 2.0);
}

TEST_CASE("block minima: gap months are omitted and reported") {
  std::vector<ingest::SeriesObservation> obs = {{Date(2020, 1, 5), 3.0},
                                                {Date(2020, 3, 10), 1.0}};
  const auto result = block_minima(obs);
  CHECK(result.series.blocks.size() == 2);
  REQUIRE(result.empty_months.size() == 1);
  CHECK(result.empty_months[0] == "2020-02");
}

TEST_CASE("block minima: daily series over the paper window gives 248 blocks") {
  std::vector<ingest::SeriesObservation> obs;
  Rng rng(4);
  for (Date d(2000, 1, 1); d <= Date(2020, 8, 25); d = d.plus_days(1)) {
    obs.push_back({d, 30.0 + rng.normal()});
  }
  const auto result = block_minima(obs);
  CHECK(result.series.blocks.size() == 248);
  CHECK(result.empty_months.empty());
  CHECK(result.series.blocks.back().covariates.at("t") == 248.0);
}

TEST_CASE("negate flips extrema and orientation") {
  BlockSeries minima;
  minima.orientation = Orientation::minima;
  minima.blocks.push_back({"2020-01", 1.0, {{"t", 1.0}, {"k", 7.0}}});
  minima.blocks.push_back({"2020-02", -2.0, {{"t", 2.0}, {"k", 8.0}}});
  const auto negated = negate(minima);
  CHECK(negated.orientation == Orientation::maxima);
  CHECK(negated.blocks[0].extremum == -1.0);
  CHECK(negated.blocks[1].extremum == 2.0);
  CHECK(negated.blocks[1].covariates.at("k") == 8.0);  // covariates untouched

  // Involution, with the orientation overridden for the second pass.
  auto once = negate(minima);
  once.orientation = Orientation::minima;
  const auto twice = negate(once);
  for (std::size_t i = 0; i < minima.blocks.size(); ++i) {
    CHECK(twice.blocks[i].extremum == minima.blocks[i].extremum);
  }
  CHECK_THROWS_AS(negate(negated), DataError);
}

TEST_CASE("min equals minus max of negated values") {
  Rng rng(8);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> v(1 + rng.uniform_index(20));
    for (auto& x : v) x = rng.normal() * 10.0;
    std::vector<double> neg;
    for (double x : v) neg.push_back(-x);
    CHECK(*std::min_element(v.begin(), v.end()) ==
          -*std::max_element(neg.begin(), neg.end()));
  }
}

TEST_CASE("stationary fit recovers synthetic parameters within 3 SEs") {
  Rng rng(123);
  const auto blocks = sample_stationary(rng, 5000, 10.0, 2.0, 0.2);
  const auto fit = fit_gev(blocks, GevSpec{"m0", {}, {}}, kFastFit);
  REQUIRE(fit.converged);
  REQUIRE(fit.se_available);
  const double truth[] = {10.0, std::log(2.0), 0.2};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(fit.params[i] - truth[i]) < 3.0 * fit.std_errors[i]);
  }
  CHECK(fit.n_blocks == 5000);
}

TEST_CASE("aic and bic identities hold exactly") {
  Rng rng(5);
  const auto blocks = sample_stationary(rng, 60, 4.0, 1.0, -0.1);
  const auto fit = fit_gev(blocks, GevSpec{"m0", {}, {}}, kFastFit);
  const double k = 3.0;
  CHECK(fit.aic == 2.0 * k - 2.0 * fit.log_likelihood);
  CHECK(fit.bic == k * std::log(60.0) - 2.0 * fit.log_likelihood);
}

TEST_CASE("constant-zero trend covariates reproduce the stationary likelihood") {
  Rng rng(31);
  auto blocks = sample_stationary(rng, 150, 6.0, 1.5, -0.1);
  for (auto& b : blocks.blocks) b.covariates["zero"] = 0.0;
  const auto stationary = fit_gev(blocks, GevSpec{"m0", {}, {}}, kFastFit);
  const auto padded = fit_gev(blocks, GevSpec{"mz", {"zero"}, {"zero"}}, kFastFit);
  CHECK(std::abs(stationary.log_likelihood - padded.log_likelihood) < 1e-6);
}

TEST_CASE("nesting: larger models never fit worse (up to tolerance)") {
  Rng rng(77);
  const std::size_t n = 180;
  BlockSeries blocks = maxima_series([&] {
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = rng.gev(3.0 + 0.02 * static_cast<double>(i + 1), 1.2, -0.15);
    }
    return z;
  }());
  const auto m0 = fit_gev(blocks, GevSpec{"m0", {}, {}}, kFastFit);
  const auto m1 = fit_gev(blocks, GevSpec{"m1", {"t"}, {}}, kFastFit);
  const auto m2 = fit_gev(blocks, GevSpec{"m2", {"t"}, {"t"}}, kFastFit);
  CHECK(m0.log_likelihood <= m1.log_likelihood + 1e-6);
  CHECK(m1.log_likelihood <= m2.log_likelihood + 1e-6);
}

TEST_CASE("minima path equals the negated-maxima path") {
  Rng rng(62);
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<double> minima_values(120);
    for (auto& v : minima_values) v = -rng.gev(5.0, 1.0, -0.2);  // lows of a price
    BlockSeries minima = maxima_series(minima_values);
    minima.orientation = Orientation::minima;

    const auto direct = fit_gev(minima, GevSpec{"m0", {}, {}}, kFastFit);
    const auto negated = fit_gev(negate(minima), GevSpec{"m0", {}, {}}, kFastFit);
    CHECK(std::abs(direct.log_likelihood - negated.log_likelihood) < 1e-6);
    CHECK(direct.data_orientation == Orientation::minima);
    CHECK(negated.data_orientation == Orientation::maxima);
    for (std::size_t j = 0; j < direct.params.size(); ++j) {
      CHECK(direct.params[j] == doctest::Approx(negated.params[j]).epsilon(1e-6));
    }
  }
}

TEST_CASE("return level at r = 1/(1-exp(-1)) is the location exactly") {
  Rng rng(9);
  const auto blocks = sample_stationary(rng, 400, 7.0, 2.0, 0.1);
  const auto fit = fit_gev(blocks, GevSpec{"m0", {}, {}}, kFastFit);
  const double r_star = 1.0 / (1.0 - std::exp(-1.0));
  const auto level = return_level(fit, r_star, {});
  CHECK(level.level == doctest::Approx(fit.params[0]).epsilon(1e-9));
}

TEST_CASE("return level input contracts") {
  Rng rng(10);
  const auto blocks = sample_stationary(rng, 60, 0.0, 1.0, 0.0);
  const auto fit = fit_gev(blocks, GevSpec{"m0", {}, {}}, kFastFit);
  CHECK_THROWS_AS(return_level(fit, 1.0, {}), ConfigError);
  const auto trended = [&] {
    auto b = blocks;
    return fit_gev(b, GevSpec{"m1", {"t"}, {}}, kFastFit);
  }();
  CHECK_THROWS_AS(return_level(trended, 10.0, {}), DataError);  // missing t
  CHECK_NOTHROW(return_level(trended, 10.0, {{"t", 30.0}}));
}

TEST_CASE("exceedance probability closed forms and inverse consistency") {
  Rng rng(12);
  const auto blocks = sample_stationary(rng, 500, 3.0, 1.5, -0.25);
  const auto fit = fit_gev(blocks, GevSpec{"m0", {}, {}}, kFastFit);
  const double at_mu = exceedance_probability(fit, fit.params[0], {});
  CHECK(at_mu == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  for (double r : {2.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
    const auto level = return_level(fit, r, {});
    const double p = exceedance_probability(fit, level.level, {});
    CHECK(std::abs(p - 1.0 / r) < 1e-10);
  }
}

TEST_CASE("return levels are monotone: maxima up in r, minima down in r") {
  Rng rng(14);
  auto maxima = sample_stationary(rng, 300, 5.0, 1.0, -0.3);
  const auto fit_max = fit_gev(maxima, GevSpec{"m0", {}, {}}, kFastFit);
  BlockSeries minima = maxima;  // reuse values, now interpreted as price lows
  minima.orientation = Orientation::minima;
  const auto fit_min = fit_gev(minima, GevSpec{"m0", {}, {}}, kFastFit);
  double prev_max = -1e300;
  double prev_min = 1e300;
  for (double r : {2.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
    const double up = return_level(fit_max, r, {}).level;
    const double down = return_level(fit_min, r, {}).level;
    CHECK(up > prev_max);
    CHECK(down < prev_min);
    prev_max = up;
    prev_min = down;
  }
}

TEST_CASE("minima exceedance at an extreme low agrees with Monte Carlo") {
  Rng rng(21);
  std::vector<double> lows(400);
  for (auto& v : lows) v = -rng.gev(-20.0, 3.0, -0.1);  // price lows around 20
  BlockSeries minima = maxima_series(lows);
  minima.orientation = Orientation::minima;
  const auto fit = fit_gev(minima, GevSpec{"m0", {}, {}}, kFastFit);

  const double z_low = return_level(fit, 1000.0, {}).level - 1.0;
  const double p = exceedance_probability(fit, z_low, {});
  CHECK(p < 1e-3);

  // Simulation oracle from the fitted model.
  Rng sim(22);
  const double mu = fit.params[0];
  const double sigma = std::exp(fit.params[1]);
  const double xi = fit.params[2];
  std::size_t hits = 0;
  constexpr std::size_t kDraws = 1000000;
  for (std::size_t i = 0; i < kDraws; ++i) {
    const double y = -sim.gev(mu, sigma, xi);  // back on the minima scale
    if (y < z_low) ++hits;
  }
  const double mc = static_cast<double>(hits) / static_cast<double>(kDraws);
  CHECK(std::abs(mc - p) < 3e-3);  // ~5 sigma of the MC error at p ~ 1e-3
}

TEST_CASE("model selection ranks a real trend above stationarity") {
  Rng rng(33);
  const std::size_t n = 200;
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = rng.gev(2.0 + 0.04 * static_cast<double>(i + 1), 1.0, -0.2);
  }
  auto blocks = maxima_series(z);
  std::vector<GevSpec> specs = {{"stationary", {}, {}}, {"trend", {"t"}, {}}};
  const auto table = model_selection(blocks, specs, kFastFit);
  REQUIRE(table.rows.size() == 2);
  REQUIRE(table.rows[0].fit.has_value());
  CHECK(table.rows[0].spec.name == "trend");
  CHECK(table.rows[0].fit->aic < table.rows[1].fit->aic);
}

TEST_CASE("model selection: singleton, duplicates, and failure rows") {
  Rng rng(44);
  const auto blocks = sample_stationary(rng, 80, 1.0, 1.0, 0.1);
  std::vector<GevSpec> one = {{"only", {}, {}}};
  const auto single = model_selection(blocks, one, kFastFit);
  CHECK(single.rows.size() == 1);

  std::vector<GevSpec> twins = {{"a", {}, {}}, {"b", {}, {}}};
  const auto both = model_selection(blocks, twins, kFastFit);
  REQUIRE(both.rows.size() == 2);
  CHECK(std::abs(both.rows[0].fit->aic - both.rows[1].fit->aic) < 1e-6);

  std::vector<GevSpec> broken = {{"ok", {}, {}}, {"missing", {"nope"}, {}}};
  const auto mixed = model_selection(blocks, broken, kFastFit);
  REQUIRE(mixed.rows.size() == 2);
  CHECK(mixed.rows[0].fit.has_value());
  CHECK_FALSE(mixed.rows[1].fit.has_value());
  CHECK_FALSE(mixed.rows[1].error.empty());
}

TEST_CASE("model selection is identical across serial and openmp paths") {
  Rng rng(55);
  const auto blocks = sample_stationary(rng, 120, 2.0, 1.0, -0.1);
  std::vector<GevSpec> specs = {{"m0", {}, {}}, {"m1", {"t"}, {}}};
  GevFitOptions serial = kFastFit;
  GevFitOptions openmp = kFastFit;
  openmp.exec = core::Exec::openmp;
  const auto a = model_selection(blocks, specs, serial);
  const auto b = model_selection(blocks, specs, openmp);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    REQUIRE(a.rows[i].fit.has_value());
    REQUIRE(b.rows[i].fit.has_value());
    CHECK(a.rows[i].fit->log_likelihood == b.rows[i].fit->log_likelihood);
    CHECK(a.rows[i].fit->params == b.rows[i].fit->params);
  }
}

TEST_CASE("diagnostics: residual count, gumbel reduction, and envelope") {
  Rng rng(66);
  const std::size_t n = 200;
  const auto blocks = sample_stationary(rng, n, 5.0, 2.0, -0.2);
  const auto fit = fit_gev(blocks, GevSpec{"m0", {}, {}}, kFastFit);
  const auto bundle = diagnostics(fit);
  CHECK(bundle.qq_theoretical.size() == n);
  CHECK(bundle.qq_empirical.size() == n);
  CHECK(std::is_sorted(bundle.qq_empirical.begin(), bundle.qq_empirical.end()));
  CHECK(std::is_sorted(bundle.qq_theoretical.begin(), bundle.qq_theoretical.end()));
  CHECK(bundle.grid_x.size() == bundle.grid_density.size());
  CHECK_FALSE(bundle.hist_centers.empty());

  // Histogram integrates to ~1.
  double mass = 0.0;
  const double width = bundle.hist_centers[1] - bundle.hist_centers[0];
  for (double d : bundle.hist_density) mass += d * width;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));

  // Parametric-bootstrap envelope: per-rank quantiles of sorted standard
  // Gumbel samples. Residuals of data fitted by (approximately) the truth
  // should stay inside a wide envelope at nearly every rank.
  constexpr std::size_t kSims = 400;
  std::vector<std::vector<double>> order_stats(n);
  Rng env(67);
  for (std::size_t s = 0; s < kSims; ++s) {
    std::vector<double> draw(n);
    for (auto& v : draw) v = env.gumbel();
    std::sort(draw.begin(), draw.end());
    for (std::size_t i = 0; i < n; ++i) order_stats[i].push_back(draw[i]);
  }
  std::size_t inside = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(order_stats[i].begin(), order_stats[i].end());
    const double lo = order_stats[i][static_cast<std::size_t>(0.025 * kSims)];
    const double hi = order_stats[i][static_cast<std::size_t>(0.975 * kSims) - 1];
    if (bundle.qq_empirical[i] >= lo && bundle.qq_empirical[i] <= hi) ++inside;
  }
  CHECK(static_cast<double>(inside) / static_cast<double>(n) >= 0.90);
}

TEST_CASE("diagnostics residuals reduce to (z - mu)/sigma in the gumbel limit") {
  Rng rng(71);
  std::vector<double> z(150);
  for (auto& v : z) v = rng.gumbel(3.0, 2.0);
  auto blocks = maxima_series(z);
  auto fit = fit_gev(blocks, GevSpec{"m0", {}, {}}, kFastFit);
  // Force the Gumbel branch and recompute residuals directly.
  fit.params[2] = 0.0;
  const auto residuals = gumbel_residuals(fit);
  const double mu = fit.params[0];
  const double sigma = std::exp(fit.params[1]);
  for (std::size_t i = 0; i < z.size(); ++i) {
    CHECK(residuals[i] == doctest::Approx((z[i] - mu) / sigma).epsilon(1e-12));
  }
}

TEST_CASE("fit_gev rejects too few blocks and a missing covariate") {
  Rng rng(81);
  const auto blocks = sample_stationary(rng, 5, 0.0, 1.0, 0.0);
  CHECK_THROWS_AS(fit_gev(blocks, GevSpec{"m0", {}, {}}, kFastFit), ConfigError);
  const auto enough = sample_stationary(rng, 30, 0.0, 1.0, 0.0);
  CHECK_THROWS_AS(fit_gev(enough, GevSpec{"bad", {"ghost"}, {}}, kFastFit), DataError);
}

TEST_CASE("duplicate covariates within a term group are rejected") {
  Rng rng(90);
  const auto blocks = sample_stationary(rng, 60, 1.0, 1.0, 0.0);
  CHECK_THROWS_AS(fit_gev(blocks, GevSpec{"dup", {"t", "t"}, {}}, kFastFit), ConfigError);
  // The same term in location and log-scale is legitimate.
  CHECK_NOTHROW(fit_gev(blocks, GevSpec{"both", {"t"}, {"t"}}, kFastFit));
}

TEST_CASE("diagnostics refuse a non-converged fit") {
  Rng rng(91);
  const auto blocks = sample_stationary(rng, 60, 1.0, 1.0, 0.0);
  auto fit = fit_gev(blocks, GevSpec{"m0", {}, {}}, kFastFit);
  fit.converged = false;
  CHECK_THROWS_AS(diagnostics(fit), ConfigError);
}

TEST_CASE("covariate scale label is recorded on the fit") {
  Rng rng(92);
  const auto blocks = sample_stationary(rng, 60, 1.0, 1.0, 0.0);
  GevFitOptions options = kFastFit;
  options.covariate_scale = "normalized";
  const auto fit = fit_gev(blocks, GevSpec{"m0", {}, {}}, options);
  CHECK(fit.covariate_scale == "normalized");
}
