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

// Benchmark comparing the serial reference paths against the OpenMP kernels
// on synthetic workloads: temporal-network construction, bootstrap standard
// errors, per-tau fit profiles, and GEV model selection.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mobevt/core/date.hpp"
#include "mobevt/core/exec.hpp"
#include "mobevt/core/rng.hpp"
#include "mobevt/evt/blocks.hpp"
#include "mobevt/evt/fit.hpp"
#include "mobevt/graph/network.hpp"
#include "mobevt/quantreg/quantreg.hpp"

namespace {

using mobevt::core::Date;
using mobevt::core::Exec;
using mobevt::core::Rng;

double time_of(const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

void row(const std::string& name, double serial_ms, double openmp_ms) {
  std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name.c_str(), serial_ms, openmp_ms,
              serial_ms / openmp_ms);
}

void bench_network() {
  Rng rng(7);
  const Date start(2020, 1, 5);
  std::vector<mobevt::ingest::FlightRecord> flights;
  std::vector<std::string> codes;
  for (int a = 0; a < 200; ++a) codes.push_back("A" + std::to_string(100 + a));
  for (int day = 0; day < 364; ++day) {
    const Date d = start.plus_days(day);
    for (int f = 0; f < 1500; ++f) {
      const auto i = rng.uniform_index(codes.size());
      auto j = rng.uniform_index(codes.size() - 1);
      if (j >= i) ++j;
      flights.push_back({codes[i], codes[j], d});
    }
  }
  const auto sundays = mobevt::core::sundays_in(start, start.plus_days(363));
  double serial_ms = 0.0, openmp_ms = 0.0;
  for (Exec exec : {Exec::serial, Exec::openmp}) {
    const double ms = time_of([&] {
      const auto net = mobevt::graph::build_temporal_network(
          flights, sundays, mobevt::graph::Granularity::weekly, exec);
      if (net.snapshots.empty()) std::abort();
    });
    (exec == Exec::serial ? serial_ms : openmp_ms) = ms;
  }
  row("temporal network (52 weeks)", serial_ms, openmp_ms);
}

void bench_bootstrap() {
  Rng rng(11);
  const std::size_t n = 256;
  mobevt::core::Mat design(n, 3);
  std::vector<double> response(n);
  for (std::size_t i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = rng.normal();
    design(i, 2) = rng.normal();
    response[i] = 0.5 + design(i, 1) - 0.3 * design(i, 2) + rng.normal();
  }
  mobevt::quantreg::QuantileProblem problem;
  problem.design = design;
  problem.response = response;
  problem.tau = 0.25;

  double serial_ms = 0.0, openmp_ms = 0.0;
  for (Exec exec : {Exec::serial, Exec::openmp}) {
    mobevt::quantreg::FitOptions options;
    options.bootstrap_replicates = 1000;
    options.seed = 42;
    options.exec = exec;
    const double ms = time_of([&] {
      const auto fit = mobevt::quantreg::fit(problem, options);
      if (fit.std_errors.empty()) std::abort();
    });
    (exec == Exec::serial ? serial_ms : openmp_ms) = ms;
  }
  row("bootstrap SE (B=1000, n=256)", serial_ms, openmp_ms);
}

void bench_gev() {
  Rng rng(13);
  mobevt::evt::BlockSeries blocks;
  blocks.orientation = mobevt::evt::Orientation::maxima;
  const std::size_t n = 400;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i + 1);
    mobevt::evt::Block b;
    b.label = "b" + std::to_string(1000 + i);
    b.extremum = rng.gev(10.0 + 0.01 * t, 2.0, -0.1);
    b.covariates["t"] = t;
    blocks.blocks.push_back(std::move(b));
  }
  std::vector<mobevt::evt::GevSpec> specs;
  specs.push_back({"m0", {}, {}});
  specs.push_back({"m1", {"t"}, {}});
  specs.push_back({"m2", {"t"}, {"t"}});
  specs.push_back({"m3", {}, {"t"}});

  double serial_ms = 0.0, openmp_ms = 0.0;
  for (Exec exec : {Exec::serial, Exec::openmp}) {
    mobevt::evt::GevFitOptions options;
    options.seed = 42;
    options.exec = exec;
    const double ms = time_of([&] {
      const auto table = mobevt::evt::model_selection(blocks, specs, options);
      if (table.rows.empty()) std::abort();
    });
    (exec == Exec::serial ? serial_ms : openmp_ms) = ms;
  }
  row("GEV selection (4 specs)", serial_ms, openmp_ms);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", mobevt::core::max_threads());
  std::printf("%-28s %13s %13s %9s\n", "workload", "serial", "openmp", "speedup");
  bench_network();
  bench_bootstrap();
  bench_gev();
  return 0;
}
