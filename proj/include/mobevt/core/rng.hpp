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

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "mobevt/core/stats.hpp"

namespace mobevt::core {

/// Deterministic random stream. All randomness in the library flows from a
/// single seed through named substreams, so results are reproducible and
/// independent of thread count. Variate generation is implemented here
/// rather than with std:: distributions, whose output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Substream keyed by (seed, stage label, index). Parallel workers each
  /// take their own substream, indexed by work item.
  static Rng substream(std::uint64_t seed, std::string_view stage, std::uint64_t index) {
    const std::uint64_t h = fnv1a64(stage);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    Rng r(0);
    r.engine_.seed(seq);
    return r;
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in (0, 1): 53-bit mantissa, zero excluded.
  double uniform01() {
    while (true) {
      const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Unbiased integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Standard normal via Box-Muller (no cached spare, two uniforms per draw).
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  double gumbel(double mu = 0.0, double sigma = 1.0) {
    return mu - sigma * std::log(-std::log(uniform01()));
  }

  /// GEV variate by inverse transform (maxima convention).
  double gev(double mu, double sigma, double xi) {
    const double u = uniform01();
    if (std::abs(xi) < 1e-12) return mu - sigma * std::log(-std::log(u));
    return mu + sigma * (std::pow(-std::log(u), -xi) - 1.0) / xi;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mobevt::core
