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

#include <cstdint>
#include <span>
#include <string_view>

namespace mobevt::core {

double mean(std::span<const double> values);

/// Sample standard deviation (n-1 denominator).
double sample_sd(std::span<const double> values);

/// Linear-interpolation quantile on a sorted vector (the "type 7" rule).
/// p in [0, 1]; values must be sorted ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double p);

/// FNV-1a 64-bit, used for config digests and RNG substream labels.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace mobevt::core
