// Copyright 2026 The ownet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ownet/distribution.hpp"

#include <cmath>
#include <map>

#include "ownet/error.hpp"

namespace ownet {

std::vector<std::pair<std::uint64_t, double>> ccdf(
    std::span<const std::uint64_t> values) {
  if (values.empty()) throw ValidationError("ccdf of an empty sample");
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t v : values) {
    if (v == 0) throw ValidationError("ccdf requires positive values");
    ++counts[v];
  }
  // Suffix counts walked from the largest value down.
  std::vector<std::pair<std::uint64_t, double>> out(counts.size());
  const double n = static_cast<double>(values.size());
  std::uint64_t ge = 0;
  std::size_t i = counts.size();
  for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
    ge += it->second;
    out[--i] = {it->first, static_cast<double>(ge) / n};
  }
  return out;
}

PowerLawFit fit_power_law(std::span<const std::uint64_t> values,
                          std::optional<std::uint64_t> xmin_opt) {
  if (values.empty()) throw ValidationError("power-law fit of empty sample");
  std::uint64_t xmin;
  if (xmin_opt) {
    xmin = *xmin_opt;
    if (xmin == 0) throw ValidationError("xmin must be positive");
  } else {
    xmin = values[0];
    for (std::uint64_t v : values) xmin = std::min(xmin, v);
  }
  const double shift = static_cast<double>(xmin) - 0.5;
  double log_sum = 0;
  std::size_t n_tail = 0;
  bool all_equal = true;
  std::uint64_t first = 0;
  for (std::uint64_t v : values) {
    if (v == 0) throw ValidationError("power-law fit requires positive values");
    if (v < xmin) continue;
    if (n_tail == 0)
      first = v;
    else if (v != first)
      all_equal = false;
    log_sum += std::log(static_cast<double>(v) / shift);
    ++n_tail;
  }
  if (n_tail < 2)
    throw ValidationError("power-law fit needs at least 2 tail values");
  if (all_equal)
    throw ValidationError(
        "power-law exponent undefined: all tail values equal");
  PowerLawFit fit;
  fit.xmin = xmin;
  fit.n_tail = n_tail;
  fit.exponent = 1.0 + static_cast<double>(n_tail) / log_sum;
  return fit;
}

}  // namespace ownet
