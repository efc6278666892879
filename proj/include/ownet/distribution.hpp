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

#ifndef OWNET_DISTRIBUTION_HPP
#define OWNET_DISTRIBUTION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ownet {

// Empirical complementary CDF of positive integer values: sorted distinct x
// ascending with P(X >= x); starts at exactly 1 and is non-increasing.
std::vector<std::pair<std::uint64_t, double>> ccdf(
    std::span<const std::uint64_t> values);

struct PowerLawFit {
  double exponent = 0;     // always > 1
  std::uint64_t xmin = 0;
  std::size_t n_tail = 0;  // sample count at or above xmin
};

// Discrete power-law tail exponent by maximum likelihood with the half-shift
// continuous approximation:
//   alpha = 1 + n * [ sum ln(x_i / (xmin - 0.5)) ]^-1  over x_i >= xmin.
// xmin defaults to the smallest value. Throws ValidationError when the tail
// has fewer than 2 points or all tail values are equal (exponent undefined).
PowerLawFit fit_power_law(std::span<const std::uint64_t> values,
                          std::optional<std::uint64_t> xmin = std::nullopt);

}  // namespace ownet

#endif  // OWNET_DISTRIBUTION_HPP
