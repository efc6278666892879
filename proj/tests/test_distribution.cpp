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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "ownet/distribution.hpp"
#include "ownet/error.hpp"

TEST_CASE("ccdf starts at one and is non-increasing") {
  const std::vector<std::uint64_t> values = {1, 1, 2, 5, 5, 5, 9};
  const auto points = ownet::ccdf(values);
  REQUIRE(points.size() == 4);
  CHECK(points[0].first == 1);
  CHECK(points[0].second == doctest::Approx(1.0));
  CHECK(points[1].second == doctest::Approx(5.0 / 7.0));
  CHECK(points[2].second == doctest::Approx(4.0 / 7.0));
  CHECK(points[3].first == 9);
  CHECK(points[3].second == doctest::Approx(1.0 / 7.0));
  for (std::size_t i = 1; i < points.size(); ++i) {
    CHECK(points[i].first > points[i - 1].first);
    CHECK(points[i].second <= points[i - 1].second);
  }
}

TEST_CASE("ccdf rejects empty and zero-valued input") {
  CHECK_THROWS_AS(ownet::ccdf(std::vector<std::uint64_t>{}),
                  ownet::ValidationError);
  CHECK_THROWS_AS(ownet::ccdf(std::vector<std::uint64_t>{0, 1}),
                  ownet::ValidationError);
}

TEST_CASE("power-law fit matches the closed form on a tiny sample") {
  const std::vector<std::uint64_t> xs = {2, 3, 4, 8};
  const auto fit = ownet::fit_power_law(xs);
  double s = 0;
  for (auto x : xs) s += std::log(static_cast<double>(x) / 1.5);
  CHECK(fit.exponent == doctest::Approx(1.0 + 4.0 / s).epsilon(1e-12));
  CHECK(fit.xmin == 2);
  CHECK(fit.n_tail == 4);
}

TEST_CASE("power-law fit honors an explicit tail start") {
  const std::vector<std::uint64_t> xs = {1, 1, 1, 4, 5, 6, 9};
  const auto fit = ownet::fit_power_law(xs, 4);
  CHECK(fit.xmin == 4);
  CHECK(fit.n_tail == 4);
  double s = 0;
  for (auto x : {4, 5, 6, 9}) s += std::log(x / 3.5);
  CHECK(fit.exponent == doctest::Approx(1.0 + 4.0 / s).epsilon(1e-12));
}

TEST_CASE("power-law fit rejects degenerate tails") {
  CHECK_THROWS_AS(ownet::fit_power_law(std::vector<std::uint64_t>{5}),
                  ownet::ValidationError);
  CHECK_THROWS_AS(ownet::fit_power_law(std::vector<std::uint64_t>{3, 3, 3}),
                  ownet::ValidationError);
}

TEST_CASE("power-law fit recovers the generating exponent") {
  // Smaller sibling of the acceptance check so a regression is caught here.
  const auto xs = oracle::power_law_sample(2.5, 10, 20000, 42);
  const auto fit = ownet::fit_power_law(xs, 10);
  CHECK(std::abs(fit.exponent - 2.5) < 0.1);
}
