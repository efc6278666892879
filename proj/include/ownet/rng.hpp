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

#ifndef OWNET_RNG_HPP
#define OWNET_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "ownet/util.hpp"

namespace ownet {

// Deterministic RNG. mt19937_64 is fully specified by the standard; the
// uniform transforms below are hand-rolled because the std distributions are
// implementation-defined and would break byte-identical reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform double in (0, 1]; never returns 0.
  double next_unit_open() { return 1.0 - next_unit(); }

  // Unbiased uniform integer in [0, bound) via rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % bound;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Standard normal via Box-Muller (one value per call, second discarded).
  double next_normal() {
    double u1 = next_unit_open();
    double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

// Derives a sub-seed from a base seed, a stage label, and an index. The same
// (base, label, index) triple always yields the same stream; distinct labels
// give independent streams, so one pipeline seed fans out to every stage.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label,
                                 std::uint64_t index = 0) {
  std::uint64_t h = fnv1a64(label);
  h ^= base + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h ^= index * 0xbf58476d1ce4e5b9ull;
  // splitmix64 finalizer
  h += 0x9e3779b97f4a7c15ull;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
  return h ^ (h >> 31);
}

}  // namespace ownet

#endif  // OWNET_RNG_HPP
