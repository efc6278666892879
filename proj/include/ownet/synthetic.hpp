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

#ifndef OWNET_SYNTHETIC_HPP
#define OWNET_SYNTHETIC_HPP

#include <cstdint>
#include <string>

#include "ownet/graph.hpp"

namespace ownet {

// Planted-block digraph: nodes split into `n_blocks` contiguous, balanced
// blocks; each ordered pair (u, v), u != v, carries an edge with probability
// p_in (same block) or p_out (different blocks). Every block has a home
// country and a home macro-sector; each node takes the home value with the
// corresponding fidelity, otherwise a random other value. Shares are drawn
// uniform in (0, 1] and each target whose incoming sum exceeds 1 has its
// incoming shares divided by that sum. Fully determined by these fields.
struct SyntheticSpec {
  std::uint64_t n_nodes = 0;
  std::uint32_t n_blocks = 1;
  double p_in = 0.0;
  double p_out = 0.0;
  double country_fidelity = 1.0;
  double sector_fidelity = 1.0;
  std::uint64_t seed = 0;
};

// Block of node i: contiguous balanced split.
inline std::uint32_t synthetic_block(const SyntheticSpec& spec,
                                     std::uint64_t i) {
  return static_cast<std::uint32_t>(i * spec.n_blocks / spec.n_nodes);
}

// Home country of a block, cycled from a fixed pool.
std::string synthetic_block_country(std::uint32_t block);

OwnershipGraph generate_synthetic(const SyntheticSpec& spec);

SyntheticSpec synthetic_spec_from_json(const std::string& json_text);
std::string synthetic_spec_to_json(const SyntheticSpec& spec);

}  // namespace ownet

#endif  // OWNET_SYNTHETIC_HPP
