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

#ifndef OWNET_REWIRE_HPP
#define OWNET_REWIRE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ownet/graph.hpp"

namespace ownet {

struct RewireConfig {
  std::uint32_t n_swaps_per_edge = 10;  // attempted swaps = this * E
  std::uint32_t n_realizations = 20;
  std::uint64_t base_seed = 0;
  std::uint64_t max_reject_streak = 100000;
};

// Degree-preserving double-edge swap null model: repeatedly pick two edges
// (s1 -> t1), (s2 -> t2) and propose (s1 -> t2), (s2 -> t1); each share stays
// attached to its source. A proposal is rejected when it would create a
// self-loop or an edge already present, when the two edges share an endpoint,
// or when either target's incoming share sum would exceed 1 (+1e-9).
// Preserves every node's in-degree, out-degree, and the multiset of shares it
// holds; realization `index` is seeded with base_seed + index. Throws
// ConstraintError after max_reject_streak consecutive rejections. Graphs with
// fewer than 2 edges are returned unchanged.
OwnershipGraph rewire(const OwnershipGraph& g, const RewireConfig& cfg,
                      std::uint32_t realization_index);

struct RealizationSummary {
  double modularity = 0;
  std::uint32_t n_communities = 0;
  std::vector<std::size_t> community_sizes;  // descending
};

struct EnsembleSummary {
  std::vector<RealizationSummary> realizations;
  double empirical_modularity = 0;
  std::uint32_t empirical_n_communities = 0;
  std::vector<std::size_t> empirical_sizes;  // descending
  double mean_modularity = 0;
  double std_modularity = 0;  // population
  double z = 0;               // +inf when std == 0 and empirical != mean
};

// Runs community detection on the empirical graph and on n_realizations
// rewired graphs with ONE fixed detection seed (given, or derived from
// base_seed), then reports the ensemble mean/std of modularity and the
// empirical z-score. `workers` caps parallel realization processing
// (0 = auto).
EnsembleSummary ensemble_compare(
    const OwnershipGraph& g, const RewireConfig& cfg, unsigned workers = 1,
    std::optional<std::uint64_t> detection_seed = std::nullopt);

}  // namespace ownet

#endif  // OWNET_REWIRE_HPP
