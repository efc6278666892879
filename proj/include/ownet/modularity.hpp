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

#ifndef OWNET_MODULARITY_HPP
#define OWNET_MODULARITY_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ownet/graph.hpp"

namespace ownet {

// Undirected, unweighted, deduplicated projection of an ownership graph:
// direction and shares dropped, reciprocal and parallel relations collapse
// into a single link, no self-loops. Community structure is computed here.
class ModularityView {
 public:
  static ModularityView from_graph(const OwnershipGraph& g);

  std::size_t node_count() const { return start_.empty() ? 0 : start_.size() - 1; }
  std::uint64_t link_count() const { return links_; }
  std::uint32_t degree(std::uint32_t u) const {
    return start_[u + 1] - start_[u];
  }
  std::span<const std::uint32_t> neighbors(std::uint32_t u) const {
    return {adj_.data() + start_[u], start_[u + 1] - start_[u]};
  }

 private:
  std::vector<std::uint32_t> start_, adj_;
  std::uint64_t links_ = 0;
};

// node -> community id. Louvain results use dense ids starting at 0.
using Partition = std::vector<std::uint32_t>;

// Newman-Girvan quality of a partition:
//   Q = (1 / 2l) * sum over same-community ordered pairs of
//       [ a_ij - k_i * k_j / (2l) ].
// One community containing everything gives exactly 0; all-singletons gives
// -sum(k_i^2) / (2l)^2. Throws ValidationError when the view has no links or
// the partition does not cover every node.
double modularity(const ModularityView& view, const Partition& partition);

// Number of view links whose endpoints lie in different communities.
std::uint64_t crossing_links(const ModularityView& view,
                             const Partition& partition);

// Community count of a dense partition (max id + 1; 0 for empty).
std::uint32_t community_count(const Partition& partition);
std::vector<std::size_t> community_sizes(const Partition& partition);

struct StageLogRow {
  int level = 0;
  std::uint64_t n_nodes = 0;  // communities at this level
  std::uint64_t n_links = 0;  // links between distinct communities
  double modularity = 0;
};

// Nested partitions, one per optimization level. levels[0] is always the
// all-singletons partition; every level-t community is a union of
// level-(t-1) communities; stage_log modularity never decreases.
struct HierarchicalPartition {
  std::vector<Partition> levels;
  std::vector<StageLogRow> stage_log;

  const Partition& final_level() const { return levels.back(); }
  std::uint32_t final_community_count() const {
    return community_count(levels.back());
  }
};

// Multi-level greedy modularity optimization. Each level sweeps nodes in a
// seeded permutation (reshuffled every sweep), moving a node to the
// neighboring community with the largest gain (ties: lowest community id)
// while the gain exceeds 1e-10, then contracts communities into nodes and
// repeats until a level yields no accepted move. Deterministic in
// (graph, seed).
HierarchicalPartition louvain(const ModularityView& view, std::uint64_t seed);

struct SubcommunityBreakdown {
  // Level-1 community ids with member counts, largest first (ties: lower id).
  std::vector<std::pair<std::uint32_t, std::size_t>> members;
  double herfindahl = 0;  // concentration of the size distribution
};

// Splits one final-level community into its level-1 constituents.
SubcommunityBreakdown subcommunities(const HierarchicalPartition& hp,
                                     std::uint32_t final_community);

namespace detail {

// Weighted working graph for one optimization level. self_weight[u] holds
// twice the internal weight of the contracted community; degree includes it;
// two_l is constant across levels.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  std::vector<double> self_weight;
  std::vector<double> degree;
  double two_l = 0;

  std::size_t size() const { return adj.size(); }
  static LevelGraph from_view(const ModularityView& view);
};

// Exact modularity change from moving `node` into `target` given current
// memberships; the same incremental arithmetic the optimizer uses.
double move_gain(const LevelGraph& lg, const Partition& comm,
                 std::span<const double> tot, std::uint32_t node,
                 std::uint32_t target);

}  // namespace detail

}  // namespace ownet

#endif  // OWNET_MODULARITY_HPP
