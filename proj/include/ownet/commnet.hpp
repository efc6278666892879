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

#ifndef OWNET_COMMNET_HPP
#define OWNET_COMMNET_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ownet/characterize.hpp"
#include "ownet/components.hpp"
#include "ownet/graph.hpp"
#include "ownet/modularity.hpp"

namespace ownet {

// Communities contracted to nodes. counts[i][j] is the number of ownership
// relations from firms of community i to firms of community j; the diagonal
// holds internal relation counts. Communities are ordered by rank: size
// descending, community id ascending. The matrix total equals the edge count
// of the firm graph restricted to the kept communities.
struct CommunityNetwork {
  std::vector<std::uint32_t> community_ids;      // rank order
  std::vector<std::size_t> sizes;                // rank order
  std::vector<std::vector<std::uint64_t>> counts;

  std::size_t size() const { return community_ids.size(); }
};

// Contracts `g` under `partition`. With top_k only the top_k largest
// communities are kept; nodes and edges outside them are dropped.
CommunityNetwork aggregate(const OwnershipGraph& g, const Partition& partition,
                           std::optional<std::uint32_t> top_k = std::nullopt);

// As `aggregate`, but keeps exactly the given communities in the given order
// (sizes recomputed from the partition; a listed community may be empty).
CommunityNetwork aggregate_for(const OwnershipGraph& g,
                               const Partition& partition,
                               std::span<const std::uint32_t> community_ids);

// Drops every node whose activity code maps to `sector`, with its edges.
OwnershipGraph remove_sector(const OwnershipGraph& g, MacroSector sector,
                             const SectorMap& sectors = SectorMap::default_map());

// Carries community labels from `from` onto the nodes of `to` by node id.
// Every node of `to` must exist in `from`.
Partition carry_partition(const OwnershipGraph& from, const Partition& labels,
                          const OwnershipGraph& to);

// W[i][j] = beta * counts[j][i] / counts[j][j]: the exposure of community j
// to community i, relative to j's internal activity. beta defaults to the
// number of communities. The diagonal is 0 (the ratio would be beta
// identically and self-impact has no meaning in the dynamics). Communities
// with an empty diagonal receive no impacts: column j is zeroed and flagged.
struct ImpactMatrix {
  std::vector<std::vector<double>> w;  // w[i][j], impact of i on j
  double beta = 0;
  std::vector<bool> degenerate;        // per community: counts[j][j] == 0
};

ImpactMatrix impact_matrix(const CommunityNetwork& cn,
                           std::optional<double> beta = std::nullopt);

// Distress propagation over the impact matrix. Nodes are Undistressed,
// Distressed, or Inactive; seeds start Distressed at level psi. Each step
// every non-Inactive j absorbs min(1, W[i][j]) * h_i from every currently
// Distressed i (capped at 1), then the distressed set becomes Inactive and
// nodes whose h just left 0 become Distressed. Terminates in at most n steps
// (every node is Distressed at most once).
//   R = sum_j h_j(end) * v_j - sum_j h_j(start) * v_j.
struct DebtRankResult {
  double r = 0;
  std::vector<double> distress;  // final h
  std::uint32_t iterations = 0;
};

DebtRankResult debtrank(const ImpactMatrix& impacts,
                        std::span<const double> values,
                        std::span<const std::uint32_t> seeds, double psi = 1.0,
                        bool cap_impacts = true);

// Structural summary of a community network viewed as a digraph (links where
// counts[i][j] > 0, i != j).
struct CommnetTopology {
  std::size_t n_nodes = 0, n_links = 0;
  std::size_t n_lscc = 0, n_in = 0, n_out = 0, n_other = 0;
  DegreeStats degrees;
  PathStats paths;
  double density = 0;  // 0 when fewer than 2 nodes
};

CommnetTopology commnet_topology(const CommunityNetwork& cn,
                                 std::uint64_t path_seed = 0);

// Per-community systemic importance: each community seeded alone, R from the
// size-weighted (or uniform) value vector. `drop` removes a sector from the
// firm graph first while keeping the same communities, so full and filtered
// variants are comparable row by row.
struct CentralityRow {
  std::uint32_t community = 0;
  double r = 0;
  std::size_t size = 0;
  std::string dominant_country;  // empty when unknown
  std::string dominant_sector;
  bool emptied = false;  // no members left after filtering
};

struct CentralityVariant {
  std::vector<CentralityRow> rows;  // rank order
  double beta = 0;
  CommnetTopology topology;
};

struct CentralityReport {
  CentralityVariant full;
  std::optional<CentralityVariant> filtered;
};

CentralityReport centrality_report(
    const OwnershipGraph& g, const Partition& partition,
    std::uint32_t top_k = 50,
    std::optional<MacroSector> drop = std::nullopt,
    bool uniform_values = false, std::optional<double> beta = std::nullopt,
    double psi = 1.0, const SectorMap& sectors = SectorMap::default_map());

}  // namespace ownet

#endif  // OWNET_COMMNET_HPP
