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

#ifndef OWNET_IO_HPP
#define OWNET_IO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ownet/characterize.hpp"
#include "ownet/commnet.hpp"
#include "ownet/graph.hpp"
#include "ownet/modularity.hpp"
#include "ownet/rewire.hpp"

namespace ownet {

// Plot color key for a country code: EU (Europe), NA (North America),
// AS (Asia), FP (fiscal paradise), OT (everything else, including "??").
// A fixed approximate mapping for visualization only; FP wins overlaps.
std::string region_key(const std::string& country);

// JSON string-body escaping (quotes not included).
std::string json_escape(std::string_view s);

// Every numeric field in these files is serialized with 12 significant
// digits so byte-level digests are stable across runs.

// level,n_nodes,n_links,modularity; one row per optimization level.
void write_stage_log_csv(const std::string& path,
                         const HierarchicalPartition& hp);

// node_id,level1_id,...,final_id; one row per node, the last column always
// holds the final level.
void write_membership_csv(const std::string& path, const OwnershipGraph& g,
                          const HierarchicalPartition& hp);

// x,ccdf over the points of an empirical complementary CDF.
void write_ccdf_csv(
    const std::string& path,
    std::span<const std::pair<std::uint64_t, double>> points);

// community_id,n_firms,herf_country,share_c1,c1,c2,herf_sector,share_s1,s1,s2
void write_profiles_csv(const std::string& path,
                        std::span<const CommunityProfile> profiles);

// community_id,size,share_s1,share_c1,region_color_key
void write_scatter_csv(const std::string& path,
                       std::span<const CommunityProfile> profiles);

// community_id,n_firms,over_expressed. The last column lists the flagged
// values as "VALUE (k/K)" tokens (community count over universe count),
// most significant first. `communities` fixes row order and supplies sizes.
void write_over_expression_csv(
    const std::string& path, const OverExpressionReport& report,
    std::span<const std::pair<std::uint32_t, std::size_t>> communities);

// community_id,n_firms,n_subcommunities,herf_subcommunity_size
void write_subcommunities_csv(
    const std::string& path, const HierarchicalPartition& hp,
    std::span<const std::pair<std::uint32_t, std::size_t>> communities);

// Internal statistics per community: community_id,n_firms,n_relations,
// density, plus *_filtered columns when `filtered` is given (aligned ids).
void write_community_stats_csv(const std::string& path,
                               const CommunityNetwork& full,
                               const CommunityNetwork* filtered);

// Long-form relation matrix: start_community,end_community,count, plus
// count_filtered when `filtered` is given. Every ordered pair of kept
// communities, diagonal included, in rank order.
void write_aggregate_matrix_csv(const std::string& path,
                                const CommunityNetwork& full,
                                const CommunityNetwork* filtered);

std::string topology_json(const CommnetTopology& t);

// community_id,R,size,country,sector,emptied in rank order.
void write_centrality_csv(const std::string& path,
                          const CentralityVariant& v);

// Radial layout for external plotting: angle = 2*pi*rank/K, radius =
// 1 - R/maxR (1 when maxR = 0); node size, dominant country and sector
// attached.
void write_radial_layout_json(const std::string& path,
                              const CentralityVariant& v);

std::string ensemble_json(const EnsembleSummary& s, const RewireConfig& cfg);

void write_ensemble_json(const std::string& path, const EnsembleSummary& s,
                         const RewireConfig& cfg);

}  // namespace ownet

#endif  // OWNET_IO_HPP
