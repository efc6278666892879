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

#ifndef OWNET_GRAPH_HPP
#define OWNET_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ownet {

// Tolerance on the per-target incoming share cap (sum over owners <= 1).
inline constexpr double kShareSumTolerance = 1e-9;

struct NodeRecord {
  std::string id;
  std::string country = "??";  // ISO-3166 alpha-2, "??" when unknown
  int nace = -1;               // 4-digit activity code, -1 when unknown
  bool is_tnc = false;
  std::optional<double> operating_revenue;

  bool operator==(const NodeRecord&) const = default;
};

// Directed ownership relation: `src` owns `share` of `dst`, share in (0, 1].
struct Edge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  double share = 0.0;

  bool operator==(const Edge&) const = default;
};

struct BuildOptions {
  enum class SharePolicy { kReject, kClamp };
  SharePolicy share_policy = SharePolicy::kReject;
};

// What the builder had to repair. All zero under the reject policy.
struct BuildStats {
  std::size_t merged_parallel_edges = 0;
  std::size_t dropped_self_loops = 0;
  std::size_t dropped_nonpositive_shares = 0;
  std::size_t clamped_share_values = 0;
  std::size_t rescaled_targets = 0;
  std::size_t cleared_bad_attributes = 0;
};

// Immutable directed ownership graph. Node order and edge order are the
// insertion order seen by the builder; both adjacency indexes are CSR over
// edge ids, so every traversal is deterministic.
class OwnershipGraph {
 public:
  OwnershipGraph() = default;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const NodeRecord& node(std::uint32_t u) const { return nodes_[u]; }
  const std::vector<NodeRecord>& nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }

  std::optional<std::uint32_t> find(std::string_view id) const;

  // Edge ids leaving / entering u, in insertion order.
  std::span<const std::uint32_t> out_edges(std::uint32_t u) const {
    return {out_edge_.data() + out_start_[u],
            out_start_[u + 1] - out_start_[u]};
  }
  std::span<const std::uint32_t> in_edges(std::uint32_t u) const {
    return {in_edge_.data() + in_start_[u], in_start_[u + 1] - in_start_[u]};
  }

  std::uint32_t out_degree(std::uint32_t u) const {
    return out_start_[u + 1] - out_start_[u];
  }
  std::uint32_t in_degree(std::uint32_t u) const {
    return in_start_[u + 1] - in_start_[u];
  }

  // Sum of shares u holds in others / others hold in u.
  double out_share_sum(std::uint32_t u) const { return out_sum_[u]; }
  double in_share_sum(std::uint32_t u) const { return in_sum_[u]; }

 private:
  std::vector<NodeRecord> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> out_start_, out_edge_;
  std::vector<std::uint32_t> in_start_, in_edge_;
  std::vector<double> out_sum_, in_sum_;
  std::unordered_map<std::string, std::uint32_t> index_;

  friend class GraphBuilder;
};

// Accumulates nodes and edges, then validates and freezes them. Empty or
// duplicate node ids throw as the node is added; edge validation runs in
// build(): known endpoints, no self-loops, shares in (0, 1], parallel edges
// merged by summing shares, per-target incoming sum <= 1 + tolerance. Under
// kReject any violation throws ValidationError naming the offender; under
// kClamp violations are repaired and counted in BuildStats.
class GraphBuilder {
 public:
  GraphBuilder& add_node(NodeRecord rec);
  GraphBuilder& add_edge(std::string_view src, std::string_view dst,
                         double share);

  std::size_t node_count() const { return nodes_.size(); }

  OwnershipGraph build(const BuildOptions& opts = {},
                       BuildStats* stats = nullptr);

 private:
  struct RawEdge {
    std::string src, dst;
    double share;
  };
  std::vector<NodeRecord> nodes_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<RawEdge> raw_edges_;
};

// True when both graphs have identical node records and identical edge lists
// (same order, bitwise-equal shares).
bool identical(const OwnershipGraph& a, const OwnershipGraph& b);

}  // namespace ownet

#endif  // OWNET_GRAPH_HPP
