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

#include "ownet/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>

#include "ownet/error.hpp"

namespace ownet {

namespace {

bool valid_country(const std::string& c) {
  if (c == "??") return true;
  return c.size() == 2 && std::isupper(static_cast<unsigned char>(c[0])) &&
         std::isupper(static_cast<unsigned char>(c[1]));
}

bool valid_nace(int nace) { return nace == -1 || (nace >= 0 && nace <= 9999); }

}  // namespace

std::optional<std::uint32_t> OwnershipGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GraphBuilder& GraphBuilder::add_node(NodeRecord rec) {
  if (rec.id.empty()) throw ValidationError("node with empty id");
  auto [it, inserted] =
      index_.emplace(rec.id, static_cast<std::uint32_t>(nodes_.size()));
  if (!inserted) throw ValidationError("duplicate node id: " + rec.id);
  nodes_.push_back(std::move(rec));
  return *this;
}

GraphBuilder& GraphBuilder::add_edge(std::string_view src, std::string_view dst,
                                     double share) {
  raw_edges_.push_back({std::string(src), std::string(dst), share});
  return *this;
}

OwnershipGraph GraphBuilder::build(const BuildOptions& opts,
                                   BuildStats* stats) {
  const bool clamp = opts.share_policy == BuildOptions::SharePolicy::kClamp;
  BuildStats local{};

  OwnershipGraph g;
  g.nodes_ = std::move(nodes_);
  g.index_ = std::move(index_);
  nodes_.clear();
  index_.clear();

  for (auto& rec : g.nodes_) {
    if (!valid_country(rec.country) || !valid_nace(rec.nace) ||
        (rec.operating_revenue && *rec.operating_revenue < 0.0) ||
        (rec.operating_revenue && !std::isfinite(*rec.operating_revenue))) {
      if (!clamp)
        throw ValidationError("invalid attributes on node: " + rec.id);
      if (!valid_country(rec.country)) rec.country = "??";
      if (!valid_nace(rec.nace)) rec.nace = -1;
      if (rec.operating_revenue &&
          (!std::isfinite(*rec.operating_revenue) ||
           *rec.operating_revenue < 0.0))
        rec.operating_revenue.reset();
      ++local.cleared_bad_attributes;
    }
  }

  // Resolve, filter, and merge parallel edges (first occurrence keeps its
  // slot, shares add up).
  std::unordered_map<std::uint64_t, std::uint32_t> seen;
  seen.reserve(raw_edges_.size());
  g.edges_.reserve(raw_edges_.size());
  for (const auto& re : raw_edges_) {
    auto s = g.find(re.src);
    if (!s) throw ValidationError("edge references unknown node: " + re.src);
    auto d = g.find(re.dst);
    if (!d) throw ValidationError("edge references unknown node: " + re.dst);
    if (*s == *d) {
      if (!clamp) throw ValidationError("self-loop on node: " + re.src);
      ++local.dropped_self_loops;
      continue;
    }
    double share = re.share;
    if (!(share > 0.0) || !std::isfinite(share)) {
      if (!clamp)
        throw ValidationError("non-positive share on edge " + re.src + " -> " +
                              re.dst);
      ++local.dropped_nonpositive_shares;
      continue;
    }
    if (share > 1.0) {
      if (!clamp)
        throw ValidationError("share above 1 on edge " + re.src + " -> " +
                              re.dst);
      share = 1.0;
      ++local.clamped_share_values;
    }
    const std::uint64_t key =
        (static_cast<std::uint64_t>(*s) << 32) | static_cast<std::uint64_t>(*d);
    auto [it, inserted] =
        seen.emplace(key, static_cast<std::uint32_t>(g.edges_.size()));
    if (inserted) {
      g.edges_.push_back({*s, *d, share});
    } else {
      ++local.merged_parallel_edges;
      double merged = g.edges_[it->second].share + share;
      if (merged > 1.0) {
        if (!clamp)
          throw ValidationError("merged parallel shares above 1 on edge " +
                                re.src + " -> " + re.dst);
        merged = 1.0;
        ++local.clamped_share_values;
      }
      g.edges_[it->second].share = merged;
    }
  }
  raw_edges_.clear();

  const std::size_t n = g.nodes_.size();
  g.in_sum_.assign(n, 0.0);
  g.out_sum_.assign(n, 0.0);
  for (const auto& e : g.edges_) g.in_sum_[e.dst] += e.share;

  // Per-target cap: the shares others hold in one firm cannot exceed 100%.
  std::vector<double> scale;
  for (std::uint32_t u = 0; u < n; ++u) {
    if (g.in_sum_[u] > 1.0 + kShareSumTolerance) {
      if (!clamp)
        throw ValidationError("incoming shares of node " + g.nodes_[u].id +
                              " sum to " + std::to_string(g.in_sum_[u]) +
                              " (> 1)");
      if (scale.empty()) scale.assign(n, 1.0);
      scale[u] = 1.0 / g.in_sum_[u];
      ++local.rescaled_targets;
    }
  }
  if (!scale.empty()) {
    for (auto& e : g.edges_) e.share *= scale[e.dst];
    std::fill(g.in_sum_.begin(), g.in_sum_.end(), 0.0);
    for (const auto& e : g.edges_) g.in_sum_[e.dst] += e.share;
  }
  for (const auto& e : g.edges_) g.out_sum_[e.src] += e.share;

  // CSR over edge ids, stable in edge order.
  g.out_start_.assign(n + 1, 0);
  g.in_start_.assign(n + 1, 0);
  for (const auto& e : g.edges_) {
    ++g.out_start_[e.src + 1];
    ++g.in_start_[e.dst + 1];
  }
  for (std::size_t u = 0; u < n; ++u) {
    g.out_start_[u + 1] += g.out_start_[u];
    g.in_start_[u + 1] += g.in_start_[u];
  }
  g.out_edge_.resize(g.edges_.size());
  g.in_edge_.resize(g.edges_.size());
  std::vector<std::uint32_t> out_cur(g.out_start_.begin(),
                                     g.out_start_.end() - 1);
  std::vector<std::uint32_t> in_cur(g.in_start_.begin(), g.in_start_.end() - 1);
  for (std::uint32_t e = 0; e < g.edges_.size(); ++e) {
    g.out_edge_[out_cur[g.edges_[e].src]++] = e;
    g.in_edge_[in_cur[g.edges_[e].dst]++] = e;
  }

  if (stats) *stats = local;
  return g;
}

bool identical(const OwnershipGraph& a, const OwnershipGraph& b) {
  return a.nodes() == b.nodes() && a.edge_count() == b.edge_count() &&
         std::equal(a.edges().begin(), a.edges().end(), b.edges().begin());
}

}  // namespace ownet
