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

#include "ownet/extract.hpp"

#include <algorithm>

#include "ownet/error.hpp"

namespace ownet {

TncDetection detect_tncs(const OwnershipGraph& g, double share_threshold) {
  if (!(share_threshold > 0.0) || share_threshold > 1.0)
    throw ValidationError("tnc share threshold must lie in (0, 1]");
  TncDetection out;
  const std::size_t n = g.node_count();
  for (std::uint32_t u = 0; u < n; ++u) {
    const auto& owner = g.node(u);
    if (owner.country == "??") {
      ++out.skipped_missing_country;
      continue;
    }
    for (std::uint32_t e : g.out_edges(u)) {
      const Edge& edge = g.edges()[e];
      if (edge.share < share_threshold) continue;
      const auto& target = g.node(edge.dst);
      if (target.country == "??") continue;
      if (target.country != owner.country) {
        out.tncs.push_back(u);
        break;
      }
    }
  }
  return out;
}

OwnershipGraph snowball_extract(const OwnershipGraph& g,
                                std::span<const std::uint32_t> roots,
                                bool mark_roots_tnc) {
  if (roots.empty()) throw ValidationError("snowball extraction needs roots");
  const std::size_t n = g.node_count();
  for (std::uint32_t r : roots)
    if (r >= n) throw ValidationError("root index out of range");

  // Pass 1: downstream closure over out-edges.
  std::vector<bool> down(n, false);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t r : roots)
    if (!down[r]) {
      down[r] = true;
      stack.push_back(r);
    }
  while (!stack.empty()) {
    std::uint32_t u = stack.back();
    stack.pop_back();
    for (std::uint32_t e : g.out_edges(u)) {
      std::uint32_t v = g.edges()[e].dst;
      if (!down[v]) {
        down[v] = true;
        stack.push_back(v);
      }
    }
  }

  // Pass 2: every ancestor of the entire closed set, via in-edges.
  std::vector<bool> keep = down;
  for (std::uint32_t u = 0; u < n; ++u)
    if (down[u]) stack.push_back(u);
  while (!stack.empty()) {
    std::uint32_t u = stack.back();
    stack.pop_back();
    for (std::uint32_t e : g.in_edges(u)) {
      std::uint32_t v = g.edges()[e].src;
      if (!keep[v]) {
        keep[v] = true;
        stack.push_back(v);
      }
    }
  }

  std::vector<bool> is_root(n, false);
  if (mark_roots_tnc)
    for (std::uint32_t r : roots) is_root[r] = true;

  GraphBuilder b;
  for (std::uint32_t u = 0; u < n; ++u) {
    if (!keep[u]) continue;
    NodeRecord rec = g.node(u);
    if (mark_roots_tnc && is_root[u]) rec.is_tnc = true;
    b.add_node(std::move(rec));
  }
  for (const auto& e : g.edges())
    if (keep[e.src] && keep[e.dst])
      b.add_edge(g.node(e.src).id, g.node(e.dst).id, e.share);
  return b.build();
}

OwnershipGraph snowball_extract(const OwnershipGraph& g,
                                std::span<const std::string> root_ids,
                                bool mark_roots_tnc) {
  std::vector<std::uint32_t> roots;
  roots.reserve(root_ids.size());
  for (const auto& id : root_ids) {
    auto u = g.find(id);
    if (!u) throw ValidationError("unknown root id: " + id);
    roots.push_back(*u);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return snowball_extract(g, roots, mark_roots_tnc);
}

}  // namespace ownet
