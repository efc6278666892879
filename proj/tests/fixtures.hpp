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

// Deterministic graph fixtures shared by the unit and acceptance suites.

#ifndef OWNET_TESTS_FIXTURES_HPP
#define OWNET_TESTS_FIXTURES_HPP

#include <cstdint>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ownet/graph.hpp"
#include "ownet/modularity.hpp"

namespace fixtures {

inline std::string node_name(std::uint32_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "f%04u", i);
  return buf;
}

// Random simple digraph with n nodes and about m edges. Shares are chosen so
// no target's incoming sum can exceed 1: each edge into a target takes an
// equal slice of a 0.9 budget split by a worst-case in-degree bound.
inline ownet::OwnershipGraph random_graph(std::uint32_t n, std::uint32_t m,
                                          std::uint64_t seed,
                                          bool with_attributes = false) {
  std::mt19937_64 gen(seed);
  const std::vector<std::string> countries = {"US", "GB", "DE", "JP", "LU"};
  const std::vector<int> naces = {1000, 2500, 5000, 6512, 7100, 8500};

  ownet::GraphBuilder b;
  for (std::uint32_t i = 0; i < n; ++i) {
    ownet::NodeRecord rec;
    rec.id = node_name(i);
    if (with_attributes) {
      rec.country = countries[gen() % countries.size()];
      rec.nace = naces[gen() % naces.size()];
      rec.operating_revenue = 1.0 + static_cast<double>(gen() % 1000);
    }
    b.add_node(std::move(rec));
  }
  std::set<std::pair<std::uint32_t, std::uint32_t>> used;
  const double slice = 0.9 / static_cast<double>(n);
  std::uint32_t placed = 0;
  // Cap attempts so impossible densities terminate.
  for (std::uint64_t tries = 0; placed < m && tries < 50ull * m + 200;
       ++tries) {
    const auto u = static_cast<std::uint32_t>(gen() % n);
    const auto v = static_cast<std::uint32_t>(gen() % n);
    if (u == v || used.count({u, v}) > 0) continue;
    used.insert({u, v});
    b.add_edge(node_name(u), node_name(v), slice);
    ++placed;
  }
  return b.build();
}

// Two disjoint triangles; the partition by triangle has modularity 1/2.
inline ownet::OwnershipGraph two_triangles() {
  ownet::GraphBuilder b;
  for (std::uint32_t i = 0; i < 6; ++i)
    b.add_node({.id = node_name(i)});
  auto edge = [&](std::uint32_t u, std::uint32_t v) {
    b.add_edge(node_name(u), node_name(v), 0.1);
  };
  edge(0, 1);
  edge(1, 2);
  edge(2, 0);
  edge(3, 4);
  edge(4, 5);
  edge(5, 3);
  return b.build();
}

struct PlantedGraph {
  ownet::OwnershipGraph g;
  ownet::Partition labels;  // planted block per node
};

// The planted-partition recovery fixture: 4 blocks of 20, dense inside,
// sparse between.
inline PlantedGraph planted_80(std::uint64_t seed) {
  constexpr std::uint32_t kN = 80, kBlocks = 4;
  std::mt19937_64 gen(seed);
  auto unit = [&] {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
  };
  ownet::GraphBuilder b;
  PlantedGraph out;
  for (std::uint32_t i = 0; i < kN; ++i) {
    b.add_node({.id = node_name(i)});
    out.labels.push_back(i / (kN / kBlocks));
  }
  const double slice = 0.9 / kN;
  for (std::uint32_t u = 0; u < kN; ++u) {
    for (std::uint32_t v = 0; v < kN; ++v) {
      if (u == v) continue;
      const bool same = out.labels[u] == out.labels[v];
      if (unit() < (same ? 0.5 : 0.02))
        b.add_edge(node_name(u), node_name(v), slice);
    }
  }
  out.g = b.build();
  return out;
}

struct HubFixture {
  ownet::OwnershipGraph g;
  ownet::Partition labels;           // planted community per node
  std::size_t n_cross_links = 0;     // links between communities
  std::size_t n_cross_financial = 0; // cross links touching the hub sector
};

// Six planted communities of 60 firms. Each community has a strongly
// connected core of 48 non-financial firms; the other 12 are financial
// intermediaries wired into the core in both directions. Nearly all
// cross-community ownership is held by the financial firms (36 links per
// community vs 5 from the core), so removing that sector collapses
// cross-community impacts while every core, and the community network,
// stays strongly connected.
inline HubFixture financial_hub() {
  constexpr std::uint32_t kComms = 6, kSize = 60, kCore = 48;
  auto name = [](std::uint32_t c, std::uint32_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "c%un%02u", c, i);
    return std::string(buf);
  };
  const std::vector<std::string> countries = {"US", "GB", "DE",
                                              "FR", "IT", "JP"};
  ownet::GraphBuilder b;
  HubFixture out;
  for (std::uint32_t c = 0; c < kComms; ++c) {
    for (std::uint32_t i = 0; i < kSize; ++i) {
      ownet::NodeRecord rec;
      rec.id = name(c, i);
      rec.country = countries[c];
      rec.nace = i < kCore ? 2500 : 6512;  // manufacturing vs financial
      rec.operating_revenue = 100.0;
      b.add_node(std::move(rec));
      out.labels.push_back(c);
    }
  }
  auto edge = [&](std::uint32_t c1, std::uint32_t i1, std::uint32_t c2,
                  std::uint32_t i2) {
    b.add_edge(name(c1, i1), name(c2, i2), 0.01);
    if (c1 != c2) {
      ++out.n_cross_links;
      if (i1 >= kCore || i2 >= kCore) ++out.n_cross_financial;
    }
  };
  for (std::uint32_t c = 0; c < kComms; ++c) {
    // Core ring plus chords: strongly connected without the financial firms.
    for (std::uint32_t i = 0; i < kCore; ++i) edge(c, i, c, (i + 1) % kCore);
    for (std::uint32_t i = 0; i < kCore; i += 3)
      edge(c, i, c, (i + 7) % kCore);
    // Financial firms attach to the core in both directions.
    for (std::uint32_t m = 0; m < kSize - kCore; ++m) {
      const std::uint32_t f = kCore + m;
      edge(c, (m * 4) % kCore, c, f);
      edge(c, f, c, (m * 4 + 2) % kCore);
    }
    // Cross-community holdings, almost all financial-sourced.
    for (std::uint32_t m = 0; m < kSize - kCore; ++m) {
      const std::uint32_t f = kCore + m;
      for (std::uint32_t t = 1; t <= 3; ++t) {
        const std::uint32_t d = (c + 1 + (m + t) % 5) % kComms;
        edge(c, f, d, (m * 5 + t * 7) % kCore);
      }
    }
    for (std::uint32_t p = 0; p < 5; ++p) {
      const std::uint32_t d = (c + 1 + p) % kComms;
      edge(c, (p * 3) % kCore, d, (p * 11 + 5) % kCore);
    }
  }
  out.g = b.build();
  return out;
}

}  // namespace fixtures

#endif  // OWNET_TESTS_FIXTURES_HPP
