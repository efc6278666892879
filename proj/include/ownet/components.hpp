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

#ifndef OWNET_COMPONENTS_HPP
#define OWNET_COMPONENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ownet/graph.hpp"

namespace ownet {

// Plain adjacency-list digraph; the common currency for the structural
// algorithms so they run both on firm graphs and on aggregated community
// networks. `ids` are display labels used only for deterministic tie-breaks.
struct Digraph {
  std::size_t n = 0;
  std::vector<std::vector<std::uint32_t>> out, in;
  std::vector<std::string> ids;

  static Digraph from(const OwnershipGraph& g);
};

// Weakly connected components, largest first; ties broken by the smallest
// member index. Members sorted ascending.
std::vector<std::vector<std::uint32_t>> weakly_connected_components(
    const Digraph& d);
std::vector<std::vector<std::uint32_t>> weakly_connected_components(
    const OwnershipGraph& g);

// Strongly connected components, largest first; ties broken by the smallest
// member index. Members sorted ascending.
std::vector<std::vector<std::uint32_t>> strongly_connected_components(
    const Digraph& d);
std::vector<std::vector<std::uint32_t>> strongly_connected_components(
    const OwnershipGraph& g);

enum class BowTieClass : std::uint8_t { kLscc = 0, kIn, kOut, kOther };

struct BowTie {
  std::vector<BowTieClass> label;  // per node
  std::size_t n_lscc = 0, n_in = 0, n_out = 0, n_other = 0;
};

// LSCC = largest strongly connected component with at least 2 nodes (ties
// broken by the lexicographically smallest member id); IN = nodes outside it
// that reach it, OUT = nodes it reaches, OTHER = the rest. With no cycle the
// LSCC is empty and every node is OTHER.
BowTie bow_tie(const Digraph& d);
BowTie bow_tie(const OwnershipGraph& g);

struct DegreeStats {
  double mean_in = 0, std_in = 0;
  double mean_out = 0, std_out = 0;
  std::uint64_t max_in = 0, max_out = 0;
};

// Population standard deviations. mean_in == mean_out == E / N by
// construction.
DegreeStats degree_stats(const Digraph& d);
DegreeStats degree_stats(const OwnershipGraph& g);

struct PathStats {
  double max = 0, mean = 0, stddev = 0;
  std::uint64_t pairs = 0;   // reachable ordered pairs observed
  bool has_pairs = false;
};

// Directed BFS shortest paths from up to `sample_size` distinct sources drawn
// without replacement from a seeded shuffle (all sources when the graph is
// small enough). Statistics run over reachable ordered pairs, self-pairs
// excluded; no reachable pair yields zeros with has_pairs = false.
PathStats shortest_path_stats(const Digraph& d, std::size_t sample_size,
                              std::uint64_t seed);
PathStats shortest_path_stats(const OwnershipGraph& g, std::size_t sample_size,
                              std::uint64_t seed);

// E / (N * (N - 1)). Throws ValidationError when N < 2.
double link_density(std::size_t n_nodes, std::size_t n_edges);
double link_density(const OwnershipGraph& g);

}  // namespace ownet

#endif  // OWNET_COMPONENTS_HPP
