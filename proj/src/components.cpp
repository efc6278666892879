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

#include "ownet/components.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "ownet/error.hpp"
#include "ownet/rng.hpp"

namespace ownet {

Digraph Digraph::from(const OwnershipGraph& g) {
  Digraph d;
  d.n = g.node_count();
  d.out.resize(d.n);
  d.in.resize(d.n);
  d.ids.reserve(d.n);
  for (std::uint32_t u = 0; u < d.n; ++u) d.ids.push_back(g.node(u).id);
  for (const auto& e : g.edges()) {
    d.out[e.src].push_back(e.dst);
    d.in[e.dst].push_back(e.src);
  }
  return d;
}

namespace {

void sort_components(std::vector<std::vector<std::uint32_t>>& comps) {
  for (auto& c : comps) std::sort(c.begin(), c.end());
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
}

}  // namespace

std::vector<std::vector<std::uint32_t>> weakly_connected_components(
    const Digraph& d) {
  std::vector<std::int32_t> comp(d.n, -1);
  std::vector<std::vector<std::uint32_t>> comps;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < d.n; ++s) {
    if (comp[s] >= 0) continue;
    const auto id = static_cast<std::int32_t>(comps.size());
    comps.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      std::uint32_t u = stack.back();
      stack.pop_back();
      comps[id].push_back(u);
      for (std::uint32_t v : d.out[u])
        if (comp[v] < 0) {
          comp[v] = id;
          stack.push_back(v);
        }
      for (std::uint32_t v : d.in[u])
        if (comp[v] < 0) {
          comp[v] = id;
          stack.push_back(v);
        }
    }
  }
  sort_components(comps);
  return comps;
}

std::vector<std::vector<std::uint32_t>> weakly_connected_components(
    const OwnershipGraph& g) {
  return weakly_connected_components(Digraph::from(g));
}

// Iterative Tarjan; explicit frames keep deep chains off the call stack.
std::vector<std::vector<std::uint32_t>> strongly_connected_components(
    const Digraph& d) {
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(d.n, kUnvisited), low(d.n, 0);
  std::vector<bool> on_stack(d.n, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::vector<std::uint32_t>> comps;
  std::uint32_t next_index = 0;

  struct Frame {
    std::uint32_t node;
    std::size_t child;
  };
  std::vector<Frame> frames;

  for (std::uint32_t s = 0; s < d.n; ++s) {
    if (index[s] != kUnvisited) continue;
    frames.push_back({s, 0});
    index[s] = low[s] = next_index++;
    stack.push_back(s);
    on_stack[s] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const std::uint32_t u = f.node;
      if (f.child < d.out[u].size()) {
        const std::uint32_t v = d.out[u][f.child++];
        if (index[v] == kUnvisited) {
          index[v] = low[v] = next_index++;
          stack.push_back(v);
          on_stack[v] = true;
          frames.push_back({v, 0});
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], index[v]);
        }
        continue;
      }
      if (low[u] == index[u]) {
        comps.emplace_back();
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comps.back().push_back(w);
        } while (w != u);
      }
      frames.pop_back();
      if (!frames.empty()) {
        const std::uint32_t parent = frames.back().node;
        low[parent] = std::min(low[parent], low[u]);
      }
    }
  }
  sort_components(comps);
  return comps;
}

std::vector<std::vector<std::uint32_t>> strongly_connected_components(
    const OwnershipGraph& g) {
  return strongly_connected_components(Digraph::from(g));
}

BowTie bow_tie(const Digraph& d) {
  BowTie bt;
  bt.label.assign(d.n, BowTieClass::kOther);
  auto sccs = strongly_connected_components(d);
  if (sccs.empty() || sccs.front().size() < 2) {
    bt.n_other = d.n;
    return bt;
  }
  // Largest SCC; among same-size candidates the one whose smallest member id
  // is lexicographically least.
  const std::size_t top = sccs.front().size();
  std::size_t pick = 0;
  for (std::size_t i = 1; i < sccs.size() && sccs[i].size() == top; ++i) {
    auto min_id = [&](const std::vector<std::uint32_t>& c) {
      const std::string* best = &d.ids[c.front()];
      for (std::uint32_t u : c)
        if (d.ids[u] < *best) best = &d.ids[u];
      return best;
    };
    if (*min_id(sccs[i]) < *min_id(sccs[pick])) pick = i;
  }
  for (std::uint32_t u : sccs[pick]) bt.label[u] = BowTieClass::kLscc;

  std::vector<std::uint32_t> stack;
  // OUT: forward reachability from the LSCC.
  std::vector<bool> fwd(d.n, false);
  for (std::uint32_t u : sccs[pick]) {
    fwd[u] = true;
    stack.push_back(u);
  }
  while (!stack.empty()) {
    std::uint32_t u = stack.back();
    stack.pop_back();
    for (std::uint32_t v : d.out[u])
      if (!fwd[v]) {
        fwd[v] = true;
        stack.push_back(v);
      }
  }
  // IN: reverse reachability into the LSCC.
  std::vector<bool> bwd(d.n, false);
  for (std::uint32_t u : sccs[pick]) {
    bwd[u] = true;
    stack.push_back(u);
  }
  while (!stack.empty()) {
    std::uint32_t u = stack.back();
    stack.pop_back();
    for (std::uint32_t v : d.in[u])
      if (!bwd[v]) {
        bwd[v] = true;
        stack.push_back(v);
      }
  }
  for (std::uint32_t u = 0; u < d.n; ++u) {
    if (bt.label[u] == BowTieClass::kLscc) continue;
    if (fwd[u])
      bt.label[u] = BowTieClass::kOut;
    else if (bwd[u])
      bt.label[u] = BowTieClass::kIn;
  }
  for (auto c : bt.label) {
    switch (c) {
      case BowTieClass::kLscc: ++bt.n_lscc; break;
      case BowTieClass::kIn: ++bt.n_in; break;
      case BowTieClass::kOut: ++bt.n_out; break;
      case BowTieClass::kOther: ++bt.n_other; break;
    }
  }
  return bt;
}

BowTie bow_tie(const OwnershipGraph& g) { return bow_tie(Digraph::from(g)); }

namespace {

DegreeStats degree_stats_impl(const Digraph& d) {
  DegreeStats s;
  const std::size_t n = d.n;
  if (n == 0) return s;
  double edges = 0;
  for (std::size_t u = 0; u < n; ++u) {
    edges += static_cast<double>(d.out[u].size());
    s.max_in = std::max<std::uint64_t>(s.max_in, d.in[u].size());
    s.max_out = std::max<std::uint64_t>(s.max_out, d.out[u].size());
  }
  s.mean_in = s.mean_out = edges / static_cast<double>(n);
  double vin = 0, vout = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const double din = static_cast<double>(d.in[u].size()) - s.mean_in;
    const double dout = static_cast<double>(d.out[u].size()) - s.mean_out;
    vin += din * din;
    vout += dout * dout;
  }
  s.std_in = std::sqrt(vin / static_cast<double>(n));
  s.std_out = std::sqrt(vout / static_cast<double>(n));
  return s;
}

}  // namespace

DegreeStats degree_stats(const Digraph& d) { return degree_stats_impl(d); }

DegreeStats degree_stats(const OwnershipGraph& g) {
  return degree_stats_impl(Digraph::from(g));
}

PathStats shortest_path_stats(const Digraph& d, std::size_t sample_size,
                              std::uint64_t seed) {
  PathStats ps;
  if (d.n == 0 || sample_size == 0) return ps;
  std::vector<std::uint32_t> sources(d.n);
  std::iota(sources.begin(), sources.end(), 0);
  if (sample_size < d.n) {
    Rng rng(seed);
    rng.shuffle(sources);
    sources.resize(sample_size);
  }

  std::vector<std::uint32_t> dist(d.n);
  std::deque<std::uint32_t> queue;
  double sum = 0, sumsq = 0;
  for (std::uint32_t s : sources) {
    std::fill(dist.begin(), dist.end(), UINT32_MAX);
    dist[s] = 0;
    queue.clear();
    queue.push_back(s);
    while (!queue.empty()) {
      std::uint32_t u = queue.front();
      queue.pop_front();
      for (std::uint32_t v : d.out[u])
        if (dist[v] == UINT32_MAX) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
    }
    for (std::uint32_t v = 0; v < d.n; ++v) {
      if (v == s || dist[v] == UINT32_MAX) continue;
      const double x = dist[v];
      sum += x;
      sumsq += x * x;
      ps.max = std::max(ps.max, x);
      ++ps.pairs;
    }
  }
  if (ps.pairs == 0) return ps;
  ps.has_pairs = true;
  const double n = static_cast<double>(ps.pairs);
  ps.mean = sum / n;
  ps.stddev = std::sqrt(std::max(0.0, sumsq / n - ps.mean * ps.mean));
  return ps;
}

PathStats shortest_path_stats(const OwnershipGraph& g, std::size_t sample_size,
                              std::uint64_t seed) {
  return shortest_path_stats(Digraph::from(g), sample_size, seed);
}

double link_density(std::size_t n_nodes, std::size_t n_edges) {
  if (n_nodes < 2)
    throw ValidationError("link density undefined for fewer than 2 nodes");
  return static_cast<double>(n_edges) /
         (static_cast<double>(n_nodes) * static_cast<double>(n_nodes - 1));
}

double link_density(const OwnershipGraph& g) {
  return link_density(g.node_count(), g.edge_count());
}

}  // namespace ownet
