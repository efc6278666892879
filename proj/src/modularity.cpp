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

#include "ownet/modularity.hpp"

#include <algorithm>
#include <numeric>

#include "ownet/error.hpp"
#include "ownet/rng.hpp"

namespace ownet {

namespace {

constexpr double kMinGain = 1e-10;

// Dense relabeling by first occurrence in node order; keeps all later
// floating-point accumulation orders deterministic.
std::uint32_t densify(const Partition& partition, Partition& dense) {
  dense.assign(partition.size(), 0);
  std::vector<std::uint32_t> remap;
  std::uint32_t next = 0;
  std::uint32_t max_label = 0;
  for (std::uint32_t c : partition) max_label = std::max(max_label, c);
  remap.assign(static_cast<std::size_t>(max_label) + 1, UINT32_MAX);
  for (std::size_t u = 0; u < partition.size(); ++u) {
    std::uint32_t& slot = remap[partition[u]];
    if (slot == UINT32_MAX) slot = next++;
    dense[u] = slot;
  }
  return next;
}

}  // namespace

ModularityView ModularityView::from_graph(const OwnershipGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint64_t> pairs;
  pairs.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    const std::uint32_t a = std::min(e.src, e.dst);
    const std::uint32_t b = std::max(e.src, e.dst);
    pairs.push_back((static_cast<std::uint64_t>(a) << 32) | b);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  ModularityView v;
  v.links_ = pairs.size();
  v.start_.assign(n + 1, 0);
  for (std::uint64_t p : pairs) {
    ++v.start_[(p >> 32) + 1];
    ++v.start_[(p & 0xffffffffu) + 1];
  }
  for (std::size_t u = 0; u < n; ++u) v.start_[u + 1] += v.start_[u];
  v.adj_.resize(2 * pairs.size());
  std::vector<std::uint32_t> cur(v.start_.begin(), v.start_.end() - 1);
  for (std::uint64_t p : pairs) {
    const auto a = static_cast<std::uint32_t>(p >> 32);
    const auto b = static_cast<std::uint32_t>(p & 0xffffffffu);
    v.adj_[cur[a]++] = b;
    v.adj_[cur[b]++] = a;
  }
  return v;
}

double modularity(const ModularityView& view, const Partition& partition) {
  const std::size_t n = view.node_count();
  if (partition.size() != n)
    throw ValidationError("partition does not cover every node");
  if (view.link_count() == 0)
    throw ValidationError("modularity undefined on a linkless view");

  Partition dense;
  const std::uint32_t n_comm = densify(partition, dense);
  std::vector<double> tot(n_comm, 0.0), internal(n_comm, 0.0);
  for (std::uint32_t u = 0; u < n; ++u) {
    tot[dense[u]] += view.degree(u);
    for (std::uint32_t v : view.neighbors(u))
      if (dense[v] == dense[u]) internal[dense[u]] += 1.0;  // both directions
  }
  const double two_l = 2.0 * static_cast<double>(view.link_count());
  double q = 0;
  for (std::uint32_t c = 0; c < n_comm; ++c) {
    const double frac = tot[c] / two_l;
    q += internal[c] / two_l - frac * frac;
  }
  return q;
}

std::uint64_t crossing_links(const ModularityView& view,
                             const Partition& partition) {
  if (partition.size() != view.node_count())
    throw ValidationError("partition does not cover every node");
  std::uint64_t crossing = 0;
  for (std::uint32_t u = 0; u < view.node_count(); ++u)
    for (std::uint32_t v : view.neighbors(u))
      if (v > u && partition[u] != partition[v]) ++crossing;
  return crossing;
}

std::uint32_t community_count(const Partition& partition) {
  std::uint32_t max_id = 0;
  for (std::uint32_t c : partition) max_id = std::max(max_id, c + 1);
  return max_id;
}

std::vector<std::size_t> community_sizes(const Partition& partition) {
  std::vector<std::size_t> sizes(community_count(partition), 0);
  for (std::uint32_t c : partition) ++sizes[c];
  return sizes;
}

namespace detail {

LevelGraph LevelGraph::from_view(const ModularityView& view) {
  LevelGraph lg;
  const std::size_t n = view.node_count();
  lg.adj.resize(n);
  lg.self_weight.assign(n, 0.0);
  lg.degree.assign(n, 0.0);
  lg.two_l = 2.0 * static_cast<double>(view.link_count());
  for (std::uint32_t u = 0; u < n; ++u) {
    lg.adj[u].reserve(view.degree(u));
    for (std::uint32_t v : view.neighbors(u)) lg.adj[u].push_back({v, 1.0});
    lg.degree[u] = view.degree(u);
  }
  return lg;
}

namespace {

// Insertion score of `node` into community c, with the node held out:
// w_node->c - k_node * tot_c / two_l. Differences of these scores, times
// 2 / two_l, are exact modularity deltas.
struct NeighborWeights {
  std::vector<double> w;
  std::vector<std::uint32_t> stamp;
  std::vector<std::uint32_t> touched;
  std::uint32_t epoch = 0;

  void reset(std::size_t n) {
    w.assign(n, 0.0);
    stamp.assign(n, 0);
    epoch = 0;
  }
  void begin() {
    ++epoch;
    touched.clear();
  }
  void add(std::uint32_t c, double weight) {
    if (stamp[c] != epoch) {
      stamp[c] = epoch;
      w[c] = 0.0;
      touched.push_back(c);
    }
    w[c] += weight;
  }
  double get(std::uint32_t c) const { return stamp[c] == epoch ? w[c] : 0.0; }
};

std::size_t sweep(const LevelGraph& lg, const std::vector<std::uint32_t>& order,
                  Partition& comm, std::vector<double>& tot,
                  NeighborWeights& nw) {
  std::size_t moves = 0;
  for (std::uint32_t u : order) {
    const std::uint32_t c0 = comm[u];
    const double k = lg.degree[u];
    nw.begin();
    nw.add(c0, 0.0);  // staying put is always a candidate
    for (const auto& [v, w] : lg.adj[u]) nw.add(comm[v], w);

    tot[c0] -= k;
    std::uint32_t best_c = c0;
    double best_g = nw.get(c0) - k * tot[c0] / lg.two_l;
    const double stay_g = best_g;
    for (std::uint32_t c : nw.touched) {
      if (c == c0) continue;
      const double gain = nw.get(c) - k * tot[c] / lg.two_l;
      if (gain > best_g || (gain == best_g && c < best_c)) {
        best_g = gain;
        best_c = c;
      }
    }
    // Convert the score difference into an actual modularity delta.
    if (best_c != c0 && (best_g - stay_g) * 2.0 / lg.two_l <= kMinGain)
      best_c = c0;
    comm[u] = best_c;
    tot[best_c] += k;
    if (best_c != c0) ++moves;
  }
  return moves;
}

LevelGraph contract(const LevelGraph& lg, const Partition& comm,
                    std::uint32_t n_comm) {
  LevelGraph out;
  out.adj.resize(n_comm);
  out.self_weight.assign(n_comm, 0.0);
  out.degree.assign(n_comm, 0.0);
  out.two_l = lg.two_l;

  std::vector<std::vector<std::uint32_t>> members(n_comm);
  for (std::uint32_t u = 0; u < lg.size(); ++u) members[comm[u]].push_back(u);

  NeighborWeights nw;
  nw.reset(n_comm);
  for (std::uint32_t c = 0; c < n_comm; ++c) {
    nw.begin();
    for (std::uint32_t u : members[c]) {
      out.self_weight[c] += lg.self_weight[u];
      for (const auto& [v, w] : lg.adj[u]) {
        if (comm[v] == c)
          out.self_weight[c] += w;  // visited from both ends: 2x internal
        else
          nw.add(comm[v], w);
      }
    }
    for (std::uint32_t d : nw.touched) out.adj[c].push_back({d, nw.get(d)});
    for (const auto& [d, w] : out.adj[c]) out.degree[c] += w;
    out.degree[c] += out.self_weight[c];
  }
  return out;
}

}  // namespace

double move_gain(const LevelGraph& lg, const Partition& comm,
                 std::span<const double> tot, std::uint32_t node,
                 std::uint32_t target) {
  const std::uint32_t c0 = comm[node];
  if (target == c0) return 0.0;
  const double k = lg.degree[node];
  double w_old = 0, w_new = 0;
  for (const auto& [v, w] : lg.adj[node]) {
    if (comm[v] == c0) w_old += w;
    if (comm[v] == target) w_new += w;
  }
  const double tot_old = tot[c0] - k;
  const double g_old = w_old - k * tot_old / lg.two_l;
  const double g_new = w_new - k * tot[target] / lg.two_l;
  return (g_new - g_old) * 2.0 / lg.two_l;
}

}  // namespace detail

HierarchicalPartition louvain(const ModularityView& view, std::uint64_t seed) {
  if (view.link_count() == 0)
    throw ValidationError("community detection needs at least one link");
  const std::size_t n0 = view.node_count();

  HierarchicalPartition hp;
  Partition identity(n0);
  std::iota(identity.begin(), identity.end(), 0);
  hp.levels.push_back(identity);
  hp.stage_log.push_back({0, n0, view.link_count(), modularity(view, identity)});

  detail::LevelGraph lg = detail::LevelGraph::from_view(view);
  Partition to_level = identity;  // original node -> current level node
  Rng rng(seed);
  detail::NeighborWeights nw;
  int level = 0;

  while (true) {
    Partition comm(lg.size());
    std::iota(comm.begin(), comm.end(), 0);
    std::vector<double> tot = lg.degree;
    std::vector<std::uint32_t> order(lg.size());
    std::iota(order.begin(), order.end(), 0);
    nw.reset(lg.size());

    std::size_t total_moves = 0;
    while (true) {
      rng.shuffle(order);
      const std::size_t moves = detail::sweep(lg, order, comm, tot, nw);
      total_moves += moves;
      if (moves == 0) break;
    }
    if (total_moves == 0) break;

    Partition dense;
    const std::uint32_t n_comm = densify(comm, dense);
    Partition next(n0);
    for (std::size_t u = 0; u < n0; ++u) next[u] = dense[to_level[u]];
    ++level;
    hp.levels.push_back(next);
    hp.stage_log.push_back({level, n_comm, crossing_links(view, next),
                            modularity(view, next)});
    to_level = std::move(next);
    lg = detail::contract(lg, dense, n_comm);
  }
  return hp;
}

SubcommunityBreakdown subcommunities(const HierarchicalPartition& hp,
                                     std::uint32_t final_community) {
  if (hp.levels.empty()) throw ValidationError("empty hierarchy");
  const Partition& final_p = hp.final_level();
  const Partition& level1 = hp.levels[std::min<std::size_t>(
      1, hp.levels.size() - 1)];

  std::vector<std::size_t> counts;
  bool found = false;
  for (std::size_t u = 0; u < final_p.size(); ++u) {
    if (final_p[u] != final_community) continue;
    found = true;
    const std::uint32_t sub = level1[u];
    if (counts.size() <= sub) counts.resize(sub + 1, 0);
    ++counts[sub];
  }
  if (!found)
    throw ValidationError("unknown final-level community id: " +
                          std::to_string(final_community));

  SubcommunityBreakdown out;
  for (std::uint32_t c = 0; c < counts.size(); ++c)
    if (counts[c] > 0) out.members.push_back({c, counts[c]});
  std::sort(out.members.begin(), out.members.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  double total = 0;
  for (const auto& [c, s] : out.members) total += static_cast<double>(s);
  for (const auto& [c, s] : out.members) {
    const double f = static_cast<double>(s) / total;
    out.herfindahl += f * f;
  }
  return out;
}

}  // namespace ownet
