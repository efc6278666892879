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

#include "ownet/commnet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ownet/error.hpp"

namespace ownet {

namespace {

std::vector<std::uint32_t> rank_communities(const Partition& partition,
                                            std::optional<std::uint32_t> top_k) {
  const auto sizes = community_sizes(partition);
  std::vector<std::uint32_t> order;
  order.reserve(sizes.size());
  for (std::uint32_t c = 0; c < sizes.size(); ++c)
    if (sizes[c] > 0) order.push_back(c);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
    return a < b;
  });
  if (top_k && *top_k < order.size()) order.resize(*top_k);
  return order;
}

CommunityNetwork aggregate_impl(const OwnershipGraph& g,
                                const Partition& partition,
                                std::vector<std::uint32_t> kept) {
  CommunityNetwork cn;
  cn.community_ids = std::move(kept);
  const std::size_t k = cn.community_ids.size();
  cn.sizes.assign(k, 0);
  cn.counts.assign(k, std::vector<std::uint64_t>(k, 0));

  // Community id -> rank index; UINT32_MAX marks dropped communities.
  std::uint32_t max_id = 0;
  for (std::uint32_t c : cn.community_ids) max_id = std::max(max_id, c);
  std::vector<std::uint32_t> rank(static_cast<std::size_t>(max_id) + 1,
                                  UINT32_MAX);
  for (std::uint32_t i = 0; i < k; ++i) rank[cn.community_ids[i]] = i;

  auto rank_of = [&](std::uint32_t node) -> std::uint32_t {
    const std::uint32_t c = partition[node];
    return c < rank.size() ? rank[c] : UINT32_MAX;
  };
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    const std::uint32_t r = rank_of(u);
    if (r != UINT32_MAX) ++cn.sizes[r];
  }
  for (const auto& e : g.edges()) {
    const std::uint32_t ri = rank_of(e.src);
    const std::uint32_t rj = rank_of(e.dst);
    if (ri != UINT32_MAX && rj != UINT32_MAX) ++cn.counts[ri][rj];
  }
  return cn;
}

}  // namespace

CommunityNetwork aggregate(const OwnershipGraph& g, const Partition& partition,
                           std::optional<std::uint32_t> top_k) {
  if (partition.size() != g.node_count())
    throw ValidationError("partition does not cover every node");
  if (top_k && *top_k == 0)
    throw ValidationError("top_k must be at least 1");
  return aggregate_impl(g, partition, rank_communities(partition, top_k));
}

CommunityNetwork aggregate_for(const OwnershipGraph& g,
                               const Partition& partition,
                               std::span<const std::uint32_t> community_ids) {
  if (partition.size() != g.node_count())
    throw ValidationError("partition does not cover every node");
  if (community_ids.empty())
    throw ValidationError("aggregate_for needs at least one community");
  return aggregate_impl(
      g, partition,
      std::vector<std::uint32_t>(community_ids.begin(), community_ids.end()));
}

OwnershipGraph remove_sector(const OwnershipGraph& g, MacroSector sector,
                             const SectorMap& sectors) {
  std::vector<bool> keep(g.node_count(), true);
  for (std::uint32_t u = 0; u < g.node_count(); ++u)
    if (sectors.classify(g.node(u).nace) == sector) keep[u] = false;
  GraphBuilder b;
  for (std::uint32_t u = 0; u < g.node_count(); ++u)
    if (keep[u]) b.add_node(g.node(u));
  for (const auto& e : g.edges())
    if (keep[e.src] && keep[e.dst])
      b.add_edge(g.node(e.src).id, g.node(e.dst).id, e.share);
  return b.build();
}

Partition carry_partition(const OwnershipGraph& from, const Partition& labels,
                          const OwnershipGraph& to) {
  if (labels.size() != from.node_count())
    throw ValidationError("partition does not cover every node");
  Partition out(to.node_count(), 0);
  for (std::uint32_t u = 0; u < to.node_count(); ++u) {
    const auto orig = from.find(to.node(u).id);
    if (!orig) throw ValidationError("node missing from source graph: " +
                                     to.node(u).id);
    out[u] = labels[*orig];
  }
  return out;
}

ImpactMatrix impact_matrix(const CommunityNetwork& cn,
                           std::optional<double> beta_opt) {
  const std::size_t k = cn.size();
  if (k == 0) throw ValidationError("impact matrix of an empty network");
  ImpactMatrix m;
  m.beta = beta_opt.value_or(static_cast<double>(k));
  if (!(m.beta > 0)) throw ValidationError("beta must be positive");
  m.w.assign(k, std::vector<double>(k, 0.0));
  m.degenerate.assign(k, false);
  for (std::size_t j = 0; j < k; ++j) {
    const std::uint64_t internal = cn.counts[j][j];
    if (internal == 0) {
      m.degenerate[j] = true;  // whole column stays 0
      continue;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (i == j) continue;
      m.w[i][j] = m.beta * static_cast<double>(cn.counts[j][i]) /
                  static_cast<double>(internal);
    }
  }
  return m;
}

DebtRankResult debtrank(const ImpactMatrix& impacts,
                        std::span<const double> values,
                        std::span<const std::uint32_t> seeds, double psi,
                        bool cap_impacts) {
  const std::size_t n = impacts.w.size();
  if (values.size() != n)
    throw ValidationError("value vector does not match network size");
  double vsum = 0;
  for (double v : values) {
    if (!(v >= 0) || !std::isfinite(v))
      throw ValidationError("values must be non-negative");
    vsum += v;
  }
  if (std::abs(vsum - 1.0) > 1e-9)
    throw ValidationError("values must sum to 1");
  if (seeds.empty()) throw ValidationError("empty seed set");
  if (!(psi > 0.0) || psi > 1.0)
    throw ValidationError("psi must lie in (0, 1]");

  enum class State : std::uint8_t { kUndistressed, kDistressed, kInactive };
  std::vector<State> state(n, State::kUndistressed);
  std::vector<double> h(n, 0.0);
  for (std::uint32_t s : seeds) {
    if (s >= n) throw ValidationError("seed index out of range");
    h[s] = psi;
    state[s] = State::kDistressed;
  }
  const double initial = std::inner_product(h.begin(), h.end(), values.begin(),
                                            0.0);

  DebtRankResult out;
  std::vector<double> h_prev(n);
  std::vector<std::uint32_t> distressed;
  while (true) {
    distressed.clear();
    for (std::uint32_t i = 0; i < n; ++i)
      if (state[i] == State::kDistressed) distressed.push_back(i);
    if (distressed.empty()) break;
    ++out.iterations;
    h_prev = h;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (state[j] == State::kInactive) continue;
      double add = 0;
      for (std::uint32_t i : distressed) {
        const double wij =
            cap_impacts ? std::min(1.0, impacts.w[i][j]) : impacts.w[i][j];
        add += wij * h_prev[i];
      }
      if (add > 0) h[j] = std::min(1.0, h[j] + add);
    }
    for (std::uint32_t i : distressed) state[i] = State::kInactive;
    for (std::uint32_t j = 0; j < n; ++j)
      if (state[j] == State::kUndistressed && h[j] > 0)
        state[j] = State::kDistressed;
  }
  const double final_sum =
      std::inner_product(h.begin(), h.end(), values.begin(), 0.0);
  out.r = final_sum - initial;
  out.distress = std::move(h);
  return out;
}

CommnetTopology commnet_topology(const CommunityNetwork& cn,
                                 std::uint64_t path_seed) {
  CommnetTopology t;
  const std::size_t k = cn.size();
  t.n_nodes = k;
  Digraph d;
  d.n = k;
  d.out.resize(k);
  d.in.resize(k);
  d.ids.reserve(k);
  for (std::uint32_t c : cn.community_ids) d.ids.push_back(std::to_string(c));
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < k; ++j)
      if (i != j && cn.counts[i][j] > 0) {
        d.out[i].push_back(j);
        d.in[j].push_back(i);
        ++t.n_links;
      }
  const BowTie bt = bow_tie(d);
  t.n_lscc = bt.n_lscc;
  t.n_in = bt.n_in;
  t.n_out = bt.n_out;
  t.n_other = bt.n_other;
  t.degrees = degree_stats(d);
  t.paths = shortest_path_stats(d, k, path_seed);
  t.density = k >= 2 ? link_density(k, t.n_links) : 0.0;
  return t;
}

CentralityReport centrality_report(const OwnershipGraph& g,
                                   const Partition& partition,
                                   std::uint32_t top_k,
                                   std::optional<MacroSector> drop,
                                   bool uniform_values,
                                   std::optional<double> beta, double psi,
                                   const SectorMap& sectors) {
  const CommunityNetwork cn = aggregate(g, partition, top_k);

  // Per-community member lists for profiles (kept communities only).
  std::uint32_t max_id = 0;
  for (std::uint32_t c : cn.community_ids) max_id = std::max(max_id, c);
  std::vector<std::uint32_t> rank(static_cast<std::size_t>(max_id) + 1,
                                  UINT32_MAX);
  for (std::uint32_t i = 0; i < cn.size(); ++i) rank[cn.community_ids[i]] = i;
  std::vector<std::vector<std::uint32_t>> members(cn.size());
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    const std::uint32_t c = partition[u];
    if (c < rank.size() && rank[c] != UINT32_MAX)
      members[rank[c]].push_back(u);
  }

  auto build_variant = [&](const CommunityNetwork& net) {
    CentralityVariant v;
    v.topology = commnet_topology(net);
    const ImpactMatrix w = impact_matrix(net, beta);
    v.beta = w.beta;

    std::vector<double> values(net.size(), 0.0);
    double total = 0;
    for (std::size_t i = 0; i < net.size(); ++i)
      total += static_cast<double>(net.sizes[i]);
    for (std::size_t i = 0; i < net.size(); ++i) {
      if (uniform_values)
        values[i] = 1.0 / static_cast<double>(net.size());
      else if (total > 0)
        values[i] = static_cast<double>(net.sizes[i]) / total;
    }

    v.rows.resize(net.size());
    for (std::uint32_t i = 0; i < net.size(); ++i) {
      CentralityRow& row = v.rows[i];
      row.community = net.community_ids[i];
      row.size = net.sizes[i];
      row.emptied = net.sizes[i] == 0;
      if (!row.emptied) {
        const std::uint32_t seed[] = {i};
        row.r = debtrank(w, values, seed, psi).r;
      }
    }
    return v;
  };

  CentralityReport report;
  report.full = build_variant(cn);
  for (std::uint32_t i = 0; i < cn.size(); ++i) {
    const CommunityProfile p =
        profile(g, members[i], cn.community_ids[i], sectors);
    report.full.rows[i].dominant_country = p.has_country ? p.c1 : "";
    report.full.rows[i].dominant_sector = p.has_sector ? p.s1 : "";
  }

  if (drop) {
    const OwnershipGraph filtered = remove_sector(g, *drop, sectors);
    // Same communities, same order; membership carried over by node id.
    const Partition fpart = carry_partition(g, partition, filtered);
    const CommunityNetwork fcn =
        aggregate_for(filtered, fpart, cn.community_ids);
    CentralityVariant v = build_variant(fcn);
    for (std::uint32_t i = 0; i < fcn.size(); ++i) {
      if (v.rows[i].emptied) continue;
      std::vector<std::uint32_t> fmembers;
      for (std::uint32_t u = 0; u < filtered.node_count(); ++u)
        if (fpart[u] == fcn.community_ids[i]) fmembers.push_back(u);
      const CommunityProfile p =
          profile(filtered, fmembers, fcn.community_ids[i], sectors);
      v.rows[i].dominant_country = p.has_country ? p.c1 : "";
      v.rows[i].dominant_sector = p.has_sector ? p.s1 : "";
    }
    report.filtered = std::move(v);
  }
  return report;
}

}  // namespace ownet
