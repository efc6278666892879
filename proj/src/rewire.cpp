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

#include "ownet/rewire.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "ownet/error.hpp"
#include "ownet/modularity.hpp"
#include "ownet/rng.hpp"
#include "ownet/util.hpp"

namespace ownet {

namespace {

inline std::uint64_t pair_key(std::uint32_t s, std::uint32_t t) {
  return (static_cast<std::uint64_t>(s) << 32) | t;
}

}  // namespace

OwnershipGraph rewire(const OwnershipGraph& g, const RewireConfig& cfg,
                      std::uint32_t realization_index) {
  const std::size_t e_count = g.edge_count();
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  if (e_count >= 2) {
    std::unordered_set<std::uint64_t> present;
    present.reserve(e_count * 2);
    for (const auto& e : edges) present.insert(pair_key(e.src, e.dst));
    std::vector<double> in_sum(g.node_count());
    for (std::uint32_t u = 0; u < g.node_count(); ++u)
      in_sum[u] = g.in_share_sum(u);

    Rng rng(cfg.base_seed + realization_index);
    const std::uint64_t attempts =
        static_cast<std::uint64_t>(cfg.n_swaps_per_edge) * e_count;
    std::uint64_t reject_streak = 0;
    for (std::uint64_t a = 0; a < attempts; ++a) {
      bool ok = false;
      const std::size_t i = rng.below(e_count);
      const std::size_t j = rng.below(e_count);
      if (i != j) {
        Edge& e1 = edges[i];
        Edge& e2 = edges[j];
        // Shared endpoints make the proposal a no-op or collide with one of
        // the edges being replaced; both self-loop cases are real.
        if (e1.src != e2.src && e1.dst != e2.dst && e1.src != e2.dst &&
            e2.src != e1.dst && !present.contains(pair_key(e1.src, e2.dst)) &&
            !present.contains(pair_key(e2.src, e1.dst))) {
          const double t1_new = in_sum[e1.dst] - e1.share + e2.share;
          const double t2_new = in_sum[e2.dst] - e2.share + e1.share;
          if (t1_new <= 1.0 + kShareSumTolerance &&
              t2_new <= 1.0 + kShareSumTolerance) {
            present.erase(pair_key(e1.src, e1.dst));
            present.erase(pair_key(e2.src, e2.dst));
            in_sum[e1.dst] = t1_new;
            in_sum[e2.dst] = t2_new;
            std::swap(e1.dst, e2.dst);
            present.insert(pair_key(e1.src, e1.dst));
            present.insert(pair_key(e2.src, e2.dst));
            ok = true;
          }
        }
      }
      if (ok) {
        reject_streak = 0;
      } else if (++reject_streak > cfg.max_reject_streak) {
        throw ConstraintError(
            "rewiring aborted: " + std::to_string(reject_streak) +
            " consecutive rejected swaps after " + std::to_string(a + 1) +
            " attempts; the graph is too constrained for this null model");
      }
    }
  }

  GraphBuilder b;
  for (const auto& rec : g.nodes()) b.add_node(rec);
  for (const auto& e : edges)
    b.add_edge(g.node(e.src).id, g.node(e.dst).id, e.share);
  return b.build();
}

EnsembleSummary ensemble_compare(const OwnershipGraph& g,
                                 const RewireConfig& cfg, unsigned workers,
                                 std::optional<std::uint64_t> detection) {
  if (cfg.n_realizations == 0)
    throw ValidationError("ensemble needs at least one realization");
  const std::uint64_t detection_seed =
      detection ? *detection : derive_seed(cfg.base_seed, "louvain");

  EnsembleSummary out;
  {
    const auto view = ModularityView::from_graph(g);
    const auto hp = louvain(view, detection_seed);
    out.empirical_modularity = hp.stage_log.back().modularity;
    out.empirical_n_communities = hp.final_community_count();
    out.empirical_sizes = community_sizes(hp.final_level());
    std::sort(out.empirical_sizes.rbegin(), out.empirical_sizes.rend());
  }

  out.realizations.resize(cfg.n_realizations);
  parallel_for(cfg.n_realizations, workers, [&](std::size_t i) {
    const OwnershipGraph r = rewire(g, cfg, static_cast<std::uint32_t>(i));
    const auto view = ModularityView::from_graph(r);
    const auto hp = louvain(view, detection_seed);
    RealizationSummary& s = out.realizations[i];
    s.modularity = hp.stage_log.back().modularity;
    s.n_communities = hp.final_community_count();
    s.community_sizes = community_sizes(hp.final_level());
    std::sort(s.community_sizes.rbegin(), s.community_sizes.rend());
  });

  double sum = 0;
  for (const auto& r : out.realizations) sum += r.modularity;
  out.mean_modularity = sum / cfg.n_realizations;
  double var = 0;
  for (const auto& r : out.realizations) {
    const double d = r.modularity - out.mean_modularity;
    var += d * d;
  }
  out.std_modularity = std::sqrt(var / cfg.n_realizations);
  if (out.std_modularity > 0) {
    out.z = (out.empirical_modularity - out.mean_modularity) /
            out.std_modularity;
  } else if (out.empirical_modularity != out.mean_modularity) {
    out.z = std::numeric_limits<double>::infinity();
  } else {
    out.z = 0;
  }
  return out;
}

}  // namespace ownet
