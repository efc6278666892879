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

#include "ownet.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ownet/commnet.hpp"
#include "ownet/components.hpp"
#include "ownet/csv.hpp"
#include "ownet/distribution.hpp"
#include "ownet/error.hpp"
#include "ownet/extract.hpp"
#include "ownet/io.hpp"
#include "ownet/modularity.hpp"
#include "ownet/pipeline.hpp"
#include "ownet/rewire.hpp"
#include "ownet/synthetic.hpp"
#include "ownet/util.hpp"

struct ownet_graph {
  ownet::OwnershipGraph g;
};

struct ownet_partition {
  ownet::HierarchicalPartition hp;
};

namespace {

thread_local std::string g_last_error;

ownet_status fail(ownet_status s, const std::string& message) {
  g_last_error = message;
  return s;
}

// Maps the library's exception hierarchy onto status codes.
ownet_status run(const std::function<void()>& body) {
  try {
    body();
    return OWNET_OK;
  } catch (const ownet::ParseError& e) {
    return fail(OWNET_ERROR_PARSE, e.what());
  } catch (const ownet::IoError& e) {
    return fail(OWNET_ERROR_IO, e.what());
  } catch (const ownet::ConstraintError& e) {
    return fail(OWNET_ERROR_CONSTRAINT, e.what());
  } catch (const ownet::ValidationError& e) {
    return fail(OWNET_ERROR_VALIDATION, e.what());
  } catch (const std::exception& e) {
    return fail(OWNET_ERROR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ownet_status require(bool ok, const char* what) {
  return ok ? OWNET_OK : fail(OWNET_ERROR_VALIDATION, what);
}

std::string num(double x) { return ownet::format_number(x); }

ownet::SectorMap sector_map_of(const char* sector_map_json) {
  if (sector_map_json == nullptr) return ownet::SectorMap::default_map();
  return ownet::SectorMap::from_json(sector_map_json);
}

std::optional<ownet::MacroSector> drop_of(const char* drop_sector) {
  if (drop_sector == nullptr) return std::nullopt;
  auto s = ownet::macro_sector_from_name(drop_sector);
  if (!s)
    throw ownet::ValidationError(std::string("unknown sector: ") +
                                 drop_sector);
  return s;
}

// Rank-ordered (community, size) pairs of communities at or above the
// floor: size descending, id ascending.
std::vector<std::pair<std::uint32_t, std::size_t>> ranked_communities(
    const ownet::Partition& part, std::size_t min_size) {
  const auto sizes = ownet::community_sizes(part);
  std::vector<std::uint32_t> order;
  for (std::uint32_t c = 0; c < sizes.size(); ++c)
    if (sizes[c] > 0 && sizes[c] >= min_size) order.push_back(c);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
    return a < b;
  });
  std::vector<std::pair<std::uint32_t, std::size_t>> out;
  out.reserve(order.size());
  for (std::uint32_t c : order) out.emplace_back(c, sizes[c]);
  return out;
}

}  // namespace

extern "C" {

const char* ownet_version(void) { return ownet::kToolkitVersion; }

const char* ownet_last_error(void) { return g_last_error.c_str(); }

void ownet_string_free(char* s) { std::free(s); }

ownet_status ownet_graph_load_csv(const char* nodes_path,
                                  const char* edges_path, int clamp_shares,
                                  ownet_graph** out) {
  if (auto s = require(nodes_path && edges_path && out, "null argument"))
    return s;
  return run([&] {
    ownet::BuildOptions opts;
    opts.share_policy = clamp_shares
                            ? ownet::BuildOptions::SharePolicy::kClamp
                            : ownet::BuildOptions::SharePolicy::kReject;
    *out = new ownet_graph{ownet::load_graph_csv(nodes_path, edges_path,
                                                 opts)};
  });
}

ownet_status ownet_graph_generate(const char* spec_json, ownet_graph** out) {
  if (auto s = require(spec_json && out, "null argument")) return s;
  return run([&] {
    *out = new ownet_graph{
        ownet::generate_synthetic(ownet::synthetic_spec_from_json(spec_json))};
  });
}

ownet_status ownet_graph_save_csv(const ownet_graph* g,
                                  const char* nodes_path,
                                  const char* edges_path) {
  if (auto s = require(g && nodes_path && edges_path, "null argument"))
    return s;
  return run([&] {
    ownet::write_nodes_csv(g->g, nodes_path);
    ownet::write_edges_csv(g->g, edges_path);
  });
}

ownet_status ownet_graph_info(const ownet_graph* g, char** json_out) {
  if (auto s = require(g && json_out, "null argument")) return s;
  return run([&] {
    std::string out = "{\"n_nodes\":" + std::to_string(g->g.node_count()) +
                      ",\"n_links\":" + std::to_string(g->g.edge_count()) +
                      "}";
    *json_out = dup_string(out);
  });
}

void ownet_graph_free(ownet_graph* g) { delete g; }

ownet_status ownet_detect_tncs(const ownet_graph* g, double threshold,
                               char** json_out) {
  if (auto s = require(g && json_out, "null argument")) return s;
  return run([&] {
    const ownet::TncDetection det = ownet::detect_tncs(g->g, threshold);
    std::string out = "{\"roots\":[";
    for (std::size_t i = 0; i < det.tncs.size(); ++i) {
      if (i > 0) out += ",";
      out += "\"" + ownet::json_escape(g->g.node(det.tncs[i]).id) + "\"";
    }
    out += "],\"skipped_missing_country\":" +
           std::to_string(det.skipped_missing_country) + "}";
    *json_out = dup_string(out);
  });
}

ownet_status ownet_snowball(const ownet_graph* g, const char* const* root_ids,
                            size_t n_roots, int mark_roots,
                            ownet_graph** out) {
  if (auto s = require(g && out && (root_ids || n_roots == 0),
                       "null argument"))
    return s;
  return run([&] {
    std::vector<std::string> roots(root_ids, root_ids + n_roots);
    *out = new ownet_graph{ownet::snowball_extract(
        g->g, std::span<const std::string>(roots), mark_roots != 0)};
  });
}

ownet_status ownet_structure_summary(const ownet_graph* g,
                                     uint64_t path_sample, uint64_t path_seed,
                                     char** json_out) {
  if (auto s = require(g && json_out, "null argument")) return s;
  return run([&] {
    const auto comps = ownet::weakly_connected_components(g->g);
    const ownet::BowTie bt = ownet::bow_tie(g->g);
    const ownet::DegreeStats deg = ownet::degree_stats(g->g);
    const std::size_t sample =
        path_sample == 0 ? g->g.node_count() : path_sample;
    const ownet::PathStats paths =
        ownet::shortest_path_stats(g->g, std::max<std::size_t>(sample, 1),
                                   path_seed);

    std::string fit = "null";
    if (comps.size() >= 3) {
      std::vector<std::uint64_t> tail;
      for (std::size_t i = 1; i < comps.size(); ++i)
        tail.push_back(comps[i].size());
      try {
        const ownet::PowerLawFit f = ownet::fit_power_law(tail);
        fit = "{\"exponent\":" + num(f.exponent) +
              ",\"xmin\":" + std::to_string(f.xmin) +
              ",\"n_tail\":" + std::to_string(f.n_tail) + "}";
      } catch (const ownet::ValidationError&) {
      }
    }

    std::string out = "{";
    out += "\"n_nodes\":" + std::to_string(g->g.node_count());
    out += ",\"n_links\":" + std::to_string(g->g.edge_count());
    out += ",\"density\":" + (g->g.node_count() >= 2
                                  ? num(ownet::link_density(g->g))
                                  : std::string("0"));
    out += ",\"n_components\":" + std::to_string(comps.size());
    out += ",\"lcc_size\":" +
           std::to_string(comps.empty() ? 0 : comps.front().size());
    out += ",\"bow_tie\":{\"lscc\":" + std::to_string(bt.n_lscc) +
           ",\"in\":" + std::to_string(bt.n_in) +
           ",\"out\":" + std::to_string(bt.n_out) +
           ",\"other\":" + std::to_string(bt.n_other) + "}";
    out += ",\"degrees\":{\"mean_in\":" + num(deg.mean_in) +
           ",\"std_in\":" + num(deg.std_in) +
           ",\"max_in\":" + std::to_string(deg.max_in) +
           ",\"mean_out\":" + num(deg.mean_out) +
           ",\"std_out\":" + num(deg.std_out) +
           ",\"max_out\":" + std::to_string(deg.max_out) + "}";
    out += ",\"paths\":{\"max\":" + num(paths.max) +
           ",\"mean\":" + num(paths.mean) + ",\"std\":" + num(paths.stddev) +
           ",\"pairs\":" + std::to_string(paths.pairs) +
           ",\"has_pairs\":" + (paths.has_pairs ? "true" : "false") + "}";
    out += ",\"component_size_fit\":" + fit;
    out += "}";
    *json_out = dup_string(out);
  });
}

ownet_status ownet_louvain(const ownet_graph* g, uint64_t seed,
                           ownet_partition** out) {
  if (auto s = require(g && out, "null argument")) return s;
  return run([&] {
    const auto view = ownet::ModularityView::from_graph(g->g);
    *out = new ownet_partition{ownet::louvain(view, seed)};
  });
}

ownet_status ownet_partition_load(const ownet_graph* g,
                                  const char* membership_csv_path,
                                  ownet_partition** out) {
  if (auto s = require(g && membership_csv_path && out, "null argument"))
    return s;
  return run([&] {
    const auto rows = ownet::read_csv(membership_csv_path);
    if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "node_id")
      throw ownet::ParseError("not a membership file: " +
                              std::string(membership_csv_path));
    const std::size_t n_levels = rows[0].size() - 1;
    const std::size_t n = g->g.node_count();
    if (rows.size() != n + 1)
      throw ownet::ValidationError(
          "membership file does not cover the graph");

    ownet::HierarchicalPartition hp;
    ownet::Partition identity(n);
    for (std::uint32_t u = 0; u < n; ++u) identity[u] = u;
    hp.levels.push_back(identity);
    hp.levels.insert(hp.levels.end(), n_levels, ownet::Partition(n, 0));
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (row.size() != n_levels + 1)
        throw ownet::ParseError("membership row " + std::to_string(i + 1) +
                                " has the wrong column count");
      const auto idx = g->g.find(row[0]);
      if (!idx)
        throw ownet::ValidationError("membership names unknown node: " +
                                     row[0]);
      for (std::size_t t = 0; t < n_levels; ++t) {
        const long v = std::stol(row[t + 1]);
        if (v < 0) throw ownet::ParseError("negative community id");
        hp.levels[t + 1][*idx] = static_cast<std::uint32_t>(v);
      }
    }
    *out = new ownet_partition{std::move(hp)};
  });
}

ownet_status ownet_partition_summary(const ownet_partition* p,
                                     char** json_out) {
  if (auto s = require(p && json_out, "null argument")) return s;
  return run([&] {
    std::string out = "{\"levels\":" + std::to_string(p->hp.levels.size()) +
                      ",\"n_communities\":" +
                      std::to_string(p->hp.final_community_count()) +
                      ",\"stage_log\":[";
    for (std::size_t i = 0; i < p->hp.stage_log.size(); ++i) {
      const auto& row = p->hp.stage_log[i];
      if (i > 0) out += ",";
      out += "{\"level\":" + std::to_string(row.level) +
             ",\"n_nodes\":" + std::to_string(row.n_nodes) +
             ",\"n_links\":" + std::to_string(row.n_links) +
             ",\"modularity\":" + num(row.modularity) + "}";
    }
    out += "]}";
    *json_out = dup_string(out);
  });
}

ownet_status ownet_partition_write_stage_log(const ownet_partition* p,
                                             const char* path) {
  if (auto s = require(p && path, "null argument")) return s;
  return run([&] { ownet::write_stage_log_csv(path, p->hp); });
}

ownet_status ownet_partition_write_membership(const ownet_partition* p,
                                              const ownet_graph* g,
                                              const char* path) {
  if (auto s = require(p && g && path, "null argument")) return s;
  return run([&] { ownet::write_membership_csv(path, g->g, p->hp); });
}

ownet_status ownet_subcommunities(const ownet_partition* p,
                                  uint32_t final_community, char** json_out) {
  if (auto s = require(p && json_out, "null argument")) return s;
  return run([&] {
    const ownet::SubcommunityBreakdown b =
        ownet::subcommunities(p->hp, final_community);
    std::string out = "{\"community\":" + std::to_string(final_community) +
                      ",\"herfindahl\":" + num(b.herfindahl) +
                      ",\"members\":[";
    for (std::size_t i = 0; i < b.members.size(); ++i) {
      if (i > 0) out += ",";
      out += "{\"id\":" + std::to_string(b.members[i].first) +
             ",\"size\":" + std::to_string(b.members[i].second) + "}";
    }
    out += "]}";
    *json_out = dup_string(out);
  });
}

void ownet_partition_free(ownet_partition* p) { delete p; }

ownet_status ownet_rewire(const ownet_graph* g, uint32_t swaps_per_edge,
                          uint64_t base_seed, uint32_t realization_index,
                          uint64_t max_reject_streak, ownet_graph** out) {
  if (auto s = require(g && out, "null argument")) return s;
  return run([&] {
    ownet::RewireConfig cfg;
    cfg.n_swaps_per_edge = swaps_per_edge;
    cfg.base_seed = base_seed;
    if (max_reject_streak > 0) cfg.max_reject_streak = max_reject_streak;
    *out = new ownet_graph{ownet::rewire(g->g, cfg, realization_index)};
  });
}

ownet_status ownet_ensemble_run(const ownet_graph* g, uint32_t realizations,
                                uint32_t swaps_per_edge, uint64_t base_seed,
                                uint64_t max_reject_streak,
                                const char* out_prefix, char** json_out) {
  if (auto s = require(g && json_out, "null argument")) return s;
  return run([&] {
    ownet::RewireConfig cfg;
    cfg.n_realizations = realizations;
    cfg.n_swaps_per_edge = swaps_per_edge;
    cfg.base_seed = base_seed;
    if (max_reject_streak > 0) cfg.max_reject_streak = max_reject_streak;
    const ownet::EnsembleSummary s =
        ownet::ensemble_compare(g->g, cfg, ownet::resolve_workers(0));
    const std::string payload = ownet::ensemble_json(s, cfg);
    if (out_prefix) {
      const std::string prefix(out_prefix);
      ownet::write_text_file(prefix + ".ensemble.json", payload);
      std::vector<std::uint64_t> emp(s.empirical_sizes.begin(),
                                     s.empirical_sizes.end());
      const auto emp_points = ownet::ccdf(emp);
      ownet::write_ccdf_csv(prefix + ".sizes_empirical.csv", emp_points);
      for (std::size_t i = 0; i < s.realizations.size(); ++i) {
        std::vector<std::uint64_t> v(
            s.realizations[i].community_sizes.begin(),
            s.realizations[i].community_sizes.end());
        char name[32];
        std::snprintf(name, sizeof name, ".sizes_rewired_%02zu.csv", i);
        const auto points = ownet::ccdf(v);
        ownet::write_ccdf_csv(prefix + name, points);
      }
    }
    *json_out = dup_string(payload);
  });
}

ownet_status ownet_characterize_run(const ownet_graph* g,
                                    const ownet_partition* p,
                                    const char* attr, double alpha,
                                    uint64_t min_size,
                                    const char* sector_map_json,
                                    const char* out_prefix, char** json_out) {
  if (auto s = require(g && p && attr && json_out, "null argument")) return s;
  return run([&] {
    const std::string attr_name(attr);
    ownet::Attribute attribute;
    if (attr_name == "country") attribute = ownet::Attribute::kCountry;
    else if (attr_name == "sector") attribute = ownet::Attribute::kSector;
    else throw ownet::ValidationError("attr must be country or sector");

    const ownet::SectorMap sectors = sector_map_of(sector_map_json);
    const ownet::Partition& part = p->hp.final_level();
    if (part.size() != g->g.node_count())
      throw ownet::ValidationError("partition does not match the graph");
    const auto communities = ranked_communities(part, min_size);

    std::vector<std::vector<std::uint32_t>> members(
        ownet::community_count(part));
    for (std::uint32_t u = 0; u < part.size(); ++u)
      members[part[u]].push_back(u);

    std::vector<ownet::CommunityProfile> profiles;
    profiles.reserve(communities.size());
    for (const auto& [c, size] : communities)
      profiles.push_back(ownet::profile(g->g, members[c], c, sectors));

    ownet::OverExpressionReport rep;
    if (!communities.empty()) {
      std::vector<std::uint32_t> tested;
      for (const auto& [c, size] : communities) tested.push_back(c);
      rep = ownet::over_expression(g->g, part, attribute, alpha,
                                   std::optional(tested), sectors);
    }

    if (out_prefix) {
      const std::string prefix(out_prefix);
      ownet::write_profiles_csv(prefix + ".profiles.csv", profiles);
      ownet::write_scatter_csv(prefix + ".scatter.csv", profiles);
      ownet::write_over_expression_csv(prefix + ".over_expression.csv", rep,
                                       communities);
    }
    std::string out = "{\"n_profiled\":" + std::to_string(profiles.size()) +
                      ",\"n_tests\":" + std::to_string(rep.n_tests) +
                      ",\"rate\":" + num(ownet::over_expression_rate(rep)) +
                      "}";
    *json_out = dup_string(out);
  });
}

ownet_status ownet_aggregate_run(const ownet_graph* g,
                                 const ownet_partition* p, uint32_t top_k,
                                 const char* drop_sector,
                                 const char* sector_map_json,
                                 const char* out_prefix, char** json_out) {
  if (auto s = require(g && p && out_prefix && json_out, "null argument"))
    return s;
  return run([&] {
    const ownet::SectorMap sectors = sector_map_of(sector_map_json);
    const ownet::Partition& part = p->hp.final_level();
    if (part.size() != g->g.node_count())
      throw ownet::ValidationError("partition does not match the graph");
    const ownet::CommunityNetwork full =
        ownet::aggregate(g->g, part, top_k);

    std::optional<ownet::CommunityNetwork> filtered;
    if (auto drop = drop_of(drop_sector)) {
      const ownet::OwnershipGraph f =
          ownet::remove_sector(g->g, *drop, sectors);
      const ownet::Partition fpart = ownet::carry_partition(g->g, part, f);
      filtered = ownet::aggregate_for(f, fpart, full.community_ids);
    }
    const std::string prefix(out_prefix);
    ownet::write_community_stats_csv(prefix + ".community_stats.csv", full,
                                     filtered ? &*filtered : nullptr);
    ownet::write_aggregate_matrix_csv(prefix + ".aggregate_matrix.csv", full,
                                      filtered ? &*filtered : nullptr);
    std::uint64_t total = 0;
    for (const auto& row : full.counts)
      for (std::uint64_t c : row) total += c;
    std::string out = "{\"n_communities\":" + std::to_string(full.size()) +
                      ",\"total_relations\":" + std::to_string(total) + "}";
    *json_out = dup_string(out);
  });
}

ownet_status ownet_debtrank_run(const ownet_graph* g,
                                const ownet_partition* p, uint32_t top_k,
                                const char* drop_sector, double beta,
                                int uniform_values, double psi,
                                const char* sector_map_json,
                                const char* out_prefix, char** json_out) {
  if (auto s = require(g && p && out_prefix && json_out, "null argument"))
    return s;
  return run([&] {
    const ownet::SectorMap sectors = sector_map_of(sector_map_json);
    const ownet::Partition& part = p->hp.final_level();
    if (part.size() != g->g.node_count())
      throw ownet::ValidationError("partition does not match the graph");
    const ownet::CentralityReport report = ownet::centrality_report(
        g->g, part, top_k, drop_of(drop_sector), uniform_values != 0,
        beta > 0 ? std::optional(beta) : std::nullopt, psi, sectors);

    const std::string prefix(out_prefix);
    auto emit = [&](const ownet::CentralityVariant& v,
                    const std::string& tag) {
      ownet::write_centrality_csv(prefix + ".centrality_" + tag + ".csv", v);
      ownet::write_radial_layout_json(prefix + ".radial_" + tag + ".json",
                                      v);
      ownet::write_text_file(prefix + ".topology_" + tag + ".json",
                             ownet::topology_json(v.topology));
    };
    emit(report.full, "full");
    if (report.filtered) emit(*report.filtered, "filtered");

    auto mean_r = [](const ownet::CentralityVariant& v) {
      if (v.rows.empty()) return 0.0;
      double sum = 0;
      for (const auto& row : v.rows) sum += row.r;
      return sum / static_cast<double>(v.rows.size());
    };
    std::string out = "{\"n_communities\":" +
                      std::to_string(report.full.rows.size()) +
                      ",\"beta\":" + num(report.full.beta) +
                      ",\"mean_r_full\":" + num(mean_r(report.full));
    if (report.filtered)
      out += ",\"mean_r_filtered\":" + num(mean_r(*report.filtered));
    out += "}";
    *json_out = dup_string(out);
  });
}

ownet_status ownet_pipeline_run(const char* config_json,
                                const char* base_dir, char** manifest_json) {
  if (auto s = require(config_json && manifest_json, "null argument"))
    return s;
  ownet_status status = OWNET_OK;
  const ownet_status outer = run([&] {
    const ownet::PipelineConfig cfg = ownet::PipelineConfig::from_json(
        config_json, base_dir ? base_dir : "");
    const ownet::RunManifest manifest = ownet::run_pipeline(cfg);
    *manifest_json = dup_string(manifest.to_json());
    if (!manifest.ok) {
      status = fail(OWNET_ERROR_STAGE,
                    manifest.failed_stage + ": " + manifest.error);
    }
  });
  return outer != OWNET_OK ? outer : status;
}

ownet_status ownet_report_emit(const char* output_dir, char** markdown_out) {
  if (auto s = require(output_dir && markdown_out, "null argument")) return s;
  return run([&] { *markdown_out = dup_string(ownet::emit_report(output_dir)); });
}

}  // extern "C"
