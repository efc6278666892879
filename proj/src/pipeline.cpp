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

#include "ownet/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>

#include <nlohmann/json.hpp>

#include "ownet/commnet.hpp"
#include "ownet/components.hpp"
#include "ownet/csv.hpp"
#include "ownet/distribution.hpp"
#include "ownet/error.hpp"
#include "ownet/extract.hpp"
#include "ownet/io.hpp"
#include "ownet/modularity.hpp"
#include "ownet/rng.hpp"
#include "ownet/util.hpp"

namespace ownet {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string resolve_path(const std::string& base_dir,
                         const std::string& path) {
  if (path.empty()) return path;
  fs::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p.lexically_normal().string();
  return (fs::path(base_dir) / p).lexically_normal().string();
}

double number_or_throw(const json& v, const std::string& key) {
  if (!v.is_number()) throw ValidationError("config: " + key + " must be a number");
  return v.get<double>();
}

SyntheticSpec synthetic_from(const json& v) {
  return synthetic_spec_from_json(v.dump());
}

std::string json_str_field(const char* k, const std::string& v) {
  return std::string("\"") + k + "\":\"" + json_escape(v) + "\"";
}

// Pinned stage order; the manifest always lists all nine.
const char* const kStageNames[] = {
    "load",      "extract",      "components",
    "communities", "ensemble",   "characterize",
    "aggregate", "debtrank_full", "debtrank_filtered"};

}  // namespace

PipelineConfig PipelineConfig::from_json(const std::string& json_text,
                                         const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config: top level must be an object");

  PipelineConfig cfg;
  try {
  for (const auto& [key, value] : j.items()) {
    if (key == "nodes") cfg.nodes_path = resolve_path(base_dir, value.get<std::string>());
    else if (key == "edges") cfg.edges_path = resolve_path(base_dir, value.get<std::string>());
    else if (key == "synthetic") cfg.synthetic = synthetic_from(value);
    else if (key == "seed") {
      if (!value.is_number_unsigned())
        throw ValidationError("config: seed must be a non-negative integer");
      cfg.seed = value.get<std::uint64_t>();
      cfg.seed_set = true;
    } else if (key == "output_dir") {
      cfg.output_dir = resolve_path(base_dir, value.get<std::string>());
    } else if (key == "tnc_threshold") {
      cfg.tnc_threshold = number_or_throw(value, key);
    } else if (key == "roots") {
      if (!value.is_array()) throw ValidationError("config: roots must be an array");
      for (const auto& r : value) cfg.roots.push_back(r.get<std::string>());
    } else if (key == "share_policy") {
      const std::string s = value.get<std::string>();
      if (s == "reject") cfg.share_policy = BuildOptions::SharePolicy::kReject;
      else if (s == "clamp") cfg.share_policy = BuildOptions::SharePolicy::kClamp;
      else throw ValidationError("config: share_policy must be reject or clamp");
    } else if (key == "restrict_to_lcc") {
      cfg.restrict_to_lcc = value.get<bool>();
    } else if (key == "min_community_size") {
      cfg.min_community_size = value.get<std::size_t>();
    } else if (key == "alpha") {
      cfg.alpha = number_or_throw(value, key);
    } else if (key == "ensemble") {
      if (!value.is_object()) throw ValidationError("config: ensemble must be an object");
      for (const auto& [ek, ev] : value.items()) {
        if (ek == "realizations") cfg.ensemble.n_realizations = ev.get<std::uint32_t>();
        else if (ek == "swaps_per_edge") cfg.ensemble.n_swaps_per_edge = ev.get<std::uint32_t>();
        else if (ek == "max_reject_streak") cfg.ensemble.max_reject_streak = ev.get<std::uint64_t>();
        else throw ValidationError("config: unknown ensemble key: " + ek);
      }
    } else if (key == "top_k_table") {
      cfg.top_k_table = value.get<std::uint32_t>();
    } else if (key == "top_k_debtrank") {
      cfg.top_k_debtrank = value.get<std::uint32_t>();
    } else if (key == "drop_sector") {
      cfg.drop_sector = value.get<std::string>();
    } else if (key == "beta") {
      if (value.is_string()) {
        if (value.get<std::string>() != "auto")
          throw ValidationError("config: beta must be \"auto\" or a number");
        cfg.beta = std::nullopt;
      } else {
        cfg.beta = number_or_throw(value, key);
      }
    } else if (key == "uniform_values") {
      cfg.uniform_values = value.get<bool>();
    } else if (key == "psi") {
      cfg.psi = number_or_throw(value, key);
    } else if (key == "sector_map") {
      cfg.sector_map_path = resolve_path(base_dir, value.get<std::string>());
    } else if (key == "workers") {
      cfg.workers = value.get<unsigned>();
    } else {
      throw ValidationError("config: unknown key: " + key);
    }
  }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return cfg;
}

std::string PipelineConfig::canonical_json() const {
  json j;
  if (synthetic) {
    j["synthetic"] = json::parse(synthetic_spec_to_json(*synthetic));
  } else {
    j["nodes"] = nodes_path;
    j["edges"] = edges_path;
  }
  j["seed"] = seed;
  j["output_dir"] = output_dir;
  j["tnc_threshold"] = tnc_threshold;
  j["roots"] = roots;
  j["share_policy"] =
      share_policy == BuildOptions::SharePolicy::kReject ? "reject" : "clamp";
  j["restrict_to_lcc"] = restrict_to_lcc;
  j["min_community_size"] = min_community_size;
  j["alpha"] = alpha;
  j["ensemble"] = {{"realizations", ensemble.n_realizations},
                   {"swaps_per_edge", ensemble.n_swaps_per_edge},
                   {"max_reject_streak", ensemble.max_reject_streak}};
  j["top_k_table"] = top_k_table;
  j["top_k_debtrank"] = top_k_debtrank;
  j["drop_sector"] = drop_sector;
  if (beta) j["beta"] = *beta; else j["beta"] = "auto";
  j["uniform_values"] = uniform_values;
  j["psi"] = psi;
  j["sector_map"] = sector_map_path;
  j["workers"] = workers;
  return j.dump();  // nlohmann orders keys, so the dump is canonical
}

void PipelineConfig::validate() const {
  if (!seed_set) throw ValidationError("config: seed is required");
  if (output_dir.empty()) throw ValidationError("config: output_dir is required");
  const bool has_files = !nodes_path.empty() || !edges_path.empty();
  if (has_files == synthetic.has_value())
    throw ValidationError(
        "config: give either nodes+edges paths or a synthetic spec");
  if (has_files) {
    if (nodes_path.empty() || edges_path.empty())
      throw ValidationError("config: nodes and edges must both be given");
    if (!fs::exists(nodes_path))
      throw ValidationError("config: nodes file not found: " + nodes_path);
    if (!fs::exists(edges_path))
      throw ValidationError("config: edges file not found: " + edges_path);
  }
  if (!(tnc_threshold > 0.0) || tnc_threshold > 1.0)
    throw ValidationError("config: tnc_threshold must lie in (0, 1]");
  if (!(alpha > 0.0) || alpha >= 1.0)
    throw ValidationError("config: alpha must lie in (0, 1)");
  if (ensemble.n_realizations == 0)
    throw ValidationError("config: ensemble.realizations must be positive");
  if (ensemble.n_swaps_per_edge == 0)
    throw ValidationError("config: ensemble.swaps_per_edge must be positive");
  if (top_k_table == 0 || top_k_debtrank == 0)
    throw ValidationError("config: top_k values must be positive");
  if (drop_sector != "none" && !macro_sector_from_name(drop_sector))
    throw ValidationError("config: unknown drop_sector: " + drop_sector);
  if (beta && !(*beta > 0))
    throw ValidationError("config: beta must be positive");
  if (!(psi > 0.0) || psi > 1.0)
    throw ValidationError("config: psi must lie in (0, 1]");
  if (!sector_map_path.empty() && !fs::exists(sector_map_path))
    throw ValidationError("config: sector_map file not found: " +
                          sector_map_path);
}

std::string RunManifest::to_json() const {
  std::string out = "{";
  out += json_str_field("config_hash", config_hash) + ",";
  out += json_str_field("version", version) + ",";
  out += "\"ok\":" + std::string(ok ? "true" : "false") + ",";
  out += json_str_field("error", error) + ",";
  out += json_str_field("failed_stage", failed_stage) + ",";
  out += "\"stages\":[";
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const auto& s = stages[i];
    if (i > 0) out += ",";
    out += "{" + json_str_field("name", s.name) + ",";
    out += json_str_field("status", s.status) + ",";
    out += "\"wall_ms\":" + format_number(s.wall_ms) + ",";
    out += json_str_field("note", s.note) + ",";
    out += "\"outputs\":[";
    for (std::size_t k = 0; k < s.outputs.size(); ++k) {
      if (k > 0) out += ",";
      out += "{" + json_str_field("path", s.outputs[k].first) + "," +
             json_str_field("digest", s.outputs[k].second) + "}";
    }
    out += "]}";
  }
  out += "]}";
  return out;
}

namespace {

// Driver state threaded through the stages.
struct Run {
  explicit Run(const PipelineConfig& c) : cfg(c) {}

  const PipelineConfig& cfg;
  fs::path dir;
  SectorMap sectors = SectorMap::default_map();
  std::optional<OwnershipGraph> raw;        // as loaded
  std::optional<OwnershipGraph> extracted;  // snowball result
  std::optional<OwnershipGraph> work;       // extraction (maybe LCC-restricted)
  std::optional<ModularityView> view;
  std::optional<HierarchicalPartition> hp;
  std::vector<std::pair<std::uint32_t, std::size_t>> table_communities;
  std::optional<CommunityNetwork> cn_full;
  std::optional<CommunityNetwork> cn_filtered;
  std::optional<CentralityReport> centrality;
  RunManifest manifest;
};

std::string rel(const Run& r, const std::string& name) {
  return (r.dir / name).string();
}

void record_output(Run& r, StageRecord& stage, const std::string& name) {
  const std::string content = read_text_file(rel(r, name));
  stage.outputs.emplace_back(name, hex64(fnv1a64(content)));
}

void record_external(StageRecord& stage, const std::string& path) {
  const std::string content = read_text_file(path);
  stage.outputs.emplace_back(path, hex64(fnv1a64(content)));
}

MacroSector drop_sector_of(const PipelineConfig& cfg) {
  auto s = macro_sector_from_name(cfg.drop_sector);
  if (!s) throw ValidationError("unknown sector: " + cfg.drop_sector);
  return *s;
}

void stage_load(Run& r, StageRecord& stage) {
  const PipelineConfig& cfg = r.cfg;
  if (!cfg.sector_map_path.empty()) {
    r.sectors = SectorMap::from_json(read_text_file(cfg.sector_map_path));
    record_external(stage, cfg.sector_map_path);
  }
  BuildOptions opts;
  opts.share_policy = cfg.share_policy;
  BuildStats stats;
  if (cfg.synthetic) {
    SyntheticSpec spec = *cfg.synthetic;
    spec.seed = derive_seed(cfg.seed, "synthetic");
    r.raw = generate_synthetic(spec);
    write_nodes_csv(*r.raw, rel(r, "nodes.csv"));
    write_edges_csv(*r.raw, rel(r, "edges.csv"));
    record_output(r, stage, "nodes.csv");
    record_output(r, stage, "edges.csv");
    stage.note = "synthetic input";
  } else {
    r.raw = load_graph_csv(cfg.nodes_path, cfg.edges_path, opts, &stats);
    record_external(stage, cfg.nodes_path);
    record_external(stage, cfg.edges_path);
    if (stats.merged_parallel_edges > 0)
      stage.note = std::to_string(stats.merged_parallel_edges) +
                   " parallel edges merged";
  }
}

void stage_extract(Run& r, StageRecord& stage) {
  const PipelineConfig& cfg = r.cfg;
  std::string note;
  if (!cfg.roots.empty()) {
    r.extracted = snowball_extract(*r.raw, std::span<const std::string>(cfg.roots),
                                   true);
    note = std::to_string(cfg.roots.size()) + " explicit roots";
  } else {
    const TncDetection det = detect_tncs(*r.raw, cfg.tnc_threshold);
    if (det.tncs.empty()) {
      r.extracted = *r.raw;
      note = "no transnational roots found, using the full graph";
    } else {
      r.extracted = snowball_extract(
          *r.raw, std::span<const std::uint32_t>(det.tncs), true);
      note = std::to_string(det.tncs.size()) + " detected roots";
      if (det.skipped_missing_country > 0)
        note += ", " + std::to_string(det.skipped_missing_country) +
                " nodes without country skipped";
    }
  }
  write_nodes_csv(*r.extracted, rel(r, "extracted.nodes.csv"));
  write_edges_csv(*r.extracted, rel(r, "extracted.edges.csv"));
  const std::string info = std::string("{\"n_nodes\":") +
      std::to_string(r.extracted->node_count()) + ",\"n_links\":" +
      std::to_string(r.extracted->edge_count()) + ",\"note\":\"" +
      json_escape(note) + "\"}";
  write_text_file(rel(r, "extract.json"), info);
  record_output(r, stage, "extracted.nodes.csv");
  record_output(r, stage, "extracted.edges.csv");
  record_output(r, stage, "extract.json");
  stage.note = note;
}

void stage_components(Run& r, StageRecord& stage) {
  const OwnershipGraph& g = *r.extracted;
  const auto comps = weakly_connected_components(g);
  std::vector<std::uint64_t> sizes;
  sizes.reserve(comps.size());
  for (const auto& c : comps) sizes.push_back(c.size());

  std::string fit_json = "null";
  std::string note;
  if (!sizes.empty()) {
    const auto points = ccdf(sizes);
    write_ccdf_csv(rel(r, "component_sizes.csv"), points);
    // Fit excludes the largest component; its size is off-trend by design.
    std::vector<std::uint64_t> tail(sizes.begin() + 1, sizes.end());
    try {
      const PowerLawFit fit = fit_power_law(tail);
      fit_json = std::string("{\"exponent\":") + format_number(fit.exponent) +
                 ",\"xmin\":" + std::to_string(fit.xmin) +
                 ",\"n_tail\":" + std::to_string(fit.n_tail) + "}";
    } catch (const ValidationError& e) {
      note = std::string("power-law fit skipped: ") + e.what();
    }
  } else {
    write_text_file(rel(r, "component_sizes.csv"), "x,ccdf\n");
    note = "empty graph";
  }

  std::string out = "{";
  out += "\"n_nodes\":" + std::to_string(g.node_count());
  out += ",\"n_links\":" + std::to_string(g.edge_count());
  out += ",\"density\":" +
         (g.node_count() >= 2 ? format_number(link_density(g)) : std::string("0"));
  out += ",\"n_components\":" + std::to_string(comps.size());
  out += ",\"lcc_size\":" +
         std::to_string(comps.empty() ? 0 : comps.front().size());
  out += ",\"component_size_fit\":" + fit_json;
  out += "}";
  write_text_file(rel(r, "structure.json"), out);
  record_output(r, stage, "component_sizes.csv");
  record_output(r, stage, "structure.json");
  stage.note = note;

  if (r.cfg.restrict_to_lcc && !comps.empty() &&
      comps.front().size() < g.node_count()) {
    GraphBuilder b;
    std::vector<bool> keep(g.node_count(), false);
    for (std::uint32_t u : comps.front()) keep[u] = true;
    for (std::uint32_t u = 0; u < g.node_count(); ++u)
      if (keep[u]) b.add_node(g.node(u));
    for (const auto& e : g.edges())
      if (keep[e.src] && keep[e.dst])
        b.add_edge(g.node(e.src).id, g.node(e.dst).id, e.share);
    r.work = b.build();
  } else {
    r.work = g;
  }
}

void stage_communities(Run& r, StageRecord& stage) {
  r.view = ModularityView::from_graph(*r.work);
  if (r.view->link_count() == 0)
    throw ValidationError("community detection needs at least one link");
  r.hp = louvain(*r.view, derive_seed(r.cfg.seed, "louvain"));
  write_stage_log_csv(rel(r, "stage_log.csv"), *r.hp);
  write_membership_csv(rel(r, "membership.csv"), *r.work, *r.hp);

  // Top communities for the table-shaped outputs: size desc, id asc.
  const auto sizes = community_sizes(r.hp->final_level());
  std::vector<std::uint32_t> order;
  for (std::uint32_t c = 0; c < sizes.size(); ++c)
    if (sizes[c] > 0) order.push_back(c);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
    return a < b;
  });
  if (order.size() > r.cfg.top_k_table) order.resize(r.cfg.top_k_table);
  r.table_communities.clear();
  for (std::uint32_t c : order) r.table_communities.emplace_back(c, sizes[c]);

  write_subcommunities_csv(rel(r, "subcommunities.csv"), *r.hp,
                           r.table_communities);
  record_output(r, stage, "stage_log.csv");
  record_output(r, stage, "membership.csv");
  record_output(r, stage, "subcommunities.csv");
  stage.note = std::to_string(r.hp->final_community_count()) +
               " communities in " +
               std::to_string(r.hp->levels.size() - 1) + " levels";
}

void stage_ensemble(Run& r, StageRecord& stage) {
  RewireConfig cfg = r.cfg.ensemble;
  cfg.base_seed = derive_seed(r.cfg.seed, "rewire");
  // Same detection seed as the communities stage, so the empirical
  // modularity here equals the stage log's final value.
  const EnsembleSummary s = ensemble_compare(
      *r.work, cfg, r.cfg.workers, derive_seed(r.cfg.seed, "louvain"));
  write_ensemble_json(rel(r, "ensemble.json"), s, cfg);
  record_output(r, stage, "ensemble.json");

  std::vector<std::uint64_t> emp(s.empirical_sizes.begin(),
                                 s.empirical_sizes.end());
  const auto emp_points = ccdf(emp);
  write_ccdf_csv(rel(r, "community_sizes_empirical.csv"), emp_points);
  record_output(r, stage, "community_sizes_empirical.csv");
  for (std::size_t i = 0; i < s.realizations.size(); ++i) {
    std::vector<std::uint64_t> v(s.realizations[i].community_sizes.begin(),
                                 s.realizations[i].community_sizes.end());
    char name[64];
    std::snprintf(name, sizeof name, "community_sizes_rewired_%02zu.csv", i);
    const auto points = ccdf(v);
    write_ccdf_csv(rel(r, name), points);
    record_output(r, stage, name);
  }
  stage.note = "z = " + format_number(s.z);
}

void stage_characterize(Run& r, StageRecord& stage) {
  const OwnershipGraph& g = *r.work;
  const Partition& part = r.hp->final_level();
  const auto sizes = community_sizes(part);

  // Communities at or above the size floor, rank order.
  std::vector<std::uint32_t> tested;
  for (std::uint32_t c = 0; c < sizes.size(); ++c)
    if (sizes[c] >= r.cfg.min_community_size && sizes[c] > 0)
      tested.push_back(c);
  std::sort(tested.begin(), tested.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
              return a < b;
            });

  std::vector<std::vector<std::uint32_t>> members(sizes.size());
  for (std::uint32_t u = 0; u < part.size(); ++u)
    members[part[u]].push_back(u);

  std::vector<CommunityProfile> profiles;
  profiles.reserve(tested.size());
  for (std::uint32_t c : tested)
    profiles.push_back(profile(g, members[c], c, r.sectors));
  write_profiles_csv(rel(r, "profiles.csv"), profiles);
  write_scatter_csv(rel(r, "scatter.csv"), profiles);

  std::vector<std::pair<std::uint32_t, std::size_t>> tested_sizes;
  tested_sizes.reserve(tested.size());
  for (std::uint32_t c : tested) tested_sizes.emplace_back(c, sizes[c]);

  std::string rates = "{";
  for (Attribute attr : {Attribute::kCountry, Attribute::kSector}) {
    const bool country = attr == Attribute::kCountry;
    OverExpressionReport rep;
    std::string note;
    if (!tested.empty()) {
      try {
        rep = over_expression(g, part, attr, r.cfg.alpha,
                              std::optional(tested), r.sectors);
      } catch (const ValidationError& e) {
        note = e.what();
      }
    }
    const std::string name = country ? "over_expression_country.csv"
                                     : "over_expression_sector.csv";
    write_over_expression_csv(rel(r, name), rep, tested_sizes);
    record_output(r, stage, name);
    if (!country) rates += ",";
    rates += std::string("\"") + (country ? "country" : "sector") +
             "\":{\"n_tests\":" + std::to_string(rep.n_tests) +
             ",\"rate\":" + format_number(over_expression_rate(rep)) + "}";
  }
  rates += ",\"n_profiled\":" + std::to_string(profiles.size()) + "}";
  write_text_file(rel(r, "characterize.json"), rates);
  record_output(r, stage, "profiles.csv");
  record_output(r, stage, "scatter.csv");
  record_output(r, stage, "characterize.json");
  stage.note = std::to_string(profiles.size()) + " communities of size >= " +
               std::to_string(r.cfg.min_community_size);
}

void stage_aggregate(Run& r, StageRecord& stage) {
  const OwnershipGraph& g = *r.work;
  const Partition& part = r.hp->final_level();
  r.cn_full = aggregate(g, part, r.cfg.top_k_table);

  const CommunityNetwork* filtered = nullptr;
  if (r.cfg.drop_sector != "none") {
    const OwnershipGraph f = remove_sector(g, drop_sector_of(r.cfg), r.sectors);
    const Partition fpart = carry_partition(g, part, f);
    r.cn_filtered = aggregate_for(f, fpart, r.cn_full->community_ids);
    filtered = &*r.cn_filtered;
  }
  write_community_stats_csv(rel(r, "community_stats.csv"), *r.cn_full,
                            filtered);
  write_aggregate_matrix_csv(rel(r, "aggregate_matrix.csv"), *r.cn_full,
                             filtered);
  record_output(r, stage, "community_stats.csv");
  record_output(r, stage, "aggregate_matrix.csv");
  stage.note = std::to_string(r.cn_full->size()) + " communities aggregated";
}

void stage_debtrank_full(Run& r, StageRecord& stage) {
  std::optional<MacroSector> drop;
  if (r.cfg.drop_sector != "none") drop = drop_sector_of(r.cfg);
  r.centrality = centrality_report(*r.work, r.hp->final_level(),
                                   r.cfg.top_k_debtrank, drop,
                                   r.cfg.uniform_values, r.cfg.beta,
                                   r.cfg.psi, r.sectors);
  write_centrality_csv(rel(r, "centrality_full.csv"), r.centrality->full);
  write_radial_layout_json(rel(r, "radial_full.json"), r.centrality->full);
  write_text_file(rel(r, "topology_full.json"),
                  topology_json(r.centrality->full.topology));
  record_output(r, stage, "centrality_full.csv");
  record_output(r, stage, "radial_full.json");
  record_output(r, stage, "topology_full.json");
  stage.note =
      std::to_string(r.centrality->full.rows.size()) + " communities seeded";
}

void stage_debtrank_filtered(Run& r, StageRecord& stage) {
  if (!r.centrality->filtered) {
    stage.status = "skipped";
    stage.note = "drop_sector is none";
    return;
  }
  const CentralityVariant& v = *r.centrality->filtered;
  write_centrality_csv(rel(r, "centrality_filtered.csv"), v);
  write_radial_layout_json(rel(r, "radial_filtered.json"), v);
  write_text_file(rel(r, "topology_filtered.json"),
                  topology_json(v.topology));
  record_output(r, stage, "centrality_filtered.csv");
  record_output(r, stage, "radial_filtered.json");
  record_output(r, stage, "topology_filtered.json");

  double full_mean = 0, filtered_mean = 0;
  for (const auto& row : r.centrality->full.rows) full_mean += row.r;
  for (const auto& row : v.rows) filtered_mean += row.r;
  if (!v.rows.empty()) {
    full_mean /= static_cast<double>(r.centrality->full.rows.size());
    filtered_mean /= static_cast<double>(v.rows.size());
  }
  stage.note = "mean R " + format_number(full_mean) + " -> " +
               format_number(filtered_mean);
}

}  // namespace

RunManifest run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.output_dir);

  Run r{cfg};
  r.dir = cfg.output_dir;
  r.manifest.config_hash = hex64(fnv1a64(cfg.canonical_json()));

  using StageFn = std::function<void(Run&, StageRecord&)>;
  const std::pair<const char*, StageFn> stages[] = {
      {kStageNames[0], stage_load},
      {kStageNames[1], stage_extract},
      {kStageNames[2], stage_components},
      {kStageNames[3], stage_communities},
      {kStageNames[4], stage_ensemble},
      {kStageNames[5], stage_characterize},
      {kStageNames[6], stage_aggregate},
      {kStageNames[7], stage_debtrank_full},
      {kStageNames[8], stage_debtrank_filtered},
  };

  r.manifest.ok = true;
  for (const auto& [name, fn] : stages) {
    StageRecord rec;
    rec.name = name;
    rec.status = "ok";
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(r, rec);
    } catch (const std::exception& e) {
      rec.status = "failed";
      rec.note = e.what();
      r.manifest.ok = false;
      r.manifest.error = e.what();
      r.manifest.failed_stage = name;
    }
    const auto t1 = std::chrono::steady_clock::now();
    rec.wall_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    r.manifest.stages.push_back(std::move(rec));
    if (!r.manifest.ok) break;
  }

  write_text_file((r.dir / "manifest.json").string(), r.manifest.to_json());
  if (r.manifest.ok)
    write_text_file((r.dir / "report.md").string(),
                    emit_report(cfg.output_dir));
  return r.manifest;
}

namespace {

// ---- report rendering ----

std::vector<std::vector<std::string>> read_table(const fs::path& p) {
  if (!fs::exists(p)) return {};
  return read_csv(p.string());
}

// Markdown table from CSV rows (first row = header).
std::string md_table(const std::vector<std::vector<std::string>>& rows,
                     std::size_t max_rows = 0) {
  if (rows.empty()) return "(no data)\n";
  std::string out = "|";
  for (const auto& h : rows[0]) out += " " + h + " |";
  out += "\n|";
  for (std::size_t i = 0; i < rows[0].size(); ++i) out += " --- |";
  out += "\n";
  std::size_t limit = rows.size();
  if (max_rows > 0 && max_rows + 1 < limit) limit = max_rows + 1;
  for (std::size_t i = 1; i < limit; ++i) {
    out += "|";
    for (const auto& cell : rows[i]) out += " " + cell + " |";
    out += "\n";
  }
  if (limit < rows.size())
    out += "\n(" + std::to_string(rows.size() - limit) + " more rows in the data file)\n";
  return out;
}

std::string get_json_field(const json& j, const char* key) {
  if (!j.contains(key)) return "";
  const auto& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return format_number(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

}  // namespace

std::string emit_report(const std::string& output_dir) {
  const fs::path dir(output_dir);
  json manifest;
  try {
    manifest = json::parse(read_text_file((dir / "manifest.json").string()));
  } catch (const std::exception&) {
    throw ValidationError("no readable manifest.json in " + output_dir);
  }

  std::string out = "# Ownership network analysis\n\n";
  out += "Toolkit " + get_json_field(manifest, "version") + ", configuration " +
         get_json_field(manifest, "config_hash") + ".\n\n";

  // Structure.
  if (fs::exists(dir / "structure.json")) {
    const json s = json::parse(read_text_file((dir / "structure.json").string()));
    out += "## Network structure\n\n";
    out += "Extracted network: " + get_json_field(s, "n_nodes") + " nodes, " +
           get_json_field(s, "n_links") + " links, density " +
           get_json_field(s, "density") + ". " +
           get_json_field(s, "n_components") +
           " weakly connected components; the largest holds " +
           get_json_field(s, "lcc_size") + " nodes.\n\n";
    if (s.contains("component_size_fit") && !s["component_size_fit"].is_null()) {
      const json& f = s["component_size_fit"];
      out += "Component-size tail (largest component excluded): power-law "
             "exponent " + get_json_field(f, "exponent") + " (xmin " +
             get_json_field(f, "xmin") + ", " + get_json_field(f, "n_tail") +
             " tail points).\n\n";
    }
    out += "Component-size distribution data: `component_sizes.csv`.\n\n";
  }

  // Communities.
  out += "## Community detection\n\n";
  out += md_table(read_table(dir / "stage_log.csv"));
  out += "\nPer-node memberships: `membership.csv`.\n\n";

  // Ensemble.
  if (fs::exists(dir / "ensemble.json")) {
    const json e = json::parse(read_text_file((dir / "ensemble.json").string()));
    out += "## Null-model comparison\n\n";
    out += "Empirical modularity " +
           get_json_field(e.at("empirical"), "modularity") + " vs rewired ensemble " +
           get_json_field(e.at("ensemble"), "mean_modularity") + " +/- " +
           get_json_field(e.at("ensemble"), "std_modularity") + " over " +
           get_json_field(e, "n_realizations") + " realizations (z = " +
           get_json_field(e, "z") + ").\n\n";
    out += "Community-size distributions: `community_sizes_empirical.csv` "
           "and `community_sizes_rewired_*.csv`.\n\n";
  }

  // Characterization.
  out += "## Community characterization\n\n";
  const auto profiles = read_table(dir / "profiles.csv");
  if (profiles.size() <= 1) {
    out += "No communities at or above the configured minimum size.\n\n";
  } else {
    out += md_table(profiles, 8);
    out += "\nOver-expressed countries:\n\n";
    out += md_table(read_table(dir / "over_expression_country.csv"), 8);
    out += "\nOver-expressed sectors:\n\n";
    out += md_table(read_table(dir / "over_expression_sector.csv"), 8);
    out += "\nDominance scatter data: `scatter.csv`.\n\n";
  }

  // Sub-communities.
  const auto subs = read_table(dir / "subcommunities.csv");
  if (subs.size() > 1) {
    out += "## Sub-community structure\n\n";
    out += md_table(subs);
    out += "\n";
  }

  // Community network.
  const auto stats = read_table(dir / "community_stats.csv");
  if (stats.size() > 1) {
    out += "## Community network\n\n";
    out += md_table(stats);
    out += "\nRelation-count matrix (start x end";
    const auto matrix = read_table(dir / "aggregate_matrix.csv");
    const bool has_filtered = !matrix.empty() && matrix[0].size() == 4;
    if (has_filtered) out += "; filtered count with full count in parentheses";
    out += "):\n\n";
    if (!matrix.empty()) {
      // Long form back into a square table.
      std::vector<std::string> ids;
      for (std::size_t i = 1; i < matrix.size(); ++i) {
        const std::string& id = matrix[i][0];
        if (std::find(ids.begin(), ids.end(), id) == ids.end())
          ids.push_back(id);
      }
      std::vector<std::vector<std::string>> grid;
      grid.push_back({"start \\ end"});
      for (const auto& id : ids) grid[0].push_back(id);
      for (std::size_t a = 0; a < ids.size(); ++a) {
        std::vector<std::string> row{ids[a]};
        for (std::size_t b = 0; b < ids.size(); ++b) {
          const auto& cells = matrix[1 + a * ids.size() + b];
          row.push_back(has_filtered ? cells[3] + " (" + cells[2] + ")"
                                     : cells[2]);
        }
        grid.push_back(std::move(row));
      }
      out += md_table(grid);
    }
    out += "\n";
  }

  // Topology and centrality.
  for (const bool filtered : {false, true}) {
    const std::string tag = filtered ? "filtered" : "full";
    const fs::path topo = dir / ("topology_" + tag + ".json");
    const fs::path cent = dir / ("centrality_" + tag + ".csv");
    if (!fs::exists(topo) && !fs::exists(cent)) continue;
    out += filtered ? "## Centrality without the dropped sector\n\n"
                    : "## Centrality\n\n";
    if (fs::exists(topo)) {
      const json t = json::parse(read_text_file(topo.string()));
      const json& bt = t.at("bow_tie");
      out += "Community-network topology: " + get_json_field(t, "n_nodes") +
             " nodes, " + get_json_field(t, "n_links") + " links, density " +
             get_json_field(t, "density") + "; bow-tie " +
             get_json_field(bt, "lscc") + " LSCC / " + get_json_field(bt, "in") +
             " IN / " + get_json_field(bt, "out") + " OUT / " +
             get_json_field(bt, "other") + " other.\n\n";
    }
    if (fs::exists(cent)) {
      out += md_table(read_table(cent), 10);
      out += "\nRadial layout data: `radial_" + tag + ".json`.\n\n";
    }
  }

  out += "## Data files\n\n";
  out += "Distribution data: `component_sizes.csv`, "
         "`community_sizes_empirical.csv`, `community_sizes_rewired_*.csv`. "
         "Scatter data: `scatter.csv`. Layout data: `radial_full.json`";
  if (fs::exists(dir / "radial_filtered.json")) out += ", `radial_filtered.json`";
  out += ". Stage digests: `manifest.json`.\n";
  return out;
}

}  // namespace ownet
