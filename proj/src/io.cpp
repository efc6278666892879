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

#include "ownet/io.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdio>
#include <numbers>
#include <set>

#include "ownet/csv.hpp"
#include "ownet/error.hpp"
#include "ownet/util.hpp"

namespace ownet {

namespace {

const std::set<std::string>& fiscal_paradises() {
  static const std::set<std::string> s = {
      "AD", "AG", "AI", "AN", "BB", "BH", "BM", "BS", "BZ", "CK",
      "CW", "CY", "GD", "GG", "GI", "IM", "JE", "KN", "KY", "LB",
      "LC", "LI", "LR", "LU", "MC", "MH", "MS", "MT", "MU", "NR",
      "NU", "PA", "SC", "SM", "VC", "VG", "VU", "WS"};
  return s;
}

const std::set<std::string>& europe() {
  static const std::set<std::string> s = {
      "AL", "AT", "BA", "BE", "BG", "BY", "CH", "CZ", "DE", "DK",
      "EE", "ES", "FI", "FR", "GB", "GR", "HR", "HU", "IE", "IS",
      "IT", "LT", "LV", "MD", "ME", "MK", "NL", "NO", "PL", "PT",
      "RO", "RS", "RU", "SE", "SI", "SK", "UA"};
  return s;
}

const std::set<std::string>& north_america() {
  static const std::set<std::string> s = {"CA", "GL", "MX", "US"};
  return s;
}

const std::set<std::string>& asia() {
  static const std::set<std::string> s = {
      "AE", "AF", "AM", "AZ", "BD", "BN", "BT", "CN", "GE", "HK",
      "ID", "IL", "IN", "IQ", "IR", "JO", "JP", "KG", "KH", "KP",
      "KR", "KW", "KZ", "LA", "LK", "MM", "MN", "MO", "MV", "MY",
      "NP", "OM", "PH", "PK", "QA", "SA", "SG", "SY", "TH", "TJ",
      "TL", "TM", "TR", "TW", "UZ", "VN", "YE"};
  return s;
}

std::string num(double x) { return format_number(x); }

template <class T>
  requires std::integral<T>
std::string num(T x) {
  return std::to_string(x);
}

// A JSON number token; non-finite values become quoted strings so the file
// stays valid JSON.
std::string json_num(double x) {
  if (std::isfinite(x)) return format_number(x);
  if (std::isnan(x)) return "\"nan\"";
  return x > 0 ? "\"inf\"" : "\"-inf\"";
}

std::string json_str(std::string_view s) {
  return "\"" + json_escape(s) + "\"";
}

double internal_density(std::size_t n_firms, std::uint64_t internal) {
  if (n_firms < 2) return 0.0;
  return static_cast<double>(internal) /
         (static_cast<double>(n_firms) * static_cast<double>(n_firms - 1));
}

}  // namespace

std::string region_key(const std::string& country) {
  if (fiscal_paradises().count(country)) return "FP";
  if (europe().count(country)) return "EU";
  if (north_america().count(country)) return "NA";
  if (asia().count(country)) return "AS";
  return "OT";
}

std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x",
                        static_cast<unsigned>(static_cast<unsigned char>(c)));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void write_stage_log_csv(const std::string& path,
                         const HierarchicalPartition& hp) {
  std::string out = "level,n_nodes,n_links,modularity\n";
  for (const auto& row : hp.stage_log) {
    out += num(row.level) + "," + num(row.n_nodes) + "," + num(row.n_links) +
           "," + num(row.modularity) + "\n";
  }
  write_text_file(path, out);
}

void write_membership_csv(const std::string& path, const OwnershipGraph& g,
                          const HierarchicalPartition& hp) {
  if (hp.levels.empty()) throw ValidationError("empty hierarchy");
  if (hp.levels[0].size() != g.node_count())
    throw ValidationError("hierarchy does not cover the graph");
  // Levels 1..last carry information; level 0 is always all-singletons.
  std::size_t first = hp.levels.size() > 1 ? 1 : 0;
  std::string out = "node_id";
  for (std::size_t t = first; t < hp.levels.size(); ++t) {
    if (t + 1 == hp.levels.size())
      out += ",final_id";
    else
      out += ",level" + std::to_string(t) + "_id";
  }
  out += "\n";
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    out += csv_escape(g.node(u).id);
    for (std::size_t t = first; t < hp.levels.size(); ++t)
      out += "," + num(hp.levels[t][u]);
    out += "\n";
  }
  write_text_file(path, out);
}

void write_ccdf_csv(
    const std::string& path,
    std::span<const std::pair<std::uint64_t, double>> points) {
  std::string out = "x,ccdf\n";
  for (const auto& [x, p] : points) out += num(x) + "," + num(p) + "\n";
  write_text_file(path, out);
}

void write_profiles_csv(const std::string& path,
                        std::span<const CommunityProfile> profiles) {
  std::string out =
      "community_id,n_firms,herf_country,share_c1,c1,c2,"
      "herf_sector,share_s1,s1,s2\n";
  for (const auto& p : profiles) {
    out += num(p.community) + "," + num(p.n_firms) + ",";
    if (p.has_country)
      out += num(p.herf_country) + "," + num(p.share_c1) + "," +
             csv_escape(p.c1) + "," + csv_escape(p.c2);
    else
      out += ",,,";
    out += ",";
    if (p.has_sector)
      out += num(p.herf_sector) + "," + num(p.share_s1) + "," +
             csv_escape(p.s1) + "," + csv_escape(p.s2);
    else
      out += ",,,";
    out += "\n";
  }
  write_text_file(path, out);
}

void write_scatter_csv(const std::string& path,
                       std::span<const CommunityProfile> profiles) {
  std::string out = "community_id,size,share_s1,share_c1,region_color_key\n";
  for (const auto& p : profiles) {
    out += num(p.community) + "," + num(p.n_firms) + "," +
           num(p.has_sector ? p.share_s1 : 0.0) + "," +
           num(p.has_country ? p.share_c1 : 0.0) + "," +
           (p.has_country ? region_key(p.c1) : "OT") + "\n";
  }
  write_text_file(path, out);
}

void write_over_expression_csv(
    const std::string& path, const OverExpressionReport& report,
    std::span<const std::pair<std::uint32_t, std::size_t>> communities) {
  std::string out = "community_id,n_firms,over_expressed\n";
  for (const auto& [community, n_firms] : communities) {
    std::vector<const OverExpressionRow*> flagged;
    for (const auto& row : report.rows)
      if (row.community == community && row.over_expressed)
        flagged.push_back(&row);
    std::sort(flagged.begin(), flagged.end(),
              [](const OverExpressionRow* a, const OverExpressionRow* b) {
                if (a->p != b->p) return a->p < b->p;
                return a->value < b->value;
              });
    std::string listing;
    for (const auto* row : flagged) {
      if (!listing.empty()) listing += " ";
      listing += row->value + " (" + num(row->k) + "/" + num(row->big_k) + ")";
    }
    out += num(community) + "," + num(n_firms) + "," + csv_escape(listing) +
           "\n";
  }
  write_text_file(path, out);
}

void write_subcommunities_csv(
    const std::string& path, const HierarchicalPartition& hp,
    std::span<const std::pair<std::uint32_t, std::size_t>> communities) {
  std::string out =
      "community_id,n_firms,n_subcommunities,herf_subcommunity_size\n";
  for (const auto& [community, n_firms] : communities) {
    const SubcommunityBreakdown b = subcommunities(hp, community);
    out += num(community) + "," + num(n_firms) + "," +
           num(b.members.size()) + "," + num(b.herfindahl) + "\n";
  }
  write_text_file(path, out);
}

void write_community_stats_csv(const std::string& path,
                               const CommunityNetwork& full,
                               const CommunityNetwork* filtered) {
  if (filtered && filtered->community_ids != full.community_ids)
    throw ValidationError("filtered network covers different communities");
  std::string out = "community_id,n_firms,n_relations,density";
  if (filtered) out += ",n_firms_filtered,n_relations_filtered,density_filtered";
  out += "\n";
  for (std::size_t i = 0; i < full.size(); ++i) {
    out += num(full.community_ids[i]) + "," + num(full.sizes[i]) + "," +
           num(full.counts[i][i]) + "," +
           num(internal_density(full.sizes[i], full.counts[i][i]));
    if (filtered)
      out += "," + num(filtered->sizes[i]) + "," +
             num(filtered->counts[i][i]) + "," +
             num(internal_density(filtered->sizes[i],
                                  filtered->counts[i][i]));
    out += "\n";
  }
  write_text_file(path, out);
}

void write_aggregate_matrix_csv(const std::string& path,
                                const CommunityNetwork& full,
                                const CommunityNetwork* filtered) {
  if (filtered && filtered->community_ids != full.community_ids)
    throw ValidationError("filtered network covers different communities");
  std::string out = "start_community,end_community,count";
  if (filtered) out += ",count_filtered";
  out += "\n";
  for (std::size_t i = 0; i < full.size(); ++i)
    for (std::size_t j = 0; j < full.size(); ++j) {
      out += num(full.community_ids[i]) + "," + num(full.community_ids[j]) +
             "," + num(full.counts[i][j]);
      if (filtered) out += "," + num(filtered->counts[i][j]);
      out += "\n";
    }
  write_text_file(path, out);
}

std::string topology_json(const CommnetTopology& t) {
  std::string out = "{";
  out += json_str("n_nodes") + ":" + num(t.n_nodes);
  out += "," + json_str("n_links") + ":" + num(t.n_links);
  out += "," + json_str("bow_tie") + ":{" + json_str("lscc") + ":" +
         num(t.n_lscc) + "," + json_str("in") + ":" + num(t.n_in) + "," +
         json_str("out") + ":" + num(t.n_out) + "," + json_str("other") +
         ":" + num(t.n_other) + "}";
  out += "," + json_str("degrees") + ":{" + json_str("mean_in") + ":" +
         json_num(t.degrees.mean_in) + "," + json_str("std_in") + ":" +
         json_num(t.degrees.std_in) + "," + json_str("max_in") + ":" +
         num(t.degrees.max_in) + "," + json_str("mean_out") + ":" +
         json_num(t.degrees.mean_out) + "," + json_str("std_out") + ":" +
         json_num(t.degrees.std_out) + "," + json_str("max_out") + ":" +
         num(t.degrees.max_out) + "}";
  out += "," + json_str("paths") + ":{" + json_str("max") + ":" +
         json_num(t.paths.max) + "," + json_str("mean") + ":" +
         json_num(t.paths.mean) + "," + json_str("std") + ":" +
         json_num(t.paths.stddev) + "," + json_str("pairs") + ":" +
         num(t.paths.pairs) + "," + json_str("has_pairs") + ":" +
         (t.paths.has_pairs ? "true" : "false") + "}";
  out += "," + json_str("density") + ":" + json_num(t.density);
  out += "}";
  return out;
}

void write_centrality_csv(const std::string& path,
                          const CentralityVariant& v) {
  std::string out = "community_id,R,size,country,sector,emptied\n";
  for (const auto& row : v.rows) {
    out += num(row.community) + "," + num(row.r) + "," + num(row.size) + "," +
           csv_escape(row.dominant_country) + "," +
           csv_escape(row.dominant_sector) + "," +
           (row.emptied ? "1" : "0") + "\n";
  }
  write_text_file(path, out);
}

void write_radial_layout_json(const std::string& path,
                              const CentralityVariant& v) {
  double max_r = 0;
  for (const auto& row : v.rows) max_r = std::max(max_r, row.r);
  const std::size_t k = v.rows.size();
  std::string out = "{";
  out += json_str("beta") + ":" + json_num(v.beta);
  out += "," + json_str("max_r") + ":" + json_num(max_r);
  out += "," + json_str("nodes") + ":[";
  for (std::size_t rank = 0; rank < k; ++rank) {
    const auto& row = v.rows[rank];
    const double angle = k > 0
        ? 2.0 * std::numbers::pi * static_cast<double>(rank) /
              static_cast<double>(k)
        : 0.0;
    const double radius = max_r > 0 ? 1.0 - row.r / max_r : 1.0;
    if (rank > 0) out += ",";
    out += "{" + json_str("community") + ":" + num(row.community);
    out += "," + json_str("rank") + ":" + num(rank);
    out += "," + json_str("angle") + ":" + json_num(angle);
    out += "," + json_str("radius") + ":" + json_num(radius);
    out += "," + json_str("r") + ":" + json_num(row.r);
    out += "," + json_str("size") + ":" + num(row.size);
    out += "," + json_str("country") + ":" + json_str(row.dominant_country);
    out += "," + json_str("sector") + ":" + json_str(row.dominant_sector);
    out += "," + json_str("emptied") + ":" + (row.emptied ? "true" : "false");
    out += "}";
  }
  out += "]}";
  write_text_file(path, out);
}

std::string ensemble_json(const EnsembleSummary& s, const RewireConfig& cfg) {
  std::string out = "{";
  out += json_str("n_realizations") + ":" + num(cfg.n_realizations);
  out += "," + json_str("swaps_per_edge") + ":" + num(cfg.n_swaps_per_edge);
  out += "," + json_str("base_seed") + ":" + num(cfg.base_seed);
  out += "," + json_str("empirical") + ":{" + json_str("modularity") + ":" +
         json_num(s.empirical_modularity) + "," + json_str("n_communities") +
         ":" + num(s.empirical_n_communities) + "}";
  out += "," + json_str("ensemble") + ":{" + json_str("mean_modularity") +
         ":" + json_num(s.mean_modularity) + "," +
         json_str("std_modularity") + ":" + json_num(s.std_modularity) + "}";
  out += "," + json_str("z") + ":" + json_num(s.z);
  out += "," + json_str("realizations") + ":[";
  for (std::size_t i = 0; i < s.realizations.size(); ++i) {
    if (i > 0) out += ",";
    out += "{" + json_str("modularity") + ":" +
           json_num(s.realizations[i].modularity) + "," +
           json_str("n_communities") + ":" +
           num(s.realizations[i].n_communities) + "}";
  }
  out += "]}";
  return out;
}

void write_ensemble_json(const std::string& path, const EnsembleSummary& s,
                         const RewireConfig& cfg) {
  write_text_file(path, ensemble_json(s, cfg));
}

}  // namespace ownet
