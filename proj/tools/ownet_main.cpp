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

// Command line front end. Every subcommand accepts --config FILE (JSON whose
// keys mirror the flag names with dashes as underscores); explicit flags win
// over config values, config values win over built-in defaults.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ownet.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitStage = 3;

int exit_code_of(ownet_status s) {
  switch (s) {
    case OWNET_OK:
      return kExitOk;
    case OWNET_ERROR_VALIDATION:
    case OWNET_ERROR_PARSE:
      return kExitValidation;
    default:
      return kExitStage;
  }
}

int report_error(ownet_status s) {
  std::cerr << "error: " << ownet_last_error() << "\n";
  return exit_code_of(s);
}

// Prints and releases a C-API string result.
void print_owned(char* s) {
  if (s == nullptr) return;
  std::cout << s << "\n";
  ownet_string_free(s);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("--config", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GraphHandle {
  ownet_graph* g = nullptr;
  ~GraphHandle() { ownet_graph_free(g); }
};

struct PartitionHandle {
  ownet_partition* p = nullptr;
  ~PartitionHandle() { ownet_partition_free(p); }
};

// Loads a graph or converts the failure into a process exit code.
int load_graph(const std::string& nodes, const std::string& edges, bool clamp,
               GraphHandle& out) {
  const ownet_status s =
      ownet_graph_load_csv(nodes.c_str(), edges.c_str(), clamp ? 1 : 0,
                           &out.g);
  return s == OWNET_OK ? kExitOk : report_error(s);
}

int load_partition(const GraphHandle& g, const std::string& membership,
                   PartitionHandle& out) {
  const ownet_status s =
      ownet_partition_load(g.g, membership.c_str(), &out.p);
  return s == OWNET_OK ? kExitOk : report_error(s);
}

std::optional<std::string> slurp_optional(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return read_file(path);
}

// Mandatory options may come from the config file, so they cannot be marked
// required at parse time; each runner checks them here instead.
int require_args(
    std::initializer_list<std::pair<const char*, const std::string*>> args) {
  for (const auto& [name, value] : args) {
    if (value->empty()) {
      std::cerr << "error: missing required option " << name
                << " (flag or config key)\n";
      return kExitValidation;
    }
  }
  return kExitOk;
}

// Config-over-default injection: assigns var from j[key] when present.
template <class T>
void from_config(const json& j, const char* key, T& var) {
  if (auto it = j.find(key); it != j.end()) var = it->get<T>();
}

// Applies "k=v" or "a.b=v" overrides onto a JSON object; the value is parsed
// as JSON when possible and kept as a string otherwise.
void apply_override(json& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw CLI::ValidationError("--set", "expected key=value, got " +
                                            assignment);
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;
  }
  json* node = &cfg;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(
        start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty())
      throw CLI::ValidationError("--set", "empty key segment in " + path);
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

struct SynthArgs {
  std::uint64_t n_nodes = 1000;
  std::uint32_t n_blocks = 4;
  double p_in = 0.05;
  double p_out = 0.002;
  double country_fidelity = 0.9;
  double sector_fidelity = 0.8;
  std::uint64_t seed = 0;
  std::string out_nodes, out_edges;
};

int run_synth(const SynthArgs& a) {
  if (int rc = require_args({{"--out-nodes", &a.out_nodes},
                             {"--out-edges", &a.out_edges}}))
    return rc;
  json spec = {{"n_nodes", a.n_nodes},
               {"n_blocks", a.n_blocks},
               {"p_in", a.p_in},
               {"p_out", a.p_out},
               {"country_fidelity", a.country_fidelity},
               {"sector_fidelity", a.sector_fidelity},
               {"seed", a.seed}};
  GraphHandle g;
  ownet_status s = ownet_graph_generate(spec.dump().c_str(), &g.g);
  if (s != OWNET_OK) return report_error(s);
  s = ownet_graph_save_csv(g.g, a.out_nodes.c_str(), a.out_edges.c_str());
  if (s != OWNET_OK) return report_error(s);
  char* info = nullptr;
  s = ownet_graph_info(g.g, &info);
  if (s != OWNET_OK) return report_error(s);
  print_owned(info);
  return kExitOk;
}

struct ExtractArgs {
  std::string nodes, edges;
  bool clamp = false;
  double threshold = 0.10;
  std::vector<std::string> roots;
  std::string roots_file;
  bool no_mark_roots = false;
  std::string out_nodes, out_edges;
};

int run_extract(const ExtractArgs& a) {
  if (int rc = require_args({{"--nodes", &a.nodes},
                             {"--edges", &a.edges},
                             {"--out-nodes", &a.out_nodes},
                             {"--out-edges", &a.out_edges}}))
    return rc;
  GraphHandle g;
  if (int rc = load_graph(a.nodes, a.edges, a.clamp, g)) return rc;

  std::vector<std::string> roots = a.roots;
  if (!a.roots_file.empty()) {
    std::ifstream in(a.roots_file);
    if (!in) {
      std::cerr << "error: cannot read " << a.roots_file << "\n";
      return kExitValidation;
    }
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) roots.push_back(line);
    }
  }
  std::size_t n_detected = 0;
  if (roots.empty()) {
    char* det = nullptr;
    const ownet_status s = ownet_detect_tncs(g.g, a.threshold, &det);
    if (s != OWNET_OK) return report_error(s);
    const json j = json::parse(det);
    ownet_string_free(det);
    roots = j.at("roots").get<std::vector<std::string>>();
    n_detected = roots.size();
  }

  std::vector<const char*> ptrs;
  ptrs.reserve(roots.size());
  for (const auto& r : roots) ptrs.push_back(r.c_str());

  GraphHandle sub;
  ownet_status s = ownet_snowball(g.g, ptrs.data(), ptrs.size(),
                                  a.no_mark_roots ? 0 : 1, &sub.g);
  if (s != OWNET_OK) return report_error(s);
  s = ownet_graph_save_csv(sub.g, a.out_nodes.c_str(), a.out_edges.c_str());
  if (s != OWNET_OK) return report_error(s);

  char* info = nullptr;
  s = ownet_graph_info(sub.g, &info);
  if (s != OWNET_OK) return report_error(s);
  json j = json::parse(info);
  ownet_string_free(info);
  j["n_roots"] = roots.size();
  j["roots_detected"] = n_detected > 0;
  std::cout << j.dump() << "\n";
  return kExitOk;
}

struct CommunitiesArgs {
  std::string nodes, edges;
  bool clamp = false;
  std::uint64_t seed = 0;
  std::string stage_log, membership;
};

int run_communities(const CommunitiesArgs& a) {
  if (int rc = require_args({{"--nodes", &a.nodes}, {"--edges", &a.edges}}))
    return rc;
  GraphHandle g;
  if (int rc = load_graph(a.nodes, a.edges, a.clamp, g)) return rc;
  PartitionHandle p;
  ownet_status s = ownet_louvain(g.g, a.seed, &p.p);
  if (s != OWNET_OK) return report_error(s);
  if (!a.stage_log.empty()) {
    s = ownet_partition_write_stage_log(p.p, a.stage_log.c_str());
    if (s != OWNET_OK) return report_error(s);
  }
  if (!a.membership.empty()) {
    s = ownet_partition_write_membership(p.p, g.g, a.membership.c_str());
    if (s != OWNET_OK) return report_error(s);
  }
  char* summary = nullptr;
  s = ownet_partition_summary(p.p, &summary);
  if (s != OWNET_OK) return report_error(s);
  print_owned(summary);
  return kExitOk;
}

struct RewireArgs {
  std::string nodes, edges;
  bool clamp = false;
  std::uint32_t realizations = 10;
  std::uint32_t swaps_per_edge = 10;
  std::uint64_t seed = 0;
  std::uint64_t max_reject_streak = 0;
  std::string out_prefix;
};

int run_rewire(const RewireArgs& a) {
  if (int rc = require_args({{"--nodes", &a.nodes}, {"--edges", &a.edges}}))
    return rc;
  GraphHandle g;
  if (int rc = load_graph(a.nodes, a.edges, a.clamp, g)) return rc;
  char* out = nullptr;
  const ownet_status s = ownet_ensemble_run(
      g.g, a.realizations, a.swaps_per_edge, a.seed, a.max_reject_streak,
      a.out_prefix.empty() ? nullptr : a.out_prefix.c_str(), &out);
  if (s != OWNET_OK) return report_error(s);
  print_owned(out);
  return kExitOk;
}

struct CharacterizeArgs {
  std::string nodes, edges;
  bool clamp = false;
  std::string membership;
  std::string attr = "country";
  double alpha = 0.01;
  std::uint64_t min_size = 5;
  std::string sector_map;
  std::string out_prefix;
};

int run_characterize(const CharacterizeArgs& a) {
  if (int rc = require_args({{"--nodes", &a.nodes},
                             {"--edges", &a.edges},
                             {"--membership", &a.membership}}))
    return rc;
  GraphHandle g;
  if (int rc = load_graph(a.nodes, a.edges, a.clamp, g)) return rc;
  PartitionHandle p;
  if (int rc = load_partition(g, a.membership, p)) return rc;
  const auto sector_map = slurp_optional(a.sector_map);
  char* out = nullptr;
  const ownet_status s = ownet_characterize_run(
      g.g, p.p, a.attr.c_str(), a.alpha, a.min_size,
      sector_map ? sector_map->c_str() : nullptr,
      a.out_prefix.empty() ? nullptr : a.out_prefix.c_str(), &out);
  if (s != OWNET_OK) return report_error(s);
  print_owned(out);
  return kExitOk;
}

struct AggregateArgs {
  std::string nodes, edges;
  bool clamp = false;
  std::string membership;
  std::uint32_t top_k = 8;
  std::string drop_sector;
  std::string sector_map;
  std::string out_prefix;
};

int run_aggregate(const AggregateArgs& a) {
  if (int rc = require_args({{"--nodes", &a.nodes},
                             {"--edges", &a.edges},
                             {"--membership", &a.membership},
                             {"--out-prefix", &a.out_prefix}}))
    return rc;
  GraphHandle g;
  if (int rc = load_graph(a.nodes, a.edges, a.clamp, g)) return rc;
  PartitionHandle p;
  if (int rc = load_partition(g, a.membership, p)) return rc;
  const auto sector_map = slurp_optional(a.sector_map);
  char* out = nullptr;
  const ownet_status s = ownet_aggregate_run(
      g.g, p.p, a.top_k,
      a.drop_sector.empty() ? nullptr : a.drop_sector.c_str(),
      sector_map ? sector_map->c_str() : nullptr, a.out_prefix.c_str(),
      &out);
  if (s != OWNET_OK) return report_error(s);
  print_owned(out);
  return kExitOk;
}

struct DebtrankArgs {
  std::string nodes, edges;
  bool clamp = false;
  std::string membership;
  std::uint32_t top_k = 50;
  std::string drop_sector;
  double beta = 0;  // <= 0 selects the community-count default
  bool uniform_values = false;
  double psi = 1.0;
  std::string sector_map;
  std::string out_prefix;
};

int run_debtrank(const DebtrankArgs& a) {
  if (int rc = require_args({{"--nodes", &a.nodes},
                             {"--edges", &a.edges},
                             {"--membership", &a.membership},
                             {"--out-prefix", &a.out_prefix}}))
    return rc;
  GraphHandle g;
  if (int rc = load_graph(a.nodes, a.edges, a.clamp, g)) return rc;
  PartitionHandle p;
  if (int rc = load_partition(g, a.membership, p)) return rc;
  const auto sector_map = slurp_optional(a.sector_map);
  char* out = nullptr;
  const ownet_status s = ownet_debtrank_run(
      g.g, p.p, a.top_k,
      a.drop_sector.empty() ? nullptr : a.drop_sector.c_str(), a.beta,
      a.uniform_values ? 1 : 0, a.psi,
      sector_map ? sector_map->c_str() : nullptr, a.out_prefix.c_str(),
      &out);
  if (s != OWNET_OK) return report_error(s);
  print_owned(out);
  return kExitOk;
}

struct PipelineArgs {
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::string output_dir;
  std::optional<unsigned> workers;
};

int run_pipeline_cmd(const PipelineArgs& a) {
  json cfg;
  try {
    cfg = json::parse(read_file(a.config_path));
  } catch (const json::exception& e) {
    std::cerr << "error: " << a.config_path << ": " << e.what() << "\n";
    return kExitValidation;
  }
  if (a.seed) cfg["seed"] = *a.seed;
  if (!a.output_dir.empty()) cfg["output_dir"] = a.output_dir;
  if (a.workers) cfg["workers"] = *a.workers;
  for (const auto& s : a.sets) apply_override(cfg, s);

  const std::string base_dir =
      std::filesystem::path(a.config_path).parent_path().string();
  char* manifest = nullptr;
  const ownet_status s = ownet_pipeline_run(
      cfg.dump().c_str(), base_dir.empty() ? nullptr : base_dir.c_str(),
      &manifest);
  if (manifest != nullptr) print_owned(manifest);
  if (s != OWNET_OK) {
    std::cerr << "error: " << ownet_last_error() << "\n";
    return exit_code_of(s);
  }
  return kExitOk;
}

struct ReportArgs {
  std::string output_dir;
  std::string out;
};

int run_report(const ReportArgs& a) {
  if (int rc = require_args({{"--output-dir", &a.output_dir}})) return rc;
  char* md = nullptr;
  const ownet_status s = ownet_report_emit(a.output_dir.c_str(), &md);
  if (s != OWNET_OK) return report_error(s);
  if (a.out.empty()) {
    std::cout << md;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    f << md;
    if (!f) {
      ownet_string_free(md);
      std::cerr << "error: cannot write " << a.out << "\n";
      return kExitStage;
    }
  }
  ownet_string_free(md);
  return kExitOk;
}

// Pre-scan for `--config FILE` after the subcommand so config values can be
// injected into the bound variables before CLI11 parses explicit flags.
json load_subcommand_config(int argc, char** argv) {
  for (int i = 2; i < argc; ++i) {
    const std::string arg = argv[i];
    std::string path;
    if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
    if (path.empty()) continue;
    const json j = json::parse(read_file(path));
    if (!j.is_object())
      throw CLI::ValidationError("--config", "config root must be an object");
    return j;
  }
  return json::object();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ownership network analysis toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ownet_version()));

  SynthArgs synth;
  ExtractArgs extract;
  CommunitiesArgs communities;
  RewireArgs rewire;
  CharacterizeArgs characterize;
  AggregateArgs aggregate;
  DebtrankArgs debtrank;
  PipelineArgs pipeline;
  ReportArgs report;

  std::string config_path_sink;
  std::map<std::string, std::function<void(const json&)>> appliers;
  std::map<std::string, std::function<int()>> runners;

  auto add_config_flag = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path_sink,
                    "JSON file with defaults for this subcommand");
  };

  {
    CLI::App* c = app.add_subcommand("synth", "Generate a planted-block "
                                              "synthetic ownership graph");
    add_config_flag(c);
    c->add_option("--n-nodes", synth.n_nodes, "Node count");
    c->add_option("--n-blocks", synth.n_blocks, "Planted block count");
    c->add_option("--p-in", synth.p_in, "Within-block link probability");
    c->add_option("--p-out", synth.p_out, "Between-block link probability");
    c->add_option("--country-fidelity", synth.country_fidelity,
                  "Probability a node keeps its block's home country");
    c->add_option("--sector-fidelity", synth.sector_fidelity,
                  "Probability a node keeps its block's home sector");
    c->add_option("--seed", synth.seed, "Generator seed");
    c->add_option("--out-nodes", synth.out_nodes, "Output node CSV");
    c->add_option("--out-edges", synth.out_edges, "Output edge CSV");
    appliers["synth"] = [&](const json& j) {
      from_config(j, "n_nodes", synth.n_nodes);
      from_config(j, "n_blocks", synth.n_blocks);
      from_config(j, "p_in", synth.p_in);
      from_config(j, "p_out", synth.p_out);
      from_config(j, "country_fidelity", synth.country_fidelity);
      from_config(j, "sector_fidelity", synth.sector_fidelity);
      from_config(j, "seed", synth.seed);
      from_config(j, "out_nodes", synth.out_nodes);
      from_config(j, "out_edges", synth.out_edges);
    };
    runners["synth"] = [&] { return run_synth(synth); };
  }
  {
    CLI::App* c = app.add_subcommand(
        "extract", "Snowball-extract the subgraph reachable from root firms");
    add_config_flag(c);
    c->add_option("--nodes", extract.nodes, "Node CSV");
    c->add_option("--edges", extract.edges, "Edge CSV");
    c->add_flag("--clamp", extract.clamp,
                "Repair share violations instead of rejecting the file");
    c->add_option("--threshold", extract.threshold,
                  "Cross-border share threshold for root detection");
    c->add_option("--root", extract.roots, "Root node id (repeatable)");
    c->add_option("--roots-file", extract.roots_file,
                  "File with one root id per line");
    c->add_flag("--no-mark-roots", extract.no_mark_roots,
                "Do not flag detected roots in the output node table");
    c->add_option("--out-nodes", extract.out_nodes, "Output node CSV");
    c->add_option("--out-edges", extract.out_edges, "Output edge CSV");
    appliers["extract"] = [&](const json& j) {
      from_config(j, "nodes", extract.nodes);
      from_config(j, "edges", extract.edges);
      from_config(j, "clamp", extract.clamp);
      from_config(j, "threshold", extract.threshold);
      from_config(j, "root", extract.roots);
      from_config(j, "roots_file", extract.roots_file);
      from_config(j, "no_mark_roots", extract.no_mark_roots);
      from_config(j, "out_nodes", extract.out_nodes);
      from_config(j, "out_edges", extract.out_edges);
    };
    runners["extract"] = [&] { return run_extract(extract); };
  }
  {
    CLI::App* c = app.add_subcommand(
        "communities", "Detect hierarchical communities by modularity");
    add_config_flag(c);
    c->add_option("--nodes", communities.nodes, "Node CSV");
    c->add_option("--edges", communities.edges, "Edge CSV");
    c->add_flag("--clamp", communities.clamp,
                "Repair share violations instead of rejecting the file");
    c->add_option("--seed", communities.seed, "Detection seed");
    c->add_option("--stage-log", communities.stage_log,
                  "Per-level summary CSV output");
    c->add_option("--membership", communities.membership,
                  "Per-node membership CSV output");
    appliers["communities"] = [&](const json& j) {
      from_config(j, "nodes", communities.nodes);
      from_config(j, "edges", communities.edges);
      from_config(j, "clamp", communities.clamp);
      from_config(j, "seed", communities.seed);
      from_config(j, "stage_log", communities.stage_log);
      from_config(j, "membership", communities.membership);
    };
    runners["communities"] = [&] { return run_communities(communities); };
  }
  {
    CLI::App* c = app.add_subcommand(
        "rewire", "Compare modularity against a degree-preserving ensemble");
    add_config_flag(c);
    c->add_option("--nodes", rewire.nodes, "Node CSV");
    c->add_option("--edges", rewire.edges, "Edge CSV");
    c->add_flag("--clamp", rewire.clamp,
                "Repair share violations instead of rejecting the file");
    c->add_option("--realizations", rewire.realizations,
                  "Number of rewired copies");
    c->add_option("--swaps-per-edge", rewire.swaps_per_edge,
                  "Accepted swaps per edge in each copy");
    c->add_option("--seed", rewire.seed, "Base seed");
    c->add_option("--max-reject-streak", rewire.max_reject_streak,
                  "Abort a realization after this many straight rejections");
    c->add_option("--out-prefix", rewire.out_prefix,
                  "Prefix for ensemble JSON and size-distribution CSVs");
    appliers["rewire"] = [&](const json& j) {
      from_config(j, "nodes", rewire.nodes);
      from_config(j, "edges", rewire.edges);
      from_config(j, "clamp", rewire.clamp);
      from_config(j, "realizations", rewire.realizations);
      from_config(j, "swaps_per_edge", rewire.swaps_per_edge);
      from_config(j, "seed", rewire.seed);
      from_config(j, "max_reject_streak", rewire.max_reject_streak);
      from_config(j, "out_prefix", rewire.out_prefix);
    };
    runners["rewire"] = [&] { return run_rewire(rewire); };
  }
  {
    CLI::App* c = app.add_subcommand(
        "characterize",
        "Profile communities by country and sector concentration");
    add_config_flag(c);
    c->add_option("--nodes", characterize.nodes, "Node CSV");
    c->add_option("--edges", characterize.edges, "Edge CSV");
    c->add_flag("--clamp", characterize.clamp,
                "Repair share violations instead of rejecting the file");
    c->add_option("--membership", characterize.membership,
                  "Membership CSV from `communities`");
    c->add_option("--attr", characterize.attr,
                  "Attribute to test: country or sector");
    c->add_option("--alpha", characterize.alpha,
                  "Significance level before correction");
    c->add_option("--min-size", characterize.min_size,
                  "Smallest community to profile");
    c->add_option("--sector-map", characterize.sector_map,
                  "JSON file mapping sector codes to macro sectors");
    c->add_option("--out-prefix", characterize.out_prefix,
                  "Prefix for profile, scatter and over-expression CSVs");
    appliers["characterize"] = [&](const json& j) {
      from_config(j, "nodes", characterize.nodes);
      from_config(j, "edges", characterize.edges);
      from_config(j, "clamp", characterize.clamp);
      from_config(j, "membership", characterize.membership);
      from_config(j, "attr", characterize.attr);
      from_config(j, "alpha", characterize.alpha);
      from_config(j, "min_size", characterize.min_size);
      from_config(j, "sector_map", characterize.sector_map);
      from_config(j, "out_prefix", characterize.out_prefix);
    };
    runners["characterize"] = [&] { return run_characterize(characterize); };
  }
  {
    CLI::App* c = app.add_subcommand(
        "aggregate", "Contract the graph to a community-level network");
    add_config_flag(c);
    c->add_option("--nodes", aggregate.nodes, "Node CSV");
    c->add_option("--edges", aggregate.edges, "Edge CSV");
    c->add_flag("--clamp", aggregate.clamp,
                "Repair share violations instead of rejecting the file");
    c->add_option("--membership", aggregate.membership,
                  "Membership CSV from `communities`");
    c->add_option("--top-k", aggregate.top_k,
                  "Number of largest communities to keep");
    c->add_option("--drop-sector", aggregate.drop_sector,
                  "Macro sector to remove in the filtered variant");
    c->add_option("--sector-map", aggregate.sector_map,
                  "JSON file mapping sector codes to macro sectors");
    c->add_option("--out-prefix", aggregate.out_prefix,
                  "Prefix for community stats and relation matrix CSVs");
    appliers["aggregate"] = [&](const json& j) {
      from_config(j, "nodes", aggregate.nodes);
      from_config(j, "edges", aggregate.edges);
      from_config(j, "clamp", aggregate.clamp);
      from_config(j, "membership", aggregate.membership);
      from_config(j, "top_k", aggregate.top_k);
      from_config(j, "drop_sector", aggregate.drop_sector);
      from_config(j, "sector_map", aggregate.sector_map);
      from_config(j, "out_prefix", aggregate.out_prefix);
    };
    runners["aggregate"] = [&] { return run_aggregate(aggregate); };
  }
  {
    CLI::App* c = app.add_subcommand(
        "debtrank", "Rank communities by distress propagation centrality");
    add_config_flag(c);
    c->add_option("--nodes", debtrank.nodes, "Node CSV");
    c->add_option("--edges", debtrank.edges, "Edge CSV");
    c->add_flag("--clamp", debtrank.clamp,
                "Repair share violations instead of rejecting the file");
    c->add_option("--membership", debtrank.membership,
                  "Membership CSV from `communities`");
    c->add_option("--top-k", debtrank.top_k,
                  "Number of largest communities to rank");
    c->add_option("--drop-sector", debtrank.drop_sector,
                  "Macro sector to remove in the filtered variant");
    c->add_option("--beta", debtrank.beta,
                  "Impact scale; <= 0 selects the community count");
    c->add_flag("--uniform-values", debtrank.uniform_values,
                "Weight communities equally instead of by size");
    c->add_option("--psi", debtrank.psi, "Initial distress in (0, 1]");
    c->add_option("--sector-map", debtrank.sector_map,
                  "JSON file mapping sector codes to macro sectors");
    c->add_option("--out-prefix", debtrank.out_prefix,
                  "Prefix for centrality, layout and topology outputs");
    appliers["debtrank"] = [&](const json& j) {
      from_config(j, "nodes", debtrank.nodes);
      from_config(j, "edges", debtrank.edges);
      from_config(j, "clamp", debtrank.clamp);
      from_config(j, "membership", debtrank.membership);
      from_config(j, "top_k", debtrank.top_k);
      from_config(j, "drop_sector", debtrank.drop_sector);
      from_config(j, "beta", debtrank.beta);
      from_config(j, "uniform_values", debtrank.uniform_values);
      from_config(j, "psi", debtrank.psi);
      from_config(j, "sector_map", debtrank.sector_map);
      from_config(j, "out_prefix", debtrank.out_prefix);
    };
    runners["debtrank"] = [&] { return run_debtrank(debtrank); };
  }
  {
    CLI::App* c = app.add_subcommand(
        "pipeline", "Run every analysis stage from one config file");
    c->add_option("--config", pipeline.config_path,
                  "Pipeline configuration JSON")
        ->required();  /* the config file is the payload here */
    c->add_option("--seed", pipeline.seed, "Override the config seed");
    c->add_option("--output-dir", pipeline.output_dir,
                  "Override the config output directory");
    c->add_option("--workers", pipeline.workers,
                  "Override the worker count");
    c->add_option("--set", pipeline.sets,
                  "Override any config key as key=value (repeatable; dotted "
                  "paths reach nested objects)");
    runners["pipeline"] = [&] { return run_pipeline_cmd(pipeline); };
  }
  {
    CLI::App* c = app.add_subcommand(
        "report", "Render a completed run directory as markdown");
    add_config_flag(c);
    c->add_option("--output-dir", report.output_dir,
                  "Run directory containing manifest.json");
    c->add_option("--out", report.out,
                  "Write the report here instead of stdout");
    appliers["report"] = [&](const json& j) {
      from_config(j, "output_dir", report.output_dir);
      from_config(j, "out", report.out);
    };
    runners["report"] = [&] { return run_report(report); };
  }

  try {
    if (argc >= 2 && appliers.count(argv[1]) > 0) {
      const json cfg = load_subcommand_config(argc, argv);
      if (!cfg.empty()) appliers[argv[1]](cfg);
    }
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  } catch (const json::exception& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  for (auto& [name, fn] : runners) {
    if (app.got_subcommand(name)) return fn();
  }
  return kExitValidation;
}
