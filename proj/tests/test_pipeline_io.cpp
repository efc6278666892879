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

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "ownet/csv.hpp"
#include "ownet/error.hpp"
#include "ownet/io.hpp"
#include "ownet/pipeline.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Scratch directory scoped to one test case.
struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("ownet_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

const char* kSmallSynthetic = R"({
  "synthetic": {"n_nodes": 300, "n_blocks": 3, "p_in": 0.08,
                "p_out": 0.004, "country_fidelity": 0.9,
                "sector_fidelity": 0.85, "seed": 0},
  "seed": 7,
  "output_dir": "OUT",
  "ensemble": {"realizations": 3, "swaps_per_edge": 3}
})";

std::string small_config(const std::string& out_dir) {
  std::string text = kSmallSynthetic;
  const auto pos = text.find("OUT");
  return text.replace(pos, 3, out_dir);
}

}  // namespace

TEST_CASE("region color keys") {
  CHECK(ownet::region_key("LU") == "FP");
  CHECK(ownet::region_key("KY") == "FP");
  CHECK(ownet::region_key("DE") == "EU");
  CHECK(ownet::region_key("GB") == "EU");
  CHECK(ownet::region_key("US") == "NA");
  CHECK(ownet::region_key("JP") == "AS");
  CHECK(ownet::region_key("ZA") == "OT");
  CHECK(ownet::region_key("??") == "OT");
  CHECK(ownet::region_key("") == "OT");
  // Fiscal paradise beats the geographic region.
  CHECK(ownet::region_key("CY") == "FP");
  CHECK(ownet::region_key("MT") == "FP");
}

TEST_CASE("json string escaping") {
  CHECK(ownet::json_escape("plain") == "plain");
  CHECK(ownet::json_escape("a\"b") == "a\\\"b");
  CHECK(ownet::json_escape("a\\b") == "a\\\\b");
  CHECK(ownet::json_escape("a\nb\tc") == "a\\nb\\tc");
  CHECK(ownet::json_escape(std::string_view("a\x01z", 3)) == "a\\u0001z");
}

TEST_CASE("stage log and membership files") {
  TempDir tmp;
  const auto g = fixtures::two_triangles();
  const auto view = ownet::ModularityView::from_graph(g);
  const auto hp = ownet::louvain(view, 3);

  ownet::write_stage_log_csv(tmp.file("stage_log.csv"), hp);
  const auto log = ownet::read_csv(tmp.file("stage_log.csv"));
  REQUIRE(log.size() == hp.stage_log.size() + 1);
  CHECK(log[0] == std::vector<std::string>{"level", "n_nodes", "n_links",
                                           "modularity"});
  CHECK(log[1][0] == "0");
  CHECK(log[1][1] == "6");  // all singletons

  ownet::write_membership_csv(tmp.file("membership.csv"), g, hp);
  const auto rows = ownet::read_csv(tmp.file("membership.csv"));
  REQUIRE(rows.size() == 7);
  REQUIRE(rows[0].size() >= 2);
  CHECK(rows[0][0] == "node_id");
  CHECK(rows[0].back() == "final_id");
  // Triangle mates share the final id, the two triangles differ.
  CHECK(rows[1].back() == rows[2].back());
  CHECK(rows[2].back() == rows[3].back());
  CHECK(rows[4].back() == rows[5].back());
  CHECK(rows[1].back() != rows[4].back());
}

TEST_CASE("ccdf file is verbatim") {
  TempDir tmp;
  const std::vector<std::pair<std::uint64_t, double>> pts = {
      {1, 1.0}, {2, 0.5}, {5, 0.25}};
  ownet::write_ccdf_csv(tmp.file("c.csv"), pts);
  CHECK(ownet::read_text_file(tmp.file("c.csv")) ==
        "x,ccdf\n1,1\n2,0.5\n5,0.25\n");
}

TEST_CASE("profile and scatter files") {
  TempDir tmp;
  ownet::CommunityProfile p;
  p.community = 4;
  p.n_firms = 10;
  p.has_country = true;
  p.herf_country = 0.52;
  p.share_c1 = 0.7;
  p.c1 = "US";
  p.c2 = "DE";
  p.has_sector = true;
  p.herf_sector = 0.5;
  p.share_s1 = 0.6;
  p.s1 = "manufacturing";
  p.s2 = "services";
  ownet::CommunityProfile bare;
  bare.community = 9;
  bare.n_firms = 3;
  const std::vector<ownet::CommunityProfile> profiles = {p, bare};

  ownet::write_profiles_csv(tmp.file("p.csv"), profiles);
  const auto rows = ownet::read_csv(tmp.file("p.csv"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][0] == "community_id");
  CHECK(rows[1] == std::vector<std::string>{"4", "10", "0.52", "0.7", "US",
                                            "DE", "0.5", "0.6",
                                            "manufacturing", "services"});
  CHECK(rows[2] == std::vector<std::string>{"9", "3", "", "", "", "", "", "",
                                            "", ""});

  ownet::write_scatter_csv(tmp.file("s.csv"), profiles);
  const auto sc = ownet::read_csv(tmp.file("s.csv"));
  REQUIRE(sc.size() == 3);
  CHECK(sc[0] == std::vector<std::string>{"community_id", "size", "share_s1",
                                          "share_c1", "region_color_key"});
  CHECK(sc[1] == std::vector<std::string>{"4", "10", "0.6", "0.7", "NA"});
  CHECK(sc[2] == std::vector<std::string>{"9", "3", "0", "0", "OT"});
}

TEST_CASE("over-expression file lists flagged values by significance") {
  TempDir tmp;
  ownet::OverExpressionReport rep;
  auto row = [&](std::uint32_t comm, const std::string& value, std::uint64_t k,
                 std::uint64_t big_k, double pval, bool flagged) {
    ownet::OverExpressionRow r;
    r.community = comm;
    r.value = value;
    r.k = k;
    r.big_k = big_k;
    r.p = pval;
    r.over_expressed = flagged;
    rep.rows.push_back(r);
  };
  row(1, "LU", 5, 9, 1e-6, true);
  row(1, "NL", 4, 20, 1e-4, true);
  row(1, "US", 1, 30, 0.9, false);
  row(2, "US", 2, 30, 0.4, false);
  const std::vector<std::pair<std::uint32_t, std::size_t>> communities = {
      {1, 12}, {2, 8}};
  ownet::write_over_expression_csv(tmp.file("o.csv"), rep, communities);
  const auto rows = ownet::read_csv(tmp.file("o.csv"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] ==
        std::vector<std::string>{"community_id", "n_firms", "over_expressed"});
  CHECK(rows[1] == std::vector<std::string>{"1", "12", "LU (5/9) NL (4/20)"});
  CHECK(rows[2] == std::vector<std::string>{"2", "8", ""});
}

TEST_CASE("community stats and aggregate matrix files") {
  TempDir tmp;
  ownet::CommunityNetwork full;
  full.community_ids = {3, 1};
  full.sizes = {4, 3};
  full.counts = {{6, 2}, {1, 3}};
  ownet::CommunityNetwork filt = full;
  filt.sizes = {3, 2};
  filt.counts = {{3, 1}, {0, 1}};

  ownet::write_community_stats_csv(tmp.file("cs.csv"), full, &filt);
  const auto rows = ownet::read_csv(tmp.file("cs.csv"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][0] == "community_id");
  CHECK(rows[0].size() == 7);
  // density = 6 / (4 * 3) = 0.5; filtered = 3 / (3 * 2) = 0.5.
  CHECK(rows[1] == std::vector<std::string>{"3", "4", "6", "0.5", "3", "3",
                                            "0.5"});
  CHECK(rows[2] == std::vector<std::string>{"1", "3", "3", "0.5", "2", "1",
                                            "0.5"});

  ownet::write_aggregate_matrix_csv(tmp.file("am.csv"), full, &filt);
  const auto mat = ownet::read_csv(tmp.file("am.csv"));
  REQUIRE(mat.size() == 5);
  CHECK(mat[0] == std::vector<std::string>{"start_community", "end_community",
                                           "count", "count_filtered"});
  CHECK(mat[1] == std::vector<std::string>{"3", "3", "6", "3"});
  CHECK(mat[2] == std::vector<std::string>{"3", "1", "2", "1"});
  CHECK(mat[3] == std::vector<std::string>{"1", "3", "1", "0"});
  CHECK(mat[4] == std::vector<std::string>{"1", "1", "3", "1"});

  ownet::CommunityNetwork other = filt;
  other.community_ids = {1, 3};
  CHECK_THROWS_AS(
      ownet::write_community_stats_csv(tmp.file("bad.csv"), full, &other),
      ownet::ValidationError);
}

TEST_CASE("topology and centrality serializations parse back") {
  TempDir tmp;
  const auto hub = fixtures::financial_hub();
  const auto rep = ownet::centrality_report(
      hub.g, hub.labels, 50, ownet::MacroSector::kFinancialIntermediaries);

  const json t = json::parse(ownet::topology_json(rep.full.topology));
  CHECK(t.at("n_nodes").get<int>() == 6);
  CHECK(t.at("bow_tie").at("lscc").get<int>() == 6);
  CHECK(t.at("paths").at("has_pairs").get<bool>());

  ownet::write_centrality_csv(tmp.file("c.csv"), rep.full);
  const auto rows = ownet::read_csv(tmp.file("c.csv"));
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"community_id", "R", "size",
                                            "country", "sector", "emptied"});
  CHECK(rows[1][2] == "60");
  CHECK(rows[1][5] == "0");

  ownet::write_radial_layout_json(tmp.file("r.json"), rep.full);
  const json radial = json::parse(ownet::read_text_file(tmp.file("r.json")));
  REQUIRE(radial.at("nodes").size() == 6);
  CHECK(radial.at("nodes")[0].at("angle").get<double>() == 0.0);
  const double max_r = radial.at("max_r").get<double>();
  for (const auto& node : radial.at("nodes")) {
    const double r = node.at("r").get<double>();
    const double radius = node.at("radius").get<double>();
    CHECK(radius == doctest::Approx(1.0 - r / max_r).epsilon(1e-9));
  }
}

TEST_CASE("pipeline config parsing and validation") {
  CHECK_THROWS_AS(
      (void)ownet::PipelineConfig::from_json("{nope", ""),
      ownet::ParseError);
  CHECK_THROWS_AS(
      (void)ownet::PipelineConfig::from_json(R"({"bogus_key": 1})", ""),
      ownet::ValidationError);
  CHECK_THROWS_WITH_AS(
      (void)ownet::PipelineConfig::from_json(R"({"bogus_key": 1})", ""),
      doctest::Contains("bogus_key"), ownet::ValidationError);

  // Missing seed, missing inputs, contradictions.
  auto cfg = ownet::PipelineConfig::from_json(
      R"({"output_dir": "/tmp/x"})", "");
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("seed"),
                       ownet::ValidationError);
  cfg = ownet::PipelineConfig::from_json(
      R"({"seed": 1, "output_dir": "/tmp/x"})", "");
  CHECK_THROWS_AS(cfg.validate(), ownet::ValidationError);

  // A named missing input file surfaces its resolved path.
  cfg = ownet::PipelineConfig::from_json(
      R"({"seed": 1, "output_dir": "out",
          "nodes": "no_such_nodes.csv", "edges": "no_such_edges.csv"})",
      "/nonexistent_base");
  CHECK_THROWS_WITH_AS(
      cfg.validate(),
      doctest::Contains("/nonexistent_base/no_such_nodes.csv"),
      ownet::ValidationError);

  // Relative paths resolve against the base directory.
  CHECK(cfg.nodes_path == "/nonexistent_base/no_such_nodes.csv");
  CHECK(cfg.output_dir == "/nonexistent_base/out");

  // Range checks.
  cfg = ownet::PipelineConfig::from_json(
      R"({"seed": 1, "output_dir": "/tmp/x",
          "synthetic": {"n_nodes": 10, "n_blocks": 2,
                        "p_in": 0.5, "p_out": 0.1},
          "psi": 2.0})",
      "");
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("psi"),
                       ownet::ValidationError);
  cfg = ownet::PipelineConfig::from_json(
      R"({"seed": 1, "output_dir": "/tmp/x",
          "synthetic": {"n_nodes": 10, "n_blocks": 2,
                        "p_in": 0.5, "p_out": 0.1},
          "drop_sector": "no-such-sector"})",
      "");
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("no-such-sector"),
                       ownet::ValidationError);

  // Canonical form is stable and carries defaults.
  cfg = ownet::PipelineConfig::from_json(
      R"({"seed": 1, "output_dir": "/tmp/x",
          "synthetic": {"n_nodes": 10, "n_blocks": 2,
                        "p_in": 0.5, "p_out": 0.1}})",
      "");
  const json canon = json::parse(cfg.canonical_json());
  CHECK(canon.at("tnc_threshold").get<double>() == 0.10);
  CHECK(canon.at("drop_sector").get<std::string>() ==
        "financial-intermediaries");
  CHECK(canon.at("beta").get<std::string>() == "auto");
  CHECK(cfg.canonical_json() == cfg.canonical_json());
}

TEST_CASE("pipeline runs every stage on a synthetic input") {
  TempDir tmp;
  const std::string out_dir = tmp.file("run");
  const auto cfg =
      ownet::PipelineConfig::from_json(small_config(out_dir), "");
  const auto manifest = ownet::run_pipeline(cfg);

  CHECK(manifest.ok);
  CHECK(manifest.error.empty());
  REQUIRE(manifest.stages.size() == 9);
  const std::vector<std::string> expected = {
      "load",      "extract",       "components",
      "communities", "ensemble",    "characterize",
      "aggregate", "debtrank_full", "debtrank_filtered"};
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(manifest.stages[i].name == expected[i]);
    CHECK(manifest.stages[i].status == "ok");
  }
  for (const char* name :
       {"manifest.json", "report.md", "nodes.csv", "edges.csv",
        "extracted.nodes.csv", "structure.json", "stage_log.csv",
        "membership.csv", "subcommunities.csv", "ensemble.json",
        "community_sizes_empirical.csv", "profiles.csv", "scatter.csv",
        "over_expression_country.csv", "over_expression_sector.csv",
        "community_stats.csv", "aggregate_matrix.csv", "centrality_full.csv",
        "radial_full.json", "topology_full.json", "centrality_filtered.csv"}) {
    CHECK_MESSAGE(fs::exists(fs::path(out_dir) / name), name);
  }

  // The manifest on disk matches the returned one.
  const json m =
      json::parse(ownet::read_text_file(out_dir + "/manifest.json"));
  CHECK(m.at("ok").get<bool>());
  CHECK(m.at("config_hash").get<std::string>() == manifest.config_hash);
  CHECK(m.at("stages").size() == 9);

  // Re-emitting the report over the same directory is byte-identical.
  const std::string report = ownet::read_text_file(out_dir + "/report.md");
  CHECK(ownet::emit_report(out_dir) == report);
  CHECK(report.find("# Ownership network analysis") == 0);
}

TEST_CASE("pipeline digests are reproducible") {
  TempDir tmp;
  const std::string dir_a = tmp.file("a");
  const std::string dir_b = tmp.file("b");
  const auto ma = ownet::run_pipeline(
      ownet::PipelineConfig::from_json(small_config(dir_a), ""));
  const auto mb = ownet::run_pipeline(
      ownet::PipelineConfig::from_json(small_config(dir_b), ""));
  REQUIRE(ma.ok);
  REQUIRE(mb.ok);
  REQUIRE(ma.stages.size() == mb.stages.size());
  for (std::size_t i = 0; i < ma.stages.size(); ++i) {
    CHECK(ma.stages[i].name == mb.stages[i].name);
    // Same relative output names with identical content digests.
    CHECK(ma.stages[i].outputs == mb.stages[i].outputs);
  }
}

TEST_CASE("pipeline reports the failing stage") {
  TempDir tmp;
  // Two isolated nodes: no links, so community detection cannot run.
  ownet::write_text_file(tmp.file("n.csv"),
                         "id,country,nace,is_tnc,operating_revenue\n"
                         "a,US,2500,0,\nb,GB,2500,0,\n");
  ownet::write_text_file(tmp.file("e.csv"), "source,target,share\n");
  const std::string cfg_text = std::string(R"({"seed": 3, "output_dir": ")") +
                               tmp.file("out") +
                               R"(", "nodes": ")" + tmp.file("n.csv") +
                               R"(", "edges": ")" + tmp.file("e.csv") + R"("})";
  const auto manifest =
      ownet::run_pipeline(ownet::PipelineConfig::from_json(cfg_text, ""));
  CHECK(!manifest.ok);
  CHECK(manifest.failed_stage == "communities");
  CHECK(!manifest.error.empty());
  // Stages after the failure never run; the manifest stops at the failure.
  CHECK(manifest.stages.back().name == "communities");
  CHECK(manifest.stages.back().status == "failed");
  CHECK(fs::exists(fs::path(tmp.file("out")) / "manifest.json"));
  CHECK(!fs::exists(fs::path(tmp.file("out")) / "report.md"));
}
