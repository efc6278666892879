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

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ownet/error.hpp"
#include "ownet/extract.hpp"
#include "ownet/synthetic.hpp"

namespace {

// Closure the snowball contract promises: everything downstream of the
// roots, then every ancestor with a directed path into that closed set.
std::set<std::uint32_t> expected_snowball(const ownet::OwnershipGraph& g,
                                          std::vector<std::uint32_t> roots) {
  std::set<std::uint32_t> keep(roots.begin(), roots.end());
  std::vector<std::uint32_t> stack(roots.begin(), roots.end());
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (auto eid : g.out_edges(u)) {
      const auto v = g.edges()[eid].dst;
      if (keep.insert(v).second) stack.push_back(v);
    }
  }
  // Ancestors: iterate to fixpoint; anyone owning into the set joins it.
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& e : g.edges()) {
      if (keep.count(e.dst) > 0 && keep.insert(e.src).second) grew = true;
    }
  }
  return keep;
}

}  // namespace

TEST_CASE("tnc detection follows the cross-border share threshold") {
  ownet::GraphBuilder b;
  b.add_node({.id = "us1", .country = "US"});
  b.add_node({.id = "us2", .country = "US"});
  b.add_node({.id = "gb1", .country = "GB"});
  b.add_node({.id = "xx1"});  // no country
  b.add_edge("us1", "gb1", 0.10);   // cross-border at the threshold
  b.add_edge("us2", "us1", 0.50);   // domestic, never qualifies
  b.add_edge("gb1", "us2", 0.09);   // cross-border below the threshold
  b.add_edge("xx1", "gb1", 0.80);   // unknown country, skipped
  const auto g = b.build();
  const auto det = ownet::detect_tncs(g, 0.10);
  REQUIRE(det.tncs.size() == 1);
  CHECK(g.node(det.tncs[0]).id == "us1");
  CHECK(det.skipped_missing_country == 1);

  const auto loose = ownet::detect_tncs(g, 0.05);
  CHECK(loose.tncs.size() == 2);  // gb1 joins
}

TEST_CASE("snowball extraction equals the reachability closure") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = fixtures::random_graph(50, 90, 300 + seed);
    const std::vector<std::uint32_t> roots = {
        static_cast<std::uint32_t>(seed % 50),
        static_cast<std::uint32_t>((seed * 7 + 3) % 50)};
    const auto sub = ownet::snowball_extract(
        g, std::span<const std::uint32_t>(roots), false);
    const auto expect = expected_snowball(g, roots);
    CHECK(sub.node_count() == expect.size());
    for (std::uint32_t u : expect)
      CHECK(sub.find(g.node(u).id).has_value());
    // Induced subgraph: every edge between kept nodes survives.
    std::size_t expected_edges = 0;
    for (const auto& e : g.edges())
      if (expect.count(e.src) > 0 && expect.count(e.dst) > 0)
        ++expected_edges;
    CHECK(sub.edge_count() == expected_edges);
  }
}

TEST_CASE("snowball extraction is idempotent") {
  const auto g = fixtures::random_graph(50, 90, 77);
  const std::vector<std::string> roots = {fixtures::node_name(4),
                                          fixtures::node_name(31)};
  const auto once =
      ownet::snowball_extract(g, std::span<const std::string>(roots), true);
  const auto twice = ownet::snowball_extract(
      once, std::span<const std::string>(roots), true);
  CHECK(ownet::identical(once, twice));
}

TEST_CASE("snowball marks roots when asked") {
  const auto g = fixtures::random_graph(20, 30, 5);
  const std::vector<std::string> roots = {fixtures::node_name(3)};
  const auto marked =
      ownet::snowball_extract(g, std::span<const std::string>(roots), true);
  CHECK(marked.node(marked.find(roots[0]).value()).is_tnc);
  const auto plain =
      ownet::snowball_extract(g, std::span<const std::string>(roots), false);
  CHECK_FALSE(plain.node(plain.find(roots[0]).value()).is_tnc);
}

TEST_CASE("snowball rejects unknown roots by name") {
  const auto g = fixtures::random_graph(10, 12, 1);
  const std::vector<std::string> roots = {"missing"};
  CHECK_THROWS_WITH_AS(
      (void)ownet::snowball_extract(g, std::span<const std::string>(roots),
                                    false),
      doctest::Contains("missing"), ownet::ValidationError);
}

TEST_CASE("synthetic generator is deterministic and respects the spec") {
  ownet::SyntheticSpec spec;
  spec.n_nodes = 400;
  spec.n_blocks = 4;
  spec.p_in = 0.10;
  spec.p_out = 0.005;
  spec.country_fidelity = 1.0;
  spec.sector_fidelity = 1.0;
  spec.seed = 11;
  const auto a = ownet::generate_synthetic(spec);
  const auto b = ownet::generate_synthetic(spec);
  CHECK(ownet::identical(a, b));
  CHECK(a.node_count() == 400);

  // Expected edges: 4 * 100*99 * 0.10 + (400*399 - 4*100*99) * 0.005
  //   = 3960 + 600 = 4560; allow 5 sigma.
  const double expect = 4.0 * 100 * 99 * 0.10 +
                        (400.0 * 399 - 4.0 * 100 * 99) * 0.005;
  CHECK(std::abs(static_cast<double>(a.edge_count()) - expect) <
        5.0 * std::sqrt(expect));

  // Full fidelity: country and sector are constant within a block.
  for (std::uint32_t u = 0; u < 100; ++u) {
    CHECK(a.node(u).country == a.node(0).country);
    CHECK(a.node(u).nace == a.node(0).nace);
  }
  // Different blocks get different home countries from the pool.
  CHECK(a.node(0).country != a.node(150).country);

  // The per-target cap holds everywhere.
  for (std::uint32_t u = 0; u < a.node_count(); ++u)
    CHECK(a.in_share_sum(u) <= 1.0 + ownet::kShareSumTolerance);
}

TEST_CASE("synthetic generator rejects bad specs") {
  ownet::SyntheticSpec spec;
  spec.n_nodes = 0;
  CHECK_THROWS_AS(ownet::generate_synthetic(spec), ownet::ValidationError);
  spec.n_nodes = 10;
  spec.n_blocks = 11;
  CHECK_THROWS_AS(ownet::generate_synthetic(spec), ownet::ValidationError);
  spec.n_blocks = 2;
  spec.p_in = 0.1;
  spec.p_out = 0.5;  // denser between than within
  CHECK_THROWS_AS(ownet::generate_synthetic(spec), ownet::ValidationError);
}

TEST_CASE("synthetic spec json round trips") {
  ownet::SyntheticSpec spec;
  spec.n_nodes = 123;
  spec.n_blocks = 3;
  spec.p_in = 0.25;
  spec.p_out = 0.01;
  spec.country_fidelity = 0.8;
  spec.sector_fidelity = 0.7;
  spec.seed = 99;
  const auto back =
      ownet::synthetic_spec_from_json(ownet::synthetic_spec_to_json(spec));
  CHECK(back.n_nodes == spec.n_nodes);
  CHECK(back.n_blocks == spec.n_blocks);
  CHECK(back.p_in == spec.p_in);
  CHECK(back.p_out == spec.p_out);
  CHECK(back.country_fidelity == spec.country_fidelity);
  CHECK(back.sector_fidelity == spec.sector_fidelity);
  CHECK(back.seed == spec.seed);
  CHECK_THROWS_AS(ownet::synthetic_spec_from_json("{"), ownet::ParseError);
}
