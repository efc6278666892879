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

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ownet/characterize.hpp"
#include "ownet/error.hpp"

using ownet::MacroSector;

TEST_CASE("herfindahl matches hand values") {
  const std::array<std::uint64_t, 1> one = {7};
  CHECK(ownet::herfindahl(one) == 1.0);
  const std::array<std::uint64_t, 4> equal = {3, 3, 3, 3};
  CHECK(ownet::herfindahl(equal) == doctest::Approx(0.25).epsilon(1e-12));
  const std::array<std::uint64_t, 3> skew = {8, 1, 1};
  CHECK(ownet::herfindahl(skew) ==
        doctest::Approx(0.66).epsilon(1e-12));  // (64 + 1 + 1) / 100
  const std::array<std::uint64_t, 3> with_zero = {5, 0, 5};
  CHECK(ownet::herfindahl(with_zero) == doctest::Approx(0.5).epsilon(1e-12));
  const std::array<std::uint64_t, 2> zeros = {0, 0};
  CHECK_THROWS_AS((void)ownet::herfindahl(zeros), ownet::ValidationError);
}

TEST_CASE("sector names round trip") {
  for (int s = 0; s < 6; ++s) {
    const auto sector = static_cast<MacroSector>(s);
    const std::string name = ownet::macro_sector_name(sector);
    const auto back = ownet::macro_sector_from_name(name);
    REQUIRE(back.has_value());
    CHECK(*back == sector);
  }
  CHECK(!ownet::macro_sector_from_name("no-such-sector").has_value());
}

TEST_CASE("default sector table classifies the documented ranges") {
  const auto m = ownet::SectorMap::default_map();
  CHECK(m.classify(100) == MacroSector::kPrimary);
  CHECK(m.classify(1499) == MacroSector::kPrimary);
  CHECK(m.classify(1500) == MacroSector::kManufacturing);
  CHECK(m.classify(2500) == MacroSector::kManufacturing);
  CHECK(m.classify(4499) == MacroSector::kManufacturing);
  CHECK(m.classify(4500) == MacroSector::kServices);
  CHECK(m.classify(6499) == MacroSector::kServices);
  CHECK(m.classify(6500) == MacroSector::kFinancialIntermediaries);
  CHECK(m.classify(6512) == MacroSector::kFinancialIntermediaries);
  CHECK(m.classify(6999) == MacroSector::kFinancialIntermediaries);
  CHECK(m.classify(7000) == MacroSector::kRealEstateBusiness);
  CHECK(m.classify(7499) == MacroSector::kRealEstateBusiness);
  CHECK(m.classify(7500) == MacroSector::kStateSocial);
  CHECK(m.classify(8999) == MacroSector::kStateSocial);
  CHECK(m.classify(9000) == MacroSector::kServices);
  CHECK(m.classify(9299) == MacroSector::kServices);
  CHECK(m.classify(9300) == MacroSector::kStateSocial);
  CHECK(m.classify(9999) == MacroSector::kStateSocial);
  CHECK(!m.classify(-1).has_value());
}

TEST_CASE("sector table json override replaces the whole table") {
  const std::string text =
      R"([{"lo": 0, "hi": 5000, "sector": "primary"},)"
      R"( {"lo": 5000, "hi": 10000, "sector": "financial-intermediaries"}])";
  const auto m = ownet::SectorMap::from_json(text);
  CHECK(m.classify(4999) == MacroSector::kPrimary);
  CHECK(m.classify(5000) == MacroSector::kFinancialIntermediaries);
  const auto again = ownet::SectorMap::from_json(m.to_json());
  CHECK(again.classify(4999) == MacroSector::kPrimary);
  CHECK(again.classify(5000) == MacroSector::kFinancialIntermediaries);
  CHECK_THROWS_AS((void)ownet::SectorMap::from_json("{"), ownet::ParseError);
  CHECK_THROWS_AS((void)ownet::SectorMap::from_json(
                      R"([{"lo": 0, "hi": 10, "sector": "bogus"}])"),
                  ownet::ValidationError);
}

TEST_CASE("community profile reports dominance and concentration") {
  ownet::GraphBuilder b;
  // 6 members: 4 US / 2 GB; sectors 3 manufacturing, 2 financial, 1 missing.
  b.add_node({.id = "m0", .country = "US", .nace = 2000});
  b.add_node({.id = "m1", .country = "US", .nace = 2100});
  b.add_node({.id = "m2", .country = "US", .nace = 3000});
  b.add_node({.id = "m3", .country = "US", .nace = 6512});
  b.add_node({.id = "m4", .country = "GB", .nace = 6600});
  b.add_node({.id = "m5", .country = "GB", .nace = -1});
  b.add_edge("m0", "m1", 0.1);
  const auto g = b.build();
  const std::vector<std::uint32_t> members = {0, 1, 2, 3, 4, 5};
  const auto p =
      ownet::profile(g, members, 9, ownet::SectorMap::default_map());
  CHECK(p.community == 9);
  CHECK(p.n_firms == 6);
  REQUIRE(p.has_country);
  CHECK(p.c1 == "US");
  CHECK(p.c2 == "GB");
  CHECK(p.share_c1 == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
  CHECK(p.herf_country ==
        doctest::Approx((16.0 + 4.0) / 36.0).epsilon(1e-12));
  REQUIRE(p.has_sector);
  CHECK(p.s1 == "manufacturing");
  CHECK(p.s2 == "financial-intermediaries");
  // Sector shares are over the 5 members with a known code.
  CHECK(p.share_s1 == doctest::Approx(3.0 / 5.0).epsilon(1e-12));
  CHECK(p.herf_sector == doctest::Approx((9.0 + 4.0) / 25.0).epsilon(1e-12));
}

TEST_CASE("community profile handles missing attributes") {
  ownet::GraphBuilder b;
  b.add_node({.id = "x0"});
  b.add_node({.id = "x1"});
  b.add_edge("x0", "x1", 0.1);
  const auto g = b.build();
  const std::vector<std::uint32_t> members = {0, 1};
  const auto p =
      ownet::profile(g, members, 0, ownet::SectorMap::default_map());
  CHECK(p.n_firms == 2);
  CHECK(!p.has_country);  // "??" means unknown
  CHECK(!p.has_sector);
  CHECK(p.c1.empty());
  CHECK(p.s1.empty());
}

TEST_CASE("single-valued profile leaves the runner-up empty") {
  ownet::GraphBuilder b;
  b.add_node({.id = "y0", .country = "DE", .nace = 2000});
  b.add_node({.id = "y1", .country = "DE", .nace = 2100});
  b.add_edge("y0", "y1", 0.1);
  const auto g = b.build();
  const std::vector<std::uint32_t> members = {0, 1};
  const auto p =
      ownet::profile(g, members, 0, ownet::SectorMap::default_map());
  CHECK(p.c1 == "DE");
  CHECK(p.c2.empty());
  CHECK(p.share_c1 == 1.0);
  CHECK(p.herf_country == 1.0);
  CHECK(p.s1 == "manufacturing");
  CHECK(p.s2.empty());
}

TEST_CASE("hypergeometric tail matches the exact rational oracle") {
  struct Case {
    std::uint64_t big_n, big_k, n, k;
  };
  const std::vector<Case> cases = {
      {10, 3, 4, 0},  {10, 3, 4, 1},  {10, 3, 4, 2},   {10, 3, 4, 3},
      {50, 10, 8, 3}, {50, 10, 8, 8}, {100, 5, 5, 5},  {100, 5, 5, 1},
      {60, 30, 30, 25}, {1000, 100, 50, 10}, {1000, 100, 50, 0},
      {500, 250, 100, 70}, {7, 7, 3, 3}, {7, 0, 3, 0}, {12, 5, 12, 5},
  };
  for (const auto& c : cases) {
    const double expect = oracle::hypergeom_sf(c.big_n, c.big_k, c.n, c.k);
    const double got = ownet::hypergeometric_sf(c.big_n, c.big_k, c.n, c.k);
    if (expect == 0.0) {
      CHECK(got == 0.0);
    } else {
      CHECK(got == doctest::Approx(expect).epsilon(1e-9));
    }
  }
  // Known closed forms.
  CHECK(ownet::hypergeometric_sf(100, 5, 5, 5) ==
        doctest::Approx(1.0 / 75287520.0).epsilon(1e-9));
  CHECK(ownet::hypergeometric_sf(10, 3, 4, 0) == 1.0);
  // k above everything drawable has zero mass.
  CHECK(ownet::hypergeometric_sf(10, 3, 4, 4) == 0.0);
}

TEST_CASE("hypergeometric tail is monotone in k") {
  for (std::uint64_t k = 1; k <= 8; ++k) {
    const double hi = ownet::hypergeometric_sf(40, 12, 8, k - 1);
    const double lo = ownet::hypergeometric_sf(40, 12, 8, k);
    CHECK(lo <= hi + 1e-15);
  }
}

TEST_CASE("over-expression flags a planted country block") {
  // Universe: 40 nodes, 10 of them LU all inside community 0 (size 10).
  ownet::GraphBuilder b;
  for (std::uint32_t i = 0; i < 40; ++i) {
    ownet::NodeRecord rec;
    rec.id = fixtures::node_name(i);
    rec.country = i < 10 ? "LU" : "US";
    rec.nace = 2500;
    b.add_node(rec);
  }
  for (std::uint32_t i = 0; i + 1 < 40; ++i)
    b.add_edge(fixtures::node_name(i), fixtures::node_name(i + 1), 0.02);
  const auto g = b.build();
  ownet::Partition part(40);
  for (std::uint32_t i = 0; i < 40; ++i) part[i] = i < 10 ? 0 : 1 + (i % 3);
  const auto rep =
      ownet::over_expression(g, part, ownet::Attribute::kCountry, 0.01);
  CHECK(rep.n_tests == 4 * 2);  // 4 communities x {LU, US}
  CHECK(rep.alpha == 0.01);
  CHECK(rep.threshold == doctest::Approx(0.01 / 8.0).epsilon(1e-12));
  bool saw_lu = false;
  for (const auto& row : rep.rows) {
    if (row.community == 0 && row.value == "LU") {
      saw_lu = true;
      CHECK(row.k == 10);
      CHECK(row.n == 10);
      CHECK(row.big_k == 10);
      CHECK(row.big_n == 40);
      // P[X >= 10] = C(10,10) C(30,0) / C(40,10) = 1 / 847660528.
      CHECK(row.p ==
            doctest::Approx(oracle::hypergeom_sf(40, 10, 10, 10))
                .epsilon(1e-9));
      CHECK(row.over_expressed);
    }
    if (row.community == 0 && row.value == "US") {
      CHECK(row.k == 0);
      CHECK(row.p == 1.0);
      CHECK(!row.over_expressed);
    }
  }
  CHECK(saw_lu);
  CHECK(ownet::over_expression_rate(rep) ==
        doctest::Approx(1.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("over-expression restricted to chosen communities") {
  ownet::GraphBuilder b;
  for (std::uint32_t i = 0; i < 12; ++i) {
    ownet::NodeRecord rec;
    rec.id = fixtures::node_name(i);
    rec.country = i % 2 == 0 ? "FR" : "IT";
    b.add_node(rec);
  }
  for (std::uint32_t i = 0; i + 1 < 12; ++i)
    b.add_edge(fixtures::node_name(i), fixtures::node_name(i + 1), 0.05);
  const auto g = b.build();
  ownet::Partition part(12);
  for (std::uint32_t i = 0; i < 12; ++i) part[i] = i / 4;
  const std::vector<std::uint32_t> only = {1};
  const auto rep = ownet::over_expression(g, part, ownet::Attribute::kCountry,
                                          0.05, only);
  CHECK(rep.n_tests == 2);  // one community x {FR, IT}
  for (const auto& row : rep.rows) CHECK(row.community == 1);
}

TEST_CASE("sector over-expression uses the sector table") {
  const auto hub = fixtures::financial_hub();
  const auto rep = ownet::over_expression(
      hub.g, hub.labels, ownet::Attribute::kSector, 0.01);
  // Each community holds 12/60 financial firms vs 1/5 universe share, so
  // nothing should light up; the mechanics still have to produce full rows.
  CHECK(rep.rows.size() == rep.n_tests);
  for (const auto& row : rep.rows) {
    CHECK(row.big_n == 360);
    CHECK(row.n == 60);
    if (row.value == "financial-intermediaries") CHECK(row.k == 12);
    if (row.value == "manufacturing") CHECK(row.k == 48);
  }
}

TEST_CASE("over-expression rate of an empty report is zero") {
  ownet::OverExpressionReport rep;
  CHECK(ownet::over_expression_rate(rep) == 0.0);
}
