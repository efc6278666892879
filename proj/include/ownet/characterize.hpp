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

#ifndef OWNET_CHARACTERIZE_HPP
#define OWNET_CHARACTERIZE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ownet/graph.hpp"
#include "ownet/modularity.hpp"

namespace ownet {

// Concentration of a non-negative count distribution: sum of squared shares.
// 1 = fully concentrated; 1/k for k equal counts. Throws ValidationError when
// every count is zero.
double herfindahl(std::span<const std::uint64_t> counts);

// Six coarse activity sectors.
enum class MacroSector : std::uint8_t {
  kPrimary = 0,
  kManufacturing,
  kServices,
  kFinancialIntermediaries,
  kRealEstateBusiness,
  kStateSocial,
};

const char* macro_sector_name(MacroSector s);
std::optional<MacroSector> macro_sector_from_name(const std::string& name);

// Maps 4-digit activity codes onto macro-sectors via half-open ranges.
// The built-in default:
//   [   0, 1500) primary            [1500, 4500) manufacturing
//   [4500, 6500) services           [6500, 7000) financial-intermediaries
//   [7000, 7500) real-estate-business
//   [7500, 9000) state-social       [9000, 9300) services
//   [9300,10000) state-social
// A JSON override replaces the whole table:
//   [{"lo": 0, "hi": 1500, "sector": "primary"}, ...]
class SectorMap {
 public:
  static SectorMap default_map();
  static SectorMap from_json(const std::string& json_text);
  std::string to_json() const;

  // -1 (missing) maps to nullopt; any in-range code maps to a sector.
  std::optional<MacroSector> classify(int nace) const;

 private:
  struct Range {
    int lo, hi;
    MacroSector sector;
  };
  std::vector<Range> ranges_;
};

// One community's attribute makeup: dominant country and macro-sector with
// their shares and concentrations. Shares are over members carrying the
// attribute; dominance ties break lexicographically. `c2`/`s2` are empty when
// only one distinct value occurs; has_country/has_sector are false when no
// member carries the attribute.
struct CommunityProfile {
  std::uint32_t community = 0;
  std::size_t n_firms = 0;
  bool has_country = false;
  double herf_country = 0, share_c1 = 0;
  std::string c1, c2;
  bool has_sector = false;
  double herf_sector = 0, share_s1 = 0;
  std::string s1, s2;
};

CommunityProfile profile(const OwnershipGraph& g,
                         std::span<const std::uint32_t> members,
                         std::uint32_t community_id,
                         const SectorMap& sectors);

// P[X >= k] for X ~ Hypergeometric(N, K, n): draw n without replacement from
// N objects of which K are marked; X counts marked draws. Log-space headline
// term plus a stable multiplicative recurrence. k = 0 returns exactly 1.
double hypergeometric_sf(std::uint64_t big_n, std::uint64_t big_k,
                         std::uint64_t n, std::uint64_t k);

enum class Attribute { kCountry, kSector };

struct OverExpressionRow {
  std::uint32_t community = 0;
  std::string value;
  std::uint64_t k = 0;  // members of the community carrying the value
  std::uint64_t n = 0;  // community members carrying the attribute
  std::uint64_t big_k = 0;  // universe count of the value
  std::uint64_t big_n = 0;  // universe size
  double p = 1.0;           // P[X >= k]
  bool over_expressed = false;
};

struct OverExpressionReport {
  std::vector<OverExpressionRow> rows;  // every (community, value) pair
  std::size_t n_tests = 0;              // communities x distinct values
  double alpha = 0;
  double threshold = 0;  // alpha / n_tests (Bonferroni)
};

// Tests every (community, value) pair of the chosen attribute against the
// hypergeometric null. The universe is the set of partitioned nodes carrying
// the attribute. `communities` restricts which communities are tested
// (nullopt = all); n_tests always counts tested communities times distinct
// values.
OverExpressionReport over_expression(
    const OwnershipGraph& g, const Partition& partition, Attribute attribute,
    double alpha = 0.01,
    const std::optional<std::vector<std::uint32_t>>& communities = std::nullopt,
    const SectorMap& sectors = SectorMap::default_map());

// Flagged rows / total rows; 0 for an empty report.
double over_expression_rate(const OverExpressionReport& report);

}  // namespace ownet

#endif  // OWNET_CHARACTERIZE_HPP
