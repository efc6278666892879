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

#include "ownet/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "ownet/error.hpp"

namespace ownet {

double herfindahl(std::span<const std::uint64_t> counts) {
  if (counts.empty()) throw ValidationError("herfindahl of an empty vector");
  double total = 0;
  for (std::uint64_t c : counts) total += static_cast<double>(c);
  if (total == 0)
    throw ValidationError("herfindahl undefined: all counts are zero");
  double h = 0;
  for (std::uint64_t c : counts) {
    const double f = static_cast<double>(c) / total;
    h += f * f;
  }
  return h;
}

const char* macro_sector_name(MacroSector s) {
  switch (s) {
    case MacroSector::kPrimary: return "primary";
    case MacroSector::kManufacturing: return "manufacturing";
    case MacroSector::kServices: return "services";
    case MacroSector::kFinancialIntermediaries:
      return "financial-intermediaries";
    case MacroSector::kRealEstateBusiness: return "real-estate-business";
    case MacroSector::kStateSocial: return "state-social";
  }
  return "?";
}

std::optional<MacroSector> macro_sector_from_name(const std::string& name) {
  static const std::map<std::string, MacroSector> table = {
      {"primary", MacroSector::kPrimary},
      {"manufacturing", MacroSector::kManufacturing},
      {"services", MacroSector::kServices},
      {"financial-intermediaries", MacroSector::kFinancialIntermediaries},
      {"financial", MacroSector::kFinancialIntermediaries},
      {"real-estate-business", MacroSector::kRealEstateBusiness},
      {"state-social", MacroSector::kStateSocial},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

SectorMap SectorMap::default_map() {
  SectorMap m;
  m.ranges_ = {
      {0, 1500, MacroSector::kPrimary},
      {1500, 4500, MacroSector::kManufacturing},
      {4500, 6500, MacroSector::kServices},
      {6500, 7000, MacroSector::kFinancialIntermediaries},
      {7000, 7500, MacroSector::kRealEstateBusiness},
      {7500, 9000, MacroSector::kStateSocial},
      {9000, 9300, MacroSector::kServices},
      {9300, 10000, MacroSector::kStateSocial},
  };
  return m;
}

SectorMap SectorMap::from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("sector map: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("sector map: expected a JSON array");
  SectorMap m;
  for (const auto& entry : j) {
    Range r{};
    try {
      r.lo = entry.at("lo").get<int>();
      r.hi = entry.at("hi").get<int>();
      const auto name = entry.at("sector").get<std::string>();
      auto sector = macro_sector_from_name(name);
      if (!sector)
        throw ValidationError("sector map: unknown sector '" + name + "'");
      r.sector = *sector;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("sector map: ") + e.what());
    }
    if (r.lo < 0 || r.hi <= r.lo || r.hi > 10000)
      throw ValidationError("sector map: bad range [" + std::to_string(r.lo) +
                            ", " + std::to_string(r.hi) + ")");
    m.ranges_.push_back(r);
  }
  if (m.ranges_.empty()) throw ValidationError("sector map: empty table");
  std::sort(m.ranges_.begin(), m.ranges_.end(),
            [](const Range& a, const Range& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < m.ranges_.size(); ++i)
    if (m.ranges_[i].lo < m.ranges_[i - 1].hi)
      throw ValidationError("sector map: overlapping ranges");
  return m;
}

std::string SectorMap::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : ranges_)
    j.push_back({{"lo", r.lo},
                 {"hi", r.hi},
                 {"sector", macro_sector_name(r.sector)}});
  return j.dump(2);
}

std::optional<MacroSector> SectorMap::classify(int nace) const {
  if (nace < 0) return std::nullopt;
  for (const auto& r : ranges_)
    if (nace >= r.lo && nace < r.hi) return r.sector;
  return std::nullopt;
}

namespace {

// Dominant/second values, share, and concentration of a value->count map.
struct Dominance {
  bool present = false;
  double herf = 0, share1 = 0;
  std::string first, second;
};

Dominance dominate(const std::map<std::string, std::uint64_t>& counts) {
  Dominance d;
  if (counts.empty()) return d;
  d.present = true;
  std::vector<std::uint64_t> values;
  values.reserve(counts.size());
  std::uint64_t total = 0;
  for (const auto& [name, c] : counts) {
    values.push_back(c);
    total += c;
  }
  d.herf = herfindahl(values);
  // Ordered map iteration: ties resolve to the lexicographically first name.
  std::uint64_t best = 0, second = 0;
  for (const auto& [name, c] : counts) {
    if (c > best) {
      second = best;
      d.second = d.first;
      best = c;
      d.first = name;
    } else if (c > second) {
      second = c;
      d.second = name;
    }
  }
  d.share1 = static_cast<double>(best) / static_cast<double>(total);
  return d;
}

}  // namespace

CommunityProfile profile(const OwnershipGraph& g,
                         std::span<const std::uint32_t> members,
                         std::uint32_t community_id, const SectorMap& sectors) {
  if (members.empty()) throw ValidationError("profile of an empty community");
  CommunityProfile p;
  p.community = community_id;
  p.n_firms = members.size();

  std::map<std::string, std::uint64_t> by_country, by_sector;
  for (std::uint32_t u : members) {
    const auto& rec = g.node(u);
    if (rec.country != "??") ++by_country[rec.country];
    if (auto s = sectors.classify(rec.nace))
      ++by_sector[macro_sector_name(*s)];
  }
  const Dominance c = dominate(by_country);
  p.has_country = c.present;
  p.herf_country = c.herf;
  p.share_c1 = c.share1;
  p.c1 = c.first;
  p.c2 = c.second;
  const Dominance s = dominate(by_sector);
  p.has_sector = s.present;
  p.herf_sector = s.herf;
  p.share_s1 = s.share1;
  p.s1 = s.first;
  p.s2 = s.second;
  return p;
}

double hypergeometric_sf(std::uint64_t big_n, std::uint64_t big_k,
                         std::uint64_t n, std::uint64_t k) {
  if (big_k > big_n || n > big_n)
    throw ValidationError("hypergeometric: K and n must not exceed N");
  if (k == 0) return 1.0;
  const std::uint64_t hi = std::min(n, big_k);
  if (k > hi) return 0.0;
  // X >= max(0, n + K - N) always holds.
  const std::uint64_t lo =
      (n + big_k > big_n) ? n + big_k - big_n : 0;
  if (k <= lo) return 1.0;

  auto log_choose = [](std::uint64_t a, std::uint64_t b) {
    return std::lgamma(static_cast<double>(a) + 1.0) -
           std::lgamma(static_cast<double>(b) + 1.0) -
           std::lgamma(static_cast<double>(a - b) + 1.0);
  };
  const double log_denom = log_choose(big_n, n);
  double term = std::exp(log_choose(big_k, k) + log_choose(big_n - big_k, n - k) -
                         log_denom);
  double sum = term;
  for (std::uint64_t x = k + 1; x <= hi; ++x) {
    const double num = (static_cast<double>(big_k) - x + 1.0) *
                       (static_cast<double>(n) - x + 1.0);
    const double den = static_cast<double>(x) *
                       (static_cast<double>(big_n - big_k) -
                        static_cast<double>(n) + x);
    term *= num / den;
    sum += term;
  }
  return std::min(1.0, sum);
}

OverExpressionReport over_expression(
    const OwnershipGraph& g, const Partition& partition, Attribute attribute,
    double alpha, const std::optional<std::vector<std::uint32_t>>& communities,
    const SectorMap& sectors) {
  if (partition.size() != g.node_count())
    throw ValidationError("partition does not cover every node");
  if (!(alpha > 0.0) || alpha >= 1.0)
    throw ValidationError("alpha must lie in (0, 1)");

  auto value_of = [&](std::uint32_t u) -> std::optional<std::string> {
    const auto& rec = g.node(u);
    if (attribute == Attribute::kCountry) {
      if (rec.country == "??") return std::nullopt;
      return rec.country;
    }
    auto s = sectors.classify(rec.nace);
    if (!s) return std::nullopt;
    return std::string(macro_sector_name(*s));
  };

  // Universe: partitioned nodes carrying the attribute.
  std::map<std::string, std::uint64_t> global_counts;
  std::uint64_t universe = 0;
  const std::uint32_t n_comm = community_count(partition);
  std::vector<std::uint64_t> comm_attributed(n_comm, 0);
  std::map<std::string, std::vector<std::uint64_t>> in_community;
  for (std::uint32_t u = 0; u < partition.size(); ++u) {
    auto v = value_of(u);
    if (!v) continue;
    ++universe;
    ++global_counts[*v];
    ++comm_attributed[partition[u]];
    auto& per = in_community[*v];
    if (per.empty()) per.assign(n_comm, 0);
    ++per[partition[u]];
  }

  std::vector<std::uint32_t> tested;
  if (communities) {
    tested = *communities;
    for (std::uint32_t c : tested)
      if (c >= n_comm)
        throw ValidationError("unknown community id: " + std::to_string(c));
  } else {
    tested.resize(n_comm);
    for (std::uint32_t c = 0; c < n_comm; ++c) tested[c] = c;
  }

  OverExpressionReport rep;
  rep.alpha = alpha;
  rep.n_tests = tested.size() * global_counts.size();
  rep.threshold = rep.n_tests > 0 ? alpha / static_cast<double>(rep.n_tests)
                                  : alpha;
  rep.rows.reserve(rep.n_tests);
  for (std::uint32_t c : tested) {
    for (const auto& [value, per] : in_community) {
      OverExpressionRow row;
      row.community = c;
      row.value = value;
      row.k = per[c];
      row.n = comm_attributed[c];
      row.big_k = global_counts.at(value);
      row.big_n = universe;
      row.p = hypergeometric_sf(row.big_n, row.big_k, row.n, row.k);
      row.over_expressed = row.p < rep.threshold;
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

double over_expression_rate(const OverExpressionReport& report) {
  if (report.rows.empty()) return 0.0;
  std::size_t flagged = 0;
  for (const auto& r : report.rows)
    if (r.over_expressed) ++flagged;
  return static_cast<double>(flagged) / static_cast<double>(report.rows.size());
}

}  // namespace ownet
