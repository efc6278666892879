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

#include "ownet/synthetic.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ownet/error.hpp"
#include "ownet/rng.hpp"

namespace ownet {

namespace {

const std::vector<std::string>& country_pool() {
  static const std::vector<std::string> pool = {
      "US", "GB", "DE", "FR", "IT", "ES", "NL", "CH", "SE", "JP",
      "CN", "CA", "AU", "BE", "AT", "DK", "NO", "BM", "KY", "PL"};
  return pool;
}

// One representative activity code per macro-sector.
const std::vector<int>& sector_code_pool() {
  static const std::vector<int> pool = {1000, 2500, 5000, 6512, 7100, 8500};
  return pool;
}

void validate(const SyntheticSpec& s) {
  if (s.n_nodes == 0) throw ValidationError("synthetic spec: n_nodes == 0");
  if (s.n_blocks == 0 || s.n_blocks > s.n_nodes)
    throw ValidationError("synthetic spec: n_blocks must lie in [1, n_nodes]");
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(s.p_in) || !prob(s.p_out))
    throw ValidationError("synthetic spec: probabilities must lie in [0, 1]");
  if (s.p_out > s.p_in)
    throw ValidationError("synthetic spec: p_out must not exceed p_in");
  if (!prob(s.country_fidelity) || !prob(s.sector_fidelity))
    throw ValidationError("synthetic spec: fidelities must lie in [0, 1]");
}

// Emits edges of one ordered block pair using geometric jumps through the
// linearized pair space, so sparse classes cost O(edges) not O(pairs).
template <typename Emit>
void sample_pairs(Rng& rng, double p, std::uint64_t size, Emit emit) {
  if (p <= 0.0 || size == 0) return;
  if (p >= 1.0) {
    for (std::uint64_t t = 0; t < size; ++t) emit(t);
    return;
  }
  const double denom = std::log1p(-p);
  double t = -1;
  while (true) {
    const double u = rng.next_unit_open();
    t += 1.0 + std::floor(std::log(u) / denom);
    if (t >= static_cast<double>(size)) break;
    emit(static_cast<std::uint64_t>(t));
  }
}

}  // namespace

std::string synthetic_block_country(std::uint32_t block) {
  const auto& pool = country_pool();
  return pool[block % pool.size()];
}

OwnershipGraph generate_synthetic(const SyntheticSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  const std::uint64_t n = spec.n_nodes;
  const std::uint32_t k = spec.n_blocks;
  const auto& countries = country_pool();
  const auto& sectors = sector_code_pool();

  std::size_t width = std::to_string(n - 1).size();
  auto node_id = [&](std::uint64_t i) {
    std::string digits = std::to_string(i);
    return "n" + std::string(width - digits.size(), '0') + digits;
  };

  GraphBuilder b;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint32_t block = synthetic_block(spec, i);
    NodeRecord rec;
    rec.id = node_id(i);
    const std::uint32_t home_c = block % countries.size();
    if (rng.next_unit() < spec.country_fidelity) {
      rec.country = countries[home_c];
    } else {
      auto pick = rng.below(countries.size() - 1);
      rec.country = countries[pick >= home_c ? pick + 1 : pick];
    }
    const std::uint32_t home_s = block % sectors.size();
    if (rng.next_unit() < spec.sector_fidelity) {
      rec.nace = sectors[home_s];
    } else {
      auto pick = rng.below(sectors.size() - 1);
      rec.nace = sectors[pick >= home_s ? pick + 1 : pick];
    }
    rec.operating_revenue = std::exp(10.0 + 1.5 * rng.next_normal());
    b.add_node(std::move(rec));
  }

  // Block boundaries of the contiguous balanced split.
  std::vector<std::uint64_t> start(k + 1);
  for (std::uint32_t blk = 0; blk <= k; ++blk)
    start[blk] = (static_cast<std::uint64_t>(blk) * n + k - 1) / k;
  start[k] = n;

  struct Pending {
    std::uint64_t src, dst;
  };
  std::vector<Pending> edges;
  for (std::uint32_t bi = 0; bi < k; ++bi) {
    const std::uint64_t oi = start[bi], mi = start[bi + 1] - start[bi];
    for (std::uint32_t bj = 0; bj < k; ++bj) {
      const std::uint64_t oj = start[bj], mj = start[bj + 1] - start[bj];
      if (bi == bj) {
        sample_pairs(rng, spec.p_in, mi * (mi - 1), [&](std::uint64_t t) {
          const std::uint64_t row = t / (mi - 1), col = t % (mi - 1);
          edges.push_back({oi + row, oi + col + (col >= row ? 1 : 0)});
        });
      } else {
        sample_pairs(rng, spec.p_out, mi * mj, [&](std::uint64_t t) {
          edges.push_back({oi + t / mj, oj + t % mj});
        });
      }
    }
  }

  // Shares drawn per edge in emission order, then rescaled per target so the
  // incoming sum never exceeds 1.
  std::vector<double> share(edges.size());
  std::vector<double> in_sum(n, 0.0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    share[e] = rng.next_unit_open();
    in_sum[edges[e].dst] += share[e];
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double s = in_sum[edges[e].dst];
    if (s > 1.0) share[e] /= s;
  }
  for (std::size_t e = 0; e < edges.size(); ++e)
    b.add_edge(node_id(edges[e].src), node_id(edges[e].dst), share[e]);

  return b.build();
}

SyntheticSpec synthetic_spec_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("synthetic spec: ") + e.what());
  }
  SyntheticSpec s;
  try {
    s.n_nodes = j.at("n_nodes").get<std::uint64_t>();
    s.n_blocks = j.at("n_blocks").get<std::uint32_t>();
    s.p_in = j.at("p_in").get<double>();
    s.p_out = j.at("p_out").get<double>();
    s.country_fidelity = j.value("country_fidelity", 1.0);
    s.sector_fidelity = j.value("sector_fidelity", 1.0);
    s.seed = j.value("seed", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("synthetic spec: ") + e.what());
  }
  validate(s);
  return s;
}

std::string synthetic_spec_to_json(const SyntheticSpec& s) {
  nlohmann::json j{{"n_nodes", s.n_nodes},
                   {"n_blocks", s.n_blocks},
                   {"p_in", s.p_in},
                   {"p_out", s.p_out},
                   {"country_fidelity", s.country_fidelity},
                   {"sector_fidelity", s.sector_fidelity},
                   {"seed", s.seed}};
  return j.dump(2);
}

}  // namespace ownet
