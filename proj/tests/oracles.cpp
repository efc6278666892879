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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

namespace mp = boost::multiprecision;

std::vector<Pair> undirected_links(const ownet::OwnershipGraph& g) {
  std::set<Pair> links;
  for (const auto& e : g.edges()) {
    if (e.src == e.dst) continue;
    links.insert({std::min(e.src, e.dst), std::max(e.src, e.dst)});
  }
  return {links.begin(), links.end()};
}

std::vector<std::size_t> wcc_sizes(std::size_t n,
                                   const std::vector<Pair>& directed) {
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& [a, b] : directed) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> sizes;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::size_t size = 0;
    std::vector<std::uint32_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      ++size;
      for (std::uint32_t v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

namespace {

// reach[u] = set of nodes reachable from u, u included.
std::vector<std::vector<bool>> reachability(
    std::size_t n, const std::vector<Pair>& directed) {
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& [a, b] : directed) adj[a].push_back(b);
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::uint32_t s = 0; s < n; ++s) {
    std::vector<std::uint32_t> stack{s};
    reach[s][s] = true;
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t v : adj[u]) {
        if (!reach[s][v]) {
          reach[s][v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  return reach;
}

}  // namespace

BowTieCounts bow_tie(std::size_t n, const std::vector<Pair>& directed) {
  BowTieCounts out;
  if (n == 0) return out;
  const auto reach = reachability(n, directed);

  // SCC id per node: mutual reachability classes, numbered by first member.
  std::vector<std::uint32_t> scc(n, UINT32_MAX);
  std::vector<std::vector<std::uint32_t>> groups;
  for (std::uint32_t u = 0; u < n; ++u) {
    if (scc[u] != UINT32_MAX) continue;
    const auto id = static_cast<std::uint32_t>(groups.size());
    groups.emplace_back();
    for (std::uint32_t v = u; v < n; ++v) {
      if (scc[v] == UINT32_MAX && reach[u][v] && reach[v][u]) {
        scc[v] = id;
        groups[id].push_back(v);
      }
    }
  }

  std::size_t best = SIZE_MAX;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].size() < 2) continue;
    if (best == SIZE_MAX || groups[i].size() > groups[best].size())
      best = i;
  }
  if (best == SIZE_MAX) {
    out.other = n;
    return out;
  }
  const std::uint32_t anchor = groups[best].front();
  for (std::uint32_t u = 0; u < n; ++u) {
    if (scc[u] == best) {
      ++out.lscc;
    } else if (reach[u][anchor]) {
      ++out.in;
    } else if (reach[anchor][u]) {
      ++out.out;
    } else {
      ++out.other;
    }
  }
  return out;
}

double modularity(std::size_t n, const std::vector<Pair>& links,
                  const std::vector<std::uint32_t>& partition) {
  std::vector<double> k(n, 0.0);
  std::set<Pair> link_set(links.begin(), links.end());
  for (const auto& [a, b] : links) {
    k[a] += 1.0;
    k[b] += 1.0;
  }
  const double two_l = 2.0 * static_cast<double>(links.size());
  double q = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (partition[i] != partition[j]) continue;
      double a_ij = 0.0;
      if (i != j &&
          link_set.count({std::min(i, j), std::max(i, j)}) > 0)
        a_ij = 1.0;
      q += a_ij - k[i] * k[j] / two_l;
    }
  }
  return q / two_l;
}

double max_modularity(std::size_t n, const std::vector<Pair>& links) {
  if (n == 0 || n > 12) throw std::invalid_argument("max_modularity size");
  std::vector<std::uint32_t> a(n, 0);
  // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  double best = -1.0;
  while (true) {
    best = std::max(best, modularity(n, links, a));
    std::size_t i = n;
    while (i-- > 1) {
      std::uint32_t cap = 0;
      for (std::size_t j = 0; j < i; ++j) cap = std::max(cap, a[j]);
      if (a[i] <= cap) {
        ++a[i];
        for (std::size_t j = i + 1; j < n; ++j) a[j] = 0;
        break;
      }
      if (i == 1) return best;
      a[i] = 0;
    }
    if (n == 1) return best;
  }
}

double nmi(const std::vector<std::uint32_t>& a,
           const std::vector<std::uint32_t>& b) {
  const std::size_t n = a.size();
  if (n == 0 || b.size() != n) throw std::invalid_argument("nmi sizes");
  std::map<std::uint32_t, std::size_t> ca, cb;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> joint;
  for (std::size_t i = 0; i < n; ++i) {
    ++ca[a[i]];
    ++cb[b[i]];
    ++joint[{a[i], b[i]}];
  }
  auto entropy = [&](const std::map<std::uint32_t, std::size_t>& c) {
    double h = 0;
    for (const auto& [label, cnt] : c) {
      const double p = static_cast<double>(cnt) / static_cast<double>(n);
      h -= p * std::log(p);
    }
    return h;
  };
  const double ha = entropy(ca), hb = entropy(cb);
  if (ha == 0.0 && hb == 0.0) return 1.0;
  if (ha == 0.0 || hb == 0.0) return 0.0;
  double mi = 0;
  for (const auto& [labels, cnt] : joint) {
    const double pxy = static_cast<double>(cnt) / static_cast<double>(n);
    const double px =
        static_cast<double>(ca[labels.first]) / static_cast<double>(n);
    const double py =
        static_cast<double>(cb[labels.second]) / static_cast<double>(n);
    mi += pxy * std::log(pxy / (px * py));
  }
  return 2.0 * mi / (ha + hb);
}

namespace {

mp::cpp_int binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  mp::cpp_int num = 1, den = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

}  // namespace

double hypergeom_sf(std::uint64_t big_n, std::uint64_t big_k, std::uint64_t n,
                    std::uint64_t k) {
  if (k == 0) return 1.0;
  mp::cpp_int tail = 0;
  const std::uint64_t hi = std::min(big_k, n);
  for (std::uint64_t i = k; i <= hi; ++i)
    tail += binomial(big_k, i) * binomial(big_n - big_k, n - i);
  const mp::cpp_rational p(tail, binomial(big_n, n));
  return p.convert_to<double>();
}

std::vector<std::uint64_t> power_law_sample(double alpha, std::uint64_t xmin,
                                            std::size_t count,
                                            std::uint64_t seed,
                                            std::uint64_t cap) {
  std::vector<double> cum(cap - xmin + 1);
  double total = 0;
  for (std::uint64_t x = xmin; x <= cap; ++x) {
    total += std::pow(static_cast<double>(x), -alpha);
    cum[x - xmin] = total;
  }
  for (double& c : cum) c /= total;
  std::mt19937_64 gen(seed);
  std::vector<std::uint64_t> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double u =
        static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    out[i] = xmin + static_cast<std::uint64_t>(it - cum.begin());
    if (out[i] > cap) out[i] = cap;
  }
  return out;
}

DebtRankTrace debtrank_trace(const std::vector<std::vector<double>>& w,
                             const std::vector<double>& values,
                             const std::vector<std::uint32_t>& seeds,
                             double psi, bool cap_impacts) {
  const std::size_t n = w.size();
  enum { kUndistressed, kDistressed, kInactive };
  std::vector<int> state(n, kUndistressed);
  std::vector<double> h(n, 0.0);
  for (std::uint32_t s : seeds) {
    h[s] = psi;
    state[s] = kDistressed;
  }
  DebtRankTrace trace;
  double start = 0;
  for (std::size_t j = 0; j < n; ++j) start += h[j] * values[j];

  for (std::uint32_t step = 0; step < n + 2; ++step) {
    bool any_distressed = false;
    for (std::size_t i = 0; i < n; ++i)
      any_distressed |= state[i] == kDistressed;
    if (!any_distressed) break;

    const std::vector<double> h_prev = h;
    const std::vector<int> state_prev = state;
    for (std::size_t j = 0; j < n; ++j) {
      if (state_prev[j] == kInactive) continue;
      double gain = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (state_prev[i] != kDistressed) continue;
        const double wij = cap_impacts ? std::min(1.0, w[i][j]) : w[i][j];
        gain += wij * h_prev[i];
      }
      h[j] = std::min(1.0, h[j] + gain);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (state_prev[i] == kDistressed) state[i] = kInactive;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (state[i] == kUndistressed && h[i] > 0.0) state[i] = kDistressed;
    }
    ++trace.steps;
    trace.history.push_back(h);
    for (std::size_t i = 0; i < n; ++i) {
      if (h[i] + 1e-15 < h_prev[i]) trace.monotone = false;
      if (h[i] > 1.0 + 1e-12) trace.bounded = false;
    }
  }
  trace.final_h = h;
  double end = 0;
  for (std::size_t j = 0; j < n; ++j) end += h[j] * values[j];
  trace.r = end - start;
  return trace;
}

}  // namespace oracle
