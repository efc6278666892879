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

#ifndef OWNET_EXTRACT_HPP
#define OWNET_EXTRACT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ownet/graph.hpp"

namespace ownet {

struct TncDetection {
  std::vector<std::uint32_t> tncs;  // ascending node indexes
  std::size_t skipped_missing_country = 0;
};

// A transnational corporation: a node holding at least `share_threshold` of
// some node registered in a different country. Nodes without a country code
// cannot be classified and are skipped (counted); edges into unknown-country
// targets are ignored for the comparison.
TncDetection detect_tncs(const OwnershipGraph& g, double share_threshold = 0.10);

// Two-pass snowball around `roots`: first the downstream closure (everything
// the roots transitively own), then every ancestor holding a directed path
// into that closed set. Returns the induced subgraph; `mark_roots_tnc` sets
// is_tnc on the roots in the result. Idempotent: re-extracting from the same
// roots on the result reproduces it.
OwnershipGraph snowball_extract(const OwnershipGraph& g,
                                std::span<const std::uint32_t> roots,
                                bool mark_roots_tnc = false);

// Id-based convenience; throws ValidationError naming any unknown root id.
OwnershipGraph snowball_extract(const OwnershipGraph& g,
                                std::span<const std::string> root_ids,
                                bool mark_roots_tnc = false);

}  // namespace ownet

#endif  // OWNET_EXTRACT_HPP
