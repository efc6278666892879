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

#ifndef OWNET_CSV_HPP
#define OWNET_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

#include "ownet/graph.hpp"

namespace ownet {

// Minimal CSV support: comma separator, optional double-quote quoting with
// "" escapes, LF or CRLF line ends. Enough for node ids that carry commas.
std::vector<std::vector<std::string>> read_csv(const std::string& path);
std::string csv_escape(std::string_view field);

// Node files: header `id,country,nace,is_tnc,operating_revenue`.
// Edge files: header `source,target,share`.
// Empty country -> "??", empty nace -> -1, empty revenue -> missing.
std::vector<NodeRecord> read_nodes_csv(const std::string& path);
void read_edges_csv(const std::string& path, GraphBuilder& builder);

OwnershipGraph load_graph_csv(const std::string& nodes_path,
                              const std::string& edges_path,
                              const BuildOptions& opts = {},
                              BuildStats* stats = nullptr);

void write_nodes_csv(const OwnershipGraph& g, const std::string& path);
void write_edges_csv(const OwnershipGraph& g, const std::string& path);

// Whole-file write with IoError on failure; every emitter funnels through
// this so outputs are byte-deterministic.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace ownet

#endif  // OWNET_CSV_HPP
