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

#ifndef OWNET_PIPELINE_HPP
#define OWNET_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ownet/characterize.hpp"
#include "ownet/graph.hpp"
#include "ownet/rewire.hpp"
#include "ownet/synthetic.hpp"

namespace ownet {

inline constexpr const char kToolkitVersion[] = "0.1.0";

// End-to-end run configuration. Exactly one input: node/edge CSV paths or an
// inline synthetic spec. The seed is mandatory; per-stage randomness is
// derived from it by stage label, so adding stages never perturbs earlier
// ones. All numeric outputs use 12 significant digits.
struct PipelineConfig {
  // Input (exactly one of the two).
  std::string nodes_path, edges_path;
  std::optional<SyntheticSpec> synthetic;

  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string output_dir;

  double tnc_threshold = 0.10;
  std::vector<std::string> roots;  // explicit root ids, overrides detection
  BuildOptions::SharePolicy share_policy = BuildOptions::SharePolicy::kReject;
  bool restrict_to_lcc = true;

  std::size_t min_community_size = 5;
  double alpha = 0.01;

  RewireConfig ensemble;  // base_seed overwritten by the derived stage seed

  std::uint32_t top_k_table = 8;
  std::uint32_t top_k_debtrank = 50;
  std::string drop_sector = "financial-intermediaries";  // "none" disables
  std::optional<double> beta;  // nullopt = number of communities
  bool uniform_values = false;
  double psi = 1.0;
  std::string sector_map_path;  // optional JSON override
  unsigned workers = 0;

  // Parses the config JSON; unknown keys are rejected. `base_dir` anchors
  // relative paths (input files, sector map, output dir).
  static PipelineConfig from_json(const std::string& json_text,
                                  const std::string& base_dir);
  // Canonical JSON with every default made explicit; input to the config
  // hash. Does not include resolved absolute paths, only the given ones.
  std::string canonical_json() const;
  // Throws ValidationError on contradictions or missing referenced files.
  void validate() const;
};

struct StageRecord {
  std::string name;
  std::string status;  // "ok", "failed", "skipped"
  double wall_ms = 0;
  // Relative path and FNV-1a digest of the file bytes, in emission order.
  std::vector<std::pair<std::string, std::string>> outputs;
  std::string note;
};

// One pipeline run: configuration hash, per-stage outcome, and per-output
// digests. Identical (config, inputs) reproduce identical digests; wall
// times are informational only.
struct RunManifest {
  std::string config_hash;
  std::string version = kToolkitVersion;
  bool ok = false;
  std::string error;       // first failure message
  std::string failed_stage;
  std::vector<StageRecord> stages;

  std::string to_json() const;
};

// Runs load -> extract -> components -> communities -> ensemble ->
// characterize -> aggregate -> debtrank_full -> debtrank_filtered, writing
// every stage's artifacts plus manifest.json and report.md into
// cfg.output_dir. A stage failure stops the run; the manifest records the
// completed prefix and the failing stage.
RunManifest run_pipeline(const PipelineConfig& cfg);

// Renders report.md from the artifacts already in `output_dir`. Reads only
// declared stage outputs; re-emitting over the same run directory is
// byte-identical. Returns the markdown text.
std::string emit_report(const std::string& output_dir);

}  // namespace ownet

#endif  // OWNET_PIPELINE_HPP
