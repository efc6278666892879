/* Copyright 2026 The ownet authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the ownership-network analysis library.
 *
 * Conventions: every function returns an ownet_status; OWNET_OK is 0.
 * On failure, ownet_last_error() returns a thread-local message that stays
 * valid until the next failing call on the same thread. Strings returned
 * through char** out-parameters are heap-allocated; release them with
 * ownet_string_free. Handles are opaque; release them with the matching
 * *_free. NULL handles are rejected, never dereferenced.
 */

#ifndef OWNET_H
#define OWNET_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ownet_graph ownet_graph;
typedef struct ownet_partition ownet_partition;

typedef enum ownet_status {
  OWNET_OK = 0,
  OWNET_ERROR_VALIDATION = 1, /* bad arguments or data constraints */
  OWNET_ERROR_PARSE = 2,      /* malformed CSV or JSON input */
  OWNET_ERROR_IO = 3,         /* file system failure */
  OWNET_ERROR_CONSTRAINT = 4, /* algorithm constraint unsatisfiable */
  OWNET_ERROR_STAGE = 5,      /* a pipeline stage failed */
  OWNET_ERROR_INTERNAL = 6
} ownet_status;

const char* ownet_version(void);
const char* ownet_last_error(void);
void ownet_string_free(char* s);

/* ---- graphs ---- */

/* Loads node and edge CSV files (headers `id,country,nace,is_tnc,
 * operating_revenue` and `source,target,share`). clamp_shares != 0 repairs
 * constraint violations instead of rejecting the input. */
ownet_status ownet_graph_load_csv(const char* nodes_path,
                                  const char* edges_path, int clamp_shares,
                                  ownet_graph** out);

/* Generates a planted-block benchmark graph from a JSON spec:
 * {"n_nodes":..,"n_blocks":..,"p_in":..,"p_out":..,
 *  "country_fidelity":..,"sector_fidelity":..,"seed":..} */
ownet_status ownet_graph_generate(const char* spec_json, ownet_graph** out);

ownet_status ownet_graph_save_csv(const ownet_graph* g,
                                  const char* nodes_path,
                                  const char* edges_path);

/* {"n_nodes":..,"n_links":..} */
ownet_status ownet_graph_info(const ownet_graph* g, char** json_out);

void ownet_graph_free(ownet_graph* g);

/* ---- extraction ---- */

/* Transnational roots: nodes owning at least `threshold` of a node in a
 * different country. {"roots":[...ids...],"skipped_missing_country":n} */
ownet_status ownet_detect_tncs(const ownet_graph* g, double threshold,
                               char** json_out);

/* Two-pass snowball: downstream closure of the roots, then every ancestor
 * of that closed set. mark_roots != 0 flags the roots in the result. */
ownet_status ownet_snowball(const ownet_graph* g, const char* const* root_ids,
                            size_t n_roots, int mark_roots,
                            ownet_graph** out);

/* ---- structure ---- */

/* Component, bow-tie, degree, shortest-path and density statistics, plus a
 * power-law fit of the component sizes (largest excluded; null when
 * undefined). Paths are sampled from `path_sample` sources (0 = all). */
ownet_status ownet_structure_summary(const ownet_graph* g,
                                     uint64_t path_sample, uint64_t path_seed,
                                     char** json_out);

/* ---- communities ---- */

/* Multi-level modularity optimization over the undirected unweighted
 * projection. Deterministic in (graph, seed). */
ownet_status ownet_louvain(const ownet_graph* g, uint64_t seed,
                           ownet_partition** out);

/* Rebuilds a partition from a membership CSV written by
 * ownet_partition_write_membership (columns node_id,...,final_id). */
ownet_status ownet_partition_load(const ownet_graph* g,
                                  const char* membership_csv_path,
                                  ownet_partition** out);

/* {"levels":..,"n_communities":..,"stage_log":[{level,n_nodes,n_links,
 * modularity}...]} (stage_log is empty for loaded partitions). */
ownet_status ownet_partition_summary(const ownet_partition* p,
                                     char** json_out);

/* level,n_nodes,n_links,modularity */
ownet_status ownet_partition_write_stage_log(const ownet_partition* p,
                                             const char* path);

/* node_id,level1_id,...,final_id */
ownet_status ownet_partition_write_membership(const ownet_partition* p,
                                              const ownet_graph* g,
                                              const char* path);

/* Level-1 constituents of one final community:
 * {"community":..,"herfindahl":..,"members":[{"id":..,"size":..}...]} */
ownet_status ownet_subcommunities(const ownet_partition* p,
                                  uint32_t final_community, char** json_out);

void ownet_partition_free(ownet_partition* p);

/* ---- null model ---- */

/* One degree- and share-preserving rewired realization. */
ownet_status ownet_rewire(const ownet_graph* g, uint32_t swaps_per_edge,
                          uint64_t base_seed, uint32_t realization_index,
                          uint64_t max_reject_streak, ownet_graph** out);

/* Detects communities on the graph and on `realizations` rewired copies,
 * returning the modularity comparison as JSON. When out_prefix is non-NULL
 * also writes <prefix>.ensemble.json, <prefix>.sizes_empirical.csv and
 * <prefix>.sizes_rewired_NN.csv. */
ownet_status ownet_ensemble_run(const ownet_graph* g, uint32_t realizations,
                                uint32_t swaps_per_edge, uint64_t base_seed,
                                uint64_t max_reject_streak,
                                const char* out_prefix, char** json_out);

/* ---- characterization ---- */

/* Attribute statistics over every community holding at least min_size
 * nodes, ranked by size. attr is "country" or "sector"; sector_map_json
 * (nullable) overrides the built-in NACE ranges. Writes
 * <prefix>.profiles.csv, <prefix>.scatter.csv and
 * <prefix>.over_expression.csv when out_prefix is non-NULL; returns
 * {"n_profiled":..,"n_tests":..,"rate":..}. */
ownet_status ownet_characterize_run(const ownet_graph* g,
                                    const ownet_partition* p,
                                    const char* attr, double alpha,
                                    uint64_t min_size,
                                    const char* sector_map_json,
                                    const char* out_prefix, char** json_out);

/* ---- community network ---- */

/* Aggregates the top_k communities by size and writes
 * <prefix>.community_stats.csv and <prefix>.aggregate_matrix.csv. When
 * drop_sector (a macro-sector name) is non-NULL the filtered variant is
 * computed on the same communities and written side by side. */
ownet_status ownet_aggregate_run(const ownet_graph* g,
                                 const ownet_partition* p, uint32_t top_k,
                                 const char* drop_sector,
                                 const char* sector_map_json,
                                 const char* out_prefix, char** json_out);

/* Distress-propagation centrality with one seed per community over the
 * top_k communities. beta <= 0 selects the default (community count);
 * uniform_values != 0 weighs communities equally instead of by size.
 * Writes <prefix>.centrality_full.csv, <prefix>.radial_full.json and
 * <prefix>.topology_full.json, plus the _filtered triple when drop_sector
 * is non-NULL. */
ownet_status ownet_debtrank_run(const ownet_graph* g,
                                const ownet_partition* p, uint32_t top_k,
                                const char* drop_sector, double beta,
                                int uniform_values, double psi,
                                const char* sector_map_json,
                                const char* out_prefix, char** json_out);

/* ---- pipeline ---- */

/* Runs the whole analysis from a config JSON (see the command-line help for
 * the schema). Relative paths resolve against base_dir (nullable = cwd).
 * The manifest JSON is returned even when a stage fails; the status is
 * OWNET_ERROR_STAGE in that case. */
ownet_status ownet_pipeline_run(const char* config_json,
                                const char* base_dir, char** manifest_json);

/* Re-renders the markdown report from a completed run directory. */
ownet_status ownet_report_emit(const char* output_dir, char** markdown_out);

#ifdef __cplusplus
}
#endif

#endif /* OWNET_H */
