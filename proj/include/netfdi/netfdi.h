// Copyright 2026 The Authors.
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

/* C interface to the netfdi library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns an nf_status; on failure a description is
 * available from nf_last_error_message() on the calling thread. Strings
 * returned through char** outputs are owned by the caller and released with
 * nf_string_free(). Node and edge labels are 1-based.
 */

#ifndef NETFDI_NETFDI_H_
#define NETFDI_NETFDI_H_

#include <stddef.h>
#include <stdint.h>

#if defined(NETFDI_BUILDING_LIBRARY)
#define NF_API __attribute__((visibility("default")))
#else
#define NF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nf_status {
  NF_OK = 0,
  NF_ERR_INVALID_ARGUMENT = 1,
  NF_ERR_LOOKUP = 2,
  NF_ERR_DEGENERATE_MODEL = 3,
  NF_ERR_DIMENSION_MISMATCH = 4,
  NF_ERR_INSUFFICIENT_SAMPLES = 5,
  NF_ERR_SIZE_LIMIT = 6,
  NF_ERR_PARSE = 7,
  NF_ERR_IO = 8,
  NF_ERR_INTERNAL = 9
} nf_status;

typedef struct nf_graph nf_graph;
typedef struct nf_model nf_model;
typedef struct nf_run_result nf_run_result;

NF_API const char* nf_last_error_message(void);
NF_API const char* nf_status_name(nf_status status);
NF_API void nf_string_free(char* s);

/* Graphs. */
NF_API nf_status nf_graph_from_json(const char* json, nf_graph** out);
NF_API nf_status nf_graph_load(const char* path, nf_graph** out);
NF_API nf_status nf_graph_cycle(int n, nf_graph** out);
NF_API nf_status nf_graph_star(int n, nf_graph** out);
NF_API nf_status nf_graph_random_geometric(int n, double side, double radius,
                                           uint64_t seed, nf_graph** out);
NF_API nf_status nf_graph_to_json(const nf_graph* g, char** out);
NF_API void nf_graph_free(nf_graph* g);
NF_API int nf_graph_node_count(const nf_graph* g);
NF_API int nf_graph_edge_count(const nf_graph* g);
/* A new graph without `label`; the other labels are kept. */
NF_API nf_status nf_graph_remove_edge(const nf_graph* g, int label, nf_graph** out);
/* Hop distance from `from` to `to`; -1 when unreachable. */
NF_API nf_status nf_graph_distance(const nf_graph* g, int from, int to, int* hops);
/* diameter is -1 unless the graph is strongly connected. */
NF_API nf_status nf_graph_diameter(const nf_graph* g, int* diameter, int* finite_diameter);

/* Subsystem models. */
NF_API nf_status nf_model_from_json(const char* json, nf_model** out);
NF_API nf_status nf_model_load(const char* path, nf_model** out);
NF_API nf_status nf_model_scalar(double a, double b, double c, double gamma, nf_model** out);
NF_API nf_status nf_model_to_json(const nf_model* m, char** out);
NF_API void nf_model_free(nf_model* m);
NF_API nf_status nf_model_relative_degree(const nf_model* m, int* r);

/* Relation matrix and lookup table as {"R", "D", "z", "r", ...}. z <= 0
 * selects the default budget; sensors may be NULL when n_sensors is 0, in
 * which case "D" is omitted. */
NF_API nf_status nf_analyze(const nf_graph* g, int r, int z, const int* sensors,
                            size_t n_sensors, char** tables_json);

/* Placement report as JSON; `exact` adds brute-force optima. */
NF_API nf_status nf_place(const nf_graph* g, int r, int z, int exact, char** placement_json);

/* Isolates a signature against a tables document from nf_analyze. */
NF_API nf_status nf_isolate(const char* tables_json, const int* signature, size_t len,
                            char** result_json);

/* Re-isolates every event of a run report: {"events": [...], "consistent"}. */
NF_API nf_status nf_reisolate_report(const char* report_json, char** result_json);

/* Trace CSV for the run options (same fields as run.json). */
NF_API nf_status nf_simulate(const nf_graph* g, const nf_model* m, const char* options_json,
                             char** trace_csv);

/* Full pipeline. options_json may be NULL for defaults. */
NF_API nf_status nf_run(const nf_graph* g, const nf_model* m, const char* options_json,
                        nf_run_result** out);
NF_API void nf_run_result_free(nf_run_result* r);
/* 0 on success, 2 when some event is not uniquely isolated. */
NF_API int nf_run_exit_code(const nf_run_result* r);
NF_API size_t nf_run_event_count(const nf_run_result* r);
NF_API nf_status nf_run_report_json(const nf_run_result* r, char** out);
NF_API nf_status nf_run_trace_csv(const nf_run_result* r, char** out);
NF_API nf_status nf_run_derivatives_csv(const nf_run_result* r, char** out);
/* report.json, trace.csv and derivatives.csv. */
NF_API nf_status nf_run_write_artifacts(const nf_run_result* r, const char* out_dir);

/* Fails every edge in turn; exit_code as for nf_run_exit_code. */
NF_API nf_status nf_sweep(const nf_graph* g, const nf_model* m, const char* options_json,
                          char** report_json, int* exit_code);

/* Regenerates "cycle5", "star5" or "rgg" into out_dir. */
NF_API nf_status nf_reproduce(const char* name, const char* out_dir, uint64_t seed,
                              char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* NETFDI_NETFDI_H_ */
