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


#include "netfdi/netfdi.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "netfdi/error.hpp"
#include "netfdi/fdi.hpp"
#include "netfdi/graph.hpp"
#include "netfdi/pipeline.hpp"
#include "netfdi/placement.hpp"
#include "netfdi/serialization.hpp"

struct nf_graph {
  netfdi::Digraph graph;
};

struct nf_model {
  netfdi::SubsystemModel model;
};

struct nf_run_result {
  netfdi::RunResult result;
};

namespace {

thread_local std::string last_error;

nf_status to_status(netfdi::ErrorCode code) {
  switch (code) {
    case netfdi::ErrorCode::kInvalidArgument: return NF_ERR_INVALID_ARGUMENT;
    case netfdi::ErrorCode::kLookup: return NF_ERR_LOOKUP;
    case netfdi::ErrorCode::kDegenerateModel: return NF_ERR_DEGENERATE_MODEL;
    case netfdi::ErrorCode::kDimensionMismatch: return NF_ERR_DIMENSION_MISMATCH;
    case netfdi::ErrorCode::kInsufficientSamples: return NF_ERR_INSUFFICIENT_SAMPLES;
    case netfdi::ErrorCode::kSizeLimit: return NF_ERR_SIZE_LIMIT;
    case netfdi::ErrorCode::kParse: return NF_ERR_PARSE;
    case netfdi::ErrorCode::kIo: return NF_ERR_IO;
  }
  return NF_ERR_INTERNAL;
}

template <typename F>
nf_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return NF_OK;
  } catch (const netfdi::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return NF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NF_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw netfdi::Error(netfdi::ErrorCode::kInvalidArgument, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

netfdi::RunOptions options_from(const char* options_json) {
  if (options_json == nullptr) return {};
  return netfdi::run_options_from_json(netfdi::parse_json(options_json, "options"));
}

netfdi::RelationMatrix relation_for(const netfdi::Digraph& g, int r, int z) {
  return netfdi::relation_matrix(g, r, z > 0 ? z : netfdi::default_derivative_budget(g, r));
}

}  // namespace

extern "C" {

const char* nf_last_error_message(void) { return last_error.c_str(); }

const char* nf_status_name(nf_status status) {
  switch (status) {
    case NF_OK: return "ok";
    case NF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case NF_ERR_LOOKUP: return "lookup";
    case NF_ERR_DEGENERATE_MODEL: return "degenerate model";
    case NF_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case NF_ERR_INSUFFICIENT_SAMPLES: return "insufficient samples";
    case NF_ERR_SIZE_LIMIT: return "size limit";
    case NF_ERR_PARSE: return "parse";
    case NF_ERR_IO: return "io";
    case NF_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void nf_string_free(char* s) { std::free(s); }

nf_status nf_graph_from_json(const char* json, nf_graph** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new nf_graph{netfdi::graph_from_json(netfdi::parse_json(json, "graph"))};
  });
}

nf_status nf_graph_load(const char* path, nf_graph** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new nf_graph{
        netfdi::graph_from_json(netfdi::parse_json(netfdi::read_text_file(path), path))};
  });
}

nf_status nf_graph_cycle(int n, nf_graph** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new nf_graph{netfdi::gen_cycle(n)};
  });
}

nf_status nf_graph_star(int n, nf_graph** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new nf_graph{netfdi::gen_star(n)};
  });
}

nf_status nf_graph_random_geometric(int n, double side, double radius, uint64_t seed,
                                    nf_graph** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new nf_graph{netfdi::gen_random_geometric(n, side, radius, seed)};
  });
}

nf_status nf_graph_to_json(const nf_graph* g, char** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = copy_string(netfdi::graph_to_json(g->graph).dump(2) + "\n");
  });
}

void nf_graph_free(nf_graph* g) { delete g; }

int nf_graph_node_count(const nf_graph* g) { return g ? g->graph.node_count() : 0; }

int nf_graph_edge_count(const nf_graph* g) { return g ? g->graph.edge_count() : 0; }

nf_status nf_graph_remove_edge(const nf_graph* g, int label, nf_graph** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = new nf_graph{g->graph.remove_edge(netfdi::EdgeLabel{label})};
  });
}

nf_status nf_graph_distance(const nf_graph* g, int from, int to, int* hops) {
  return guarded([&] {
    require(g != nullptr && hops != nullptr, "null argument");
    const int n = g->graph.node_count();
    require(from >= 1 && from <= n && to >= 1 && to <= n, "node out of range");
    const netfdi::Distance d =
        netfdi::distances(g->graph).at(netfdi::NodeId{from}, netfdi::NodeId{to});
    *hops = d.is_finite() ? d.hops() : -1;
  });
}

nf_status nf_graph_diameter(const nf_graph* g, int* diameter, int* finite_diameter) {
  return guarded([&] {
    require(g != nullptr && diameter != nullptr && finite_diameter != nullptr, "null argument");
    const netfdi::DiameterInfo info = netfdi::diameter(g->graph);
    *diameter = info.diameter.is_finite() ? info.diameter.hops() : -1;
    *finite_diameter = info.finite_diameter;
  });
}

nf_status nf_model_from_json(const char* json, nf_model** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new nf_model{netfdi::model_from_json(netfdi::parse_json(json, "model"))};
  });
}

nf_status nf_model_load(const char* path, nf_model** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new nf_model{
        netfdi::model_from_json(netfdi::parse_json(netfdi::read_text_file(path), path))};
  });
}

nf_status nf_model_scalar(double a, double b, double c, double gamma, nf_model** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new nf_model{netfdi::SubsystemModel::scalar(a, b, c, gamma)};
  });
}

nf_status nf_model_to_json(const nf_model* m, char** out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "null argument");
    *out = copy_string(netfdi::model_to_json(m->model).dump(2) + "\n");
  });
}

void nf_model_free(nf_model* m) { delete m; }

nf_status nf_model_relative_degree(const nf_model* m, int* r) {
  return guarded([&] {
    require(m != nullptr && r != nullptr, "null argument");
    *r = m->model.relative_degree();
  });
}

nf_status nf_analyze(const nf_graph* g, int r, int z, const int* sensors, size_t n_sensors,
                     char** tables_json) {
  return guarded([&] {
    require(g != nullptr && tables_json != nullptr, "null argument");
    require(n_sensors == 0 || sensors != nullptr, "null sensor list");
    const netfdi::RelationMatrix rel = relation_for(g->graph, r, z);
    if (n_sensors == 0) {
      *tables_json = copy_string(netfdi::tables_to_json(rel, nullptr).dump(2) + "\n");
      return;
    }
    std::vector<netfdi::NodeId> ids;
    for (size_t i = 0; i < n_sensors; ++i) ids.push_back(netfdi::NodeId{sensors[i]});
    const netfdi::LookupTable table = netfdi::lookup_table(rel, netfdi::SensorSet(ids));
    *tables_json = copy_string(netfdi::tables_to_json(rel, &table).dump(2) + "\n");
  });
}

nf_status nf_place(const nf_graph* g, int r, int z, int exact, char** placement_json) {
  return guarded([&] {
    require(g != nullptr && placement_json != nullptr, "null argument");
    const netfdi::RelationMatrix rel = relation_for(g->graph, r, z);
    const netfdi::PlacementReport report = netfdi::approximation_report(rel, exact != 0);
    netfdi::Json j = netfdi::placement_to_json(report);
    j["z"] = rel.z;
    j["r"] = rel.r;
    *placement_json = copy_string(j.dump(2) + "\n");
  });
}

nf_status nf_isolate(const char* tables_json, const int* signature, size_t len,
                     char** result_json) {
  return guarded([&] {
    require(tables_json != nullptr && result_json != nullptr, "null argument");
    require(len == 0 || signature != nullptr, "null signature");
    const netfdi::LookupTable table =
        netfdi::lookup_table_from_json(netfdi::parse_json(tables_json, "tables"));
    netfdi::JumpSignature sig;
    sig.k.assign(signature, signature + len);
    const netfdi::IsolationResult res = netfdi::isolate(sig, table);
    const netfdi::Json j = {{"verdict", netfdi::verdict_name(res.verdict)},
                            {"edges", netfdi::edges_to_json(res.edges)}};
    *result_json = copy_string(j.dump() + "\n");
  });
}

nf_status nf_reisolate_report(const char* report_json, char** result_json) {
  return guarded([&] {
    require(report_json != nullptr && result_json != nullptr, "null argument");
    const auto outcomes = netfdi::reisolate_report(netfdi::parse_json(report_json, "report"));
    netfdi::Json events = netfdi::Json::array();
    bool consistent = true;
    for (const auto& o : outcomes) {
      const std::string verdict = netfdi::verdict_name(o.isolation.verdict);
      consistent = consistent && verdict == o.recorded_verdict;
      events.push_back({{"t", o.signature.t_f},
                        {"signature", o.signature.k},
                        {"verdict", verdict},
                        {"recorded_verdict", o.recorded_verdict},
                        {"edges", netfdi::edges_to_json(o.isolation.edges)}});
    }
    const netfdi::Json j = {{"events", std::move(events)}, {"consistent", consistent}};
    *result_json = copy_string(j.dump(2) + "\n");
  });
}

nf_status nf_simulate(const nf_graph* g, const nf_model* m, const char* options_json,
                      char** trace_csv) {
  return guarded([&] {
    require(g != nullptr && m != nullptr && trace_csv != nullptr, "null argument");
    const netfdi::SimulationTrace trace =
        netfdi::simulate_with_options(g->graph, m->model, options_from(options_json));
    *trace_csv = copy_string(netfdi::trace_csv(trace));
  });
}

nf_status nf_run(const nf_graph* g, const nf_model* m, const char* options_json,
                 nf_run_result** out) {
  return guarded([&] {
    require(g != nullptr && m != nullptr && out != nullptr, "null argument");
    *out = new nf_run_result{netfdi::run_pipeline(g->graph, m->model, options_from(options_json))};
  });
}

void nf_run_result_free(nf_run_result* r) { delete r; }

int nf_run_exit_code(const nf_run_result* r) { return r ? r->result.exit_code() : 3; }

size_t nf_run_event_count(const nf_run_result* r) { return r ? r->result.events.size() : 0; }

nf_status nf_run_report_json(const nf_run_result* r, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = copy_string(netfdi::run_report_json(r->result).dump(2) + "\n");
  });
}

nf_status nf_run_trace_csv(const nf_run_result* r, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = copy_string(netfdi::trace_csv(r->result.trace));
  });
}

nf_status nf_run_derivatives_csv(const nf_run_result* r, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = copy_string(netfdi::derivatives_csv(r->result.trace, r->result.sensors, r->result.z));
  });
}

nf_status nf_run_write_artifacts(const nf_run_result* r, const char* out_dir) {
  return guarded([&] {
    require(r != nullptr && out_dir != nullptr, "null argument");
    netfdi::write_run_artifacts(r->result, out_dir);
  });
}

nf_status nf_sweep(const nf_graph* g, const nf_model* m, const char* options_json,
                   char** report_json, int* exit_code) {
  return guarded([&] {
    require(g != nullptr && m != nullptr && report_json != nullptr && exit_code != nullptr,
            "null argument");
    const netfdi::SweepResult s =
        netfdi::sweep_failures(g->graph, m->model, options_from(options_json));
    *report_json = copy_string(netfdi::sweep_report_json(s).dump(2) + "\n");
    *exit_code = s.exit_code();
  });
}

nf_status nf_reproduce(const char* name, const char* out_dir, uint64_t seed,
                       char** summary_json) {
  return guarded([&] {
    require(name != nullptr && out_dir != nullptr && summary_json != nullptr, "null argument");
    *summary_json = copy_string(netfdi::reproduce(name, out_dir, seed).dump(2) + "\n");
  });
}

}  // extern "C"
