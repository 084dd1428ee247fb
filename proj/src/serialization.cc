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


#include "netfdi/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "netfdi/error.hpp"

namespace netfdi {

namespace {

const Json& require(const Json& j, const char* field, const std::string& where) {
  if (!j.is_object() || !j.contains(field)) {
    throw Error(ErrorCode::kParse, where + ": missing field \"" + field + "\"");
  }
  return j.at(field);
}

int require_int(const Json& j, const char* field, const std::string& where) {
  const Json& v = require(j, field, where);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::kParse, where + ": field \"" + field + "\" must be an integer");
  }
  return v.get<int>();
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, what + ": " + e.what());
  }
}

Json graph_to_json(const Digraph& g) {
  bool contiguous = true;
  for (std::size_t q = 0; q < g.edges().size(); ++q) {
    contiguous = contiguous && g.edges()[q].label.value == static_cast<int>(q) + 1;
  }
  Json edges = Json::array();
  for (const LabeledEdge& le : g.edges()) {
    Json e = {{"tail", le.edge.tail.value}, {"head", le.edge.head.value}, {"w", le.edge.weight}};
    if (!contiguous) e["label"] = le.label.value;
    edges.push_back(std::move(e));
  }
  return {{"n", g.node_count()}, {"edges", std::move(edges)}};
}

Digraph graph_from_json(const Json& j) {
  const int n = require_int(j, "n", "graph");
  const Json& edges = require(j, "edges", "graph");
  if (!edges.is_array()) throw Error(ErrorCode::kParse, "graph: field \"edges\" must be an array");
  if (n < 1) throw Error(ErrorCode::kParse, "graph: field \"n\" must be >= 1");
  Digraph g(n);
  int index = 0;
  for (const Json& e : edges) {
    const std::string where = "graph.edges[" + std::to_string(index++) + "]";
    Edge edge;
    edge.tail = NodeId{require_int(e, "tail", where)};
    edge.head = NodeId{require_int(e, "head", where)};
    edge.weight = 1.0;
    if (e.contains("w")) {
      if (!e.at("w").is_number()) {
        throw Error(ErrorCode::kParse, where + ": field \"w\" must be a number");
      }
      edge.weight = e.at("w").get<double>();
    }
    std::optional<EdgeLabel> label;
    if (e.contains("label")) label = EdgeLabel{require_int(e, "label", where)};
    try {
      g = g.add_edge(edge, label);
    } catch (const Error& err) {
      throw Error(ErrorCode::kParse, where + ": " + err.what());
    }
  }
  return g;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j, const std::string& field) {
  // A bare number is accepted as a 1 x 1 matrix.
  if (j.is_number()) return Eigen::MatrixXd::Constant(1, 1, j.get<double>());
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::kParse, "field \"" + field + "\" must be a non-empty array of rows");
  }
  const std::size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
  if (cols == 0) {
    throw Error(ErrorCode::kParse, "field \"" + field + "\" must be a non-empty array of rows");
  }
  Eigen::MatrixXd m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& row = j.at(i);
    if (!row.is_array() || row.size() != cols) {
      throw Error(ErrorCode::kParse, "field \"" + field + "\": row " + std::to_string(i) +
                                         " has the wrong length");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      if (!row.at(k).is_number()) {
        throw Error(ErrorCode::kParse, "field \"" + field + "\": non-numeric entry");
      }
      m(i, k) = row.at(k).get<double>();
    }
  }
  return m;
}

Json model_to_json(const SubsystemModel& m) {
  return {{"A", matrix_to_json(m.a())},
          {"B", matrix_to_json(m.b())},
          {"C", matrix_to_json(m.c())},
          {"Gamma", matrix_to_json(m.gamma())}};
}

SubsystemModel model_from_json(const Json& j) {
  return SubsystemModel(matrix_from_json(require(j, "A", "model"), "A"),
                        matrix_from_json(require(j, "B", "model"), "B"),
                        matrix_from_json(require(j, "C", "model"), "C"),
                        matrix_from_json(require(j, "Gamma", "model"), "Gamma"));
}

Json int_matrix_to_json(const IntMatrix& m) { return m.to_rows(); }

Json tables_to_json(const RelationMatrix& rel, const LookupTable* table) {
  Json out = {{"R", int_matrix_to_json(rel.entries)},
              {"z", rel.z},
              {"r", rel.r},
              {"edges", edges_to_json(rel.edges)}};
  if (table != nullptr) {
    out["D"] = int_matrix_to_json(table->d);
    out["sensors"] = sensors_to_json(table->sensors);
  }
  return out;
}

Json sensors_to_json(const SensorSet& s) {
  Json out = Json::array();
  for (NodeId v : s.members()) out.push_back(v.value);
  return out;
}

Json edges_to_json(const std::vector<EdgeLabel>& edges) {
  Json out = Json::array();
  for (EdgeLabel e : edges) out.push_back(e.value);
  return out;
}

Json placement_to_json(const PlacementReport& r) {
  auto opt_int = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
  auto opt_double = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  return {{"M_D", sensors_to_json(r.m_d)},
          {"M_I", r.m_i ? sensors_to_json(*r.m_i) : Json(nullptr)},
          {"f_I_of_V", r.f_i_of_v},
          {"opt_D", opt_int(r.opt_d)},
          {"opt_I", opt_int(r.opt_i)},
          {"ratio_bound", r.ratio_bound},
          {"isolation_possible", r.f_i_of_v == 0},
          {"f_D_trace", r.f_d_trace},
          {"f_I_trace", r.f_i_trace},
          {"d_max", r.d_max},
          {"H_d_max", r.harmonic_d_max},
          {"d_isolation", r.d_isolation},
          {"H_d_isolation", r.harmonic_d_isolation},
          {"observed_ratio_D", opt_double(r.observed_ratio_d)},
          {"observed_ratio_I", opt_double(r.observed_ratio_i)}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trace_csv(const SimulationTrace& trace) {
  std::string out = "t";
  for (int p = 1; p <= trace.node_count; ++p) {
    for (int c = 1; c <= trace.state_dim; ++c) {
      out += ",x_" + std::to_string(p) + "_" + std::to_string(c);
    }
  }
  for (int p = 1; p <= trace.node_count; ++p) {
    for (int c = 1; c <= trace.output_dim; ++c) {
      out += ",y_" + std::to_string(p) + "_" + std::to_string(c);
    }
  }
  out += '\n';
  for (int n = 0; n < trace.sample_count(); ++n) {
    out += format_double(trace.times[n]);
    for (Eigen::Index i = 0; i < trace.states.rows(); ++i) {
      out += ',' + format_double(trace.states(i, n));
    }
    for (Eigen::Index i = 0; i < trace.outputs.rows(); ++i) {
      out += ',' + format_double(trace.outputs(i, n));
    }
    out += '\n';
  }
  return out;
}

std::string derivatives_csv(const SimulationTrace& trace, const SensorSet& sensors, int z) {
  if (z < 0) throw Error(ErrorCode::kInvalidArgument, "z must be >= 0");
  sensors.validate_for(trace.node_count);
  std::string out = "t";
  for (NodeId p : sensors.members()) {
    for (int c = 1; c <= trace.output_dim; ++c) {
      for (int k = 0; k <= z; ++k) {
        out += ",y_" + std::to_string(p.value) + "_" + std::to_string(c) + "_" + std::to_string(k);
      }
    }
  }
  out += '\n';
  const int count = trace.sample_count();
  const int width = z + 2;
  const Eigen::Index o = trace.output_dim;
  std::vector<Eigen::MatrixXd> sensor_outputs;
  for (NodeId p : sensors.members()) {
    sensor_outputs.push_back(
        trace.outputs.middleRows(static_cast<Eigen::Index>(p.zero_based()) * o, o));
  }
  for (int n = 0; n < count; ++n) {
    out += format_double(trace.times[n]);
    for (int s = 0; s < sensors.size(); ++s) {
      const NodeId p = sensors.members()[s];
      // derivs.col(k) holds the order-k derivative of node p's output.
      Eigen::MatrixXd derivs = Eigen::MatrixXd::Constant(o, z + 1, std::nan(""));
      if (trace.autonomous) {
        const Segment& seg = trace.segment_at(n, n == count - 1);
        for (int k = 0; k <= z; ++k) {
          derivs.col(k) =
              output_derivative(seg.closed_loop, trace.output_matrix, trace.states.col(n), p, k);
        }
      } else {
        const bool left_ok = n >= width - 1;
        const bool right_ok = n + width - 1 < count;
        if (left_ok || right_ok) {
          const Side side = left_ok ? Side::kLeft : Side::kRight;
          for (int k = 0; k <= z; ++k) {
            derivs.col(k) =
                estimate_one_sided_derivative(trace.times, sensor_outputs[s], n, k, side, width);
          }
        }
      }
      for (Eigen::Index c = 0; c < o; ++c) {
        for (int k = 0; k <= z; ++k) out += ',' + format_double(derivs(c, k));
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace netfdi
