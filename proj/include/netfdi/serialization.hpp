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

// JSON and CSV formats for graphs, models, tables, placement reports and
// simulation traces.

#ifndef NETFDI_SERIALIZATION_HPP_
#define NETFDI_SERIALIZATION_HPP_

#include <string>

#include <json.hpp>

#include "netfdi/dynamics.hpp"
#include "netfdi/fdi.hpp"
#include "netfdi/graph.hpp"
#include "netfdi/placement.hpp"

namespace netfdi {

using Json = nlohmann::json;

// File helpers; throw kIo naming the path.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
// Throws kParse naming `what` (usually a path).
Json parse_json(const std::string& text, const std::string& what);

// {"n": int, "edges": [{"tail", "head", "w"}]}. Array order defines labels;
// an optional per-edge "label" is written only when labels are not 1..|E|.
Json graph_to_json(const Digraph& g);
Digraph graph_from_json(const Json& j);

// {"A": [[..]], "B": [[..]], "C": [[..]], "Gamma": [[..]]}.
Json model_to_json(const SubsystemModel& m);
SubsystemModel model_from_json(const Json& j);

Json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const Json& j, const std::string& field);
Json int_matrix_to_json(const IntMatrix& m);

// {"R": [[..]], "D": [[..]], "z", "r"}; "D" is omitted without a table.
Json tables_to_json(const RelationMatrix& rel, const LookupTable* table);

Json sensors_to_json(const SensorSet& s);
Json edges_to_json(const std::vector<EdgeLabel>& edges);

// {"M_D", "M_I" | null, "f_I_of_V", "opt_D" | null, "opt_I" | null,
//  "ratio_bound"} plus the traces and harmonic bounds.
Json placement_to_json(const PlacementReport& r);

// t, x_1_1..x_N_d, y_1_1..y_N_o with 17 significant digits.
std::string trace_csv(const SimulationTrace& trace);

// t, then y and its derivatives up to order z for every sensor output
// (y_p_c_k). Autonomous traces use the closed-loop matrix of the segment to
// the right of each sample (the left one at the final sample); others use
// one-sided finite differences.
std::string derivatives_csv(const SimulationTrace& trace, const SensorSet& sensors, int z);

std::string format_double(double v);

}  // namespace netfdi

#endif  // NETFDI_SERIALIZATION_HPP_
