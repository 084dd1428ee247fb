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

// Sensor placement over a relation matrix.
//
// The coverage deficit f_D(M) counts edges whose failure no sensor in M sees
// within the derivative budget; the resolution deficit f_I(M) counts edges
// whose indicator set over M collides with another edge's. Greedy routines
// drive each deficit to zero one node at a time; exhaustive search provides
// the optima the greedy sizes are measured against.

#ifndef NETFDI_PLACEMENT_HPP_
#define NETFDI_PLACEMENT_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "netfdi/fdi.hpp"

namespace netfdi {

// Largest node count accepted by the exhaustive routines.
inline constexpr int kBruteForceMaxNodes = 20;

int coverage_deficit(const RelationMatrix& rel, const SensorSet& m);

// (order, node) pairs sorted by node; order 0 encodes R_0.
using IndicatorSet = std::vector<std::pair<int, NodeId>>;

IndicatorSet indicator_set(const RelationMatrix& rel, const SensorSet& m, EdgeLabel e);

// Edges in label order whose indicator set is shared with some other edge.
std::vector<EdgeLabel> unidentified_edges(const RelationMatrix& rel, const SensorSet& m);

int resolution_deficit(const RelationMatrix& rel, const SensorSet& m);

struct GreedyTrace {
  SensorSet sensors;
  // Deficit before the first addition, then after each addition.
  std::vector<int> deficits;
};

// Adds the node with the largest coverage gain (lowest index on ties) until
// every edge is covered. Requires z >= r, so each edge is covered by its head.
GreedyTrace greedy_detection(const RelationMatrix& rel);

struct IsolationGreedy {
  // Empty when isolation is impossible (f_I(V) != 0).
  std::optional<SensorSet> sensors;
  // The set grown from the seed before the final feasibility test.
  GreedyTrace grown;
};

// Seeds with a detection set and adds nodes greedily on f_I until f_I = 0 or
// every node is a sensor.
IsolationGreedy greedy_isolation(const RelationMatrix& rel, const SensorSet& detection_set);

// Minimum-cardinality set with f_D = 0; lexicographically smallest optimum.
// Throws kSizeLimit above kBruteForceMaxNodes.
SensorSet brute_force_min_detection(const RelationMatrix& rel);

// Minimum-cardinality set with f_I(S) = f_I(V); when f_I(V) = 0 it must also
// have f_D(S) = 0. Lexicographically smallest optimum. Throws kSizeLimit above
// kBruteForceMaxNodes.
SensorSet brute_force_min_isolation(const RelationMatrix& rel);

// Nonzero pattern of the relation matrix.
IntMatrix binary_incidence(const RelationMatrix& rel);

// sum_{i=1}^d 1/i, d >= 1.
double harmonic(int d);

struct PlacementReport {
  SensorSet m_d;
  std::optional<SensorSet> m_i;
  std::vector<int> f_d_trace;
  std::vector<int> f_i_trace;
  int f_i_of_v = 0;
  std::optional<int> opt_d;
  std::optional<int> opt_i;
  // Max column sum of the binary incidence, and H of it.
  int d_max = 0;
  double harmonic_d_max = 1.0;
  // max_j (|E| - f_I({v_j})), and H of it.
  int d_isolation = 0;
  double harmonic_d_isolation = 1.0;
  // ln|E| + 1 (1 for an edgeless graph).
  double ratio_bound = 1.0;
  std::optional<double> observed_ratio_d;
  std::optional<double> observed_ratio_i;
};

// Greedy results plus bounds; optima are computed when `exact` is set and the
// graph is small enough for exhaustive search.
PlacementReport approximation_report(const RelationMatrix& rel, bool exact);

}  // namespace netfdi

#endif  // NETFDI_PLACEMENT_HPP_
