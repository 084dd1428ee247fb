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

// Link-failure detection and isolation from derivative jumps.
//
// A failure of edge (j -> i) first shows at sensor p in derivative order
// r (dist(i, p) + 1). The relation matrix collects these orders for every
// (edge, node) pair, truncated at the derivative budget z; a lookup table is
// its restriction to a sensor set, and a detected jump signature isolates the
// failed edge when it matches exactly one lookup column.

#ifndef NETFDI_FDI_HPP_
#define NETFDI_FDI_HPP_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "netfdi/dynamics.hpp"
#include "netfdi/graph.hpp"

namespace netfdi {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols, int fill = 0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  int operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  std::vector<int> row(int r) const;
  std::vector<int> col(int c) const;
  std::vector<std::vector<int>> to_rows() const;
  IntMatrix transposed() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> data_;
};

// Ordered set of distinct sensor nodes. Insertion order is kept because the
// greedy placement routines report the order in which nodes were chosen.
class SensorSet {
 public:
  SensorSet() = default;
  explicit SensorSet(std::vector<NodeId> members);

  const std::vector<NodeId>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(NodeId v) const;
  void insert(NodeId v);
  std::vector<NodeId> sorted() const;
  // Throws kInvalidArgument when a member is outside 1..n.
  void validate_for(int n_nodes) const;

  friend bool operator==(const SensorSet&, const SensorSet&) = default;

 private:
  std::vector<NodeId> members_;
};

struct RelationMatrix {
  // |E| x N; row q is edges[q], column gamma is node gamma+1. Entry is
  // r (dist(head, node) + 1) when finite and <= z, else 0.
  IntMatrix entries;
  std::vector<EdgeLabel> edges;
  int z = 0;
  int r = 1;

  int edge_count() const { return entries.rows(); }
  int node_count() const { return entries.cols(); }
  int at(int row, NodeId v) const { return entries(row, v.zero_based()); }
  int row_of(EdgeLabel e) const;
  // 1 where the pair is in R_0 (no jump within the budget).
  IntMatrix r0_mask() const;
};

// Requires r >= 1 and z >= r.
RelationMatrix relation_matrix(const Digraph& g, int r, int z);

// r (finite_diameter + 1), the largest order any failure can produce.
int default_derivative_budget(const Digraph& g, int r);

struct LookupTable {
  IntMatrix d;  // |S| x |E|
  SensorSet sensors;
  std::vector<EdgeLabel> edges;
  int z = 0;
  int r = 1;

  std::vector<int> column(EdgeLabel e) const;
};

LookupTable lookup_table(const Digraph& g, const SensorSet& sensors, int r, int z);
LookupTable lookup_table(const RelationMatrix& rel, const SensorSet& sensors);

enum class DetectorMode { kAnalytic, kFiniteDifference };

struct DetectorConfig {
  int z = 1;
  DetectorMode mode = DetectorMode::kAnalytic;
  // Samples per one-sided stencil; 0 selects z + 2.
  int stencil_width = 0;
  double threshold_rel = 1e-3;
  double threshold_abs = 1e-9;
  // Finite-difference mode adds this multiple of the stencil's roundoff
  // amplification (eps * max|y| * sum|c| / h^k) to the threshold.
  double roundoff_safety = 64.0;

  int effective_stencil_width() const { return stencil_width > 0 ? stencil_width : z + 2; }
  // Throws kInvalidArgument unless z >= r, width >= z + 2, thresholds > 0.
  void validate(int r) const;
};

// Weights c such that sum_j c_j y(t + o_j h) / h^k approximates the k-th
// derivative, with offsets o_j = 0, -1, ..., -(width-1) on the left and
// 0, 1, ..., width-1 on the right. Solved from the Vandermonde system on the
// offsets.
std::vector<double> one_sided_stencil(int k, int width, Side side);

// One-sided estimate of d^k y / dt^k at sample `index`. `values` holds one
// column per sample on the uniform grid `times`.
Eigen::VectorXd estimate_one_sided_derivative(std::span<const double> times,
                                              const Eigen::MatrixXd& values,
                                              int index, int k, Side side,
                                              int stencil_width);

struct JumpSignature {
  // k[s] is the least order with a jump at sensors.members()[s], 0 if none.
  std::vector<int> k;
  double t_f = 0.0;
};

struct DetectionEvent {
  double t = 0.0;
  int sample = 0;
  JumpSignature signature;
};

std::vector<DetectionEvent> detect(const SimulationTrace& trace,
                                   const SensorSet& sensors,
                                   const DetectorConfig& cfg);

enum class Verdict { kUnique, kAmbiguous, kNoMatch };

struct IsolationResult {
  Verdict verdict = Verdict::kNoMatch;
  std::vector<EdgeLabel> edges;
};

IsolationResult isolate(const JumpSignature& sig, const LookupTable& table);

// True iff some sensor lies within z/r - 1 hops downstream of the edge head.
bool detectable(const Digraph& g, const SensorSet& sensors, int r, int z,
                EdgeLabel e);

const char* verdict_name(Verdict v);

}  // namespace netfdi

#endif  // NETFDI_FDI_HPP_
