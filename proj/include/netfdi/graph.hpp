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

// Weighted directed graphs with stable edge labels, hop distances and walk
// matrices, plus generators for the cycle, star and random geometric
// families.
//
// Nodes and edge labels are 1-based throughout the public interface, so that
// node 2 of a graph file is NodeId{2}. An edge (tail -> head) means the head
// subsystem consumes the tail subsystem's output, and its weight is the
// adjacency entry G(head, tail).

#ifndef NETFDI_GRAPH_HPP_
#define NETFDI_GRAPH_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace netfdi {

struct NodeId {
  int value = 1;

  constexpr int zero_based() const { return value - 1; }
  static constexpr NodeId from_zero_based(int i) { return NodeId{i + 1}; }
  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

struct EdgeLabel {
  int value = 1;

  friend constexpr auto operator<=>(EdgeLabel, EdgeLabel) = default;
};

struct Edge {
  NodeId tail;
  NodeId head;
  double weight = 1.0;
};

struct LabeledEdge {
  EdgeLabel label;
  Edge edge;
};

// Hop count between two nodes, or infinite when no directed walk exists.
class Distance {
 public:
  enum class Kind { kFinite, kInfinite };

  static constexpr Distance finite(int hops) { return Distance(Kind::kFinite, hops); }
  static constexpr Distance infinite() { return Distance(Kind::kInfinite, 0); }

  constexpr bool is_finite() const { return kind_ == Kind::kFinite; }
  constexpr Kind kind() const { return kind_; }
  // Only meaningful when is_finite().
  constexpr int hops() const { return hops_; }

  // Infinity-absorbing addition.
  friend constexpr Distance operator+(Distance a, Distance b) {
    if (!a.is_finite() || !b.is_finite()) return infinite();
    return finite(a.hops_ + b.hops_);
  }
  friend constexpr bool operator==(Distance, Distance) = default;
  // Total order with infinity greater than every finite distance.
  friend constexpr bool operator<=(Distance a, Distance b) {
    if (!b.is_finite()) return true;
    return a.is_finite() && a.hops_ <= b.hops_;
  }

 private:
  constexpr Distance(Kind kind, int hops) : kind_(kind), hops_(hops) {}
  Kind kind_;
  int hops_;
};

class DistanceMatrix {
 public:
  explicit DistanceMatrix(int n);

  int size() const { return n_; }
  // Distance from node `from` to node `to`.
  Distance at(NodeId from, NodeId to) const;
  void set(NodeId from, NodeId to, Distance d);

 private:
  int n_;
  std::vector<Distance> entries_;
};

class Digraph {
 public:
  // An empty graph on n nodes (n >= 1).
  explicit Digraph(int n_nodes);
  // Edges receive labels 1..|edges| in the given order.
  Digraph(int n_nodes, const std::vector<Edge>& edges);

  int node_count() const { return n_nodes_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  // Edges in label order; labels are not necessarily contiguous after
  // removals.
  const std::vector<LabeledEdge>& edges() const { return edges_; }
  const LabeledEdge& edge(EdgeLabel label) const;
  bool has_edge(EdgeLabel label) const;
  std::optional<EdgeLabel> find_edge(NodeId tail, NodeId head) const;
  EdgeLabel max_label() const;

  // The graph without `label`; every other label is kept as is.
  Digraph remove_edge(EdgeLabel label) const;
  // The graph with `e` added under `label` (or the next free label).
  Digraph add_edge(const Edge& e, std::optional<EdgeLabel> label = {}) const;

  // Weighted adjacency: G(head, tail) = weight.
  Eigen::MatrixXd adjacency() const;
  // Out-neighbours of each node (0-based) following the nonzero pattern.
  std::vector<std::vector<int>> out_neighbours() const;

 private:
  Digraph() = default;
  void validate_new_edge(const Edge& e) const;

  int n_nodes_ = 0;
  std::vector<LabeledEdge> edges_;
};

// Breadth-first hop distances over the nonzero pattern; weights are ignored.
DistanceMatrix distances(const Digraph& g);

struct DiameterInfo {
  // Infinite unless the graph is strongly connected.
  Distance diameter;
  // Largest finite entry of the distance matrix.
  int finite_diameter = 0;
};

DiameterInfo diameter(const Digraph& g);

// G^k for the weighted adjacency matrix; G^0 is the identity.
Eigen::MatrixXd walk_matrix(const Digraph& g, int k);

// Directed cycle with edge q = (q-1 -> q) for q >= 2 and edge 1 = (n -> 1).
Digraph gen_cycle(int n);
// n-1 edges (q -> n), q < n, all sharing head n.
Digraph gen_star(int n);
// Nodes uniform on [0, side]^2; one edge per pair closer than `radius`,
// oriented by a fair coin. Deterministic in `seed`.
Digraph gen_random_geometric(int n, double region_side, double radius,
                             std::uint64_t seed);

}  // namespace netfdi

#endif  // NETFDI_GRAPH_HPP_
