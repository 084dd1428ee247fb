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

#include "netfdi/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "netfdi/error.hpp"
#include "netfdi/rng.hpp"

namespace netfdi {

DistanceMatrix::DistanceMatrix(int n)
    : n_(n), entries_(static_cast<std::size_t>(n) * n, Distance::infinite()) {}

Distance DistanceMatrix::at(NodeId from, NodeId to) const {
  return entries_[static_cast<std::size_t>(from.zero_based()) * n_ +
                  to.zero_based()];
}

void DistanceMatrix::set(NodeId from, NodeId to, Distance d) {
  entries_[static_cast<std::size_t>(from.zero_based()) * n_ + to.zero_based()] =
      d;
}

Digraph::Digraph(int n_nodes) : n_nodes_(n_nodes) {
  if (n_nodes < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "graph must have at least one node, got n=" +
                    std::to_string(n_nodes));
  }
}

Digraph::Digraph(int n_nodes, const std::vector<Edge>& edges)
    : Digraph(n_nodes) {
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    validate_new_edge(e);
    edges_.push_back({EdgeLabel{edge_count() + 1}, e});
  }
}

void Digraph::validate_new_edge(const Edge& e) const {
  auto valid = [this](NodeId v) { return v.value >= 1 && v.value <= n_nodes_; };
  if (!valid(e.tail) || !valid(e.head)) {
    throw Error(ErrorCode::kInvalidArgument,
                "edge (" + std::to_string(e.tail.value) + " -> " +
                    std::to_string(e.head.value) + ") has an endpoint outside 1.." +
                    std::to_string(n_nodes_));
  }
  if (e.tail == e.head) {
    throw Error(ErrorCode::kInvalidArgument,
                "self-loop on node " + std::to_string(e.tail.value));
  }
  if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
    throw Error(ErrorCode::kInvalidArgument,
                "edge (" + std::to_string(e.tail.value) + " -> " +
                    std::to_string(e.head.value) + ") weight must be positive");
  }
  if (find_edge(e.tail, e.head)) {
    throw Error(ErrorCode::kInvalidArgument,
                "duplicate edge (" + std::to_string(e.tail.value) + " -> " +
                    std::to_string(e.head.value) + ")");
  }
}

const LabeledEdge& Digraph::edge(EdgeLabel label) const {
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), label,
      [](const LabeledEdge& le, EdgeLabel l) { return le.label < l; });
  if (it == edges_.end() || it->label != label) {
    throw Error(ErrorCode::kLookup,
                "unknown edge label " + std::to_string(label.value));
  }
  return *it;
}

bool Digraph::has_edge(EdgeLabel label) const {
  return std::binary_search(
      edges_.begin(), edges_.end(), LabeledEdge{label, {}},
      [](const LabeledEdge& a, const LabeledEdge& b) { return a.label < b.label; });
}

std::optional<EdgeLabel> Digraph::find_edge(NodeId tail, NodeId head) const {
  for (const auto& le : edges_) {
    if (le.edge.tail == tail && le.edge.head == head) return le.label;
  }
  return std::nullopt;
}

EdgeLabel Digraph::max_label() const {
  return edges_.empty() ? EdgeLabel{0} : edges_.back().label;
}

Digraph Digraph::remove_edge(EdgeLabel label) const {
  edge(label);  // throws on unknown labels
  Digraph out;
  out.n_nodes_ = n_nodes_;
  out.edges_.reserve(edges_.size() - 1);
  for (const auto& le : edges_) {
    if (le.label != label) out.edges_.push_back(le);
  }
  return out;
}

Digraph Digraph::add_edge(const Edge& e, std::optional<EdgeLabel> label) const {
  validate_new_edge(e);
  const EdgeLabel l = label.value_or(EdgeLabel{max_label().value + 1});
  if (l.value < 1 || has_edge(l)) {
    throw Error(ErrorCode::kInvalidArgument,
                "edge label " + std::to_string(l.value) + " is not available");
  }
  Digraph out = *this;
  auto it = std::lower_bound(
      out.edges_.begin(), out.edges_.end(), l,
      [](const LabeledEdge& le, EdgeLabel x) { return le.label < x; });
  out.edges_.insert(it, {l, e});
  return out;
}

Eigen::MatrixXd Digraph::adjacency() const {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n_nodes_, n_nodes_);
  for (const auto& le : edges_) {
    g(le.edge.head.zero_based(), le.edge.tail.zero_based()) = le.edge.weight;
  }
  return g;
}

std::vector<std::vector<int>> Digraph::out_neighbours() const {
  std::vector<std::vector<int>> adj(n_nodes_);
  for (const auto& le : edges_) {
    adj[le.edge.tail.zero_based()].push_back(le.edge.head.zero_based());
  }
  return adj;
}

DistanceMatrix distances(const Digraph& g) {
  const int n = g.node_count();
  const auto adj = g.out_neighbours();
  DistanceMatrix dist(n);
  std::vector<int> hops(n);
  std::queue<int> frontier;
  for (int source = 0; source < n; ++source) {
    std::fill(hops.begin(), hops.end(), -1);
    hops[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v : adj[u]) {
        if (hops[v] < 0) {
          hops[v] = hops[u] + 1;
          frontier.push(v);
        }
      }
    }
    for (int target = 0; target < n; ++target) {
      if (hops[target] >= 0) {
        dist.set(NodeId::from_zero_based(source), NodeId::from_zero_based(target),
                 Distance::finite(hops[target]));
      }
    }
  }
  return dist;
}

DiameterInfo diameter(const Digraph& g) {
  const DistanceMatrix dist = distances(g);
  DiameterInfo info{Distance::finite(0), 0};
  for (int q = 1; q <= g.node_count(); ++q) {
    for (int p = 1; p <= g.node_count(); ++p) {
      const Distance d = dist.at(NodeId{q}, NodeId{p});
      if (d.is_finite()) {
        info.finite_diameter = std::max(info.finite_diameter, d.hops());
      } else {
        info.diameter = Distance::infinite();
      }
    }
  }
  if (info.diameter.is_finite()) {
    info.diameter = Distance::finite(info.finite_diameter);
  }
  return info;
}

Eigen::MatrixXd walk_matrix(const Digraph& g, int k) {
  if (k < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "walk length must be nonnegative, got " + std::to_string(k));
  }
  const Eigen::MatrixXd adj = g.adjacency();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(g.node_count(), g.node_count());
  for (int i = 0; i < k; ++i) power = adj * power;
  return power;
}

namespace {

void require_at_least_two(int n, const char* generator) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(generator) + ": n must be at least 2, got " +
                    std::to_string(n));
  }
}

}  // namespace

Digraph gen_cycle(int n) {
  require_at_least_two(n, "cycle");
  std::vector<Edge> edges;
  edges.reserve(n);
  edges.push_back({NodeId{n}, NodeId{1}, 1.0});
  for (int q = 2; q <= n; ++q) edges.push_back({NodeId{q - 1}, NodeId{q}, 1.0});
  return Digraph(n, edges);
}

Digraph gen_star(int n) {
  require_at_least_two(n, "star");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int q = 1; q < n; ++q) edges.push_back({NodeId{q}, NodeId{n}, 1.0});
  return Digraph(n, edges);
}

Digraph gen_random_geometric(int n, double region_side, double radius,
                             std::uint64_t seed) {
  require_at_least_two(n, "random geometric");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::kInvalidArgument, "random geometric: radius must be positive");
  }
  if (!(region_side > 0.0) || !std::isfinite(region_side)) {
    throw Error(ErrorCode::kInvalidArgument,
                "random geometric: region_side must be positive");
  }
  Rng rng(seed);
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = rng.uniform(0.0, region_side);
    ys[i] = rng.uniform(0.0, region_side);
  }
  std::vector<Edge> edges;
  const double r2 = radius * radius;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double dx = xs[a] - xs[b];
      const double dy = ys[a] - ys[b];
      if (dx * dx + dy * dy >= r2) continue;
      if (rng.coin()) {
        edges.push_back({NodeId::from_zero_based(a), NodeId::from_zero_based(b), 1.0});
      } else {
        edges.push_back({NodeId::from_zero_based(b), NodeId::from_zero_based(a), 1.0});
      }
    }
  }
  return Digraph(n, edges);
}

}  // namespace netfdi
