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

#include "netfdi/placement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "netfdi/error.hpp"

namespace netfdi {

namespace {

// Edges grouped by identical indicator sets. Refining with one more sensor
// column splits each class by that column's values. Indicator sets carry the
// sensor identity, so comparing value vectors over a common ordered sensor
// list is the same as comparing the sets.
class EdgePartition {
 public:
  explicit EdgePartition(int edge_count) : class_of_(edge_count, 0), classes_(edge_count > 0 ? 1 : 0) {}

  EdgePartition refined(const RelationMatrix& rel, int node) const {
    EdgePartition out(0);
    const int e = static_cast<int>(class_of_.size());
    const int span = rel.z + 1;
    out.class_of_.resize(e);
    std::vector<int> remap(static_cast<std::size_t>(classes_) * span, -1);
    int next = 0;
    for (int q = 0; q < e; ++q) {
      int& slot = remap[static_cast<std::size_t>(class_of_[q]) * span + rel.entries(q, node)];
      if (slot < 0) slot = next++;
      out.class_of_[q] = slot;
    }
    out.classes_ = next;
    return out;
  }

  // Edges in classes of size >= 2.
  int unidentified() const {
    std::vector<int> sizes(classes_, 0);
    for (int c : class_of_) ++sizes[c];
    int count = 0;
    for (int c : class_of_) count += sizes[c] > 1 ? 1 : 0;
    return count;
  }

  std::vector<bool> unidentified_mask() const {
    std::vector<int> sizes(classes_, 0);
    for (int c : class_of_) ++sizes[c];
    std::vector<bool> mask(class_of_.size());
    for (std::size_t q = 0; q < class_of_.size(); ++q) mask[q] = sizes[class_of_[q]] > 1;
    return mask;
  }

 private:
  std::vector<int> class_of_;
  int classes_;
};

EdgePartition partition_for(const RelationMatrix& rel, const SensorSet& m) {
  EdgePartition p(rel.edge_count());
  for (NodeId v : m.members()) p = p.refined(rel, v.zero_based());
  return p;
}

// Bitset over edges.
class EdgeBits {
 public:
  explicit EdgeBits(int n) : words_((n + 63) / 64, 0) {}

  void set(int i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  EdgeBits& operator|=(const EdgeBits& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  int count() const {
    int c = 0;
    for (auto w : words_) c += __builtin_popcountll(w);
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

std::vector<EdgeBits> coverage_columns(const RelationMatrix& rel) {
  std::vector<EdgeBits> cols(rel.node_count(), EdgeBits(rel.edge_count()));
  for (int q = 0; q < rel.edge_count(); ++q) {
    for (int v = 0; v < rel.node_count(); ++v) {
      if (rel.entries(q, v) != 0) cols[v].set(q);
    }
  }
  return cols;
}

void check_members(const RelationMatrix& rel, const SensorSet& m) {
  m.validate_for(rel.node_count());
}

void check_brute_force_size(const RelationMatrix& rel) {
  if (rel.node_count() > kBruteForceMaxNodes) {
    throw Error(ErrorCode::kSizeLimit,
                "exhaustive search refused for N=" + std::to_string(rel.node_count()) +
                    " > " + std::to_string(kBruteForceMaxNodes));
  }
}

SensorSet to_sensor_set(const std::vector<int>& zero_based) {
  SensorSet s;
  for (int v : zero_based) s.insert(NodeId::from_zero_based(v));
  return s;
}

}  // namespace

int coverage_deficit(const RelationMatrix& rel, const SensorSet& m) {
  check_members(rel, m);
  int uncovered = 0;
  for (int q = 0; q < rel.edge_count(); ++q) {
    bool seen = false;
    for (NodeId v : m.members()) {
      if (rel.at(q, v) != 0) {
        seen = true;
        break;
      }
    }
    uncovered += seen ? 0 : 1;
  }
  return uncovered;
}

IndicatorSet indicator_set(const RelationMatrix& rel, const SensorSet& m, EdgeLabel e) {
  check_members(rel, m);
  const int q = rel.row_of(e);
  IndicatorSet out;
  for (NodeId v : m.sorted()) out.emplace_back(rel.at(q, v), v);
  return out;
}

std::vector<EdgeLabel> unidentified_edges(const RelationMatrix& rel, const SensorSet& m) {
  check_members(rel, m);
  const auto mask = partition_for(rel, m).unidentified_mask();
  std::vector<EdgeLabel> out;
  for (int q = 0; q < rel.edge_count(); ++q) {
    if (mask[q]) out.push_back(rel.edges[q]);
  }
  return out;
}

int resolution_deficit(const RelationMatrix& rel, const SensorSet& m) {
  check_members(rel, m);
  return partition_for(rel, m).unidentified();
}

GreedyTrace greedy_detection(const RelationMatrix& rel) {
  const auto cols = coverage_columns(rel);
  const int n = rel.node_count();
  const int total = rel.edge_count();
  GreedyTrace trace;
  EdgeBits covered(total);
  int deficit = total;
  trace.deficits.push_back(deficit);
  std::vector<bool> chosen(n, false);
  while (deficit != 0) {
    int best = -1;
    int best_deficit = deficit + 1;
    for (int v = 0; v < n; ++v) {
      if (chosen[v]) continue;
      EdgeBits trial = covered;
      trial |= cols[v];
      const int d = total - trial.count();
      if (d < best_deficit) {
        best_deficit = d;
        best = v;
      }
    }
    if (best < 0 || best_deficit == deficit) {
      // Only reachable when some edge is invisible to every node (z < r).
      throw Error(ErrorCode::kInvalidArgument,
                  "coverage cannot be completed; check that z >= r");
    }
    chosen[best] = true;
    covered |= cols[best];
    deficit = best_deficit;
    trace.sensors.insert(NodeId::from_zero_based(best));
    trace.deficits.push_back(deficit);
  }
  return trace;
}

IsolationGreedy greedy_isolation(const RelationMatrix& rel, const SensorSet& detection_set) {
  check_members(rel, detection_set);
  const int n = rel.node_count();
  IsolationGreedy result;
  result.grown.sensors = detection_set;
  EdgePartition part = partition_for(rel, detection_set);
  int deficit = part.unidentified();
  result.grown.deficits.push_back(deficit);
  while (deficit != 0 && result.grown.sensors.size() < n) {
    int best = -1;
    int best_deficit = 0;
    EdgePartition best_part(0);
    for (int v = 0; v < n; ++v) {
      if (result.grown.sensors.contains(NodeId::from_zero_based(v))) continue;
      EdgePartition trial = part.refined(rel, v);
      const int d = trial.unidentified();
      if (best < 0 || d < best_deficit) {
        best = v;
        best_deficit = d;
        best_part = std::move(trial);
      }
    }
    part = std::move(best_part);
    deficit = best_deficit;
    result.grown.sensors.insert(NodeId::from_zero_based(best));
    result.grown.deficits.push_back(deficit);
  }
  if (deficit == 0) result.sensors = result.grown.sensors;
  return result;
}

namespace {

// Depth-first enumeration of k-subsets in lexicographic order.
template <typename State, typename Extend, typename Accept>
bool first_subset(int n, int k, int start, std::vector<int>& chosen, const State& state,
                  const Extend& extend, const Accept& accept) {
  if (static_cast<int>(chosen.size()) == k) return accept(state);
  const int remaining = k - static_cast<int>(chosen.size());
  for (int v = start; v <= n - remaining; ++v) {
    chosen.push_back(v);
    if (first_subset(n, k, v + 1, chosen, extend(state, v), extend, accept)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

SensorSet brute_force_min_detection(const RelationMatrix& rel) {
  check_brute_force_size(rel);
  const auto cols = coverage_columns(rel);
  const int n = rel.node_count();
  const int total = rel.edge_count();
  auto extend = [&cols](const EdgeBits& s, int v) {
    EdgeBits out = s;
    out |= cols[v];
    return out;
  };
  auto accept = [total](const EdgeBits& s) { return s.count() == total; };
  for (int k = 0; k <= n; ++k) {
    std::vector<int> chosen;
    if (first_subset(n, k, 0, chosen, EdgeBits(total), extend, accept)) {
      return to_sensor_set(chosen);
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "coverage cannot be completed; check that z >= r");
}

SensorSet brute_force_min_isolation(const RelationMatrix& rel) {
  check_brute_force_size(rel);
  const int n = rel.node_count();
  std::vector<NodeId> all;
  for (int v = 1; v <= n; ++v) all.push_back(NodeId{v});
  const int target = resolution_deficit(rel, SensorSet(all));

  const auto cols = coverage_columns(rel);
  const int total = rel.edge_count();
  struct State {
    EdgePartition part;
    EdgeBits covered;
  };
  auto extend = [&](const State& s, int v) {
    State out{s.part.refined(rel, v), s.covered};
    out.covered |= cols[v];
    return out;
  };
  auto accept = [total, target](const State& s) {
    if (s.part.unidentified() != target) return false;
    return target != 0 || s.covered.count() == total;
  };
  for (int k = 0; k <= n; ++k) {
    std::vector<int> chosen;
    if (first_subset(n, k, 0, chosen, State{EdgePartition(total), EdgeBits(total)}, extend,
                     accept)) {
      return to_sensor_set(chosen);
    }
  }
  // V itself is always accepted.
  return SensorSet(all);
}

IntMatrix binary_incidence(const RelationMatrix& rel) {
  IntMatrix out(rel.edge_count(), rel.node_count());
  for (int q = 0; q < rel.edge_count(); ++q) {
    for (int v = 0; v < rel.node_count(); ++v) out(q, v) = rel.entries(q, v) != 0 ? 1 : 0;
  }
  return out;
}

double harmonic(int d) {
  if (d < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "harmonic sum needs d >= 1, got " + std::to_string(d));
  }
  double sum = 0.0;
  // Smallest terms first.
  for (int i = d; i >= 1; --i) sum += 1.0 / i;
  return sum;
}

PlacementReport approximation_report(const RelationMatrix& rel, bool exact) {
  PlacementReport report;
  const int n = rel.node_count();
  const int total = rel.edge_count();

  const GreedyTrace detection = greedy_detection(rel);
  report.m_d = detection.sensors;
  report.f_d_trace = detection.deficits;
  const IsolationGreedy isolation = greedy_isolation(rel, detection.sensors);
  report.m_i = isolation.sensors;
  report.f_i_trace = isolation.grown.deficits;

  std::vector<NodeId> all;
  for (int v = 1; v <= n; ++v) all.push_back(NodeId{v});
  report.f_i_of_v = resolution_deficit(rel, SensorSet(all));

  const IntMatrix incidence = binary_incidence(rel);
  for (int v = 0; v < n; ++v) {
    int column_sum = 0;
    for (int q = 0; q < total; ++q) column_sum += incidence(q, v);
    report.d_max = std::max(report.d_max, column_sum);
    report.d_isolation = std::max(
        report.d_isolation, total - resolution_deficit(rel, SensorSet({NodeId{v + 1}})));
  }
  report.harmonic_d_max = report.d_max > 0 ? harmonic(report.d_max) : 0.0;
  report.harmonic_d_isolation = report.d_isolation > 0 ? harmonic(report.d_isolation) : 0.0;
  report.ratio_bound = total > 0 ? std::log(static_cast<double>(total)) + 1.0 : 1.0;

  if (exact && n <= kBruteForceMaxNodes) {
    report.opt_d = brute_force_min_detection(rel).size();
    report.opt_i = brute_force_min_isolation(rel).size();
    if (*report.opt_d > 0) {
      report.observed_ratio_d = static_cast<double>(report.m_d.size()) / *report.opt_d;
    }
    if (report.opt_i && report.m_i && *report.opt_i > 0) {
      report.observed_ratio_i = static_cast<double>(report.m_i->size()) / *report.opt_i;
    }
  }
  return report;
}

}  // namespace netfdi
