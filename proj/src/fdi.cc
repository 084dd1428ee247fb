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

#include "netfdi/fdi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>

#include "netfdi/error.hpp"

namespace netfdi {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<int> IntMatrix::row(int r) const {
  return std::vector<int>(data_.begin() + static_cast<std::ptrdiff_t>(r) * cols_,
                          data_.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols_);
}

std::vector<int> IntMatrix::col(int c) const {
  std::vector<int> out(rows_);
  for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<std::vector<int>> IntMatrix::to_rows() const {
  std::vector<std::vector<int>> out;
  out.reserve(rows_);
  for (int r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

SensorSet::SensorSet(std::vector<NodeId> members) {
  for (NodeId v : members) insert(v);
}

bool SensorSet::contains(NodeId v) const {
  return std::find(members_.begin(), members_.end(), v) != members_.end();
}

void SensorSet::insert(NodeId v) {
  if (contains(v)) {
    throw Error(ErrorCode::kInvalidArgument,
                "sensor node " + std::to_string(v.value) + " listed twice");
  }
  members_.push_back(v);
}

std::vector<NodeId> SensorSet::sorted() const {
  std::vector<NodeId> out = members_;
  std::sort(out.begin(), out.end());
  return out;
}

void SensorSet::validate_for(int n_nodes) const {
  for (NodeId v : members_) {
    if (v.value < 1 || v.value > n_nodes) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sensor node " + std::to_string(v.value) + " outside 1.." +
                      std::to_string(n_nodes));
    }
  }
}

int RelationMatrix::row_of(EdgeLabel e) const {
  auto it = std::find(edges.begin(), edges.end(), e);
  if (it == edges.end()) {
    throw Error(ErrorCode::kLookup, "unknown edge label " + std::to_string(e.value));
  }
  return static_cast<int>(it - edges.begin());
}

IntMatrix RelationMatrix::r0_mask() const {
  IntMatrix mask(entries.rows(), entries.cols());
  for (int q = 0; q < entries.rows(); ++q) {
    for (int v = 0; v < entries.cols(); ++v) mask(q, v) = entries(q, v) == 0 ? 1 : 0;
  }
  return mask;
}

namespace {

void check_orders(int r, int z) {
  if (r < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "relative degree r must be >= 1, got " + std::to_string(r));
  }
  if (z < r) {
    throw Error(ErrorCode::kInvalidArgument,
                "derivative budget z=" + std::to_string(z) + " is below r=" +
                    std::to_string(r));
  }
}

}  // namespace

RelationMatrix relation_matrix(const Digraph& g, int r, int z) {
  check_orders(r, z);
  const DistanceMatrix dist = distances(g);
  RelationMatrix rel;
  rel.entries = IntMatrix(g.edge_count(), g.node_count());
  rel.z = z;
  rel.r = r;
  int q = 0;
  for (const LabeledEdge& le : g.edges()) {
    rel.edges.push_back(le.label);
    for (int v = 1; v <= g.node_count(); ++v) {
      const Distance d = dist.at(le.edge.head, NodeId{v});
      if (!d.is_finite()) continue;
      const long order = static_cast<long>(r) * (d.hops() + 1);
      if (order <= z) rel.entries(q, v - 1) = static_cast<int>(order);
    }
    ++q;
  }
  return rel;
}

int default_derivative_budget(const Digraph& g, int r) {
  return r * (diameter(g).finite_diameter + 1);
}

std::vector<int> LookupTable::column(EdgeLabel e) const {
  auto it = std::find(edges.begin(), edges.end(), e);
  if (it == edges.end()) {
    throw Error(ErrorCode::kLookup, "unknown edge label " + std::to_string(e.value));
  }
  return d.col(static_cast<int>(it - edges.begin()));
}

LookupTable lookup_table(const RelationMatrix& rel, const SensorSet& sensors) {
  if (sensors.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "lookup table needs at least one sensor");
  }
  sensors.validate_for(rel.node_count());
  LookupTable table;
  table.d = IntMatrix(sensors.size(), rel.edge_count());
  table.sensors = sensors;
  table.edges = rel.edges;
  table.z = rel.z;
  table.r = rel.r;
  for (int s = 0; s < sensors.size(); ++s) {
    for (int q = 0; q < rel.edge_count(); ++q) {
      table.d(s, q) = rel.at(q, sensors.members()[s]);
    }
  }
  return table;
}

LookupTable lookup_table(const Digraph& g, const SensorSet& sensors, int r, int z) {
  return lookup_table(relation_matrix(g, r, z), sensors);
}

void DetectorConfig::validate(int r) const {
  if (z < r) {
    throw Error(ErrorCode::kInvalidArgument,
                "detector z=" + std::to_string(z) + " is below r=" + std::to_string(r));
  }
  if (effective_stencil_width() < z + 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "stencil_width must be >= z+2 = " + std::to_string(z + 2));
  }
  if (!(threshold_rel > 0.0) || !(threshold_abs > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "detector thresholds must be positive");
  }
  if (!(roundoff_safety >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "roundoff_safety must be non-negative");
  }
}

std::vector<double> one_sided_stencil(int k, int width, Side side) {
  if (k < 0 || width < k + 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "stencil of width " + std::to_string(width) +
                    " cannot resolve derivative order " + std::to_string(k));
  }
  const double sign = side == Side::kLeft ? -1.0 : 1.0;
  // Row m: sum_j c_j o_j^m / m! = [m == k].
  MatrixXd vandermonde(width, width);
  for (int j = 0; j < width; ++j) {
    const double offset = sign * j;
    double term = 1.0;
    for (int m = 0; m < width; ++m) {
      vandermonde(m, j) = term;
      term *= offset / (m + 1);
    }
  }
  VectorXd rhs = VectorXd::Zero(width);
  rhs(k) = 1.0;
  const VectorXd c = vandermonde.fullPivLu().solve(rhs);
  return std::vector<double>(c.data(), c.data() + c.size());
}

namespace {

VectorXd apply_stencil(const MatrixXd& values, int index, const std::vector<double>& c,
                       Side side, double inv_hk) {
  const int step = side == Side::kLeft ? -1 : 1;
  VectorXd acc = VectorXd::Zero(values.rows());
  for (std::size_t j = 0; j < c.size(); ++j) {
    acc += c[j] * values.col(index + step * static_cast<int>(j));
  }
  return acc * inv_hk;
}

}  // namespace

VectorXd estimate_one_sided_derivative(std::span<const double> times,
                                       const MatrixXd& values, int index, int k,
                                       Side side, int stencil_width) {
  const int n = static_cast<int>(times.size());
  if (values.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "one value column per time sample expected");
  }
  const int lo = side == Side::kLeft ? index - (stencil_width - 1) : index;
  const int hi = side == Side::kLeft ? index : index + (stencil_width - 1);
  if (index < 0 || index >= n || lo < 0 || hi >= n) {
    throw Error(ErrorCode::kInsufficientSamples,
                "need " + std::to_string(stencil_width) + " samples on the " +
                    (side == Side::kLeft ? "left" : "right") + " of index " +
                    std::to_string(index));
  }
  if (hi == lo) {
    throw Error(ErrorCode::kInsufficientSamples, "stencil needs at least two samples");
  }
  const double h = times[lo + 1] - times[lo];
  for (int i = lo; i < hi; ++i) {
    if (std::abs((times[i + 1] - times[i]) - h) > 1e-9 * std::max(1.0, std::abs(h)) ||
        !(h > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "samples are not on a uniform grid");
    }
  }
  const auto c = one_sided_stencil(k, stencil_width, side);
  return apply_stencil(values, index, c, side, 1.0 / std::pow(h, k));
}

namespace {

// Median of everything pushed so far.
class RunningMedian {
 public:
  void push(double v) {
    if (low_.empty() || v <= low_.top()) {
      low_.push(v);
    } else {
      high_.push(v);
    }
    if (low_.size() > high_.size() + 1) {
      high_.push(low_.top());
      low_.pop();
    } else if (high_.size() > low_.size()) {
      low_.push(high_.top());
      high_.pop();
    }
  }

  double median() const {
    if (low_.empty()) return 0.0;
    if (low_.size() == high_.size()) return 0.5 * (low_.top() + high_.top());
    return low_.top();
  }

 private:
  std::priority_queue<double> low_;
  std::priority_queue<double, std::vector<double>, std::greater<double>> high_;
};

// Per-sample jump orders that exceeded threshold, with normalized scores.
struct FlaggedSample {
  int sample = 0;
  std::vector<std::vector<double>> score;  // [sensor][k-1], 0 when below threshold
};

std::vector<int> least_orders(const FlaggedSample& f) {
  std::vector<int> k(f.score.size(), 0);
  for (std::size_t s = 0; s < f.score.size(); ++s) {
    for (std::size_t j = 0; j < f.score[s].size(); ++j) {
      if (f.score[s][j] > 0.0) {
        k[s] = static_cast<int>(j) + 1;
        break;
      }
    }
  }
  return k;
}

class Scales {
 public:
  Scales(int sensors, int z) : medians_(static_cast<std::size_t>(sensors) * z), z_(z) {}

  // Records |derivative| and returns the jump threshold for (s, k).
  double update(int s, int k, double magnitude, const DetectorConfig& cfg) {
    RunningMedian& m = medians_[static_cast<std::size_t>(s) * z_ + (k - 1)];
    m.push(magnitude);
    return cfg.threshold_abs + cfg.threshold_rel * m.median();
  }

 private:
  std::vector<RunningMedian> medians_;
  int z_;
};

std::vector<FlaggedSample> scan_analytic(const SimulationTrace& trace,
                                         const SensorSet& sensors,
                                         const DetectorConfig& cfg) {
  if (!trace.autonomous) {
    throw Error(ErrorCode::kInvalidArgument,
                "analytic detection needs an autonomous trace (w = 0); use "
                "finite-difference mode");
  }
  const int n_sensors = sensors.size();
  const int z = cfg.z;
  const int d = trace.state_dim;
  const MatrixXd& c = trace.output_matrix;
  Scales scales(n_sensors, z);
  std::vector<FlaggedSample> flagged;
  for (int n = 1; n + 1 < trace.sample_count(); ++n) {
    const Segment& left = trace.segment_at(n, true);
    const Segment& right = trace.segment_at(n, false);
    const bool boundary = &left != &right;
    VectorXd power = trace.states.col(n);  // A_left^k x
    VectorXd diff = VectorXd::Zero(power.size());
    MatrixXd delta_a;
    if (boundary) delta_a = right.closed_loop - left.closed_loop;
    FlaggedSample sample{n, {}};
    bool any = false;
    if (boundary) sample.score.assign(n_sensors, std::vector<double>(z, 0.0));
    for (int k = 1; k <= z; ++k) {
      if (boundary) diff = right.closed_loop * diff + delta_a * power;
      power = left.closed_loop * power;
      for (int s = 0; s < n_sensors; ++s) {
        const Eigen::Index off = static_cast<Eigen::Index>(sensors.members()[s].zero_based()) * d;
        const double magnitude = (c * power.segment(off, d)).norm();
        const double threshold = scales.update(s, k, magnitude, cfg);
        if (!boundary) continue;
        const double jump = (c * diff.segment(off, d)).norm();
        if (jump > threshold) {
          sample.score[s][k - 1] = jump / threshold;
          any = true;
        }
      }
    }
    if (any) flagged.push_back(std::move(sample));
  }
  return flagged;
}

// Sum over sensors of |width-th forward difference of y| on the window
// n..n+width, each sensor scaled by its largest output. Near zero when the
// window is smooth; large when a derivative break lies strictly inside it.
std::vector<double> window_roughness(const std::vector<MatrixXd>& y,
                                     const std::vector<double>& scale, int width) {
  const int total = y.empty() ? 0 : static_cast<int>(y.front().cols());
  std::vector<double> binom(width + 1, 1.0);
  for (int i = 1; i <= width; ++i) binom[i] = binom[i - 1] * (width - i + 1) / i;
  std::vector<double> out(std::max(0, total - width), 0.0);
  for (std::size_t s = 0; s < y.size(); ++s) {
    for (int n = 0; n + width < total; ++n) {
      VectorXd acc = VectorXd::Zero(y[s].rows());
      for (int i = 0; i <= width; ++i) {
        acc += ((width - i) % 2 == 0 ? binom[i] : -binom[i]) * y[s].col(n + i);
      }
      out[n] += acc.norm() / scale[s];
    }
  }
  return out;
}

std::vector<FlaggedSample> scan_finite_difference(const SimulationTrace& trace,
                                                  const SensorSet& sensors,
                                                  const DetectorConfig& cfg) {
  const int width = cfg.effective_stencil_width();
  const int z = cfg.z;
  const int n_sensors = sensors.size();
  const int total = trace.sample_count();
  const double h = trace.dt();
  std::vector<std::vector<double>> left_c(z + 1), right_c(z + 1);
  std::vector<double> inv_hk(z + 1), noise_gain(z + 1);
  for (int k = 1; k <= z; ++k) {
    left_c[k] = one_sided_stencil(k, width, Side::kLeft);
    right_c[k] = one_sided_stencil(k, width, Side::kRight);
    inv_hk[k] = 1.0 / std::pow(h, k);
    double l1 = 0.0;
    for (double c : left_c[k]) l1 += std::abs(c);
    for (double c : right_c[k]) l1 += std::abs(c);
    noise_gain[k] = cfg.roundoff_safety * std::numeric_limits<double>::epsilon() * l1 * inv_hk[k];
  }
  // Per-sensor output rows, one column per sample, and their magnitudes.
  std::vector<MatrixXd> y(n_sensors);
  std::vector<double> scale(n_sensors, std::numeric_limits<double>::min());
  for (int s = 0; s < n_sensors; ++s) {
    const Eigen::Index off =
        static_cast<Eigen::Index>(sensors.members()[s].zero_based()) * trace.output_dim;
    y[s] = trace.outputs.middleRows(off, trace.output_dim);
    for (Eigen::Index n = 0; n < y[s].cols(); ++n) {
      scale[s] = std::max(scale[s], y[s].col(n).lpNorm<Eigen::Infinity>());
    }
  }
  Scales scales(n_sensors, z);
  std::vector<FlaggedSample> all;
  std::vector<bool> hit;
  for (int n = width - 1; n + width - 1 < total; ++n) {
    FlaggedSample sample{n, std::vector<std::vector<double>>(n_sensors, std::vector<double>(z, 0.0))};
    bool any = false;
    for (int s = 0; s < n_sensors; ++s) {
      for (int k = 1; k <= z; ++k) {
        const VectorXd left = apply_stencil(y[s], n, left_c[k], Side::kLeft, inv_hk[k]);
        const VectorXd right = apply_stencil(y[s], n, right_c[k], Side::kRight, inv_hk[k]);
        const double threshold =
            scales.update(s, k, left.norm(), cfg) + noise_gain[k] * scale[s];
        const double jump = (right - left).norm();
        if (jump > threshold) {
          sample.score[s][k - 1] = jump / threshold;
          any = true;
        }
      }
    }
    all.push_back(std::move(sample));
    hit.push_back(any);
  }

  // Stencils straddling a break also flag its neighbours. A break at sample b
  // leaves the windows ending or starting at b smooth while the windows
  // containing b inside are rough, so each cluster is resolved to the sample
  // where that contrast peaks. Clusters whose break sample is not itself
  // flagged come from a jump above order z and are dropped.
  const std::vector<double> rough = window_roughness(y, scale, width);
  const int rough_count = static_cast<int>(rough.size());
  auto rough_at = [&](int n) {
    return n >= 0 && n < rough_count ? rough[n] : std::numeric_limits<double>::quiet_NaN();
  };
  const double tiny = std::numeric_limits<double>::min();
  auto break_contrast = [&](int b) {
    const double inside = std::min(rough_at(b - 1), rough_at(b - width + 1));
    const double outside = rough_at(b) + rough_at(b - width);
    if (std::isnan(inside) || std::isnan(outside)) return -1.0;
    return inside / (outside + tiny);
  };
  std::vector<FlaggedSample> picked;
  const int count = static_cast<int>(all.size());
  int i = 0;
  while (i < count) {
    if (!hit[i]) {
      ++i;
      continue;
    }
    int last = i;
    for (int j = i + 1; j < count && j - last <= width - 1; ++j) {
      if (hit[j]) last = j;
    }
    int best = -1;
    double best_contrast = -1.0;
    for (int c = std::max(0, i - (width - 1)); c <= std::min(count - 1, last + (width - 1)); ++c) {
      const double contrast = break_contrast(all[c].sample);
      if (contrast > best_contrast) {
        best_contrast = contrast;
        best = c;
      }
    }
    // No room for the roughness windows: keep the first flag.
    if (best < 0) best = i;
    if (hit[best] && (picked.empty() || picked.back().sample != all[best].sample)) {
      picked.push_back(all[best]);
    }
    i = last + 1;
  }
  return picked;
}

}  // namespace

std::vector<DetectionEvent> detect(const SimulationTrace& trace, const SensorSet& sensors,
                                   const DetectorConfig& cfg) {
  cfg.validate(1);
  sensors.validate_for(trace.node_count);
  if (sensors.empty()) return {};
  const std::vector<FlaggedSample> flagged =
      cfg.mode == DetectorMode::kAnalytic ? scan_analytic(trace, sensors, cfg)
                                          : scan_finite_difference(trace, sensors, cfg);
  std::vector<DetectionEvent> events;
  events.reserve(flagged.size());
  for (const FlaggedSample& f : flagged) {
    DetectionEvent ev;
    ev.sample = f.sample;
    ev.t = trace.times[f.sample];
    ev.signature.k = least_orders(f);
    ev.signature.t_f = ev.t;
    events.push_back(std::move(ev));
  }
  return events;
}

IsolationResult isolate(const JumpSignature& sig, const LookupTable& table) {
  if (static_cast<int>(sig.k.size()) != table.d.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "signature has " + std::to_string(sig.k.size()) + " entries for " +
                    std::to_string(table.d.rows()) + " sensors");
  }
  IsolationResult result;
  for (int q = 0; q < table.d.cols(); ++q) {
    if (table.d.col(q) == sig.k) result.edges.push_back(table.edges[q]);
  }
  if (result.edges.empty()) {
    result.verdict = Verdict::kNoMatch;
  } else if (result.edges.size() == 1) {
    result.verdict = Verdict::kUnique;
  } else {
    result.verdict = Verdict::kAmbiguous;
  }
  return result;
}

bool detectable(const Digraph& g, const SensorSet& sensors, int r, int z, EdgeLabel e) {
  check_orders(r, z);
  sensors.validate_for(g.node_count());
  const NodeId head = g.edge(e).edge.head;
  const DistanceMatrix dist = distances(g);
  for (NodeId p : sensors.members()) {
    const Distance d = dist.at(head, p);
    if (d.is_finite() && static_cast<long>(r) * (d.hops() + 1) <= z) return true;
  }
  return false;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kUnique:
      return "unique";
    case Verdict::kAmbiguous:
      return "ambiguous";
    case Verdict::kNoMatch:
      return "nomatch";
  }
  return "nomatch";
}

}  // namespace netfdi
