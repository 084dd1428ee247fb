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

#include "netfdi/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "netfdi/error.hpp"
#include "netfdi/linalg.hpp"

namespace netfdi {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

std::string shape(const MatrixXd& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

SubsystemModel::SubsystemModel(MatrixXd a, MatrixXd b, MatrixXd c, MatrixXd gamma)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), gamma_(std::move(gamma)) {
  const auto d = a_.rows();
  if (d == 0 || a_.cols() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "A must be square and nonempty, got " + shape(a_));
  }
  if (b_.rows() != d || b_.cols() == 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "B must have " + std::to_string(d) + " rows, got " + shape(b_));
  }
  if (c_.cols() != d || c_.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "C must have " + std::to_string(d) + " columns, got " + shape(c_));
  }
  if (gamma_.rows() != b_.cols() || gamma_.cols() != c_.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "Gamma must be " + std::to_string(b_.cols()) + "x" +
                    std::to_string(c_.rows()) + ", got " + shape(gamma_));
  }
  if (!a_.allFinite() || !b_.allFinite() || !c_.allFinite() || !gamma_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "model matrices must be finite");
  }
  // By Cayley-Hamilton the first nonzero Markov parameter, if any, has k <= d.
  MatrixXd ak_b = b_;
  for (int k = 1; k <= d; ++k) {
    if ((c_ * ak_b).cwiseAbs().maxCoeff() > kMarkovZeroTolerance) {
      relative_degree_ = k;
      return;
    }
    ak_b = a_ * ak_b;
  }
  throw Error(ErrorCode::kDegenerateModel,
              "all Markov parameters C A^(k-1) B vanish for k <= " + std::to_string(d) +
                  "; relative degree undefined");
}

SubsystemModel SubsystemModel::scalar(double a, double b, double c, double gamma) {
  return SubsystemModel(MatrixXd::Constant(1, 1, a), MatrixXd::Constant(1, 1, b),
                        MatrixXd::Constant(1, 1, c), MatrixXd::Constant(1, 1, gamma));
}

int relative_degree(const SubsystemModel& m) { return m.relative_degree(); }

MatrixXd markov_parameter(const SubsystemModel& m, int k) {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "Markov parameter index must be >= 1, got " + std::to_string(k));
  }
  return m.c() * matrix_power(m.a(), k - 1) * m.b();
}

MatrixXd q_matrix(const SubsystemModel& m, int dist) {
  if (dist < 0) {
    throw Error(ErrorCode::kInvalidArgument, "distance must be nonnegative");
  }
  const MatrixXd loop = markov_parameter(m, m.relative_degree()) * m.gamma();
  return matrix_power(loop, dist + 1);
}

MatrixXd closed_loop(const Digraph& g, const SubsystemModel& m) {
  const int n = g.node_count();
  const MatrixXd coupling = m.b() * m.gamma() * m.c();
  return kron(MatrixXd::Identity(n, n), m.a()) + kron(g.adjacency(), coupling);
}

NetworkSystem::NetworkSystem(Digraph graph, SubsystemModel model)
    : graph_(std::move(graph)),
      model_(std::move(model)),
      closed_loop_(netfdi::closed_loop(graph_, model_)) {}

NetworkSystem NetworkSystem::with_graph(Digraph graph) const {
  return NetworkSystem(std::move(graph), model_);
}

NetworkSystem NetworkSystem::without_edge(EdgeLabel label) const {
  return with_graph(graph_.remove_edge(label));
}

ExogenousInput ExogenousInput::zero() { return ExogenousInput(); }

ExogenousInput ExogenousInput::polynomial(std::vector<VectorXd> coefficients) {
  ExogenousInput w;
  w.kind_ = Kind::kPolynomial;
  for (std::size_t k = 1; k < coefficients.size(); ++k) {
    if (coefficients[k].size() != coefficients[0].size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "polynomial input coefficients must share one length");
    }
  }
  w.coefficients_ = std::move(coefficients);
  return w;
}

ExogenousInput ExogenousInput::sinusoid(VectorXd amplitude, VectorXd frequency,
                                        VectorXd phase) {
  if (frequency.size() != amplitude.size() || phase.size() != amplitude.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "sinusoid amplitude, frequency and phase must share one length");
  }
  ExogenousInput w;
  w.kind_ = Kind::kSinusoid;
  w.amplitude_ = std::move(amplitude);
  w.frequency_ = std::move(frequency);
  w.phase_ = std::move(phase);
  return w;
}

VectorXd ExogenousInput::value(double t, int stacked_input_dim) const {
  VectorXd out = VectorXd::Zero(stacked_input_dim);
  switch (kind_) {
    case Kind::kZero:
      return out;
    case Kind::kPolynomial: {
      double power = 1.0;
      for (const VectorXd& c : coefficients_) {
        if (c.size() != stacked_input_dim) {
          throw Error(ErrorCode::kDimensionMismatch,
                      "input length " + std::to_string(c.size()) + " != N*m = " +
                          std::to_string(stacked_input_dim));
        }
        out += power * c;
        power *= t;
      }
      return out;
    }
    case Kind::kSinusoid:
      if (amplitude_.size() != stacked_input_dim) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "input length " + std::to_string(amplitude_.size()) +
                        " != N*m = " + std::to_string(stacked_input_dim));
      }
      return amplitude_.array() * (frequency_.array() * t + phase_.array()).sin();
  }
  return out;
}

VectorXd SimulationTrace::node_output(NodeId p, int sample) const {
  return outputs.col(sample).segment(static_cast<Eigen::Index>(p.zero_based()) * output_dim,
                                     output_dim);
}

const Segment& SimulationTrace::segment_at(int sample, bool left) const {
  for (const Segment& s : segments) {
    if (left ? (sample > s.first_sample && sample <= s.last_sample)
             : (sample >= s.first_sample && sample < s.last_sample)) {
      return s;
    }
  }
  // Grid endpoints: fall back to the only segment touching them.
  return left ? segments.front() : segments.back();
}

SimulationTrace simulate(const NetworkSystem& sys, const VectorXd& x0, double t0,
                         double t_end, double dt,
                         const std::vector<FailureEvent>& schedule,
                         const ExogenousInput& w) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  }
  if (!(t_end > t0)) {
    throw Error(ErrorCode::kInvalidArgument, "time grid must be increasing: t_end <= t0");
  }
  const int nd = sys.stacked_state_dim();
  if (x0.size() != nd) {
    throw Error(ErrorCode::kDimensionMismatch,
                "x0 has length " + std::to_string(x0.size()) + ", expected N*d = " +
                    std::to_string(nd));
  }
  const long steps = std::lround((t_end - t0) / dt);
  if (steps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "horizon shorter than one step");
  }

  // Snap failures to the grid and order them in time.
  std::vector<std::pair<int, FailureEvent>> snapped;
  for (const FailureEvent& f : schedule) {
    const long idx = std::lround((f.time - t0) / dt);
    if (idx < 1 || idx >= steps) {
      throw Error(ErrorCode::kInvalidArgument,
                  "failure of edge " + std::to_string(f.edge.value) + " at t=" +
                      std::to_string(f.time) + " is outside the open horizon");
    }
    snapped.emplace_back(static_cast<int>(idx),
                         FailureEvent{f.edge, t0 + static_cast<double>(idx) * dt});
  }
  std::stable_sort(snapped.begin(), snapped.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < snapped.size(); ++i) {
    if (snapped[i].first == snapped[i - 1].first) {
      throw Error(ErrorCode::kInvalidArgument,
                  "failures of edges " + std::to_string(snapped[i - 1].second.edge.value) +
                      " and " + std::to_string(snapped[i].second.edge.value) +
                      " snap to the same sample");
    }
  }

  const SubsystemModel& model = sys.model();
  const int n_nodes = sys.graph().node_count();
  SimulationTrace trace;
  trace.node_count = n_nodes;
  trace.state_dim = model.state_dim();
  trace.output_dim = model.output_dim();
  trace.output_matrix = model.c();
  trace.autonomous = w.is_zero();
  trace.times.resize(steps + 1);
  for (long n = 0; n <= steps; ++n) trace.times[n] = t0 + static_cast<double>(n) * dt;

  // Segment boundaries.
  Digraph graph = sys.graph();
  int first = 0;
  for (const auto& [idx, f] : snapped) {
    trace.segments.push_back({first, idx, graph, closed_loop(graph, model)});
    graph = graph.remove_edge(f.edge);
    trace.schedule.push_back(f);
    trace.failure_samples.push_back(idx);
    first = idx;
  }
  trace.segments.push_back({first, static_cast<int>(steps), graph, closed_loop(graph, model)});

  trace.states.resize(nd, steps + 1);
  trace.states.col(0) = x0;
  const MatrixXd input_map = kron(MatrixXd::Identity(n_nodes, n_nodes), model.b());
  const int nm = n_nodes * model.input_dim();

  for (const Segment& seg : trace.segments) {
    if (trace.autonomous) {
      const MatrixXd step = expm(seg.closed_loop * dt);
      for (int n = seg.first_sample; n < seg.last_sample; ++n) {
        trace.states.col(n + 1) = step * trace.states.col(n);
      }
      continue;
    }
    auto rhs = [&](double t, const VectorXd& x) -> VectorXd {
      return seg.closed_loop * x + input_map * w.value(t, nm);
    };
    for (int n = seg.first_sample; n < seg.last_sample; ++n) {
      const bool near_failure =
          std::find_if(trace.failure_samples.begin(), trace.failure_samples.end(),
                       [n](int f) { return n == f || n + 1 == f; }) !=
          trace.failure_samples.end();
      const int substeps = near_failure ? 10 : 1;
      const double h = dt / substeps;
      VectorXd x = trace.states.col(n);
      double t = trace.times[n];
      for (int s = 0; s < substeps; ++s) {
        const VectorXd k1 = rhs(t, x);
        const VectorXd k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
        const VectorXd k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
        const VectorXd k4 = rhs(t + h, x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
      }
      trace.states.col(n + 1) = x;
    }
  }

  const MatrixXd output_map = kron(MatrixXd::Identity(n_nodes, n_nodes), model.c());
  trace.outputs = output_map * trace.states;
  return trace;
}

VectorXd output_derivative(const MatrixXd& closed_loop, const MatrixXd& c,
                           const VectorXd& x, NodeId p, int k) {
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "derivative order must be >= 0");
  VectorXd v = x;
  for (int i = 0; i < k; ++i) v = closed_loop * v;
  const auto d = c.cols();
  return c * v.segment(static_cast<Eigen::Index>(p.zero_based()) * d, d);
}

VectorXd one_sided_derivative(const NetworkSystem& pre, const NetworkSystem& post,
                              const VectorXd& x_tf, NodeId p, int k, Side side) {
  const NetworkSystem& sys = side == Side::kLeft ? pre : post;
  return output_derivative(sys.closed_loop(), sys.model().c(), x_tf, p, k);
}

VectorXd jump_oracle(const NetworkSystem& pre, const NetworkSystem& post,
                     const VectorXd& x_tf, NodeId p, int k) {
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "derivative order must be >= 0");
  const MatrixXd& a_pre = pre.closed_loop();
  const MatrixXd& a_post = post.closed_loop();
  const MatrixXd delta_a = a_post - a_pre;
  VectorXd pre_power = x_tf;  // A_pre^i x
  VectorXd diff = VectorXd::Zero(x_tf.size());
  for (int i = 0; i < k; ++i) {
    diff = a_post * diff + delta_a * pre_power;
    pre_power = a_pre * pre_power;
  }
  const MatrixXd& c = pre.model().c();
  const auto d = c.cols();
  return c * diff.segment(static_cast<Eigen::Index>(p.zero_based()) * d, d);
}

JumpPrediction theoretical_jump(const Digraph& g, const SubsystemModel& m,
                                EdgeLabel failed, NodeId p, const VectorXd& x_tf) {
  const LabeledEdge& le = g.edge(failed);
  const Distance dist = distances(g).at(le.edge.head, p);
  if (!dist.is_finite()) return UnobservableAtNode{};
  const int hops = dist.hops();
  const double walks = walk_matrix(g, hops)(p.zero_based(), le.edge.head.zero_based());
  const auto d = m.state_dim();
  const VectorXd x_tail =
      x_tf.segment(static_cast<Eigen::Index>(le.edge.tail.zero_based()) * d, d);
  PredictedJump jump;
  jump.order = m.relative_degree() * (hops + 1);
  jump.value = -le.edge.weight * walks * (q_matrix(m, hops) * (m.c() * x_tail));
  return jump;
}

double fault_replicant_check(const NetworkSystem& sys, EdgeLabel failed,
                             const VectorXd& x0, double t_f, double horizon,
                             double dt) {
  const LabeledEdge& le = sys.graph().edge(failed);
  const long steps = std::lround(horizon / dt);
  const long fail_idx = std::lround(t_f / dt);
  if (fail_idx >= steps) return 0.0;

  // (a) faulty network: the failure applied to the graph.
  const SimulationTrace faulty =
      simulate(sys, x0, 0.0, horizon, dt, {FailureEvent{failed, t_f}});

  // (b) faultless network plus the replicant input through I_N (x) B:
  // (I_N (x) B) f = -g_ij (e_i e_j^T (x) B Gamma C) x.
  const SubsystemModel& m = sys.model();
  const int n = sys.graph().node_count();
  MatrixXd selector = MatrixXd::Zero(n, n);
  selector(le.edge.head.zero_based(), le.edge.tail.zero_based()) = 1.0;
  const MatrixXd replicant_gain =
      -le.edge.weight * kron(selector, m.b() * m.gamma() * m.c());
  const MatrixXd healthy_step = expm(sys.closed_loop() * dt);
  const MatrixXd driven_step = expm((sys.closed_loop() + replicant_gain) * dt);

  VectorXd x = x0;
  double worst = 0.0;
  for (long k = 0; k <= steps; ++k) {
    worst = std::max(worst, (x - faulty.states.col(k)).cwiseAbs().maxCoeff());
    if (k == steps) break;
    x = (k < fail_idx ? healthy_step : driven_step) * x;
  }
  return worst;
}

}  // namespace netfdi
