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

// Networks of identical LTI subsystems coupled through a weighted digraph:
//
//   x_i' = A x_i + B (sum_q g_iq Gamma y_q + w_i),   y_i = C x_i,
//
// stacked as x' = (I_N (x) A + G (x) B Gamma C) x + (I_N (x) B) w. Link
// failures zero one coupling gain at a given time; the state is continuous
// across the failure and only output derivatives jump.

#ifndef NETFDI_DYNAMICS_HPP_
#define NETFDI_DYNAMICS_HPP_

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "netfdi/graph.hpp"

namespace netfdi {

// Absolute tolerance below which a Markov parameter counts as zero.
inline constexpr double kMarkovZeroTolerance = 1e-12;

class SubsystemModel {
 public:
  // A: d x d, B: d x m, C: o x d, Gamma: m x o. Throws kDimensionMismatch on
  // inconsistent shapes and kDegenerateModel when C A^{k-1} B vanishes for
  // every k <= d.
  SubsystemModel(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c,
                 Eigen::MatrixXd gamma);

  static SubsystemModel scalar(double a, double b, double c, double gamma);

  const Eigen::MatrixXd& a() const { return a_; }
  const Eigen::MatrixXd& b() const { return b_; }
  const Eigen::MatrixXd& c() const { return c_; }
  const Eigen::MatrixXd& gamma() const { return gamma_; }

  int state_dim() const { return static_cast<int>(a_.rows()); }
  int input_dim() const { return static_cast<int>(b_.cols()); }
  int output_dim() const { return static_cast<int>(c_.rows()); }
  int relative_degree() const { return relative_degree_; }

 private:
  Eigen::MatrixXd a_, b_, c_, gamma_;
  int relative_degree_ = 0;
};

// Least k >= 1 with C A^{k-1} B != 0, i.e. the least relative degree over
// the entries of H(s) = C (sI - A)^{-1} B.
int relative_degree(const SubsystemModel& m);

// C A^{k-1} B, k >= 1.
Eigen::MatrixXd markov_parameter(const SubsystemModel& m, int k);

// lim_{s->inf} s^{r(dist+1)} [H(s) Gamma]^{dist+1} = (M_r Gamma)^{dist+1},
// an o x o matrix.
Eigen::MatrixXd q_matrix(const SubsystemModel& m, int dist);

// I_N (x) A + G (x) B Gamma C.
Eigen::MatrixXd closed_loop(const Digraph& g, const SubsystemModel& m);

class NetworkSystem {
 public:
  NetworkSystem(Digraph graph, SubsystemModel model);

  const Digraph& graph() const { return graph_; }
  const SubsystemModel& model() const { return model_; }
  const Eigen::MatrixXd& closed_loop() const { return closed_loop_; }
  int stacked_state_dim() const {
    return graph_.node_count() * model_.state_dim();
  }

  NetworkSystem with_graph(Digraph graph) const;
  NetworkSystem without_edge(EdgeLabel label) const;

 private:
  Digraph graph_;
  SubsystemModel model_;
  Eigen::MatrixXd closed_loop_;
};

struct FailureEvent {
  EdgeLabel edge;
  double time = 0.0;
};

// Smooth exogenous input w(t), stacked over nodes (length N*m).
class ExogenousInput {
 public:
  enum class Kind { kZero, kPolynomial, kSinusoid };

  static ExogenousInput zero();
  // w(t) = sum_k coefficients[k] * t^k.
  static ExogenousInput polynomial(std::vector<Eigen::VectorXd> coefficients);
  // w(t) = amplitude .* sin(frequency .* t + phase), elementwise.
  static ExogenousInput sinusoid(Eigen::VectorXd amplitude,
                                 Eigen::VectorXd frequency, Eigen::VectorXd phase);

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::kZero; }
  Eigen::VectorXd value(double t, int stacked_input_dim) const;

 private:
  Kind kind_ = Kind::kZero;
  std::vector<Eigen::VectorXd> coefficients_;
  Eigen::VectorXd amplitude_, frequency_, phase_;
};

// A maximal failure-free stretch of a trace. Samples first..last inclusive
// are propagated with `closed_loop`; neighbouring segments share their
// boundary sample.
struct Segment {
  int first_sample = 0;
  int last_sample = 0;
  Digraph graph;
  Eigen::MatrixXd closed_loop;
};

struct SimulationTrace {
  std::vector<double> times;
  // Column n is the stacked state (N*d) or output (N*o) at times[n].
  Eigen::MatrixXd states;
  Eigen::MatrixXd outputs;
  // Failure events with times snapped to the grid.
  std::vector<FailureEvent> schedule;
  std::vector<int> failure_samples;
  std::vector<Segment> segments;
  Eigen::MatrixXd output_matrix;  // C of one subsystem
  int node_count = 0;
  int state_dim = 0;
  int output_dim = 0;
  bool autonomous = true;  // w == 0

  int sample_count() const { return static_cast<int>(times.size()); }
  double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
  Eigen::VectorXd node_output(NodeId p, int sample) const;
  // Segment used on the interval (n-1, n) when `left`, else (n, n+1).
  const Segment& segment_at(int sample, bool left) const;
};

// Piecewise simulation on the grid t0 + n*dt. Failure times are snapped to
// the nearest grid sample and must land strictly inside the horizon. With
// w == 0 each step is x <- expm(A_seg dt) x; otherwise classical RK4 with ten
// substeps on the intervals touching a failure.
SimulationTrace simulate(const NetworkSystem& sys, const Eigen::VectorXd& x0,
                         double t0, double t_end, double dt,
                         const std::vector<FailureEvent>& schedule,
                         const ExogenousInput& w = ExogenousInput::zero());

enum class Side { kLeft, kRight };

// (e_p^T (x) C) A^k x for an autonomous closed loop.
Eigen::VectorXd output_derivative(const Eigen::MatrixXd& closed_loop,
                                  const Eigen::MatrixXd& c,
                                  const Eigen::VectorXd& x, NodeId p, int k);

// Exact one-sided k-th derivative of y_p at the failure instant, using the
// pre-failure closed loop for the left limit and the post-failure one for
// the right limit.
Eigen::VectorXd one_sided_derivative(const NetworkSystem& pre,
                                     const NetworkSystem& post,
                                     const Eigen::VectorXd& x_tf, NodeId p,
                                     int k, Side side);

// Delta_{p,k} = (e_p^T (x) C)(A_post^k - A_pre^k) x_tf, evaluated through the
// telescoped recursion d_k = A_post d_{k-1} + (A_post - A_pre) A_pre^{k-1} x
// so that structurally zero jumps are not swamped by cancellation.
Eigen::VectorXd jump_oracle(const NetworkSystem& pre, const NetworkSystem& post,
                            const Eigen::VectorXd& x_tf, NodeId p, int k);

struct PredictedJump {
  int order = 0;
  Eigen::VectorXd value;
};

struct UnobservableAtNode {};

using JumpPrediction = std::variant<PredictedJump, UnobservableAtNode>;

// Closed-form first nonzero jump at node p when edge (j -> i) fails:
// order r (dist(i,p)+1) and value -g_ij [G^dist]_{pi} Q C x_j(t_f), where
// Q = (M_r Gamma)^{dist+1} already carries the trailing Gamma.
JumpPrediction theoretical_jump(const Digraph& g, const SubsystemModel& m,
                                EdgeLabel failed, NodeId p,
                                const Eigen::VectorXd& x_tf);

// Max-norm gap between the faulty network and the faultless network driven
// by the fault-replicant input f = -g_ij (e_i e_j^T (x) Gamma C) x, t >= t_f.
// A failure time at or past the horizon leaves both runs identical.
double fault_replicant_check(const NetworkSystem& sys, EdgeLabel failed,
                             const Eigen::VectorXd& x0, double t_f,
                             double horizon, double dt = 1e-2);

}  // namespace netfdi

#endif  // NETFDI_DYNAMICS_HPP_
