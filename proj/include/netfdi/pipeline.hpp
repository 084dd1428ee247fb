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

// End-to-end workflow: analyze, place, simulate, detect, isolate, report.

#ifndef NETFDI_PIPELINE_HPP_
#define NETFDI_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netfdi/dynamics.hpp"
#include "netfdi/fdi.hpp"
#include "netfdi/graph.hpp"
#include "netfdi/placement.hpp"
#include "netfdi/serialization.hpp"

namespace netfdi {

// Radius giving about 200 directed edges for 50 nodes on the unit square.
inline constexpr double kRggRadius = 0.256;

struct RunOptions {
  // nullopt selects sensors by placement.
  std::optional<std::vector<NodeId>> sensors;
  // nullopt selects r (finite_diameter + 1).
  std::optional<int> z;
  double dt = 1e-3;
  double t0 = 0.0;
  double t_end = 10.0;
  // nullopt draws x0 uniformly from [-1, 1] using `seed`.
  std::optional<Eigen::VectorXd> x0;
  std::vector<FailureEvent> failures;
  DetectorMode mode = DetectorMode::kAnalytic;
  std::uint64_t seed = 1;
  // 0 uses NETFDI_THREADS, else the hardware concurrency.
  int threads = 0;
  // Compute brute-force optima in the placement report.
  bool exact = false;
};

// run.json: the options plus file locations and the sweep switch.
struct RunConfig {
  std::string graph_path;
  std::string model_path;
  std::string out_dir = ".";
  bool sweep_all_edges = false;
  RunOptions options;
};

// Parses "EDGE@TIME".
FailureEvent parse_failure(const std::string& text);

// Accepts every RunOptions field plus "graph", "model", "out_dir" and
// "sweep_failures": "all-edges". Errors name the offending field.
RunConfig run_config_from_json(const Json& j);
RunOptions run_options_from_json(const Json& j);
Json run_options_to_json(const RunOptions& o);

struct EventOutcome {
  DetectionEvent event;
  IsolationResult isolation;
};

struct RunResult {
  int r = 1;
  int z = 1;
  RelationMatrix relation;
  PlacementReport placement;
  SensorSet sensors;
  bool sensors_auto = false;
  LookupTable table;
  Eigen::VectorXd x0;
  SimulationTrace trace;
  std::vector<EventOutcome> events;
  std::vector<std::string> warnings;

  // 0, or 2 when some event is not uniquely isolated.
  int exit_code() const;
};

RunResult run_pipeline(const Digraph& g, const SubsystemModel& m, const RunOptions& o);

// {"events": [{"t", "signature", "verdict", "edges"}], ...} plus tables,
// placement, sensors and warnings.
Json run_report_json(const RunResult& r);

// Writes report.json, trace.csv and derivatives.csv into `out_dir`.
void write_run_artifacts(const RunResult& r, const std::string& out_dir);

// Simulation only, using the options' failures, x0 and grid.
SimulationTrace simulate_with_options(const Digraph& g, const SubsystemModel& m,
                                      const RunOptions& o);

struct SweepEntry {
  EdgeLabel edge;
  double t_f = 0.0;
  std::vector<EventOutcome> events;
  // True iff exactly one event isolates exactly this edge.
  bool isolated = false;
};

struct SweepResult {
  RunResult base;  // Tables and placement; no failure simulated.
  std::vector<SweepEntry> entries;  // Label order.

  int exit_code() const;
};

// Fails each edge in turn at the first configured failure time (midpoint of
// the horizon when none is given). Simulations run concurrently.
SweepResult sweep_failures(const Digraph& g, const SubsystemModel& m, const RunOptions& o);
Json sweep_report_json(const SweepResult& s);

// Worker count: `requested` if positive, else NETFDI_THREADS, else the
// hardware concurrency; never above `jobs` and never below 1.
int worker_count(int requested, int jobs);

// Rebuilds a lookup table from run_report_json or tables_to_json output.
LookupTable lookup_table_from_json(const Json& tables);

// Re-isolates every serialized event signature of a report.
struct ReisolationOutcome {
  JumpSignature signature;
  IsolationResult isolation;
  std::string recorded_verdict;
};
std::vector<ReisolationOutcome> reisolate_report(const Json& report);

// Regenerates a named example ("cycle5", "star5", "rgg") into `out_dir` and
// returns a summary. Throws kInvalidArgument for unknown names.
Json reproduce(const std::string& name, const std::string& out_dir, std::uint64_t seed);

}  // namespace netfdi

#endif  // NETFDI_PIPELINE_HPP_
