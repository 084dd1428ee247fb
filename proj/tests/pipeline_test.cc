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

#include <gtest/gtest.h>

#include <filesystem>

#include "netfdi/error.hpp"
#include "netfdi/pipeline.hpp"
#include "netfdi/serialization.hpp"

namespace netfdi {
namespace {

SubsystemModel unit_model() { return SubsystemModel::scalar(-1.0, 1.0, 1.0, 1.0); }

RunOptions example_options() {
  RunOptions o;
  o.sensors = std::vector<NodeId>{NodeId{2}, NodeId{3}};
  o.z = 4;
  o.x0 = Eigen::VectorXd::LinSpaced(5, 1.0, 5.0);
  o.failures = {{EdgeLabel{2}, 5.0}};
  return o;
}

std::string error_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(Serialization, GraphRoundTrip) {
  const Digraph g = gen_cycle(5).remove_edge(EdgeLabel{3});
  const Json j = graph_to_json(g);
  const Digraph back = graph_from_json(j);
  EXPECT_EQ(back.adjacency(), g.adjacency());
  EXPECT_FALSE(back.has_edge(EdgeLabel{3}));
  EXPECT_TRUE(back.has_edge(EdgeLabel{4}));
  EXPECT_FALSE(graph_to_json(gen_cycle(5))["edges"][0].contains("label"));
}

TEST(Serialization, GraphErrorsNameTheEdge) {
  const Json bad = parse_json(R"({"n": 3, "edges": [{"tail": 1, "head": 2}, {"tail": 2, "head": 2}]})", "graph");
  EXPECT_NE(error_message([&] { graph_from_json(bad); }).find("graph.edges[1]"), std::string::npos);
  EXPECT_THROW(parse_json("{", "graph"), Error);
}

TEST(Serialization, ModelRoundTrip) {
  Eigen::MatrixXd a(2, 2), b(2, 1), c(1, 2), gamma(1, 1);
  a << 0, 1, -2, -3;
  b << 0, 1;
  c << 1, 0;
  gamma << 0.25;
  const SubsystemModel m(a, b, c, gamma);
  const SubsystemModel back = model_from_json(model_to_json(m));
  EXPECT_EQ(back.a(), a);
  EXPECT_EQ(back.gamma(), gamma);
  EXPECT_EQ(back.relative_degree(), 2);
  const SubsystemModel scalar =
      model_from_json(parse_json(R"({"A": -1, "B": 1, "C": 1, "Gamma": 1})", "model"));
  EXPECT_EQ(scalar.state_dim(), 1);
}

TEST(Serialization, FormatDoubleRoundTrips) {
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
  EXPECT_EQ(format_double(5.0), "5");
}

TEST(Config, ParseFailure) {
  const FailureEvent f = parse_failure("2@5.5");
  EXPECT_EQ(f.edge.value, 2);
  EXPECT_DOUBLE_EQ(f.time, 5.5);
  EXPECT_THROW(parse_failure("2"), Error);
  EXPECT_THROW(parse_failure("x@1"), Error);
}

TEST(Config, ErrorsNameTheField) {
  const auto msg = [](const char* text) {
    return error_message([&] { run_config_from_json(parse_json(text, "run.json")); });
  };
  EXPECT_NE(msg(R"({"bogus": 1})").find("\"bogus\""), std::string::npos);
  EXPECT_NE(msg(R"({"dt": "fast"})").find("\"dt\""), std::string::npos);
  EXPECT_NE(msg(R"({"dt": -1})").find("\"dt\""), std::string::npos);
  EXPECT_NE(msg(R"({"mode": "spectral"})").find("\"mode\""), std::string::npos);
  EXPECT_NE(msg(R"({"fail": ["3"]})").find("\"fail\""), std::string::npos);
  EXPECT_NE(msg(R"({"sensors": [1, 1]})").find("\"sensors\""), std::string::npos);
}

TEST(Config, ParsesAllFields) {
  const RunConfig c = run_config_from_json(parse_json(
      R"({"graph": "g.json", "model": "m.json", "sensors": [2, 3], "z": 4, "dt": 0.01,
          "horizon": 8, "fail": ["2@5", {"edge": 3, "time": 6}], "mode": "fd", "seed": 7,
          "threads": 2, "exact": true, "sweep_failures": "all-edges"})",
      "run.json"));
  EXPECT_EQ(c.graph_path, "g.json");
  EXPECT_TRUE(c.sweep_all_edges);
  EXPECT_EQ(c.options.sensors->size(), 2u);
  EXPECT_EQ(*c.options.z, 4);
  EXPECT_DOUBLE_EQ(c.options.t_end, 8.0);
  ASSERT_EQ(c.options.failures.size(), 2u);
  EXPECT_EQ(c.options.failures[1].edge.value, 3);
  EXPECT_EQ(c.options.mode, DetectorMode::kFiniteDifference);
  EXPECT_EQ(c.options.seed, 7u);
  const RunOptions back = run_options_from_json(run_options_to_json(c.options));
  EXPECT_EQ(back.failures.size(), 2u);
  EXPECT_EQ(back.mode, DetectorMode::kFiniteDifference);
}

TEST(Pipeline, CycleIsolatesEdgeTwo) {
  const RunResult r = run_pipeline(gen_cycle(5), unit_model(), example_options());
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_EQ(r.events[0].isolation.verdict, Verdict::kUnique);
  EXPECT_EQ(r.events[0].isolation.edges, std::vector<EdgeLabel>{EdgeLabel{2}});
  EXPECT_EQ(r.exit_code(), 0);

  const Json report = run_report_json(r);
  EXPECT_EQ(report["exit_code"], 0);
  const auto again = reisolate_report(parse_json(report.dump(), "report"));
  ASSERT_EQ(again.size(), 1u);
  EXPECT_EQ(again[0].isolation.edges, std::vector<EdgeLabel>{EdgeLabel{2}});
  EXPECT_EQ(again[0].recorded_verdict, "unique");
}

TEST(Pipeline, StarFallsBackToDetectionSet) {
  RunOptions o;
  o.failures = {{EdgeLabel{1}, 5.0}};
  const RunResult r = run_pipeline(gen_star(5), unit_model(), o);
  EXPECT_TRUE(r.sensors_auto);
  EXPECT_EQ(r.sensors.members(), std::vector<NodeId>{NodeId{5}});
  EXPECT_FALSE(r.warnings.empty());
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_EQ(r.events[0].isolation.verdict, Verdict::kAmbiguous);
  EXPECT_EQ(r.exit_code(), 2);
}

TEST(Pipeline, RejectsUnknownFailureEdge) {
  RunOptions o = example_options();
  o.failures = {{EdgeLabel{9}, 5.0}};
  EXPECT_NE(error_message([&] { run_pipeline(gen_cycle(5), unit_model(), o); }).find("\"fail\""),
            std::string::npos);
}

TEST(Pipeline, SweepIsThreadCountIndependent) {
  RunOptions o = example_options();
  o.failures.clear();
  o.threads = 1;
  const SweepResult one = sweep_failures(gen_cycle(5), unit_model(), o);
  o.threads = 4;
  const SweepResult four = sweep_failures(gen_cycle(5), unit_model(), o);
  ASSERT_EQ(one.entries.size(), 5u);
  for (const SweepEntry& e : one.entries) EXPECT_TRUE(e.isolated) << "edge " << e.edge.value;
  EXPECT_EQ(sweep_report_json(one).dump(), sweep_report_json(four).dump());
  EXPECT_EQ(sweep_report_json(one)["isolated_count"], 5);
}

TEST(Pipeline, WorkerCount) {
  EXPECT_EQ(worker_count(3, 10), 3);
  EXPECT_EQ(worker_count(16, 4), 4);
  EXPECT_GE(worker_count(0, 4), 1);
}

TEST(Pipeline, ArtifactsAndCsv) {
  const RunResult r = run_pipeline(gen_cycle(5), unit_model(), example_options());
  const std::string csv = trace_csv(r.trace);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "t,x_1_1,x_2_1,x_3_1,x_4_1,x_5_1,y_1_1,y_2_1,y_3_1,y_4_1,y_5_1");
  const std::string der = derivatives_csv(r.trace, r.sensors, 2);
  EXPECT_EQ(der.substr(0, der.find('\n')), "t,y_2_1_0,y_2_1_1,y_2_1_2,y_3_1_0,y_3_1_1,y_3_1_2");

  const auto dir = std::filesystem::temp_directory_path() / "netfdi_pipeline_test";
  std::filesystem::remove_all(dir);
  write_run_artifacts(r, dir.string());
  for (const char* f : {"report.json", "trace.csv", "derivatives.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  const Json report = parse_json(read_text_file((dir / "report.json").string()), "report");
  EXPECT_EQ(report["events"].size(), 1u);
  std::filesystem::remove_all(dir);
}

TEST(Reproduce, CycleAndUnknownName) {
  const auto dir = std::filesystem::temp_directory_path() / "netfdi_reproduce_test";
  const Json s = reproduce("cycle5", dir.string(), 1);
  EXPECT_EQ(s["D"], parse_json("[[2,1,0,4,3],[3,2,1,0,4]]", "D"));
  EXPECT_THROW(reproduce("torus", dir.string(), 1), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace netfdi
