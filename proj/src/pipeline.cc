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


#include "netfdi/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <thread>

#include "netfdi/error.hpp"
#include "netfdi/rng.hpp"

namespace netfdi {

namespace {

Error config_error(const std::string& field, const std::string& what) {
  return Error(ErrorCode::kInvalidArgument, "config field \"" + field + "\": " + what);
}

double number_field(const Json& j, const char* field) {
  if (!j.at(field).is_number()) throw config_error(field, "must be a number");
  return j.at(field).get<double>();
}

const char* mode_name(DetectorMode m) {
  return m == DetectorMode::kAnalytic ? "analytic" : "fd";
}

DetectorMode parse_mode(const std::string& s) {
  if (s == "analytic") return DetectorMode::kAnalytic;
  if (s == "fd" || s == "finite-difference") return DetectorMode::kFiniteDifference;
  throw config_error("mode", "expected \"analytic\" or \"fd\", got \"" + s + "\"");
}

// Everything that does not depend on the simulated failure.
struct Prepared {
  RunResult result;
  DetectorConfig detector;
};

Prepared prepare(const Digraph& g, const SubsystemModel& m, const RunOptions& o) {
  if (!(o.dt > 0.0)) throw config_error("dt", "must be > 0");
  if (!(o.t_end > o.t0)) throw config_error("t_end", "must exceed t0");
  Prepared p;
  RunResult& r = p.result;
  r.r = m.relative_degree();
  r.z = o.z.value_or(default_derivative_budget(g, r.r));
  if (r.z < r.r) {
    throw config_error("z", "must be >= the relative degree " + std::to_string(r.r));
  }
  r.relation = relation_matrix(g, r.r, r.z);
  r.placement = approximation_report(r.relation, o.exact && g.node_count() <= kBruteForceMaxNodes);
  if (o.sensors) {
    try {
      r.sensors = SensorSet(*o.sensors);
      r.sensors.validate_for(g.node_count());
    } catch (const Error& e) {
      throw config_error("sensors", e.what());
    }
    if (r.sensors.empty()) throw config_error("sensors", "must not be empty");
  } else {
    r.sensors_auto = true;
    if (r.placement.m_i) {
      r.sensors = *r.placement.m_i;
    } else {
      r.sensors = r.placement.m_d;
      r.warnings.push_back("isolation impossible (f_I(V) = " +
                           std::to_string(r.placement.f_i_of_v) +
                           "); using the detection set only");
    }
    if (r.sensors.empty()) {
      r.sensors.insert(NodeId{1});
      r.warnings.push_back("graph has no edges; monitoring node 1");
    }
  }
  r.table = lookup_table(r.relation, r.sensors);

  const int dim = g.node_count() * m.state_dim();
  if (o.x0) {
    if (o.x0->size() != dim) {
      throw config_error("x0", "expected " + std::to_string(dim) + " entries, got " +
                                   std::to_string(o.x0->size()));
    }
    r.x0 = *o.x0;
  } else {
    Rng rng(o.seed);
    r.x0.resize(dim);
    for (int i = 0; i < dim; ++i) r.x0(i) = rng.uniform(-1.0, 1.0);
  }

  p.detector.z = r.z;
  p.detector.mode = o.mode;
  p.detector.validate(r.r);
  return p;
}

std::vector<EventOutcome> detect_and_isolate(const SimulationTrace& trace, const RunResult& r,
                                             const DetectorConfig& cfg) {
  std::vector<EventOutcome> out;
  for (const DetectionEvent& ev : detect(trace, r.sensors, cfg)) {
    out.push_back({ev, isolate(ev.signature, r.table)});
  }
  return out;
}

void check_failures(const Digraph& g, const std::vector<FailureEvent>& failures) {
  for (const FailureEvent& f : failures) {
    if (!g.has_edge(f.edge)) {
      throw config_error("fail", "no edge with label " + std::to_string(f.edge.value));
    }
  }
}

Json event_json(const EventOutcome& e) {
  return {{"t", e.event.t},
          {"sample", e.event.sample},
          {"signature", e.event.signature.k},
          {"verdict", verdict_name(e.isolation.verdict)},
          {"edges", edges_to_json(e.isolation.edges)}};
}

Json events_json(const std::vector<EventOutcome>& events) {
  Json out = Json::array();
  for (const EventOutcome& e : events) out.push_back(event_json(e));
  return out;
}

Json common_json(const RunResult& r) {
  Json warnings = Json::array();
  for (const std::string& w : r.warnings) warnings.push_back(w);
  return {{"r", r.r},
          {"z", r.z},
          {"sensors", sensors_to_json(r.sensors)},
          {"sensors_auto", r.sensors_auto},
          {"tables", tables_to_json(r.relation, &r.table)},
          {"placement", placement_to_json(r.placement)},
          {"warnings", std::move(warnings)}};
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create directory " + dir + ": " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

std::vector<int> int_list(const Json& j, const std::string& field) {
  if (!j.is_array()) throw config_error(field, "must be an array of integers");
  std::vector<int> out;
  for (const Json& v : j) {
    if (!v.is_number_integer()) throw config_error(field, "must be an array of integers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

FailureEvent parse_failure(const std::string& text) {
  const auto at = text.find('@');
  if (at == std::string::npos || at == 0 || at + 1 == text.size()) {
    throw config_error("fail", "expected EDGE@TIME, got \"" + text + "\"");
  }
  try {
    std::size_t used = 0;
    const std::string edge = text.substr(0, at);
    const int label = std::stoi(edge, &used);
    if (used != edge.size() || label < 1) throw std::invalid_argument(edge);
    const std::string time = text.substr(at + 1);
    const double t = std::stod(time, &used);
    if (used != time.size()) throw std::invalid_argument(time);
    return {EdgeLabel{label}, t};
  } catch (const std::logic_error&) {
    throw config_error("fail", "expected EDGE@TIME, got \"" + text + "\"");
  }
}

RunOptions run_options_from_json(const Json& j) {
  RunConfig c = run_config_from_json(j);
  return c.options;
}

RunConfig run_config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "config must be a JSON object");
  static const std::set<std::string> known = {
      "graph", "model", "out_dir", "sweep_failures", "sensors", "z",    "dt",    "t0",
      "t_end", "horizon", "x0",    "fail",           "mode",    "seed", "threads", "exact"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw config_error(key, "unknown field");
  }
  RunConfig c;
  RunOptions& o = c.options;
  auto string_field = [&j](const char* field) {
    if (!j.at(field).is_string()) throw config_error(field, "must be a string");
    return j.at(field).get<std::string>();
  };
  if (j.contains("graph")) c.graph_path = string_field("graph");
  if (j.contains("model")) c.model_path = string_field("model");
  if (j.contains("out_dir")) c.out_dir = string_field("out_dir");
  if (j.contains("sweep_failures")) {
    const std::string s = string_field("sweep_failures");
    if (s != "all-edges" && s != "none") {
      throw config_error("sweep_failures", "expected \"all-edges\", got \"" + s + "\"");
    }
    c.sweep_all_edges = s == "all-edges";
  }
  if (j.contains("sensors")) {
    const Json& s = j.at("sensors");
    if (s.is_string()) {
      if (s.get<std::string>() != "auto") throw config_error("sensors", "expected a list or \"auto\"");
    } else {
      std::vector<NodeId> ids;
      for (int v : int_list(s, "sensors")) ids.push_back(NodeId{v});
      o.sensors = std::move(ids);
    }
  }
  if (j.contains("z")) {
    const Json& z = j.at("z");
    if (z.is_string()) {
      if (z.get<std::string>() != "auto") throw config_error("z", "expected an integer or \"auto\"");
    } else if (z.is_number_integer()) {
      o.z = z.get<int>();
    } else {
      throw config_error("z", "expected an integer or \"auto\"");
    }
  }
  if (j.contains("dt")) o.dt = number_field(j, "dt");
  if (j.contains("t0")) o.t0 = number_field(j, "t0");
  if (j.contains("horizon")) o.t_end = number_field(j, "horizon");
  if (j.contains("t_end")) o.t_end = number_field(j, "t_end");
  if (j.contains("x0")) {
    const Json& x = j.at("x0");
    if (!x.is_array()) throw config_error("x0", "must be an array of numbers");
    Eigen::VectorXd v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!x.at(i).is_number()) throw config_error("x0", "must be an array of numbers");
      v(i) = x.at(i).get<double>();
    }
    o.x0 = v;
  }
  if (j.contains("fail")) {
    const Json& f = j.at("fail");
    if (!f.is_array()) throw config_error("fail", "must be an array");
    for (const Json& e : f) {
      if (e.is_string()) {
        o.failures.push_back(parse_failure(e.get<std::string>()));
      } else if (e.is_object() && e.contains("edge") && e.contains("time") &&
                 e.at("edge").is_number_integer() && e.at("time").is_number()) {
        o.failures.push_back({EdgeLabel{e.at("edge").get<int>()}, e.at("time").get<double>()});
      } else {
        throw config_error("fail", "entries must be \"EDGE@TIME\" or {\"edge\", \"time\"}");
      }
    }
  }
  if (j.contains("mode")) o.mode = parse_mode(string_field("mode"));
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw config_error("seed", "must be a non-negative integer");
    o.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("threads")) {
    if (!j.at("threads").is_number_integer() || j.at("threads").get<int>() < 0) {
      throw config_error("threads", "must be a non-negative integer");
    }
    o.threads = j.at("threads").get<int>();
  }
  if (j.contains("exact")) {
    if (!j.at("exact").is_boolean()) throw config_error("exact", "must be a boolean");
    o.exact = j.at("exact").get<bool>();
  }
  if (!(o.dt > 0.0)) throw config_error("dt", "must be > 0");
  if (!(o.t_end > o.t0)) {
    throw config_error(j.contains("t_end") || !j.contains("horizon") ? "t_end" : "horizon",
                       "must exceed t0");
  }
  if (o.z && *o.z < 1) throw config_error("z", "must be >= 1");
  if (o.sensors) {
    std::set<int> seen;
    for (NodeId v : *o.sensors) {
      if (v.value < 1) throw config_error("sensors", "node ids are 1-based");
      if (!seen.insert(v.value).second) {
        throw config_error("sensors", "duplicate node " + std::to_string(v.value));
      }
    }
  }
  return c;
}

Json run_options_to_json(const RunOptions& o) {
  Json j;
  if (o.sensors) {
    Json s = Json::array();
    for (NodeId v : *o.sensors) s.push_back(v.value);
    j["sensors"] = std::move(s);
  } else {
    j["sensors"] = "auto";
  }
  j["z"] = o.z ? Json(*o.z) : Json("auto");
  j["dt"] = o.dt;
  j["t0"] = o.t0;
  j["t_end"] = o.t_end;
  if (o.x0) j["x0"] = std::vector<double>(o.x0->data(), o.x0->data() + o.x0->size());
  Json fail = Json::array();
  for (const FailureEvent& f : o.failures) fail.push_back({{"edge", f.edge.value}, {"time", f.time}});
  j["fail"] = std::move(fail);
  j["mode"] = mode_name(o.mode);
  j["seed"] = o.seed;
  j["threads"] = o.threads;
  j["exact"] = o.exact;
  return j;
}

int RunResult::exit_code() const {
  for (const EventOutcome& e : events) {
    if (e.isolation.verdict != Verdict::kUnique) return 2;
  }
  return 0;
}

RunResult run_pipeline(const Digraph& g, const SubsystemModel& m, const RunOptions& o) {
  check_failures(g, o.failures);
  Prepared p = prepare(g, m, o);
  RunResult& r = p.result;
  r.trace = simulate(NetworkSystem(g, m), r.x0, o.t0, o.t_end, o.dt, o.failures);
  r.events = detect_and_isolate(r.trace, r, p.detector);
  return std::move(p.result);
}

Json run_report_json(const RunResult& r) {
  Json j = common_json(r);
  j["events"] = events_json(r.events);
  Json failures = Json::array();
  for (const FailureEvent& f : r.trace.schedule) {
    failures.push_back({{"edge", f.edge.value}, {"t", f.time}});
  }
  j["failures"] = std::move(failures);
  j["samples"] = r.trace.sample_count();
  j["dt"] = r.trace.dt();
  j["exit_code"] = r.exit_code();
  return j;
}

void write_run_artifacts(const RunResult& r, const std::string& out_dir) {
  ensure_dir(out_dir);
  write_text_file(join_path(out_dir, "report.json"), run_report_json(r).dump(2) + "\n");
  write_text_file(join_path(out_dir, "trace.csv"), trace_csv(r.trace));
  write_text_file(join_path(out_dir, "derivatives.csv"), derivatives_csv(r.trace, r.sensors, r.z));
}

SimulationTrace simulate_with_options(const Digraph& g, const SubsystemModel& m,
                                      const RunOptions& o) {
  check_failures(g, o.failures);
  if (!(o.dt > 0.0)) throw config_error("dt", "must be > 0");
  if (!(o.t_end > o.t0)) throw config_error("t_end", "must exceed t0");
  const int dim = g.node_count() * m.state_dim();
  Eigen::VectorXd x0;
  if (o.x0) {
    if (o.x0->size() != dim) {
      throw config_error("x0", "expected " + std::to_string(dim) + " entries");
    }
    x0 = *o.x0;
  } else {
    Rng rng(o.seed);
    x0.resize(dim);
    for (int i = 0; i < dim; ++i) x0(i) = rng.uniform(-1.0, 1.0);
  }
  return simulate(NetworkSystem(g, m), x0, o.t0, o.t_end, o.dt, o.failures);
}

int worker_count(int requested, int jobs) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("NETFDI_THREADS")) n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, std::min(n, jobs));
}

int SweepResult::exit_code() const {
  for (const SweepEntry& e : entries) {
    if (!e.isolated) return 2;
  }
  return 0;
}

SweepResult sweep_failures(const Digraph& g, const SubsystemModel& m, const RunOptions& o) {
  check_failures(g, o.failures);
  Prepared p = prepare(g, m, o);
  const double t_f = o.failures.empty() ? 0.5 * (o.t0 + o.t_end) : o.failures.front().time;
  const NetworkSystem sys(g, m);

  SweepResult out;
  out.entries.resize(g.edges().size());
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(out.entries.size());
  auto work = [&] {
    for (std::size_t i = next++; i < out.entries.size(); i = next++) {
      SweepEntry& entry = out.entries[i];
      entry.edge = g.edges()[i].label;
      entry.t_f = t_f;
      try {
        const SimulationTrace trace =
            simulate(sys, p.result.x0, o.t0, o.t_end, o.dt, {{entry.edge, t_f}});
        entry.events = detect_and_isolate(trace, p.result, p.detector);
        entry.isolated = entry.events.size() == 1 &&
                         entry.events[0].isolation.verdict == Verdict::kUnique &&
                         entry.events[0].isolation.edges.front() == entry.edge;
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int workers = worker_count(o.threads, static_cast<int>(out.entries.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  for (const std::string& e : errors) {
    if (!e.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep failed: " + e);
  }
  out.base = std::move(p.result);
  return out;
}

Json sweep_report_json(const SweepResult& s) {
  Json j = common_json(s.base);
  Json entries = Json::array();
  int isolated = 0;
  for (const SweepEntry& e : s.entries) {
    isolated += e.isolated ? 1 : 0;
    entries.push_back({{"edge", e.edge.value},
                       {"t_f", e.t_f},
                       {"isolated", e.isolated},
                       {"events", events_json(e.events)}});
  }
  j["sweep"] = std::move(entries);
  j["isolated_count"] = isolated;
  j["edge_count"] = static_cast<int>(s.entries.size());
  j["exit_code"] = s.exit_code();
  return j;
}

LookupTable lookup_table_from_json(const Json& tables) {
  auto need = [&tables](const char* field) -> const Json& {
    if (!tables.is_object() || !tables.contains(field)) {
      throw Error(ErrorCode::kParse, "tables: missing field \"" + std::string(field) + "\"");
    }
    return tables.at(field);
  };
  LookupTable t;
  const std::vector<int> sensors = int_list(need("sensors"), "sensors");
  const std::vector<int> edges = int_list(need("edges"), "edges");
  for (int v : sensors) t.sensors.insert(NodeId{v});
  for (int e : edges) t.edges.push_back(EdgeLabel{e});
  const Json& d = need("D");
  if (!d.is_array() || d.size() != sensors.size()) {
    throw Error(ErrorCode::kParse, "tables: field \"D\" must have one row per sensor");
  }
  t.d = IntMatrix(static_cast<int>(sensors.size()), static_cast<int>(edges.size()));
  for (std::size_t s = 0; s < sensors.size(); ++s) {
    const std::vector<int> row = int_list(d.at(s), "D");
    if (row.size() != edges.size()) {
      throw Error(ErrorCode::kParse, "tables: field \"D\" must have one column per edge");
    }
    for (std::size_t q = 0; q < edges.size(); ++q) t.d(static_cast<int>(s), static_cast<int>(q)) = row[q];
  }
  if (!need("z").is_number_integer() || !need("r").is_number_integer()) {
    throw Error(ErrorCode::kParse, "tables: fields \"z\" and \"r\" must be integers");
  }
  t.z = need("z").get<int>();
  t.r = need("r").get<int>();
  return t;
}

std::vector<ReisolationOutcome> reisolate_report(const Json& report) {
  if (!report.is_object() || !report.contains("tables") || !report.contains("events")) {
    throw Error(ErrorCode::kParse, "report: fields \"tables\" and \"events\" are required");
  }
  const LookupTable table = lookup_table_from_json(report.at("tables"));
  std::vector<ReisolationOutcome> out;
  for (const Json& ev : report.at("events")) {
    if (!ev.is_object() || !ev.contains("signature") || !ev.contains("t")) {
      throw Error(ErrorCode::kParse, "report: events need \"signature\" and \"t\"");
    }
    ReisolationOutcome o;
    o.signature.k = int_list(ev.at("signature"), "signature");
    o.signature.t_f = ev.at("t").get<double>();
    o.isolation = isolate(o.signature, table);
    if (ev.contains("verdict") && ev.at("verdict").is_string()) {
      o.recorded_verdict = ev.at("verdict").get<std::string>();
    }
    out.push_back(std::move(o));
  }
  return out;
}

Json reproduce(const std::string& name, const std::string& out_dir, std::uint64_t seed) {
  const SubsystemModel unit = SubsystemModel::scalar(-1.0, 1.0, 1.0, 1.0);
  Json summary = {{"example", name}};
  if (name == "cycle5") {
    const Digraph g = gen_cycle(5);
    RunOptions o;
    o.sensors = std::vector<NodeId>{NodeId{2}, NodeId{3}};
    o.z = 4;
    o.x0 = Eigen::VectorXd::LinSpaced(5, 1.0, 5.0);
    o.failures = {{EdgeLabel{2}, 5.0}};
    o.seed = seed;
    const RunResult r = run_pipeline(g, unit, o);
    ensure_dir(out_dir);
    write_run_artifacts(r, out_dir);
    write_text_file(join_path(out_dir, "graph.json"), graph_to_json(g).dump(2) + "\n");
    write_text_file(join_path(out_dir, "model.json"), model_to_json(unit).dump(2) + "\n");
    write_text_file(join_path(out_dir, "tables.json"),
                    tables_to_json(r.relation, &r.table).dump(2) + "\n");
    summary["R"] = int_matrix_to_json(r.relation.entries);
    summary["D"] = int_matrix_to_json(r.table.d);
    summary["events"] = events_json(r.events);
  } else if (name == "star5") {
    const Digraph g = gen_star(5);
    RunOptions o;
    o.failures = {{EdgeLabel{1}, 5.0}};
    o.seed = seed;
    o.exact = true;
    const RunResult r = run_pipeline(g, unit, o);
    ensure_dir(out_dir);
    write_run_artifacts(r, out_dir);
    write_text_file(join_path(out_dir, "graph.json"), graph_to_json(g).dump(2) + "\n");
    write_text_file(join_path(out_dir, "tables.json"),
                    tables_to_json(r.relation, &r.table).dump(2) + "\n");
    write_text_file(join_path(out_dir, "placement.json"),
                    placement_to_json(r.placement).dump(2) + "\n");
    summary["R"] = int_matrix_to_json(r.relation.entries);
    summary["M_D"] = sensors_to_json(r.placement.m_d);
    summary["f_I_of_V"] = r.placement.f_i_of_v;
    summary["isolation_possible"] = r.placement.m_i.has_value();
    summary["events"] = events_json(r.events);
  } else if (name == "rgg") {
    const Digraph g = gen_random_geometric(50, 1.0, kRggRadius, seed);
    // Diagonal dominance keeps the network stable for any edge pattern.
    double max_in = 0.0;
    const Eigen::MatrixXd adj = g.adjacency();
    for (Eigen::Index i = 0; i < adj.rows(); ++i) max_in = std::max(max_in, adj.row(i).sum());
    const SubsystemModel model = SubsystemModel::scalar(-(max_in + 1.0), 1.0, 1.0, 1.0);
    RunOptions o;
    o.t_end = 2.0;
    o.seed = seed;
    if (g.edge_count() > 0) o.failures = {{g.edges().front().label, 1.0}};
    const RunResult r = run_pipeline(g, model, o);
    ensure_dir(out_dir);
    write_run_artifacts(r, out_dir);
    write_text_file(join_path(out_dir, "graph.json"), graph_to_json(g).dump(2) + "\n");
    write_text_file(join_path(out_dir, "model.json"), model_to_json(model).dump(2) + "\n");
    write_text_file(join_path(out_dir, "placement.json"),
                    placement_to_json(r.placement).dump(2) + "\n");
    // Unresolved-edge counts along the greedy detection order.
    std::vector<int> unresolved;
    SensorSet prefix;
    unresolved.push_back(resolution_deficit(r.relation, prefix));
    for (NodeId v : r.placement.m_d.members()) {
      prefix.insert(v);
      unresolved.push_back(resolution_deficit(r.relation, prefix));
    }
    summary["seed"] = seed;
    summary["radius"] = kRggRadius;
    summary["nodes"] = g.node_count();
    summary["edges"] = g.edge_count();
    summary["z"] = r.z;
    summary["M_D_size"] = r.placement.m_d.size();
    summary["M_I_size"] = r.placement.m_i ? Json(r.placement.m_i->size()) : Json(nullptr);
    summary["f_D_of_M_D"] = coverage_deficit(r.relation, r.placement.m_d);
    summary["unresolved_along_M_D"] = unresolved;
    summary["unresolved_along_M_I"] = r.placement.f_i_trace;
    summary["f_I_of_V"] = r.placement.f_i_of_v;
    summary["events"] = events_json(r.events);
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown example \"" + name + "\"; expected cycle5, star5 or rgg");
  }
  write_text_file(join_path(out_dir, "summary.json"), summary.dump(2) + "\n");
  return summary;
}

}  // namespace netfdi
