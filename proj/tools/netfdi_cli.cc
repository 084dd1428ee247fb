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


// netfdi command-line tool. Built on the C interface only.

#include <cstdio>
#include <filesystem>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netfdi/netfdi.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 2;
constexpr int kExitConfig = 3;

struct CliFailure {
  std::string message;
};

void check(nf_status s) {
  if (s != NF_OK) throw CliFailure{std::string(nf_status_name(s)) + ": " + nf_last_error_message()};
}

// Owns a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  nf_string_free(s);
  return out;
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
};

using GraphHandle = Handle<nf_graph, nf_graph_free>;
using ModelHandle = Handle<nf_model, nf_model_free>;
using RunHandle = Handle<nf_run_result, nf_run_result_free>;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliFailure{"cannot write " + path};
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{"cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_file(const std::string& path) {
  try {
    return Json::parse(slurp(path));
  } catch (const Json::parse_error& e) {
    throw CliFailure{path + ": " + e.what()};
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> int_list(const std::string& s, const std::string& flag) {
  std::vector<int> out;
  for (const std::string& item : split_commas(s)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw CliFailure{flag + ": expected a comma-separated list of integers, got \"" + s + "\""};
    }
  }
  return out;
}

std::vector<double> double_list(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  for (const std::string& item : split_commas(s)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw CliFailure{flag + ": expected a comma-separated list of numbers, got \"" + s + "\""};
    }
  }
  return out;
}

// Flags shared by simulate and run; each maps onto a run.json field.
struct RunFlags {
  std::string sensors;
  std::string z;
  double dt = 0;
  double t0 = 0;
  double t_end = 0;
  std::string x0;
  std::vector<std::string> fail;
  std::string mode;
  std::uint64_t seed = 0;
  int threads = 0;
  bool exact = false;
  CLI::Option* dt_opt = nullptr;
  CLI::Option* t0_opt = nullptr;
  CLI::Option* t_end_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* threads_opt = nullptr;

  void add_to(CLI::App* app, bool with_detector) {
    dt_opt = app->add_option("--dt", dt, "Sample spacing");
    t0_opt = app->add_option("--t0", t0, "Start time");
    t_end_opt = app->add_option("--t-end,--horizon", t_end, "End time");
    app->add_option("--x0", x0, "Initial stacked state, comma separated");
    app->add_option("--fail", fail, "Failure EDGE@TIME (repeatable)");
    seed_opt = app->add_option("--seed", seed, "Seed for the random initial state");
    if (with_detector) {
      app->add_option("--sensors", sensors, "Sensor nodes, comma separated, or auto");
      app->add_option("--z", z, "Derivative budget or auto");
      app->add_option("--mode", mode, "Detector: analytic or fd");
      threads_opt = app->add_option("--threads", threads, "Worker threads for sweeps");
      app->add_flag("--exact", exact, "Add brute-force optima to the placement report");
    }
  }

  void merge_into(Json& j) const {
    if (!sensors.empty()) {
      if (sensors == "auto") {
        j["sensors"] = "auto";
      } else {
        j["sensors"] = int_list(sensors, "--sensors");
      }
    }
    if (!z.empty()) {
      if (z == "auto") {
        j["z"] = "auto";
      } else {
        const auto v = int_list(z, "--z");
        if (v.size() != 1) throw CliFailure{"--z: expected an integer or auto"};
        j["z"] = v.front();
      }
    }
    if (dt_opt && dt_opt->count()) j["dt"] = dt;
    if (t0_opt && t0_opt->count()) j["t0"] = t0;
    if (t_end_opt && t_end_opt->count()) {
      j.erase("horizon");
      j["t_end"] = t_end;
    }
    if (!x0.empty()) j["x0"] = double_list(x0, "--x0");
    if (!fail.empty()) j["fail"] = fail;
    if (!mode.empty()) j["mode"] = mode;
    if (seed_opt && seed_opt->count()) j["seed"] = seed;
    if (threads_opt && threads_opt->count()) j["threads"] = threads;
    if (exact) j["exact"] = true;
  }
};

std::string take_string(Json& j, const char* field) {
  if (!j.contains(field)) return {};
  if (!j.at(field).is_string()) throw CliFailure{std::string("config field \"") + field + "\" must be a string"};
  std::string s = j.at(field).get<std::string>();
  j.erase(field);
  return s;
}

int relative_degree_from(const std::string& model_path, int fallback) {
  if (model_path.empty()) return fallback;
  ModelHandle m;
  check(nf_model_load(model_path.c_str(), &m.ptr));
  int r = 0;
  check(nf_model_relative_degree(m.ptr, &r));
  return r;
}

void print_events(const Json& report) {
  for (const Json& e : report.at("events")) {
    std::cout << "event t=" << e.at("t").get<double>() << " signature=" << e.at("signature").dump()
              << " verdict=" << e.at("verdict").get<std::string>()
              << " edges=" << e.at("edges").dump() << "\n";
  }
  if (report.at("events").empty()) std::cout << "no events\n";
}

void print_warnings(const Json& report) {
  for (const Json& w : report.at("warnings")) {
    std::cerr << "warning: " << w.get<std::string>() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link-failure detection and isolation for networks of linear subsystems"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph file");
  std::string gen_kind;
  int gen_n = 5;
  double gen_radius = 0.256;
  double gen_side = 1.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("kind", gen_kind, "cycle, star or rgg")->required()->check(
      CLI::IsMember({"cycle", "star", "rgg"}));
  gen->add_option("--n", gen_n, "Node count");
  gen->add_option("--radius", gen_radius, "Connection radius (rgg)");
  gen->add_option("--side", gen_side, "Side of the square region (rgg)");
  gen->add_option("--seed", gen_seed, "Seed (rgg)");
  gen->add_option("-o,--out", gen_out, "Output file (stdout by default)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Relation matrix and lookup table");
  std::string an_graph, an_model, an_sensors, an_out;
  int an_r = 1, an_z = 0;
  analyze->add_option("graph", an_graph, "Graph JSON")->required();
  analyze->add_option("--model", an_model, "Model JSON; sets r from its relative degree");
  analyze->add_option("--r", an_r, "Relative degree");
  analyze->add_option("--z", an_z, "Derivative budget (default r (finite diameter + 1))");
  analyze->add_option("--sensors", an_sensors, "Sensor nodes, comma separated");
  analyze->add_option("-o,--out", an_out, "Output file (stdout by default)");

  // place
  auto* place = app.add_subcommand("place", "Greedy sensor placement report");
  std::string pl_graph, pl_model, pl_out;
  int pl_r = 1, pl_z = 0;
  bool pl_exact = false;
  place->add_option("graph", pl_graph, "Graph JSON")->required();
  place->add_option("--model", pl_model, "Model JSON; sets r from its relative degree");
  place->add_option("--r", pl_r, "Relative degree");
  place->add_option("--z", pl_z, "Derivative budget");
  place->add_flag("--exact", pl_exact, "Compute brute-force optima (N <= 20)");
  place->add_option("-o,--out", pl_out, "Output file (stdout by default)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Simulate and export the trace CSV");
  std::string sim_graph, sim_model, sim_out;
  RunFlags sim_flags;
  sim->add_option("graph", sim_graph, "Graph JSON")->required();
  sim->add_option("model", sim_model, "Model JSON")->required();
  sim->add_option("-o,--out", sim_out, "Output CSV (stdout by default)");
  sim_flags.add_to(sim, false);

  // run
  auto* run = app.add_subcommand("run", "Full pipeline with reports");
  std::string run_graph, run_model, run_config, run_out_dir, run_sweep;
  RunFlags run_flags;
  run->add_option("graph", run_graph, "Graph JSON (or \"graph\" in the config)");
  run->add_option("model", run_model, "Model JSON (or \"model\" in the config)");
  run->add_option("--config", run_config, "run.json with the same fields as the flags");
  run->add_option("--out-dir", run_out_dir, "Directory for report.json and CSV files");
  run->add_option("--sweep-failures", run_sweep, "all-edges: fail each edge in turn");
  run_flags.add_to(run, true);

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "Regenerate a worked example");
  std::string repro_name, repro_out = ".";
  std::uint64_t repro_seed = 1;
  repro->add_option("name", repro_name, "cycle5, star5 or rgg")->required();
  repro->add_option("--out-dir", repro_out, "Output directory");
  repro->add_option("--seed", repro_seed, "Seed");

  // isolate
  auto* iso = app.add_subcommand("isolate", "Isolate serialized signatures");
  std::string iso_report, iso_tables, iso_signature;
  iso->add_option("report", iso_report, "report.json from run");
  iso->add_option("--tables", iso_tables, "tables.json from analyze");
  iso->add_option("--signature", iso_signature, "Signature for --tables, comma separated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) {
      GraphHandle g;
      if (gen_kind == "cycle") {
        check(nf_graph_cycle(gen_n, &g.ptr));
      } else if (gen_kind == "star") {
        check(nf_graph_star(gen_n, &g.ptr));
      } else {
        check(nf_graph_random_geometric(gen_n, gen_side, gen_radius, gen_seed, &g.ptr));
      }
      char* text = nullptr;
      check(nf_graph_to_json(g.ptr, &text));
      emit(take(text), gen_out);
      std::cerr << "nodes=" << nf_graph_node_count(g.ptr)
                << " edges=" << nf_graph_edge_count(g.ptr) << "\n";
      return kExitOk;
    }

    if (*analyze) {
      GraphHandle g;
      check(nf_graph_load(an_graph.c_str(), &g.ptr));
      const int r = relative_degree_from(an_model, an_r);
      const std::vector<int> sensors = int_list(an_sensors, "--sensors");
      char* text = nullptr;
      check(nf_analyze(g.ptr, r, an_z, sensors.data(), sensors.size(), &text));
      emit(take(text), an_out);
      return kExitOk;
    }

    if (*place) {
      GraphHandle g;
      check(nf_graph_load(pl_graph.c_str(), &g.ptr));
      const int r = relative_degree_from(pl_model, pl_r);
      char* text = nullptr;
      check(nf_place(g.ptr, r, pl_z, pl_exact ? 1 : 0, &text));
      emit(take(text), pl_out);
      return kExitOk;
    }

    if (*sim) {
      GraphHandle g;
      ModelHandle m;
      check(nf_graph_load(sim_graph.c_str(), &g.ptr));
      check(nf_model_load(sim_model.c_str(), &m.ptr));
      Json options = Json::object();
      sim_flags.merge_into(options);
      char* text = nullptr;
      check(nf_simulate(g.ptr, m.ptr, options.dump().c_str(), &text));
      emit(take(text), sim_out);
      return kExitOk;
    }

    if (*run) {
      Json options = run_config.empty() ? Json::object() : parse_file(run_config);
      if (!options.is_object()) throw CliFailure{run_config + ": config must be a JSON object"};
      std::string graph_path = take_string(options, "graph");
      std::string model_path = take_string(options, "model");
      std::string out_dir = take_string(options, "out_dir");
      std::string sweep = take_string(options, "sweep_failures");
      if (!run_graph.empty()) graph_path = run_graph;
      if (!run_model.empty()) model_path = run_model;
      if (!run_out_dir.empty()) out_dir = run_out_dir;
      if (!run_sweep.empty()) sweep = run_sweep;
      if (out_dir.empty()) out_dir = ".";
      if (graph_path.empty()) throw CliFailure{"graph: no graph file given"};
      if (model_path.empty()) throw CliFailure{"model: no model file given"};
      if (!sweep.empty() && sweep != "all-edges" && sweep != "none") {
        throw CliFailure{"--sweep-failures: expected all-edges, got \"" + sweep + "\""};
      }
      run_flags.merge_into(options);

      GraphHandle g;
      ModelHandle m;
      check(nf_graph_load(graph_path.c_str(), &g.ptr));
      check(nf_model_load(model_path.c_str(), &m.ptr));

      if (sweep == "all-edges") {
        char* text = nullptr;
        int code = 0;
        check(nf_sweep(g.ptr, m.ptr, options.dump().c_str(), &text, &code));
        const std::string report = take(text);
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        emit(report, (std::filesystem::path(out_dir) / "sweep.json").string());
        const Json j = Json::parse(report);
        print_warnings(j);
        std::cout << "isolated " << j.at("isolated_count").get<int>() << " of "
                  << j.at("edge_count").get<int>() << " edges\n";
        return code;
      }

      RunHandle result;
      check(nf_run(g.ptr, m.ptr, options.dump().c_str(), &result.ptr));
      check(nf_run_write_artifacts(result.ptr, out_dir.c_str()));
      char* text = nullptr;
      check(nf_run_report_json(result.ptr, &text));
      const Json report = Json::parse(take(text));
      print_warnings(report);
      if (report.contains("placement") && !report.at("placement").at("isolation_possible").get<bool>()) {
        std::cout << "isolation impossible: f_I(V)=" << report.at("placement").at("f_I_of_V").get<int>()
                  << "\n";
      }
      print_events(report);
      return nf_run_exit_code(result.ptr);
    }

    if (*repro) {
      char* text = nullptr;
      check(nf_reproduce(repro_name.c_str(), repro_out.c_str(), repro_seed, &text));
      std::cout << take(text);
      return kExitOk;
    }

    if (*iso) {
      if (!iso_tables.empty()) {
        const std::vector<int> sig = int_list(iso_signature, "--signature");
        char* text = nullptr;
        check(nf_isolate(slurp(iso_tables).c_str(), sig.data(), sig.size(), &text));
        const std::string out = take(text);
        std::cout << out;
        return Json::parse(out).at("verdict").get<std::string>() == "unique" ? kExitOk
                                                                              : kExitVerdict;
      }
      if (iso_report.empty()) throw CliFailure{"isolate: give a report or --tables"};
      char* text = nullptr;
      check(nf_reisolate_report(slurp(iso_report).c_str(), &text));
      const std::string out = take(text);
      std::cout << out;
      const Json j = Json::parse(out);
      if (!j.at("consistent").get<bool>()) {
        std::cerr << "error: re-isolation disagrees with the recorded verdicts\n";
        return 1;
      }
      for (const Json& e : j.at("events")) {
        if (e.at("verdict").get<std::string>() != "unique") return kExitVerdict;
      }
      return kExitOk;
    }
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
