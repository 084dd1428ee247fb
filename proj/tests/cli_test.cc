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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(NETFDI_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("netfdi_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("model.json", R"({"A": [[-1]], "B": [[1]], "C": [[1]], "Gamma": [[1]]})");
  }
  void TearDown() override { fs::remove_all(dir_); }
  void write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(Cli, GenAnalyzePlace) {
  ASSERT_EQ(run("gen cycle --n 5 -o " + path("cycle.json")).status, 0);
  const Result an = run("analyze " + path("cycle.json") + " --r 1 --z 4 --sensors 2,3");
  ASSERT_EQ(an.status, 0);
  EXPECT_EQ(Json::parse(an.out)["D"], Json::parse("[[2,1,0,4,3],[3,2,1,0,4]]"));

  ASSERT_EQ(run("gen star --n 5 -o " + path("star.json")).status, 0);
  const Result pl = run("place " + path("star.json") + " --model " + path("model.json") + " --z 1 --exact");
  ASSERT_EQ(pl.status, 0);
  EXPECT_EQ(Json::parse(pl.out)["M_D"], Json::parse("[5]"));
}

TEST_F(Cli, RunCycleAndReisolate) {
  ASSERT_EQ(run("gen cycle --n 5 -o " + path("cycle.json")).status, 0);
  const Result r = run("run " + path("cycle.json") + " " + path("model.json") +
                       " --sensors 2,3 --z 4 --x0 1,2,3,4,5 --fail 2@5 --out-dir " + path("out"));
  ASSERT_EQ(r.status, 0);
  for (const char* f : {"report.json", "trace.csv", "derivatives.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / f)) << f;
  }
  EXPECT_EQ(run("isolate " + path("out/report.json")).status, 0);

  const Result an = run("analyze " + path("cycle.json") + " --r 1 --z 4 --sensors 2,3 -o " + path("t.json"));
  ASSERT_EQ(an.status, 0);
  const Result iso = run("isolate --tables " + path("t.json") + " --signature 1,2");
  ASSERT_EQ(iso.status, 0);
  EXPECT_NE(iso.out.find("unique"), std::string::npos);
}

TEST_F(Cli, ConfigFileAndErrors) {
  ASSERT_EQ(run("gen star --n 5 -o " + path("star.json")).status, 0);
  write("run.json", "{\"graph\": \"" + path("star.json") + "\", \"model\": \"" + path("model.json") +
                        "\", \"fail\": [\"1@5\"]}");
  EXPECT_EQ(run("run --config " + path("run.json") + " --out-dir " + path("out")).status, 2);

  write("bad.json", R"({"dt": -1})");
  EXPECT_EQ(run("run " + path("star.json") + " " + path("model.json") + " --config " + path("bad.json")).status, 3);
  EXPECT_EQ(run("run " + path("star.json") + " " + path("model.json") + " --mode spectral").status, 3);
  EXPECT_EQ(run("analyze /nonexistent.json").status, 3);
  EXPECT_EQ(run("frobnicate").status, 3);
  EXPECT_EQ(run("--help").status, 0);
}

TEST_F(Cli, SweepAndReproduce) {
  ASSERT_EQ(run("gen cycle --n 5 -o " + path("cycle.json")).status, 0);
  const Result s = run("run " + path("cycle.json") + " " + path("model.json") +
                       " --sensors 2,3 --z 4 --sweep-failures all-edges --threads 2 --out-dir " + path("sw"));
  EXPECT_EQ(s.status, 0);
  EXPECT_EQ(run("reproduce cycle5 --out-dir " + path("repro")).status, 0);
  EXPECT_TRUE(fs::exists(dir_ / "repro" / "summary.json"));
}

}  // namespace
