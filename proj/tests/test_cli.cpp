// Copyright 2026 The qwalkback Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qwb/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qwb");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = qwb::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string board(const std::string& name) { return std::string(QWB_DATA_DIR) + "/" + name; }

json without_timings(json doc) {
  doc.erase("timings");
  return doc;
}

}  // namespace

TEST_CASE("solve one open cell") {
  auto r = run_cli({"--json", "solve", board("puzzle_k1.txt"), "--precision", "3", "--shots",
                    "10000", "--seed", "1"});
  REQUIRE(r.code == 0);
  json d = json::parse(r.out);
  CHECK(d["solved"] == true);
  CHECK(d["grid"] == "1234\n3412\n2143\n4321\n");
  REQUIRE(d["assignments"].size() == 1);
  CHECK(d["assignments"][0]["value"] == 2);
  CHECK(d["metrics"]["qubit_count"].get<int>() > 0);
  CHECK(d.contains("timings"));
  for (const char* key : {"qubit_count", "cx_count", "depth"}) CHECK(d["metrics"].contains(key));
}

TEST_CASE("solved board needs no quantum steps") {
  auto r = run_cli({"--json", "solve", board("puzzle_solved.txt")});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["quantum_steps"] == 0);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"solve", board("invalid_duplicate.txt")}).code == 1);
  CHECK(run_cli({"solve", board("no_such_board.txt")}).code == 1);
  CHECK(run_cli({"frobnicate"}).code == 1);
  CHECK(run_cli({"solve", board("unsolvable.txt")}).code == 2);
  auto big = run_cli({"solve", board("puzzle.txt")});
  CHECK(big.code == 3);
  CHECK(big.err.find("qubits") != std::string::npos);
  CHECK(run_cli({"bench", board("puzzle.txt"), "--missing", "0"}).code == 1);
  CHECK(run_cli({"bench", board("puzzle.txt"), "--missing", "10"}).code == 1);
}

TEST_CASE("reports are reproducible apart from wall times") {
  const fs::path dir = fs::temp_directory_path() / "qwb_cli_test";
  fs::create_directories(dir);
  const std::string path = (dir / "report.json").string();
  const std::vector<std::string> args{"--report", path, "solve", board("puzzle_k2.txt"), "--seed",
                                      "4"};
  auto r1 = run_cli(args);
  json ja = json::parse(std::ifstream(path));
  auto r2 = run_cli(args);
  json jb = json::parse(std::ifstream(path));
  REQUIRE(r1.code == 0);
  REQUIRE(r2.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(without_timings(ja).dump() == without_timings(jb).dump());
}

TEST_CASE("seed falls back to the environment") {
  ::setenv("QWB_SEED", "17", 1);
  auto r = run_cli({"--json", "detect", board("puzzle_k1.txt")});
  ::unsetenv("QWB_SEED");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["config"]["seed"] == 17);
}

TEST_CASE("detect") {
  auto yes = run_cli({"detect", board("puzzle_k1.txt"), "--seed", "2"});
  CHECK(yes.code == 0);
  CHECK(yes.out.find("marked node exists") == 0);
  auto no = run_cli({"detect", board("unsolvable.txt"), "--seed", "2"});
  CHECK(no.code == 2);
  CHECK(no.out.find("no marked node") == 0);
  auto once = run_cli({"--json", "detect", board("puzzle_k1.txt"), "--delta", "0.5", "--gamma", "1"});
  CHECK(json::parse(once.out)["detection"]["repetitions"] == 1);
}

TEST_CASE("bench rows") {
  auto r = run_cli({"--json", "bench", board("puzzle.txt"), "--missing", "1"});
  REQUIRE(r.code == 0);
  json d = json::parse(r.out);
  REQUIRE(d["rows"].size() == 1);
  CHECK(d["rows"][0]["reference"]["qubit_count"] == 15);
  CHECK(d["rows"][0]["reference"]["u3_count"] == 1434);
  CHECK(d["rows"][0]["reference"]["cx_count"] == 1157);
  CHECK(d["rows"][0]["reference"]["depth"] == 1396);
}

TEST_CASE("controlled diffuser on a depth-8 binary tree stays within 6n+14 CX") {
  CHECK(qwb::cli::controlled_diffuser_metrics(8, true).cx_count <= 6 * 8 + 14);
}

TEST_CASE("viz writes one DOT file per half-step") {
  const fs::path dir = fs::temp_directory_path() / "qwb_viz_test";
  fs::remove_all(dir);
  auto r0 = run_cli({"--json", "viz", "--demo-tree", "3", "--steps", "0", "--out", dir.string()});
  REQUIRE(r0.code == 0);
  json d0 = json::parse(r0.out);
  REQUIRE(d0["files"].size() == 1);
  REQUIRE(d0["steps"][0]["nodes"].size() == 1);
  std::ifstream f0(dir / "step_0.dot");
  std::string dot((std::istreambuf_iterator<char>(f0)), {});
  CHECK(dot.find("#3cb44b") != std::string::npos);
  CHECK(dot.find("#911eb4") == std::string::npos);

  auto r2 = run_cli({"--json", "viz", "--demo-tree", "3", "--steps", "2", "--out", dir.string()});
  json d2 = json::parse(r2.out);
  REQUIRE(d2["files"].size() == 3);
  auto sign_of = [](const json& step, const std::vector<int>& path) {
    for (const auto& n : step["nodes"]) {
      if (n["path"].get<std::vector<int>>() == path) return n["re"].get<double>() > 0 ? 1 : -1;
    }
    return 0;
  };
  // R_B acts as -1 on the rejected node and nothing grows below it.
  CHECK(sign_of(d2["steps"][2], {0}) == -sign_of(d2["steps"][1], {0}));
  for (const auto& n : d2["steps"][2]["nodes"]) {
    const auto p = n["path"].get<std::vector<int>>();
    CHECK_FALSE((p.size() > 1 && p[0] == 0));
  }

  auto rb = run_cli({"viz", board("puzzle_k1.txt"), "--steps", "1", "--out", dir.string()});
  CHECK(rb.code == 0);
  CHECK(run_cli({"viz", board("puzzle_k1.txt"), "--demo-tree", "3"}).code == 1);
}
