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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwb/backtracking.hpp"
#include "qwb/transpile.hpp"

namespace qwb::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kNegative = 2,
  kResource = 3,
};

// One JSON document per command. Wall times live under "timings" so that
// the rest of the document is reproducible for a fixed seed.
struct RunReport {
  nlohmann::json doc;
  std::string text;  // human-readable rendering for stdout
  int exit_code = kSuccess;
};

struct SolveOptions {
  std::string board_path;
  int precision = 3;
  int shots = 10000;
  std::uint64_t seed = 0;
  bool subspace_opt = false;
  std::size_t max_support = std::size_t{1} << 22;
};

struct DetectOptions {
  std::string board_path;
  double delta = 0.1;
  double beta = 0.5;
  double gamma = 4.0;
  std::uint64_t seed = 0;
  std::size_t max_support = std::size_t{1} << 22;
};

struct BenchOptions {
  std::string board_path;
  std::optional<int> missing;  // all prefixes 1..k when unset
  int precision = 3;
};

struct VizOptions {
  std::optional<std::string> board_path;
  int demo_depth = 3;
  int steps = 0;
  std::string out_dir = ".";
};

RunReport cmd_solve(const SolveOptions& opt);
RunReport cmd_detect(const DetectOptions& opt);
RunReport cmd_bench(const BenchOptions& opt);
RunReport cmd_viz(const VizOptions& opt);

// Phase estimation circuit from the root, transpiled to {U3, CX}.
ResourceMetrics qpe_metrics(const TreeSpec& spec, int precision_bits);

// One qstep_diffuser on a binary tree with constant-false oracles and the
// subspace optimization, controlled by one extra qubit, transpiled. `r_b`
// picks the R_B parity, otherwise R_A.
ResourceMetrics controlled_diffuser_metrics(int depth, bool r_b);

// Published resource figures for 1..9 missing cells.
struct ReferenceRow {
  int missing, qubits, u3, cx, depth;
};
const std::vector<ReferenceRow>& reference_rows();

// Parses argv, runs one subcommand, writes text or JSON to `out` and
// diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwb::cli
