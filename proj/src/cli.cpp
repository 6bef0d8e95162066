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

#include "qwb/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qwb/error.hpp"
#include "qwb/sudoku.hpp"

namespace qwb::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

json metrics_json(const ResourceMetrics& m) {
  return {{"qubit_count", m.qubit_count},
          {"u3_count", m.u3_count},
          {"cx_count", m.cx_count},
          {"depth", m.depth}};
}

json assignments_json(const SudokuBoard& board, const CheckPlan& plan) {
  json out = json::array();
  for (const Cell& c : plan.assignment_order) {
    out.push_back({{"row", c.row}, {"col", c.col}, {"value", board.at(c) + 1}});
  }
  return out;
}

json level_json(const LevelReport& l) {
  json counts = json::object();
  for (const auto& [label, n] : l.child_counts) counts[std::to_string(label)] = n;
  return {{"prefix", l.prefix},
          {"qubits", l.qubits},
          {"peak_support", l.peak_support},
          {"zero_ancilla_shots", l.zero_ancilla_shots},
          {"child_counts", counts},
          {"chosen", l.chosen ? json(*l.chosen) : json(nullptr)}};
}

json detection_json(const DetectionResult& d) {
  return {{"detected", d.detected},
          {"repetitions", d.repetitions},
          {"accept_number", d.accept_number},
          {"precision_bits", d.precision_bits},
          {"zero_probability", d.zero_probability},
          {"qubits", d.qubits},
          {"peak_support", d.peak_support}};
}

std::string table_row(const std::vector<std::string>& cells) {
  std::ostringstream s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    s << std::setw(i == 0 ? 7 : 10) << cells[i];
  }
  return s.str() + "\n";
}

void walk_half_step(BacktrackingTree& t, int index) {
  t.qstep_diffuser(index % 2 == 0 ? t.even_a() : t.even_b());
}

}  // namespace

const std::vector<ReferenceRow>& reference_rows() {
  static const std::vector<ReferenceRow> rows{
      {1, 15, 1434, 1157, 1396},  {2, 22, 2612, 2123, 1732},  {3, 29, 3703, 2977, 1979},
      {4, 40, 4957, 3999, 2127},  {5, 46, 5763, 4629, 2266},  {6, 54, 6944, 5609, 2432},
      {7, 66, 8955, 7303, 2980},  {8, 75, 10355, 8521, 3270}, {9, 91, 13074, 10901, 3968},
  };
  return rows;
}

ResourceMetrics qpe_metrics(const TreeSpec& spec, int precision_bits) {
  BacktrackingTree t(spec);
  t.init_node({});
  t.estimate_phase(precision_bits);
  return metrics(transpile(t.circuit()));
}

ResourceMetrics controlled_diffuser_metrics(int depth, bool r_b) {
  TreeSpec s;
  s.depth = depth;
  s.branch_bits = 1;
  s.accept = constant_false;
  s.reject = constant_false;
  s.subspace_optimization = true;
  BacktrackingTree t(s);
  const Qubit ctrl = t.circuit().allocate();
  t.qstep_diffuser(r_b ? t.even_b() : t.even_a(), ctrl);
  return metrics(transpile(t.circuit()));
}

RunReport cmd_solve(const SolveOptions& opt) {
  const auto t0 = Clock::now();
  RunReport r;
  r.doc["command"] = "solve";
  r.doc["config"] = {{"board", opt.board_path},       {"precision", opt.precision},
                     {"shots", opt.shots},            {"seed", opt.seed},
                     {"subspace_opt", opt.subspace_opt}, {"max_support", opt.max_support}};
  const SudokuBoard board = load_board(opt.board_path);
  const CheckPlan plan = build_check_plan(board);
  r.doc["timings"]["parse"] = seconds_since(t0);
  r.doc["empty_cells"] = plan.cells();

  if (plan.cells() == 0) {
    r.doc["solved"] = true;
    r.doc["quantum_steps"] = 0;
    r.doc["grid"] = format_board(board);
    r.doc["assignments"] = json::array();
    r.text = format_board(board);
    r.doc["timings"]["total"] = seconds_since(t0);
    return r;
  }

  const TreeSpec spec = sudoku_tree_spec(plan, opt.subspace_opt);
  WalkConfig cfg;
  cfg.precision_bits = opt.precision;
  cfg.shots = opt.shots;
  cfg.seed = opt.seed;
  cfg.max_support = opt.max_support;

  const auto t1 = Clock::now();
  const ResourceMetrics m = qpe_metrics(spec, opt.precision);
  r.doc["timings"]["build"] = seconds_since(t1);
  r.doc["metrics"] = metrics_json(m);

  const auto t2 = Clock::now();
  const SearchResult res = find_solution(spec, cfg);
  r.doc["timings"]["search"] = seconds_since(t2);
  r.doc["levels"] = json::array();
  for (const auto& l : res.levels) r.doc["levels"].push_back(level_json(l));
  r.doc["quantum_steps"] = static_cast<int>(res.levels.size()) * ((1 << opt.precision) - 1);

  if (!res.path) {
    r.doc["solved"] = false;
    r.text = "no solution found\n";
    r.exit_code = kNegative;
  } else {
    const SudokuBoard solved = apply_path(board, plan, *res.path);
    r.doc["solved"] = true;
    r.doc["path"] = *res.path;
    r.doc["grid"] = format_board(solved);
    r.doc["assignments"] = assignments_json(solved, plan);
    r.text = format_board(solved);
  }
  r.doc["timings"]["total"] = seconds_since(t0);
  return r;
}

RunReport cmd_detect(const DetectOptions& opt) {
  const auto t0 = Clock::now();
  RunReport r;
  r.doc["command"] = "detect";
  r.doc["config"] = {{"board", opt.board_path}, {"delta", opt.delta}, {"beta", opt.beta},
                     {"gamma", opt.gamma},      {"seed", opt.seed},   {"max_support", opt.max_support}};
  const SudokuBoard board = load_board(opt.board_path);
  const CheckPlan plan = build_check_plan(board);
  if (plan.cells() == 0) throw UsageError("board has no empty cells; nothing to detect");
  WalkConfig cfg;
  cfg.delta = opt.delta;
  cfg.beta_const = opt.beta;
  cfg.gamma_const = opt.gamma;
  cfg.seed = opt.seed;
  cfg.max_support = opt.max_support;
  const DetectionResult d = detect_marked(sudoku_tree_spec(plan), cfg);
  r.doc["detection"] = detection_json(d);
  std::ostringstream text;
  text << (d.detected ? "marked node exists" : "no marked node") << "\n"
       << "accept_number/K = " << d.accept_number << "/" << d.repetitions << " (p = "
       << d.precision_bits << ")\n";
  r.text = text.str();
  r.exit_code = d.detected ? kSuccess : kNegative;
  r.doc["timings"]["total"] = seconds_since(t0);
  return r;
}

RunReport cmd_bench(const BenchOptions& opt) {
  const auto t0 = Clock::now();
  RunReport r;
  r.doc["command"] = "bench";
  r.doc["config"] = {{"board", opt.board_path},
                     {"missing", opt.missing ? json(*opt.missing) : json(nullptr)},
                     {"precision", opt.precision},
                     {"subspace_opt", true}};
  if (opt.precision < 1) throw UsageError("precision must be at least 1");
  const SudokuBoard board = load_board(opt.board_path);
  const int open = static_cast<int>(board.empty_cells().size());
  int lo = 1;
  int hi = open;
  if (opt.missing) {
    if (*opt.missing < 1) throw UsageError("--missing must be at least 1");
    if (*opt.missing > open) {
      throw UsageError("--missing " + std::to_string(*opt.missing) + " exceeds the " +
                       std::to_string(open) + " empty cells of the board");
    }
    lo = hi = *opt.missing;
  }
  if (hi < 1) throw UsageError("board has no empty cells to benchmark");
  // Cells past the first k are filled from a classical solution so the
  // instance stays consistent.
  const auto solutions = classical_solve(board);
  if (solutions.empty()) throw UsageError("board has no completion to restrict from");

  std::ostringstream text;
  text << table_row({"missing", "qubits", "u3", "cx", "depth", "ref_q", "ref_u3", "ref_cx",
                     "ref_depth"});
  r.doc["rows"] = json::array();
  for (int k = lo; k <= hi; ++k) {
    const auto t1 = Clock::now();
    const SudokuBoard b = restrict_empty(board, solutions.front(), k);
    const ResourceMetrics m = qpe_metrics(sudoku_tree_spec(build_check_plan(b), true), opt.precision);
    json row = metrics_json(m);
    row["missing"] = k;
    std::vector<std::string> cells{std::to_string(k),         std::to_string(m.qubit_count),
                                   std::to_string(m.u3_count), std::to_string(m.cx_count),
                                   std::to_string(m.depth)};
    const auto& ref = reference_rows();
    if (opt.precision == 3 && k <= static_cast<int>(ref.size())) {
      const ReferenceRow& f = ref[static_cast<std::size_t>(k - 1)];
      row["reference"] = {{"qubit_count", f.qubits}, {"u3_count", f.u3}, {"cx_count", f.cx},
                          {"depth", f.depth}};
      for (int v : {f.qubits, f.u3, f.cx, f.depth}) cells.push_back(std::to_string(v));
    }
    r.doc["rows"].push_back(row);
    r.doc["timings"]["rows"].push_back(seconds_since(t1));
    text << table_row(cells);
  }
  r.text = text.str();
  r.doc["timings"]["total"] = seconds_since(t0);
  return r;
}

RunReport cmd_viz(const VizOptions& opt) {
  const auto t0 = Clock::now();
  RunReport r;
  r.doc["command"] = "viz";
  r.doc["config"] = {{"board", opt.board_path ? json(*opt.board_path) : json(nullptr)},
                     {"demo_tree", opt.board_path ? json(nullptr) : json(opt.demo_depth)},
                     {"steps", opt.steps},
                     {"out", opt.out_dir}};
  if (opt.steps < 0) throw UsageError("--steps must be non-negative");
  TreeSpec spec;
  if (opt.board_path) {
    const SudokuBoard board = load_board(*opt.board_path);
    const CheckPlan plan = build_check_plan(board);
    spec = sudoku_tree_spec(plan);
  } else {
    if (opt.demo_depth < 1) throw UsageError("--demo-tree depth must be at least 1");
    spec = demo_tree_spec();
    spec.depth = opt.demo_depth;
    NodePath marked(static_cast<std::size_t>(opt.demo_depth), 1);
    spec.accept = node_set_oracle({marked});
    spec.reject = node_set_oracle(opt.demo_depth > 1 ? std::vector<NodePath>{{0}}
                                                     : std::vector<NodePath>{});
  }
  std::filesystem::create_directories(opt.out_dir);
  BacktrackingTree t(spec);
  t.init_node({});
  SparseState state(t.circuit().num_qubits());
  std::size_t applied = 0;
  r.doc["files"] = json::array();
  std::ostringstream text;
  for (int step = 0; step <= opt.steps; ++step) {
    if (step > 0) walk_half_step(t, step - 1);
    if (t.circuit().num_qubits() > state.num_qubits()) {
      state = SparseState::from_amplitudes(t.circuit().num_qubits(), state.amplitudes());
    }
    for (; applied < t.circuit().size(); ++applied) state.apply(t.circuit().gates()[applied]);
    const DecodedState d = decode_tree_state(t, state);
    const std::string path =
        (std::filesystem::path(opt.out_dir) / ("step_" + std::to_string(step) + ".dot")).string();
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << to_dot(d, "step " + std::to_string(step));
    json nodes = json::array();
    for (const auto& [p, a] : d.nodes) {
      nodes.push_back({{"path", p}, {"re", a.real()}, {"im", a.imag()}});
    }
    r.doc["files"].push_back(path);
    r.doc["steps"].push_back({{"step", step},
                              {"nodes", nodes},
                              {"non_algorithmic_mass", d.non_algorithmic_mass}});
    text << path << " (" << d.nodes.size() << " nodes)\n";
  }
  r.text = text.str();
  r.doc["timings"]["total"] = seconds_since(t0);
  return r;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum backtracking walks on Sudoku boards"};
  app.require_subcommand(1);
  std::string report_path;
  bool as_json = false;
  std::optional<std::uint64_t> seed;
  app.add_option("--report", report_path, "Write the JSON run report to FILE");
  app.add_flag("--json", as_json, "Print the JSON run report instead of text");

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Find a completion with the quantum walk");
  solve->add_option("board", so.board_path, "Board file")->required();
  solve->add_option("--precision", so.precision, "Phase estimation bits")->capture_default_str();
  solve->add_option("--shots", so.shots, "Samples per level")->capture_default_str();
  solve->add_option("--seed", seed, "RNG seed (falls back to QWB_SEED, then 0)");
  solve->add_flag("--subspace-opt", so.subspace_opt, "Skip the controlled swaps in lifting");
  solve->add_option("--max-support", so.max_support, "Sparse amplitude limit")
      ->capture_default_str();

  DetectOptions dopt;
  auto* detect = app.add_subcommand("detect", "Decide whether a completion exists");
  detect->add_option("board", dopt.board_path, "Board file")->required();
  detect->add_option("--delta", dopt.delta, "Failure probability")->capture_default_str();
  detect->add_option("--beta", dopt.beta, "Precision constant")->capture_default_str();
  detect->add_option("--gamma", dopt.gamma, "Repetition constant")->capture_default_str();
  detect->add_option("--seed", seed, "RNG seed (falls back to QWB_SEED, then 0)");
  detect->add_option("--max-support", dopt.max_support, "Sparse amplitude limit")
      ->capture_default_str();

  BenchOptions bo;
  int missing = 0;
  auto* bench = app.add_subcommand("bench", "Report circuit resources without simulating");
  bench->add_option("board", bo.board_path, "Board file")->required();
  auto* missing_opt = bench->add_option("--missing", missing, "Open cells (default: every k)");
  bench->add_option("--precision", bo.precision, "Phase estimation bits")->capture_default_str();

  VizOptions vo;
  std::string viz_board;
  auto* viz = app.add_subcommand("viz", "Write DOT files of the walk, one per half-step");
  auto* viz_board_opt = viz->add_option("board", viz_board, "Board file");
  auto* demo_opt = viz->add_option("--demo-tree", vo.demo_depth, "Depth of the demo tree");
  viz_board_opt->excludes(demo_opt);
  viz->add_option("--steps", vo.steps, "Half-steps to apply")->capture_default_str();
  viz->add_option("--out", vo.out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsage;
  }

  std::uint64_t s = 0;
  if (seed) {
    s = *seed;
  } else if (const char* env = std::getenv("QWB_SEED")) {
    try {
      s = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: QWB_SEED is not an unsigned integer: " << env << "\n";
      return kUsage;
    }
  }
  so.seed = s;
  dopt.seed = s;
  if (missing_opt->count()) bo.missing = missing;
  if (viz_board_opt->count()) vo.board_path = viz_board;

  RunReport r;
  try {
    if (*solve) {
      r = cmd_solve(so);
    } else if (*detect) {
      r = cmd_detect(dopt);
    } else if (*bench) {
      r = cmd_bench(bo);
    } else {
      r = cmd_viz(vo);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kResource;
  }
  std::vector<std::string> args(argv + 1, argv + argc);
  r.doc["argv"] = args;
  if (!report_path.empty()) {
    std::ofstream f(report_path);
    if (!f) {
      err << "usage error: cannot write report " << report_path << "\n";
      return kUsage;
    }
    f << r.doc.dump(2) << "\n";
  }
  if (as_json) {
    out << r.doc.dump(2) << "\n";
  } else {
    out << r.text;
  }
  return r.exit_code;
}

}  // namespace qwb::cli
