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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwb/cli.hpp"
#include "qwb/error.hpp"
#include "qwb/sudoku.hpp"

namespace py = pybind11;

namespace {

std::string to_json(const qwb::cli::RunReport& r) { return r.doc.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native bindings for qwb. Commands return their JSON report as a string.";

  py::register_exception<qwb::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<qwb::UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<qwb::ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<qwb::ContractError>(m, "ContractError", PyExc_RuntimeError);

  m.def(
      "normalize_board",
      [](const std::string& text) { return qwb::format_board(qwb::parse_board(text)); },
      py::arg("text"));
  m.def(
      "open_cells",
      [](const std::string& text) {
        std::vector<std::pair<int, int>> out;
        for (const auto& c : qwb::parse_board(text).empty_cells()) out.emplace_back(c.row, c.col);
        return out;
      },
      py::arg("text"));
  m.def(
      "classical_solutions",
      [](const std::string& text) {
        std::vector<std::string> out;
        for (const auto& b : qwb::classical_solve(qwb::parse_board(text))) {
          out.push_back(qwb::format_board(b));
        }
        return out;
      },
      py::arg("text"));

  m.def(
      "solve",
      [](const std::string& path, int precision, int shots, std::uint64_t seed, bool subspace_opt) {
        qwb::cli::SolveOptions o;
        o.board_path = path;
        o.precision = precision;
        o.shots = shots;
        o.seed = seed;
        o.subspace_opt = subspace_opt;
        py::gil_scoped_release release;
        return to_json(qwb::cli::cmd_solve(o));
      },
      py::arg("path"), py::arg("precision") = 3, py::arg("shots") = 10000, py::arg("seed") = 0,
      py::arg("subspace_opt") = false);
  m.def(
      "detect",
      [](const std::string& path, double delta, double beta, double gamma, std::uint64_t seed) {
        qwb::cli::DetectOptions o;
        o.board_path = path;
        o.delta = delta;
        o.beta = beta;
        o.gamma = gamma;
        o.seed = seed;
        py::gil_scoped_release release;
        return to_json(qwb::cli::cmd_detect(o));
      },
      py::arg("path"), py::arg("delta") = 0.1, py::arg("beta") = 0.5, py::arg("gamma") = 4.0,
      py::arg("seed") = 0);
  m.def(
      "bench",
      [](const std::string& path, std::optional<int> missing, int precision) {
        qwb::cli::BenchOptions o;
        o.board_path = path;
        o.missing = missing;
        o.precision = precision;
        py::gil_scoped_release release;
        return to_json(qwb::cli::cmd_bench(o));
      },
      py::arg("path"), py::arg("missing") = py::none(), py::arg("precision") = 3);
}
