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

#include "qwb/sudoku.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qwb/error.hpp"
#include "qwb/synthesis.hpp"

namespace qwb {

namespace {

bool shares_unit(const Cell& a, const Cell& b, int block) {
  return a.row == b.row || a.col == b.col ||
         (a.row / block == b.row / block && a.col / block == b.col / block);
}

int bits_for(int side) {
  int m = 1;
  while ((1 << m) < side) ++m;
  return m;
}

struct Token {
  char symbol;
  int column;
};

}  // namespace

std::string format_cell(const Cell& cell) {
  return "(" + std::to_string(cell.row) + "," + std::to_string(cell.col) + ")";
}

SudokuBoard::SudokuBoard(int block_size) : block_size_(block_size) {
  if (block_size < 1 || block_size > 3) throw UsageError("block size must be in 1..3");
  cells_.assign(static_cast<std::size_t>(side() * side()), kEmpty);
}

int SudokuBoard::at(const Cell& c) const {
  if (c.row < 0 || c.row >= side() || c.col < 0 || c.col >= side()) {
    throw UsageError("cell " + format_cell(c) + " outside the board");
  }
  return cells_[static_cast<std::size_t>(c.row * side() + c.col)];
}

void SudokuBoard::set(const Cell& c, int value) {
  at(c);
  if (value != kEmpty && (value < 0 || value >= side())) {
    throw UsageError("value " + std::to_string(value) + " out of range");
  }
  cells_[static_cast<std::size_t>(c.row * side() + c.col)] = value;
}

std::vector<Cell> SudokuBoard::empty_cells() const {
  std::vector<Cell> out;
  for (int r = 0; r < side(); ++r) {
    for (int c = 0; c < side(); ++c) {
      if (is_empty({r, c})) out.push_back({r, c});
    }
  }
  return out;
}

std::vector<Cell> SudokuBoard::peers(const Cell& c) const {
  std::vector<Cell> out;
  for (int r = 0; r < side(); ++r) {
    for (int k = 0; k < side(); ++k) {
      const Cell p{r, k};
      if (p != c && shares_unit(c, p, block_size_)) out.push_back(p);
    }
  }
  return out;
}

bool SudokuBoard::consistent() const {
  for (int r = 0; r < side(); ++r) {
    for (int k = 0; k < side(); ++k) {
      const Cell c{r, k};
      if (is_empty(c)) continue;
      for (const Cell& p : peers(c)) {
        if (at(p) == at(c)) return false;
      }
    }
  }
  return true;
}

SudokuBoard parse_board(std::string_view text) {
  std::vector<std::vector<Token>> rows;
  std::vector<int> row_lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    if (line.find_first_not_of(" \t-+") == std::string_view::npos) continue;
    std::vector<Token> row;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char ch = line[i];
      if (ch == ' ' || ch == '\t' || ch == '|') continue;
      row.push_back({ch, static_cast<int>(i) + 1});
    }
    rows.push_back(std::move(row));
    row_lines.push_back(line_no);
  }
  if (rows.empty()) throw ParseError("empty board");
  const int side = static_cast<int>(rows.size());
  const int block = static_cast<int>(std::lround(std::sqrt(side)));
  if (block * block != side || block > 3) {
    throw ParseError("board has " + std::to_string(side) + " rows; expected 1, 4 or 9",
                     row_lines.back());
  }
  SudokuBoard board(block);
  for (int r = 0; r < side; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    const int line = row_lines[static_cast<std::size_t>(r)];
    if (static_cast<int>(row.size()) != side) {
      throw ParseError("row has " + std::to_string(row.size()) + " cells; expected " +
                           std::to_string(side),
                       line, row.empty() ? 1 : row.back().column);
    }
    for (int k = 0; k < side; ++k) {
      const Token& t = row[static_cast<std::size_t>(k)];
      if (t.symbol == '.' || t.symbol == '0') continue;
      if (t.symbol < '1' || t.symbol > '0' + side) {
        throw ParseError(std::string("symbol '") + t.symbol + "' out of range 1.." +
                             std::to_string(side),
                         line, t.column);
      }
      const int value = t.symbol - '1';
      for (const Cell& p : board.peers({r, k})) {
        if (board.at(p) == value) {
          throw ParseError(std::string("symbol '") + t.symbol + "' repeats the given at row " +
                               std::to_string(p.row + 1) + ", column " +
                               std::to_string(p.col + 1),
                           line, t.column);
        }
      }
      board.set({r, k}, value);
    }
  }
  return board;
}

SudokuBoard load_board(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open board file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_board(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_board(const SudokuBoard& board) {
  std::string out;
  for (int r = 0; r < board.side(); ++r) {
    for (int c = 0; c < board.side(); ++c) {
      const int v = board.at({r, c});
      out += v == SudokuBoard::kEmpty ? '.' : static_cast<char>('1' + v);
    }
    out += '\n';
  }
  return out;
}

ComparisonGraph to_coloring_graph(const SudokuBoard& board) {
  ComparisonGraph g;
  for (int r = 0; r < board.side(); ++r) {
    for (int c = 0; c < board.side(); ++c) {
      (board.is_empty({r, c}) ? g.assigned : g.given).push_back({r, c});
    }
  }
  for (const Cell& a : g.assigned) {
    for (const Cell& p : board.peers(a)) {
      if (!board.is_empty(p)) {
        g.edges.push_back({a, p, EdgeKind::cq});
      } else if (a < p) {
        g.edges.push_back({a, p, EdgeKind::qq});
      }
    }
  }
  return g;
}

CheckPlan build_check_plan(const SudokuBoard& board, const ComparisonGraph& graph,
                           std::vector<Cell> order) {
  if (order.empty()) order = graph.assigned;
  std::vector<Cell> sorted_order = order;
  std::sort(sorted_order.begin(), sorted_order.end());
  std::vector<Cell> sorted_assigned = graph.assigned;
  std::sort(sorted_assigned.begin(), sorted_assigned.end());
  if (sorted_order != sorted_assigned) {
    throw UsageError("assignment order must list every empty cell exactly once");
  }
  CheckPlan plan;
  plan.assignment_order = std::move(order);
  plan.branch_bits = bits_for(board.side());
  std::map<Cell, int> index;
  for (int j = 0; j < plan.cells(); ++j) {
    index[plan.assignment_order[static_cast<std::size_t>(j)]] = plan.tree_index(j);
  }
  for (const GraphEdge& e : graph.edges) {
    const int i = index.at(e.assigned);
    if (e.kind == EdgeKind::cq) {
      plan.cq_batches[i].insert(board.at(e.peer));
    } else {
      const int k = index.at(e.peer);
      plan.qq_pairs.insert({std::min(i, k), std::max(i, k)});
    }
  }
  // Codes past the last symbol are never valid.
  for (int v = board.side(); v < (1 << plan.branch_bits); ++v) {
    for (int j = 0; j < plan.cells(); ++j) plan.cq_batches[plan.tree_index(j)].insert(v);
  }
  return plan;
}

CheckPlan build_check_plan(const SudokuBoard& board) {
  return build_check_plan(board, to_coloring_graph(board));
}

OracleBuilder build_accept() {
  return [](Circuit& c, const TreeView& v) {
    const Qubit out = c.allocate();
    c.cx(v.h[0], out);
    return out;
  };
}

OracleBuilder build_reject(CheckPlan plan) {
  return [plan = std::move(plan)](Circuit& c, const TreeView& v) {
    const std::size_t begin = c.size();
    std::vector<Qubit> results;
    for (const auto& [i, values] : plan.cq_batches) {
      if (!v.has_height(i) || values.empty()) continue;
      const Qubit r = c.allocate();
      results.push_back(r);
      synth::cq_in_set(c, v.branch[static_cast<std::size_t>(i)],
                       std::vector<std::uint64_t>(values.begin(), values.end()), r, v.h[i]);
    }
    for (const auto& [lo, hi] : plan.qq_pairs) {
      if (!v.has_height(lo)) continue;
      const Qubit r = c.allocate();
      results.push_back(r);
      synth::qq_equal(c, v.branch[static_cast<std::size_t>(lo)],
                      v.branch[static_cast<std::size_t>(hi)], r, v.h[lo]);
    }
    const std::size_t end = c.size();
    const Qubit out = c.allocate();
    if (results.empty()) return out;
    synth::mcx(c, results, std::vector<bool>(results.size(), false), out,
               synth::MCXMethod::balauca_logdepth);
    c.x(out);
    c.append_inverse(begin, end);
    c.deallocate(results);
    return out;
  };
}

TreeSpec sudoku_tree_spec(const CheckPlan& plan, bool subspace_optimization) {
  if (plan.cells() < 1) throw UsageError("board has no empty cells");
  TreeSpec s;
  s.depth = plan.depth();
  s.branch_bits = plan.branch_bits;
  s.accept = build_accept();
  s.reject = build_reject(plan);
  s.subspace_optimization = subspace_optimization;
  return s;
}

bool classical_reject(const SudokuBoard& board, const CheckPlan& plan, const NodePath& path) {
  const int last = static_cast<int>(path.size()) - 1;
  if (last < 0 || last >= plan.cells()) return false;
  const int value = path[static_cast<std::size_t>(last)];
  if (value >= board.side()) return true;
  const Cell cell = plan.assignment_order[static_cast<std::size_t>(last)];
  SudokuBoard b = board;
  for (int j = 0; j < last; ++j) {
    const int v = path[static_cast<std::size_t>(j)];
    if (v < board.side()) b.set(plan.assignment_order[static_cast<std::size_t>(j)], v);
  }
  for (const Cell& p : b.peers(cell)) {
    if (b.at(p) == value) return true;
  }
  return false;
}

SudokuBoard apply_path(const SudokuBoard& board, const CheckPlan& plan, const NodePath& path) {
  if (static_cast<int>(path.size()) < plan.cells()) {
    throw UsageError("path " + format_path(path) + " does not assign every empty cell");
  }
  SudokuBoard b = board;
  for (int j = 0; j < plan.cells(); ++j) {
    b.set(plan.assignment_order[static_cast<std::size_t>(j)], path[static_cast<std::size_t>(j)]);
  }
  return b;
}

std::vector<SudokuBoard> classical_solve(const SudokuBoard& board) {
  std::vector<SudokuBoard> out;
  if (!board.consistent()) return out;
  const std::vector<Cell> order = board.empty_cells();
  SudokuBoard work = board;
  auto dfs = [&](auto&& self, std::size_t j) -> void {
    if (j == order.size()) {
      out.push_back(work);
      return;
    }
    const Cell cell = order[j];
    for (int v = 0; v < board.side(); ++v) {
      bool clash = false;
      for (const Cell& p : work.peers(cell)) {
        if (work.at(p) == v) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      work.set(cell, v);
      self(self, j + 1);
      work.set(cell, SudokuBoard::kEmpty);
    }
  };
  dfs(dfs, 0);
  return out;
}

SudokuBoard restrict_empty(const SudokuBoard& board, const SudokuBoard& solution, int k) {
  const std::vector<Cell> empty = board.empty_cells();
  if (k < 0 || k > static_cast<int>(empty.size())) {
    throw UsageError("cannot leave " + std::to_string(k) + " of " +
                     std::to_string(empty.size()) + " empty cells open");
  }
  SudokuBoard out = board;
  for (std::size_t j = static_cast<std::size_t>(k); j < empty.size(); ++j) {
    out.set(empty[j], solution.at(empty[j]));
  }
  return out;
}

}  // namespace qwb
