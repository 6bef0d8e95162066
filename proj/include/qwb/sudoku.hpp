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

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwb/backtracking.hpp"

namespace qwb {

struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

std::string format_cell(const Cell& cell);

// Values are 0-based; kEmpty marks an unfilled cell.
class SudokuBoard {
 public:
  static constexpr int kEmpty = -1;

  SudokuBoard() = default;
  explicit SudokuBoard(int block_size);

  int block_size() const { return block_size_; }
  int side() const { return block_size_ * block_size_; }
  int at(const Cell& c) const;
  void set(const Cell& c, int value);
  bool is_empty(const Cell& c) const { return at(c) == kEmpty; }
  // Row-major.
  std::vector<Cell> empty_cells() const;
  // Cells sharing a row, column or block with `c`, excluding `c`.
  std::vector<Cell> peers(const Cell& c) const;
  // True when no two filled peers hold the same value.
  bool consistent() const;

  bool operator==(const SudokuBoard&) const = default;

 private:
  int block_size_ = 0;
  std::vector<int> cells_;
};

// Rows of symbols 1..side with '.' or '0' for empty. Spaces and '|' inside a
// row are ignored; blank lines, '#' comments and rule lines of '-'/'+' are
// skipped. Throws ParseError with the offending line and column.
SudokuBoard parse_board(std::string_view text);
SudokuBoard load_board(const std::string& path);
// 1-based symbols, '.' for empty, one row per line.
std::string format_board(const SudokuBoard& board);

enum class EdgeKind { cq, qq };

struct GraphEdge {
  Cell assigned;  // always an empty cell of the board
  Cell peer;      // given for cq, another empty cell for qq
  EdgeKind kind = EdgeKind::cq;
};

struct ComparisonGraph {
  std::vector<Cell> given;
  std::vector<Cell> assigned;
  std::vector<GraphEdge> edges;
};

ComparisonGraph to_coloring_graph(const SudokuBoard& board);

// Comparisons keyed by tree index: the j-th cell of `assignment_order` is
// decided at height k - j of a depth k + 1 tree, so its branch register and
// its "just assigned" height flag share index k - j. Index 0 is the dummy
// level below the last cell.
struct CheckPlan {
  std::vector<Cell> assignment_order;
  int branch_bits = 0;
  std::map<int, std::set<int>> cq_batches;
  std::set<std::pair<int, int>> qq_pairs;  // (lower, higher) tree indices

  int cells() const { return static_cast<int>(assignment_order.size()); }
  int depth() const { return cells() + 1; }
  int tree_index(int order_position) const { return cells() - order_position; }
};

// `order` defaults to row-major over the empty cells.
CheckPlan build_check_plan(const SudokuBoard& board, const ComparisonGraph& graph,
                           std::vector<Cell> order = {});
CheckPlan build_check_plan(const SudokuBoard& board);

// result = h[0].
OracleBuilder build_accept();
// result = OR of every active comparison: each cq batch is controlled on
// h[index], each qq pair on h[lower]. Indices above the subtree's height
// limit are fixed by the prefix and skipped.
OracleBuilder build_reject(CheckPlan plan);

// Depth k + 1 tree over the plan with the two Sudoku oracles.
TreeSpec sudoku_tree_spec(const CheckPlan& plan, bool subspace_optimization = false);

// Classical reject of a node: the last assigned cell breaks a constraint
// against givens or earlier assignments.
bool classical_reject(const SudokuBoard& board, const CheckPlan& plan, const NodePath& path);

// Writes the first plan.cells() labels of `path` into a copy of the board.
SudokuBoard apply_path(const SudokuBoard& board, const CheckPlan& plan, const NodePath& path);

// Depth-first backtracking; every solution in lexicographic order of the
// assignment sequence.
std::vector<SudokuBoard> classical_solve(const SudokuBoard& board);

// Copy of `solution` with only the first k row-major empty cells of `board`
// left open.
SudokuBoard restrict_empty(const SudokuBoard& board, const SudokuBoard& solution, int k);

}  // namespace qwb
