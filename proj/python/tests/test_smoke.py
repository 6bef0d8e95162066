# Copyright 2026 The qwalkback Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os
import pathlib

import pytest

import qwb

BOARDS = pathlib.Path(
    os.environ.get("QWB_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data" / "boards")
)


def test_board_helpers():
    text = (BOARDS / "puzzle_k2.txt").read_text()
    assert qwb.normalize_board(text).splitlines()[0] == "1.3."
    assert qwb.open_cells(text) == [(0, 1), (0, 3)]
    assert qwb.classical_solutions(text) == [(BOARDS / "puzzle_solved.txt").read_text()]


def test_solve_single_cell():
    report = qwb.solve(BOARDS / "puzzle_k1.txt", seed=3)
    assert report["solved"] is True
    assert report["grid"] == "1234\n3412\n2143\n4321\n"
    assert report["assignments"][0]["value"] == 2


def test_detect_both_ways():
    assert qwb.detect(BOARDS / "puzzle_k1.txt", seed=1)["detection"]["detected"] is True
    assert qwb.detect(BOARDS / "unsolvable.txt", seed=1)["detection"]["detected"] is False


def test_bench_row():
    rows = qwb.bench(BOARDS / "puzzle.txt", missing=2)["rows"]
    assert len(rows) == 1
    assert rows[0]["missing"] == 2
    assert rows[0]["qubit_count"] > 0


def test_errors():
    with pytest.raises(qwb.ParseError):
        qwb.normalize_board("1.1.\n....\n....\n....\n")
    with pytest.raises(qwb.ResourceError):
        qwb.solve(BOARDS / "puzzle.txt")
    with pytest.raises(qwb.UsageError):
        qwb.bench(BOARDS / "puzzle.txt", missing=0)
