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

"""Python front end for the qwb quantum backtracking solver."""

import json
import os

from . import _core
from ._core import ContractError, ParseError, ResourceError, UsageError
from ._core import classical_solutions, normalize_board, open_cells

__all__ = [
    "ContractError",
    "ParseError",
    "ResourceError",
    "UsageError",
    "bench",
    "classical_solutions",
    "detect",
    "normalize_board",
    "open_cells",
    "solve",
]


def solve(path, precision=3, shots=10000, seed=0, subspace_opt=False):
    """Run the quantum solver on a board file and return the report dict."""
    return json.loads(_core.solve(os.fspath(path), precision, shots, seed, subspace_opt))


def detect(path, delta=0.1, beta=0.5, gamma=4.0, seed=0):
    """Decide whether the board has a completion; returns the report dict."""
    return json.loads(_core.detect(os.fspath(path), delta, beta, gamma, seed))


def bench(path, missing=None, precision=3):
    """Resource rows for the phase estimation circuit; returns the report dict."""
    return json.loads(_core.bench(os.fspath(path), missing, precision))
