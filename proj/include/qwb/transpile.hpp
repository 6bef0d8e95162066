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
#include <map>
#include <string>

#include "qwb/circuit.hpp"

namespace qwb {

struct ResourceMetrics {
  int qubit_count = 0;
  std::int64_t u3_count = 0;
  std::int64_t cx_count = 0;
  std::int64_t depth = 0;

  bool operator==(const ResourceMetrics&) const = default;
};

// Rewrites to {U3, CX}. Runs of single-qubit gates on a wire fuse into one
// U3 and identity rotations are dropped; barriers vanish.
Circuit transpile(const Circuit& c);

// Requires a transpiled circuit. Depth is the longest chain of gates that
// share a wire, each gate counting one.
ResourceMetrics metrics(const Circuit& c);

// Gate histogram by kind name, for circuits at any level.
std::map<std::string, std::int64_t> gate_counts(const Circuit& c);

// ZYZ angles with U = exp(i alpha) U3(theta, phi, lambda).
struct U3Angles {
  double theta, phi, lambda, alpha;
};
U3Angles u3_angles(const Mat2& u);

}  // namespace qwb
