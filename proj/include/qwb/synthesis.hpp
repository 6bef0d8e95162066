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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qwb/circuit.hpp"

namespace qwb::synth {

enum class MCXMethod {
  gray,              // exact, one MCX gate lowered by the transpiler
  gray_pt,           // exact up to a diagonal of garbage phases
  balauca_logdepth,  // exact, log-depth tree over borrowed ancillae
};

std::string_view method_name(MCXMethod m);
std::optional<MCXMethod> method_from_name(std::string_view name);

// X on `target` iff every control matches its entry of `control_state`
// (empty state means all ones). balauca_logdepth takes controls.size() - 2
// ancillae, from `ancillae` when given and from the free pool otherwise.
void mcx(Circuit& c, const std::vector<Qubit>& controls, std::vector<bool> control_state,
         Qubit target, MCXMethod method, std::span<const Qubit> ancillae = {});

// Phase -1 on the basis state of `qubits` equal to `control_state`.
void mcz(Circuit& c, const std::vector<Qubit>& qubits, std::vector<bool> control_state = {});

// Diagonal exp(i f(x)) up to global phase. `phases[x]` is f at the basis
// state whose bit i is the value of wires[i]. The CNOT count is 2^n - 2 for
// a generic f. With `top_level_only` only the parity terms that contain the
// last wire are emitted (2^(n-1) CNOTs); the dropped terms form a diagonal
// of the other wires.
void diagonal(Circuit& c, std::span<const Qubit> wires, std::span<const double> phases,
              bool top_level_only = false);

struct TruthTable {
  int input_bits = 0;
  int output_bits = 0;
  // rows[x] holds the output word for input x; must have 2^input_bits entries.
  std::vector<std::uint64_t> rows;

  void validate() const;
  bool output_bit(std::uint64_t x, int bit) const { return (rows[x] >> bit) & 1U; }
};

// |x>|0> -> |x>|f(x)>. A control is folded into the table as an extra input
// whose zero half maps to 0. The phase tolerant variant is exact up to a
// diagonal phase on the inputs.
void synth_truth_table(Circuit& c, const TruthTable& table, std::span<const Qubit> inputs,
                       std::span<const Qubit> outputs, std::optional<Qubit> ctrl = std::nullopt,
                       bool phase_tolerant = false);

// XX+YY(phi, pi/2) on (q0, q1), matrix index bit(q0) + 2 bit(q1).
//
// Uncontrolled: H CX RY RY CX H. Controlled: the RY pair is replaced by
// RY(gamma) CH RY(-gamma) on each wire with gamma = (phi - pi)/4. When the
// controls fire the result is XX+YY(phi) Z(q1), which matches the exact
// controlled gate on every input with q1 = 0 and differs by a sign on the
// rest. Inside U V U^dagger with diagonal V the sign cancels.
void xx_plus_yy(Circuit& c, double phi, Qubit q0, Qubit q1, const std::vector<Qubit>& ctrls = {},
                std::vector<bool> polarity = {});

// Controlled Hadamard with a single CNOT: S H T CX Tdg H Sdg on the target.
void controlled_h(Circuit& c, Qubit ctrl, Qubit target, bool polarity = true);

// Swap of a and b; with a control only the middle CX is controlled.
void fredkin(Circuit& c, Qubit a, Qubit b, std::optional<Qubit> ctrl = std::nullopt);

// result ^= [a == b] (and ctrl when given). `result` must start in |0>.
void qq_equal(Circuit& c, std::span<const Qubit> a, std::span<const Qubit> b, Qubit result,
              std::optional<Qubit> ctrl = std::nullopt, MCXMethod method = MCXMethod::gray_pt);

// result ^= [value(reg) in values] (and ctrl when given), via one truth
// table synthesis.
void cq_in_set(Circuit& c, std::span<const Qubit> reg, const std::vector<std::uint64_t>& values,
               Qubit result, std::optional<Qubit> ctrl = std::nullopt, bool phase_tolerant = true);

}  // namespace qwb::synth
