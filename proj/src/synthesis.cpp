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

#include "qwb/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>

#include "qwb/error.hpp"

namespace qwb::synth {

namespace {

using std::numbers::pi;
constexpr double kPhaseTol = 1e-12;

std::vector<bool> full_state(std::vector<bool> state, std::size_t n) {
  if (state.empty()) state.assign(n, true);
  if (state.size() != n) throw UsageError("control_state length does not match controls");
  return state;
}

// X on every control whose polarity is 0, so the body can assume all-ones.
void flip_zero_controls(Circuit& c, const std::vector<Qubit>& controls,
                        const std::vector<bool>& state) {
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (!state[i]) c.x(controls[i]);
  }
}

void check_distinct(const std::vector<Qubit>& qs, const char* what) {
  std::set<Qubit> seen(qs.begin(), qs.end());
  if (seen.size() != qs.size()) throw UsageError(std::string(what) + ": qubits must be distinct");
}

// In-place Walsh-Hadamard transform.
void walsh(std::vector<double>& a) {
  for (std::size_t len = 1; len < a.size(); len <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double u = a[j];
        const double v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
    }
  }
}

// Relative-phase Toffoli, 3 CNOTs. The sequence is its own inverse.
void margolus(Circuit& c, Qubit a, Qubit b, Qubit t) {
  c.h(t);
  c.t(t);
  c.cx(b, t);
  c.tdg(t);
  c.cx(a, t);
  c.t(t);
  c.cx(b, t);
  c.tdg(t);
  c.h(t);
}

// Relative-phase three-control Toffoli, 6 CNOTs.
void rc3x(Circuit& c, Qubit a, Qubit b, Qubit d, Qubit t) {
  c.h(t);
  c.t(t);
  c.cx(d, t);
  c.tdg(t);
  c.h(t);
  c.cx(a, t);
  c.t(t);
  c.cx(b, t);
  c.tdg(t);
  c.cx(a, t);
  c.t(t);
  c.cx(b, t);
  c.tdg(t);
  c.h(t);
  c.t(t);
  c.cx(d, t);
  c.tdg(t);
  c.h(t);
}

void mcx_pt_all_ones(Circuit& c, const std::vector<Qubit>& ctl, Qubit target) {
  switch (ctl.size()) {
    case 1:
      c.cx(ctl[0], target);
      return;
    case 2:
      margolus(c, ctl[0], ctl[1], target);
      return;
    case 3:
      rc3x(c, ctl[0], ctl[1], ctl[2], target);
      return;
    default: {
      std::vector<Qubit> wires = ctl;
      wires.push_back(target);
      const std::size_t k = ctl.size();
      std::vector<double> phases(std::size_t{1} << (k + 1), 0.0);
      phases[(std::size_t{1} << (k + 1)) - 1] = pi;
      c.h(target);
      diagonal(c, wires, phases, true);
      c.h(target);
    }
  }
}

void balauca(Circuit& c, const std::vector<Qubit>& ctl, Qubit target,
             std::span<const Qubit> ancillae) {
  const std::size_t k = ctl.size();
  if (k <= 2) {
    c.mcx(ctl, target);
    return;
  }
  const std::size_t need = k - 2;
  std::vector<Qubit> anc(ancillae.begin(), ancillae.end());
  const bool borrowed = anc.empty();
  if (!borrowed && anc.size() < need) {
    throw UsageError("balauca_logdepth needs " + std::to_string(need) + " ancillae");
  }
  if (borrowed) {
    if (c.available_qubits() < static_cast<int>(need)) {
      throw UsageError("balauca_logdepth needs " + std::to_string(need) +
                       " free ancillae, pool has " + std::to_string(c.available_qubits()));
    }
    anc = c.allocate(static_cast<int>(need));
  }
  // Pairwise reduction: each layer ANDs neighbours into fresh ancillae with
  // relative-phase Toffolis, halving the live list until two remain.
  struct Step {
    Qubit a, b, out;
  };
  std::vector<Step> steps;
  std::vector<Qubit> layer = ctl;
  std::size_t next = 0;
  while (layer.size() > 2) {
    std::vector<Qubit> reduced;
    std::size_t i = 0;
    for (; i + 1 < layer.size(); i += 2) {
      if (reduced.size() + (layer.size() - i) <= 2) break;
      const Qubit out = anc[next++];
      margolus(c, layer[i], layer[i + 1], out);
      steps.push_back({layer[i], layer[i + 1], out});
      reduced.push_back(out);
    }
    for (; i < layer.size(); ++i) reduced.push_back(layer[i]);
    layer = std::move(reduced);
  }
  c.mcx(layer, target);
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) margolus(c, it->a, it->b, it->out);
  if (borrowed) c.deallocate(anc);
}

}  // namespace

std::string_view method_name(MCXMethod m) {
  switch (m) {
    case MCXMethod::gray: return "gray";
    case MCXMethod::gray_pt: return "gray_pt";
    case MCXMethod::balauca_logdepth: return "balauca_logdepth";
  }
  return "?";
}

std::optional<MCXMethod> method_from_name(std::string_view name) {
  for (auto m : {MCXMethod::gray, MCXMethod::gray_pt, MCXMethod::balauca_logdepth}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

void diagonal(Circuit& c, std::span<const Qubit> wires, std::span<const double> phases,
              bool top_level_only) {
  const std::size_t n = wires.size();
  if (n == 0) return;
  if (phases.size() != (std::size_t{1} << n)) throw UsageError("diagonal: phase table size");
  std::vector<double> w(phases.begin(), phases.end());
  walsh(w);
  // f(x) = const + sum_S w_S * parity_S(x) with w_S = -2 * walsh_S / 2^n.
  const double scale = -2.0 / static_cast<double>(w.size());
  for (double& v : w) v *= scale;
  const std::size_t first = top_level_only ? n - 1 : 0;
  for (std::size_t j = first; j < n; ++j) {
    const std::size_t top = std::size_t{1} << j;
    bool any = false;
    for (std::size_t low = 0; low < top; ++low) any = any || std::abs(w[top | low]) > kPhaseTol;
    if (!any) continue;
    const Qubit tw = wires[j];
    if (j == 0) {
      c.p(w[1], tw);
      continue;
    }
    for (std::size_t i = 0; i < top; ++i) {
      const std::size_t g = i ^ (i >> 1);
      const double angle = w[top | g];
      if (std::abs(angle) > kPhaseTol) c.p(angle, tw);
      const std::size_t ni = (i + 1) % top;
      const std::size_t ng = ni ^ (ni >> 1);
      const int bit = std::countr_zero(g ^ ng);
      c.cx(wires[bit], tw);
    }
  }
}

void mcx(Circuit& c, const std::vector<Qubit>& controls, std::vector<bool> control_state,
         Qubit target, MCXMethod method, std::span<const Qubit> ancillae) {
  if (controls.empty()) throw UsageError("mcx needs at least one control");
  control_state = full_state(std::move(control_state), controls.size());
  std::vector<Qubit> all = controls;
  all.push_back(target);
  all.insert(all.end(), ancillae.begin(), ancillae.end());
  check_distinct(all, "mcx");
  switch (method) {
    case MCXMethod::gray:
      c.mcx(controls, target, control_state);
      return;
    case MCXMethod::gray_pt:
      flip_zero_controls(c, controls, control_state);
      mcx_pt_all_ones(c, controls, target);
      flip_zero_controls(c, controls, control_state);
      return;
    case MCXMethod::balauca_logdepth:
      flip_zero_controls(c, controls, control_state);
      balauca(c, controls, target, ancillae);
      flip_zero_controls(c, controls, control_state);
      return;
  }
}

void mcz(Circuit& c, const std::vector<Qubit>& qubits, std::vector<bool> control_state) {
  if (qubits.size() < 2) throw UsageError("mcz needs at least two qubits");
  check_distinct(qubits, "mcz");
  c.mcz(qubits, full_state(std::move(control_state), qubits.size()));
}

void TruthTable::validate() const {
  if (input_bits < 0 || input_bits > 20 || output_bits < 0 || output_bits > 64) {
    throw UsageError("truth table dimensions out of range");
  }
  if (rows.size() != (std::size_t{1} << input_bits)) {
    throw UsageError("truth table is partial: expected " +
                     std::to_string(std::size_t{1} << input_bits) + " rows, got " +
                     std::to_string(rows.size()));
  }
  const std::uint64_t mask = output_bits == 64 ? ~0ULL : ((1ULL << output_bits) - 1);
  for (std::uint64_t r : rows) {
    if (r & ~mask) throw UsageError("truth table row exceeds output width");
  }
}

void synth_truth_table(Circuit& c, const TruthTable& table, std::span<const Qubit> inputs,
                       std::span<const Qubit> outputs, std::optional<Qubit> ctrl,
                       bool phase_tolerant) {
  table.validate();
  if (static_cast<int>(inputs.size()) != table.input_bits ||
      static_cast<int>(outputs.size()) != table.output_bits) {
    throw UsageError("truth table register sizes do not match");
  }
  std::vector<Qubit> in(inputs.begin(), inputs.end());
  std::vector<std::uint64_t> rows = table.rows;
  if (ctrl) {
    // Extended table: the control is the top input and its zero half is 0.
    in.push_back(*ctrl);
    std::vector<std::uint64_t> ext(rows.size() * 2, 0);
    std::copy(rows.begin(), rows.end(), ext.begin() + static_cast<long>(rows.size()));
    rows = std::move(ext);
  }
  std::vector<Qubit> all = in;
  all.insert(all.end(), outputs.begin(), outputs.end());
  check_distinct(all, "synth_truth_table");

  const std::size_t n = in.size();
  for (std::size_t t = 0; t < outputs.size(); ++t) {
    auto f = [&](std::size_t x) { return (rows[x] >> t) & 1U; };
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i) {
      bool matters = false;
      for (std::size_t x = 0; x < rows.size() && !matters; ++x) {
        matters = f(x) != f(x ^ (std::size_t{1} << i));
      }
      if (matters) support.push_back(i);
    }
    if (support.empty()) {
      if (f(0)) c.x(outputs[t]);
      continue;
    }
    const std::size_t s = support.size();
    std::vector<Qubit> wires;
    for (std::size_t i : support) wires.push_back(in[i]);
    wires.push_back(outputs[t]);
    std::vector<double> phases(std::size_t{1} << (s + 1), 0.0);
    for (std::size_t xr = 0; xr < (std::size_t{1} << s); ++xr) {
      std::size_t x = 0;
      for (std::size_t b = 0; b < s; ++b) {
        if ((xr >> b) & 1U) x |= std::size_t{1} << support[b];
      }
      if (f(x)) phases[xr | (std::size_t{1} << s)] = pi;
    }
    c.h(outputs[t]);
    diagonal(c, wires, phases, phase_tolerant);
    c.h(outputs[t]);
  }
}

void controlled_h(Circuit& c, Qubit ctrl, Qubit target, bool polarity) {
  if (!polarity) c.x(ctrl);
  c.s(target);
  c.h(target);
  c.t(target);
  c.cx(ctrl, target);
  c.tdg(target);
  c.h(target);
  c.sdg(target);
  if (!polarity) c.x(ctrl);
}

void xx_plus_yy(Circuit& c, double phi, Qubit q0, Qubit q1, const std::vector<Qubit>& ctrls,
                std::vector<bool> polarity) {
  if (q0 == q1) throw UsageError("xx_plus_yy needs two distinct qubits");
  if (ctrls.empty()) {
    c.h(q1);
    c.cx(q1, q0);
    c.ry(-phi / 2, q0);
    c.ry(-phi / 2, q1);
    c.cx(q1, q0);
    c.h(q1);
    return;
  }
  polarity = full_state(std::move(polarity), ctrls.size());
  std::vector<Qubit> all = ctrls;
  all.push_back(q0);
  all.push_back(q1);
  check_distinct(all, "xx_plus_yy");
  const double gamma = (phi - pi) / 4;
  flip_zero_controls(c, ctrls, polarity);
  c.h(q1);
  c.cx(q1, q0);
  c.ry(gamma, q0);
  c.ry(gamma, q1);
  if (ctrls.size() == 1) {
    controlled_h(c, ctrls[0], q0);
    controlled_h(c, ctrls[0], q1);
  } else {
    // Both Hadamards share one MCX: X^k on q0 and q1 equals
    // CX(q0,q1) MCX(ctrls,q0) CX(q0,q1).
    for (Qubit q : {q0, q1}) {
      c.s(q);
      c.h(q);
      c.t(q);
    }
    c.cx(q0, q1);
    c.mcx(ctrls, q0);
    c.cx(q0, q1);
    for (Qubit q : {q0, q1}) {
      c.tdg(q);
      c.h(q);
      c.sdg(q);
    }
  }
  c.ry(-gamma, q0);
  c.ry(-gamma, q1);
  c.cx(q1, q0);
  c.h(q1);
  flip_zero_controls(c, ctrls, polarity);
}

void fredkin(Circuit& c, Qubit a, Qubit b, std::optional<Qubit> ctrl) {
  if (!ctrl) {
    c.cx(a, b);
    c.cx(b, a);
    c.cx(a, b);
    return;
  }
  c.cx(b, a);
  c.mcx({*ctrl, a}, b);
  c.cx(b, a);
}

void qq_equal(Circuit& c, std::span<const Qubit> a, std::span<const Qubit> b, Qubit result,
              std::optional<Qubit> ctrl, MCXMethod method) {
  if (a.size() != b.size()) throw UsageError("qq_equal: register widths differ");
  if (a.empty()) throw UsageError("qq_equal: empty registers");
  for (std::size_t i = 0; i < a.size(); ++i) c.cx(a[i], b[i]);
  std::vector<Qubit> controls(b.begin(), b.end());
  std::vector<bool> state(controls.size(), false);
  if (ctrl) {
    controls.push_back(*ctrl);
    state.push_back(true);
  }
  mcx(c, controls, state, result, method);
  for (std::size_t i = a.size(); i-- > 0;) c.cx(a[i], b[i]);
}

void cq_in_set(Circuit& c, std::span<const Qubit> reg, const std::vector<std::uint64_t>& values,
               Qubit result, std::optional<Qubit> ctrl, bool phase_tolerant) {
  if (reg.empty() || reg.size() > 20) throw UsageError("cq_in_set: register width out of range");
  TruthTable table;
  table.input_bits = static_cast<int>(reg.size());
  table.output_bits = 1;
  table.rows.assign(std::size_t{1} << reg.size(), 0);
  for (std::uint64_t v : values) {
    if (v >= table.rows.size()) {
      throw UsageError("cq_in_set: value " + std::to_string(v) + " not representable in " +
                       std::to_string(reg.size()) + " bits");
    }
    table.rows[v] = 1;
  }
  const Qubit out[] = {result};
  synth_truth_table(c, table, reg, out, ctrl, phase_tolerant);
}

}  // namespace qwb::synth
