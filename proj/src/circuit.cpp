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

#include "qwb/circuit.hpp"

#include <algorithm>
#include <climits>
#include <numbers>
#include <numeric>

#include "qwb/error.hpp"

namespace qwb {

Circuit::Circuit(int n) {
  if (n < 0) throw UsageError("negative qubit count");
  for (int i = 0; i < n; ++i) allocate();
}

void Circuit::grow() {
  if (max_qubits_ > 0 && num_qubits_ >= max_qubits_) {
    throw ResourceError("qubit limit of " + std::to_string(max_qubits_) + " reached");
  }
  allocated_.push_back(false);
  map_.push_back(num_qubits_);
  inverse_.push_back(num_qubits_);
  ++num_qubits_;
}

Qubit Circuit::allocate() {
  auto it = std::find(allocated_.begin(), allocated_.end(), false);
  if (it == allocated_.end()) {
    grow();
    it = allocated_.end() - 1;
  }
  const int phys = static_cast<int>(it - allocated_.begin());
  allocated_[phys] = true;
  return inverse_[phys];
}

std::vector<Qubit> Circuit::allocate(int n) {
  std::vector<Qubit> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(allocate());
  return out;
}

void Circuit::deallocate(Qubit q) {
  if (q < 0 || q >= num_qubits_ || !allocated_[map_[q]]) {
    throw UsageError("deallocating qubit " + std::to_string(q) + " which is not allocated");
  }
  allocated_[map_[q]] = false;
}

void Circuit::deallocate(std::span<const Qubit> qs) {
  for (Qubit q : qs) deallocate(q);
}

bool Circuit::is_allocated(Qubit logical) const {
  return logical >= 0 && logical < num_qubits_ && allocated_[map_[logical]];
}

std::vector<Qubit> Circuit::free_pool() const {
  std::vector<Qubit> out;
  for (int i = 0; i < num_qubits_; ++i) {
    if (!allocated_[i]) out.push_back(i);
  }
  return out;
}

int Circuit::available_qubits() const {
  const int free = static_cast<int>(std::count(allocated_.begin(), allocated_.end(), false));
  if (max_qubits_ <= 0) return INT_MAX;
  return free + std::max(0, max_qubits_ - num_qubits_);
}

Qubit Circuit::physical(Qubit logical) const {
  if (logical < 0 || logical >= num_qubits_) {
    throw UsageError("qubit " + std::to_string(logical) + " out of range");
  }
  return map_[logical];
}

void Circuit::check_logical(Qubit q) const {
  if (!is_allocated(q)) {
    throw UsageError("gate references unallocated qubit " + std::to_string(q));
  }
}

void Circuit::append(Gate g) {
  for (Qubit q : g.wires()) check_logical(q);
  for (Qubit& q : g.targets) q = map_[q];
  for (Qubit& q : g.controls) q = map_[q];
  g.validate();
  gates_.push_back(std::move(g));
}

void Circuit::append_physical(const Gate& g) {
  g.validate();
  for (Qubit q : g.wires()) {
    if (q >= num_qubits_ || !allocated_[q]) {
      throw UsageError("gate references unallocated wire " + std::to_string(q));
    }
  }
  gates_.push_back(g);
}

void Circuit::x(Qubit q) { append(make_gate(GateKind::X, {q})); }
void Circuit::h(Qubit q) { append(make_gate(GateKind::H, {q})); }
void Circuit::s(Qubit q) { append(make_gate(GateKind::S, {q})); }
void Circuit::sdg(Qubit q) { append(make_gate(GateKind::Sdg, {q})); }
void Circuit::t(Qubit q) { append(make_gate(GateKind::T, {q})); }
void Circuit::tdg(Qubit q) { append(make_gate(GateKind::Tdg, {q})); }
void Circuit::z(Qubit q) { p(std::numbers::pi, q); }
void Circuit::ry(double theta, Qubit q) { append(make_gate(GateKind::RY, {q}, {theta})); }
void Circuit::u3(double theta, double phi, double lambda, Qubit q) {
  append(make_gate(GateKind::U3, {q}, {theta, phi, lambda}));
}
void Circuit::p(double lambda, Qubit q) { u3(0, 0, lambda, q); }
void Circuit::cx(Qubit c, Qubit t, bool pol) {
  append(make_gate(GateKind::CX, {t}, {}, {c}, {pol}));
}
void Circuit::cz(Qubit a, Qubit b) { append(make_gate(GateKind::CZ, {b}, {}, {a})); }
void Circuit::swap(Qubit a, Qubit b) { append(make_gate(GateKind::SWAP, {a, b})); }
void Circuit::mcx(std::vector<Qubit> controls, Qubit target, std::vector<bool> polarity) {
  append(make_gate(GateKind::MCX, {target}, {}, std::move(controls), std::move(polarity)));
}
void Circuit::mcz(std::vector<Qubit> qubits, std::vector<bool> polarity) {
  append(make_gate(GateKind::MCZ, {}, {}, std::move(qubits), std::move(polarity)));
}
void Circuit::barrier(std::vector<Qubit> qubits) {
  append(make_gate(GateKind::Barrier, std::move(qubits)));
}

void Circuit::permute_wires(const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != num_qubits_) {
    throw UsageError("permutation size does not match the qubit count");
  }
  std::vector<bool> hit(num_qubits_, false);
  for (int v : perm) {
    if (v < 0 || v >= num_qubits_ || hit[v]) throw UsageError("permutation is not a bijection");
    hit[v] = true;
  }
  std::vector<int> next(num_qubits_);
  for (int i = 0; i < num_qubits_; ++i) next[i] = map_[perm[i]];
  map_ = std::move(next);
  for (int i = 0; i < num_qubits_; ++i) inverse_[map_[i]] = i;
}

void Circuit::append_inverse(std::size_t begin, std::size_t end) {
  if (begin > end || end > gates_.size()) throw UsageError("bad gate range for inversion");
  std::vector<int> borrowed;
  for (std::size_t i = end; i-- > begin;) {
    Gate g = adjoint(gates_[i]);
    for (Qubit q : g.wires()) {
      if (!allocated_[q]) {
        allocated_[q] = true;
        borrowed.push_back(q);
      }
    }
    gates_.push_back(std::move(g));
  }
  for (int q : borrowed) allocated_[q] = false;
}

bool Circuit::operator==(const Circuit& other) const {
  return num_qubits_ == other.num_qubits_ && gates_ == other.gates_;
}

Circuit invert(const Circuit& c) {
  Circuit out = c;
  std::reverse(out.gates_.begin(), out.gates_.end());
  for (Gate& g : out.gates_) g = adjoint(g);
  return out;
}

Circuit control_generic(const Circuit& c, Qubit ctrl) {
  if (ctrl < 0) throw UsageError("negative control index");
  if (ctrl < c.num_qubits()) {
    bool used = false;
    for (const Gate& g : c.gates()) {
      for (Qubit q : g.wires()) used = used || q == ctrl;
    }
    const auto pool = c.free_pool();
    const bool free = std::find(pool.begin(), pool.end(), ctrl) != pool.end();
    if (used || !free) {
      throw UsageError("control qubit " + std::to_string(ctrl) + " collides with circuit wires");
    }
  }
  Circuit out(std::max(c.num_qubits(), ctrl + 1));
  for (const Gate& g : c.gates()) out.append_physical(with_control(g, ctrl));
  return out;
}

}  // namespace qwb
