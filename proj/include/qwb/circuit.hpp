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

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qwb/gate.hpp"

namespace qwb {

// An ordered gate list over a growable pool of wires.
//
// Builders address wires through logical indices. The wire map sends each
// logical index to the physical wire stored in the gate list, so a register
// relabeling costs no gates. Allocation hands out the lowest free physical
// wire and grows the pool only when none is free.
class Circuit {
 public:
  Circuit() = default;
  // Starts with n allocated wires 0..n-1.
  explicit Circuit(int n);

  int num_qubits() const { return num_qubits_; }

  // Upper bound on the pool size, 0 for none.
  void set_max_qubits(int limit) { max_qubits_ = limit; }
  int max_qubits() const { return max_qubits_; }

  Qubit allocate();
  std::vector<Qubit> allocate(int n);
  void deallocate(Qubit q);
  void deallocate(std::span<const Qubit> qs);
  bool is_allocated(Qubit logical) const;
  // Physical indices currently in the free pool, ascending.
  std::vector<Qubit> free_pool() const;
  // Wires obtainable by allocate() without exceeding max_qubits.
  int available_qubits() const;

  // Appends a gate addressed by logical indices.
  void append(Gate g);
  // Appends a gate already addressed by physical indices.
  void append_physical(const Gate& g);

  void x(Qubit q);
  void h(Qubit q);
  void s(Qubit q);
  void sdg(Qubit q);
  void t(Qubit q);
  void tdg(Qubit q);
  void z(Qubit q);
  void ry(double theta, Qubit q);
  void u3(double theta, double phi, double lambda, Qubit q);
  void p(double lambda, Qubit q);
  void cx(Qubit c, Qubit t, bool pol = true);
  void cz(Qubit a, Qubit b);
  void swap(Qubit a, Qubit b);
  void mcx(std::vector<Qubit> controls, Qubit target, std::vector<bool> polarity = {});
  void mcz(std::vector<Qubit> qubits, std::vector<bool> polarity = {});
  void barrier(std::vector<Qubit> qubits);

  // Relabels logical wires: afterwards logical i addresses the physical wire
  // that logical perm[i] addressed before. Emits no gates.
  void permute_wires(const std::vector<int>& perm);
  const std::vector<int>& wire_map() const { return map_; }
  Qubit physical(Qubit logical) const;

  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  // Appends the adjoint of gates [begin, end) in reverse order. Wires that
  // were released inside the range are borrowed for the replay.
  void append_inverse(std::size_t begin, std::size_t end);

  bool operator==(const Circuit& other) const;

  friend Circuit invert(const Circuit& c);

 private:
  void check_logical(Qubit q) const;
  void grow();

  int num_qubits_ = 0;
  int max_qubits_ = 0;
  std::vector<Gate> gates_;
  std::vector<bool> allocated_;  // by physical index
  std::vector<int> map_;         // logical -> physical
  std::vector<int> inverse_;     // physical -> logical
};

Circuit invert(const Circuit& c);

// Adds `ctrl` (a physical wire outside the circuit) as an extra control on
// every gate.
Circuit control_generic(const Circuit& c, Qubit ctrl);

// Serialization: one `GATE kind params targets controls polarities` line per
// gate after a `QUBITS n` header. Lists are comma separated, `-` when empty.
std::string to_text(const Circuit& c);
Circuit from_text(const std::string& text);

}  // namespace qwb
