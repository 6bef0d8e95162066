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

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qwb/circuit.hpp"

namespace qwb {

// Basis index convention: wire 0 is the least significant bit.
class SparseState {
 public:
  using Map = std::unordered_map<std::uint64_t, cplx>;
  static constexpr double kPruneEpsilon = 1e-12;
  static constexpr int kMaxQubits = 64;

  explicit SparseState(int num_qubits, std::uint64_t basis = 0);
  static SparseState from_amplitudes(int num_qubits, const Map& amplitudes);

  int num_qubits() const { return num_qubits_; }
  cplx amplitude(std::uint64_t basis) const;
  const Map& amplitudes() const { return amp_; }
  std::size_t support() const { return amp_.size(); }
  std::size_t peak_support() const { return peak_; }
  double norm() const;
  void normalize();
  // <this|other>
  cplx inner(const SparseState& other) const;

  // Exceeding this many stored amplitudes raises ResourceError; 0 disables.
  void set_max_support(std::size_t limit) { max_support_ = limit; }

  void apply(const Gate& g);
  void apply(const Circuit& c);

  // Entries sorted by basis index.
  std::vector<std::pair<std::uint64_t, cplx>> sorted() const;
  // `bitstring re im` lines sorted by bitstring, wire n-1 leftmost.
  std::string dump() const;

  // Marginal distribution over `qubits`; bit i of each key is qubits[i].
  std::map<std::uint64_t, double> marginal(const std::vector<Qubit>& qubits) const;

 private:
  void check_wire(Qubit q) const;
  void prune();
  void note_support();

  int num_qubits_;
  Map amp_;
  std::size_t max_support_ = 0;
  std::size_t peak_ = 0;
};

SparseState apply(SparseState state, const Circuit& c);

struct MeasurementCounts {
  int shots = 0;
  // Keys are bitstrings with the last measured qubit leftmost.
  std::map<std::string, int> counts;
};

// Draws `shots` outcomes from the marginal over `qubits` with a seeded
// generator.
MeasurementCounts sample(const SparseState& state, const std::vector<Qubit>& qubits, int shots,
                         std::uint64_t seed);

// Same draws keyed by outcome integer (bit i is qubits[i]).
std::map<std::uint64_t, int> sample_indices(const SparseState& state,
                                            const std::vector<Qubit>& qubits, int shots,
                                            std::uint64_t seed);

constexpr int kDenseMaxQubits = 12;

// Column j is the circuit applied to basis state j.
Eigen::MatrixXcd dense_unitary(const Circuit& c);

std::string bitstring(std::uint64_t value, int width);

}  // namespace qwb
