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

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qwb {

using Qubit = int;
using cplx = std::complex<double>;

// Row-major 2x2 matrix: {m00, m01, m10, m11}.
using Mat2 = std::array<cplx, 4>;

enum class GateKind {
  X,
  H,
  S,
  Sdg,
  T,
  Tdg,
  RY,
  U3,
  CX,
  CZ,
  SWAP,
  XXplusYY,
  MCX,
  MCZ,
  Barrier,
};

std::string_view kind_name(GateKind kind);
std::optional<GateKind> kind_from_name(std::string_view name);

// A gate instance. Every kind except Barrier may carry controls, each with
// its own polarity (true fires on |1>, false on |0>).
//
// Arity per kind:
//   X H S Sdg T Tdg RY U3   1 target
//   CX CZ                   1 target, exactly 1 control
//   MCX                     1 target, at least 1 control
//   MCZ                     no targets, at least 1 control (symmetric)
//   SWAP XXplusYY           2 targets
//   Barrier                 any targets, no controls
//
// Parameters: RY {theta}, U3 {theta, phi, lambda}, XXplusYY {Phi, beta}.
struct Gate {
  GateKind kind = GateKind::X;
  std::vector<double> params;
  std::vector<Qubit> targets;
  std::vector<Qubit> controls;
  std::vector<bool> polarity;

  // Throws UsageError on arity, parameter or overlap problems.
  void validate() const;

  // All wires touched, targets first.
  std::vector<Qubit> wires() const;

  bool operator==(const Gate& other) const = default;
};

Gate adjoint(const Gate& g);

// Adds one control of the given polarity, promoting CX/CZ to MCX/MCZ.
Gate with_control(const Gate& g, Qubit ctrl, bool pol = true);

// The 2x2 matrix of an uncontrolled single-target gate (X .. U3).
Mat2 single_qubit_matrix(const Gate& g);

Mat2 u3_matrix(double theta, double phi, double lambda);
Mat2 matmul(const Mat2& a, const Mat2& b);
Mat2 dagger(const Mat2& a);

// 4x4 matrix of XX+YY(Phi, beta) in the basis index bit(q0) + 2*bit(q1).
std::array<cplx, 16> xx_plus_yy_matrix(double phi, double beta);

// Gate factories.
Gate make_gate(GateKind kind, std::vector<Qubit> targets, std::vector<double> params = {},
               std::vector<Qubit> controls = {}, std::vector<bool> polarity = {});

}  // namespace qwb
