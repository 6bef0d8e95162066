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

#include "qwb/gate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qwb/error.hpp"

namespace qwb {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  int targets;  // -1 means any
  int params;
};

constexpr std::array<KindInfo, 15> kKinds = {{
    {GateKind::X, "X", 1, 0},
    {GateKind::H, "H", 1, 0},
    {GateKind::S, "S", 1, 0},
    {GateKind::Sdg, "Sdg", 1, 0},
    {GateKind::T, "T", 1, 0},
    {GateKind::Tdg, "Tdg", 1, 0},
    {GateKind::RY, "RY", 1, 1},
    {GateKind::U3, "U3", 1, 3},
    {GateKind::CX, "CX", 1, 0},
    {GateKind::CZ, "CZ", 1, 0},
    {GateKind::SWAP, "SWAP", 2, 0},
    {GateKind::XXplusYY, "XXplusYY", 2, 2},
    {GateKind::MCX, "MCX", 1, 0},
    {GateKind::MCZ, "MCZ", 0, 0},
    {GateKind::Barrier, "Barrier", -1, 0},
}};

const KindInfo& info(GateKind kind) {
  return kKinds[static_cast<std::size_t>(kind)];
}

}  // namespace

std::string_view kind_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> kind_from_name(std::string_view name) {
  for (const auto& k : kKinds) {
    if (k.name == name) return k.kind;
  }
  return std::nullopt;
}

void Gate::validate() const {
  const KindInfo& ki = info(kind);
  if (ki.targets >= 0 && static_cast<int>(targets.size()) != ki.targets) {
    throw UsageError(std::string(ki.name) + ": wrong number of targets");
  }
  if (static_cast<int>(params.size()) != ki.params) {
    throw UsageError(std::string(ki.name) + ": wrong number of parameters");
  }
  if (polarity.size() != controls.size()) {
    throw UsageError(std::string(ki.name) + ": polarity list does not match controls");
  }
  switch (kind) {
    case GateKind::CX:
    case GateKind::CZ:
      if (controls.size() != 1) throw UsageError(std::string(ki.name) + ": needs exactly one control");
      break;
    case GateKind::MCX:
    case GateKind::MCZ:
      if (controls.empty()) throw UsageError(std::string(ki.name) + ": needs at least one control");
      break;
    case GateKind::Barrier:
      if (!controls.empty()) throw UsageError("Barrier cannot be controlled");
      break;
    default:
      break;
  }
  std::set<Qubit> seen;
  for (Qubit q : wires()) {
    if (q < 0) throw UsageError(std::string(ki.name) + ": negative qubit index");
    if (!seen.insert(q).second) {
      throw UsageError(std::string(ki.name) + ": qubit " + std::to_string(q) + " used twice");
    }
  }
  for (double p : params) {
    if (!std::isfinite(p)) throw UsageError(std::string(ki.name) + ": non-finite parameter");
  }
}

std::vector<Qubit> Gate::wires() const {
  std::vector<Qubit> w = targets;
  w.insert(w.end(), controls.begin(), controls.end());
  return w;
}

Gate adjoint(const Gate& g) {
  Gate a = g;
  switch (g.kind) {
    case GateKind::S: a.kind = GateKind::Sdg; break;
    case GateKind::Sdg: a.kind = GateKind::S; break;
    case GateKind::T: a.kind = GateKind::Tdg; break;
    case GateKind::Tdg: a.kind = GateKind::T; break;
    case GateKind::RY: a.params[0] = -g.params[0]; break;
    case GateKind::U3:
      a.params = {-g.params[0], -g.params[2], -g.params[1]};
      break;
    case GateKind::XXplusYY: a.params[0] = -g.params[0]; break;
    default: break;
  }
  return a;
}

Gate with_control(const Gate& g, Qubit ctrl, bool pol) {
  Gate c = g;
  switch (g.kind) {
    case GateKind::Barrier:
      return c;
    case GateKind::X:
      c.kind = g.controls.empty() && pol ? GateKind::CX : GateKind::MCX;
      break;
    case GateKind::CX:
      c.kind = GateKind::MCX;
      break;
    case GateKind::CZ:
      c.kind = GateKind::MCZ;
      c.controls = {g.controls[0], g.targets[0]};
      c.polarity = {g.polarity[0], true};
      c.targets.clear();
      break;
    default:
      break;
  }
  c.controls.push_back(ctrl);
  c.polarity.push_back(pol);
  return c;
}

Mat2 u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  return {cplx(c, 0), -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
}

Mat2 matmul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

Mat2 dagger(const Mat2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

Mat2 single_qubit_matrix(const Gate& g) {
  using std::numbers::pi;
  const double r = 1 / std::numbers::sqrt2;
  switch (g.kind) {
    case GateKind::X:
    case GateKind::CX:
    case GateKind::MCX:
      return {0, 1, 1, 0};
    case GateKind::H: return {r, r, r, -r};
    case GateKind::S: return {1, 0, 0, cplx(0, 1)};
    case GateKind::Sdg: return {1, 0, 0, cplx(0, -1)};
    case GateKind::T: return {1, 0, 0, std::polar(1.0, pi / 4)};
    case GateKind::Tdg: return {1, 0, 0, std::polar(1.0, -pi / 4)};
    case GateKind::CZ: return {1, 0, 0, -1};
    case GateKind::RY: {
      const double c = std::cos(g.params[0] / 2);
      const double s = std::sin(g.params[0] / 2);
      return {c, -s, s, c};
    }
    case GateKind::U3: return u3_matrix(g.params[0], g.params[1], g.params[2]);
    default:
      throw UsageError(std::string(kind_name(g.kind)) + " has no single-qubit matrix");
  }
}

std::array<cplx, 16> xx_plus_yy_matrix(double phi, double beta) {
  std::array<cplx, 16> m{};
  const double c = std::cos(phi / 2);
  const double s = std::sin(phi / 2);
  m[0] = 1;
  m[15] = 1;
  m[1 * 4 + 1] = c;
  m[2 * 4 + 2] = c;
  m[1 * 4 + 2] = cplx(0, -s) * std::polar(1.0, -beta);
  m[2 * 4 + 1] = cplx(0, -s) * std::polar(1.0, beta);
  return m;
}

Gate make_gate(GateKind kind, std::vector<Qubit> targets, std::vector<double> params,
               std::vector<Qubit> controls, std::vector<bool> polarity) {
  Gate g;
  g.kind = kind;
  g.targets = std::move(targets);
  g.params = std::move(params);
  g.controls = std::move(controls);
  if (polarity.empty()) polarity.assign(g.controls.size(), true);
  g.polarity = std::move(polarity);
  g.validate();
  return g;
}

}  // namespace qwb
