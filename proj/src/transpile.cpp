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

#include "qwb/transpile.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

#include "qwb/error.hpp"
#include "qwb/synthesis.hpp"

namespace qwb {

namespace {

using std::numbers::pi;
constexpr double kTol = 1e-12;
const Mat2 kX = {0, 1, 1, 0};

double wrap(double a) {
  a = std::remainder(a, 2 * pi);
  if (a <= -pi + 1e-15) a += 2 * pi;
  return a;
}

Mat2 rz(double a) { return {std::polar(1.0, -a / 2), 0, 0, std::polar(1.0, a / 2)}; }
Mat2 ry(double a) {
  return {std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2)};
}

bool is_diagonal(const Mat2& m) { return std::abs(m[1]) < kTol && std::abs(m[2]) < kTol; }

struct Prim {
  bool is_cx;
  int a;  // wire, or control of a CX
  int b;  // target of a CX
  Mat2 m;
};

class Lowerer {
 public:
  explicit Lowerer(int n) : n_(n) {}

  void emit(const Gate& g) {
    if (g.kind == GateKind::Barrier) return;
    if (g.controls.empty()) {
      emit_uncontrolled(g);
      return;
    }
    switch (g.kind) {
      case GateKind::X:
      case GateKind::CX:
      case GateKind::MCX:
        emit_mcx(g);
        return;
      case GateKind::CZ:
        emit_mcz({g.controls[0], g.targets[0]}, {g.polarity[0], true});
        return;
      case GateKind::MCZ:
        emit_mcz(g.controls, g.polarity);
        return;
      default:
        break;
    }
    const bool all_ones = std::all_of(g.polarity.begin(), g.polarity.end(), [](bool p) { return p; });
    if (!all_ones) {
      for (std::size_t i = 0; i < g.controls.size(); ++i) {
        if (!g.polarity[i]) prim_u(g.controls[i], kX);
      }
      Gate ones = g;
      ones.polarity.assign(g.controls.size(), true);
      emit(ones);
      for (std::size_t i = 0; i < g.controls.size(); ++i) {
        if (!g.polarity[i]) prim_u(g.controls[i], kX);
      }
      return;
    }
    switch (g.kind) {
      case GateKind::SWAP: {
        const Qubit a = g.targets[0];
        const Qubit b = g.targets[1];
        std::vector<Qubit> ctl = g.controls;
        ctl.push_back(a);
        expand([&](Circuit& c) {
          c.cx(b, a);
          c.mcx(ctl, b);
          c.cx(b, a);
        });
        return;
      }
      case GateKind::XXplusYY: {
        const Qubit q0 = g.targets[0];
        const Qubit q1 = g.targets[1];
        const double mu = pi / 2 - g.params[1];
        const double half = -g.params[0] / 2;
        expand([&](Circuit& c) {
          if (std::abs(mu) > kTol) c.p(-mu, q0);
          c.h(q1);
          c.cx(q1, q0);
          c.append(make_gate(GateKind::RY, {q0}, {half}, g.controls, g.polarity));
          c.append(make_gate(GateKind::RY, {q1}, {half}, g.controls, g.polarity));
          c.cx(q1, q0);
          c.h(q1);
          if (std::abs(mu) > kTol) c.p(mu, q0);
        });
        return;
      }
      default:
        emit_controlled_1q(g);
    }
  }

  std::vector<Prim> take() { return std::move(out_); }

 private:
  void prim_u(int w, const Mat2& m) { out_.push_back({false, w, -1, m}); }
  void prim_cx(int c, int t) { out_.push_back({true, c, t, {}}); }

  void expand(const std::function<void(Circuit&)>& build) {
    Circuit scratch(n_);
    build(scratch);
    for (const Gate& g : scratch.gates()) emit(g);
  }

  void emit_uncontrolled(const Gate& g) {
    switch (g.kind) {
      case GateKind::SWAP:
        prim_cx(g.targets[0], g.targets[1]);
        prim_cx(g.targets[1], g.targets[0]);
        prim_cx(g.targets[0], g.targets[1]);
        return;
      case GateKind::XXplusYY: {
        const Qubit q0 = g.targets[0];
        const Qubit q1 = g.targets[1];
        const double mu = pi / 2 - g.params[1];
        expand([&](Circuit& s) {
          if (std::abs(mu) > kTol) s.p(-mu, q0);
          synth::xx_plus_yy(s, g.params[0], q0, q1);
          if (std::abs(mu) > kTol) s.p(mu, q0);
        });
        return;
      }
      default:
        prim_u(g.targets[0], single_qubit_matrix(g));
    }
  }

  void emit_mcx(const Gate& g) {
    const Qubit t = g.targets[0];
    if (g.controls.size() == 1) {
      const Qubit c = g.controls[0];
      if (!g.polarity[0]) prim_u(c, kX);
      prim_cx(c, t);
      if (!g.polarity[0]) prim_u(c, kX);
      return;
    }
    const std::size_t k = g.controls.size();
    std::size_t pattern = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (g.polarity[i]) pattern |= std::size_t{1} << i;
    }
    std::vector<Qubit> wires = g.controls;
    wires.push_back(t);
    std::vector<double> phases(std::size_t{1} << (k + 1), 0.0);
    phases[pattern | (std::size_t{1} << k)] = pi;
    expand([&](Circuit& c) {
      c.h(t);
      synth::diagonal(c, wires, phases);
      c.h(t);
    });
  }

  void emit_mcz(const std::vector<Qubit>& qs, const std::vector<bool>& pol) {
    const Mat2& x = kX;
    if (qs.size() == 1) {
      if (!pol[0]) prim_u(qs[0], x);
      prim_u(qs[0], {1, 0, 0, -1});
      if (!pol[0]) prim_u(qs[0], x);
      return;
    }
    if (qs.size() == 2) {
      for (int i = 0; i < 2; ++i) {
        if (!pol[i]) prim_u(qs[i], x);
      }
      const double r = 1 / std::numbers::sqrt2;
      prim_u(qs[1], {r, r, r, -r});
      prim_cx(qs[0], qs[1]);
      prim_u(qs[1], {r, r, r, -r});
      for (int i = 0; i < 2; ++i) {
        if (!pol[i]) prim_u(qs[i], x);
      }
      return;
    }
    std::size_t pattern = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      if (pol[i]) pattern |= std::size_t{1} << i;
    }
    std::vector<double> phases(std::size_t{1} << qs.size(), 0.0);
    phases[pattern] = pi;
    expand([&](Circuit& c) { synth::diagonal(c, qs, phases); });
  }

  // Single-target non-X gate with all-ones controls.
  void emit_controlled_1q(const Gate& g) {
    const Qubit t = g.targets[0];
    const std::vector<Qubit>& ctl = g.controls;
    const std::size_t k = ctl.size();
    Gate bare = g;
    bare.controls.clear();
    bare.polarity.clear();
    const Mat2 m = single_qubit_matrix(bare);
    auto flip = [&](Circuit& c) {
      if (k == 1) {
        c.cx(ctl[0], t);
      } else {
        c.mcx(ctl, t);
      }
    };
    if (is_diagonal(m)) {
      std::vector<Qubit> wires = ctl;
      wires.push_back(t);
      std::vector<double> phases(std::size_t{1} << (k + 1), 0.0);
      const std::size_t all = (std::size_t{1} << k) - 1;
      phases[all] = std::arg(m[0]);
      phases[all | (std::size_t{1} << k)] = std::arg(m[3]);
      expand([&](Circuit& c) { synth::diagonal(c, wires, phases); });
      return;
    }
    if (g.kind == GateKind::H) {
      expand([&](Circuit& c) {
        c.s(t);
        c.h(t);
        c.t(t);
        flip(c);
        c.tdg(t);
        c.h(t);
        c.sdg(t);
      });
      return;
    }
    if (g.kind == GateKind::RY) {
      const double th = g.params[0];
      expand([&](Circuit& c) {
        flip(c);
        c.ry(-th / 2, t);
        flip(c);
        c.ry(th / 2, t);
      });
      return;
    }
    // U = exp(i alpha) A X B X C with ABC = I.
    const U3Angles ang = u3_angles(m);
    const double a = ang.phi;
    const double b = ang.theta;
    const double cc = ang.lambda;
    const double alpha = ang.alpha + (ang.phi + ang.lambda) / 2;
    const Mat2 A = matmul(rz(a), ry(b / 2));
    const Mat2 B = matmul(ry(-b / 2), rz(-(cc + a) / 2));
    const Mat2 C = rz((cc - a) / 2);
    prim_u(t, C);
    expand(flip);
    prim_u(t, B);
    expand(flip);
    prim_u(t, A);
    if (std::abs(wrap(alpha)) > kTol) {
      if (k == 1) {
        prim_u(ctl[0], {1, 0, 0, std::polar(1.0, alpha)});
      } else {
        std::vector<double> phases(std::size_t{1} << k, 0.0);
        phases.back() = alpha;
        expand([&](Circuit& c) { synth::diagonal(c, ctl, phases); });
      }
    }
  }

  int n_;
  std::vector<Prim> out_;
};

bool is_identity_up_to_phase(const Mat2& m) {
  if (std::abs(m[1]) > kTol || std::abs(m[2]) > kTol) return false;
  return std::abs(wrap(std::arg(m[3]) - std::arg(m[0]))) < kTol;
}

}  // namespace

U3Angles u3_angles(const Mat2& u) {
  const double c = std::abs(u[0]);
  const double s = std::abs(u[2]);
  U3Angles r{};
  r.theta = 2 * std::atan2(s, c);
  if (s < 1e-14) {
    r.alpha = std::arg(u[0]);
    r.phi = 0;
    r.lambda = wrap(std::arg(u[3]) - r.alpha);
  } else if (c < 1e-14) {
    r.lambda = 0;
    r.alpha = std::arg(-u[1]);
    r.phi = wrap(std::arg(u[2]) - r.alpha);
  } else {
    r.alpha = std::arg(u[0]);
    r.phi = wrap(std::arg(u[2]) - r.alpha);
    r.lambda = wrap(std::arg(-u[1]) - r.alpha);
  }
  return r;
}

Circuit transpile(const Circuit& c) {
  const int n = c.num_qubits();
  Lowerer low(n);
  for (const Gate& g : c.gates()) low.emit(g);
  const std::vector<Prim> prims = low.take();

  Circuit out(n);
  std::vector<std::optional<Mat2>> pending(n);
  auto flush = [&](int w) {
    if (!pending[w]) return;
    const Mat2 m = *pending[w];
    pending[w].reset();
    if (is_identity_up_to_phase(m)) return;
    const U3Angles a = u3_angles(m);
    out.append_physical(make_gate(GateKind::U3, {w}, {a.theta, a.phi, a.lambda}));
  };
  for (const Prim& p : prims) {
    if (p.is_cx) {
      flush(p.a);
      flush(p.b);
      out.append_physical(make_gate(GateKind::CX, {p.b}, {}, {p.a}));
    } else {
      pending[p.a] = pending[p.a] ? matmul(p.m, *pending[p.a]) : p.m;
    }
  }
  for (int w = 0; w < n; ++w) flush(w);
  return out;
}

ResourceMetrics metrics(const Circuit& c) {
  ResourceMetrics m;
  m.qubit_count = c.num_qubits();
  std::vector<std::int64_t> level(c.num_qubits(), 0);
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::Barrier) continue;
    const bool cx = g.kind == GateKind::CX && g.polarity[0];
    const bool u3 = g.kind == GateKind::U3 && g.controls.empty();
    if (!cx && !u3) {
      throw UsageError("metrics needs a transpiled circuit, found " +
                       std::string(kind_name(g.kind)));
    }
    (cx ? m.cx_count : m.u3_count) += 1;
    std::int64_t d = 0;
    for (Qubit q : g.wires()) d = std::max(d, level[q]);
    for (Qubit q : g.wires()) level[q] = d + 1;
    m.depth = std::max(m.depth, d + 1);
  }
  return m;
}

std::map<std::string, std::int64_t> gate_counts(const Circuit& c) {
  std::map<std::string, std::int64_t> out;
  for (const Gate& g : c.gates()) out[std::string(kind_name(g.kind))] += 1;
  return out;
}

}  // namespace qwb
