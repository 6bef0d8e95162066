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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "qwb/circuit.hpp"
#include "qwb/error.hpp"
#include "qwb/synthesis.hpp"
#include "qwb/transpile.hpp"
#include "test_support.hpp"

using namespace qwb;
using qwb::testing::phase_distance;
using std::numbers::pi;

TEST_CASE("allocate reuses the lowest free wire") {
  Circuit c;
  CHECK(c.allocate() == 0);
  CHECK(c.allocate() == 1);
  CHECK(c.allocate() == 2);
  c.deallocate(1);
  CHECK(c.free_pool() == std::vector<Qubit>{1});
  CHECK(c.allocate() == 1);
  CHECK(c.num_qubits() == 3);
  CHECK_THROWS_AS(c.deallocate(5), UsageError);
  c.deallocate(0);
  CHECK_THROWS_AS(c.deallocate(0), UsageError);
}

TEST_CASE("gates on released wires are refused") {
  Circuit c(2);
  c.deallocate(1);
  CHECK_THROWS_AS(c.x(1), UsageError);
  CHECK_THROWS_AS(c.cx(0, 0), UsageError);
}

TEST_CASE("max_qubits bounds pool growth") {
  Circuit c(2);
  c.set_max_qubits(3);
  CHECK(c.available_qubits() == 1);
  c.allocate();
  CHECK_THROWS_AS(c.allocate(), ResourceError);
}

TEST_CASE("permute_wires relabels without emitting gates") {
  Circuit c(4);
  c.permute_wires({3, 0, 1, 2});
  CHECK(c.size() == 0);
  c.x(0);
  CHECK(c.gates().back().targets[0] == 3);
  c.permute_wires({1, 2, 3, 0});
  CHECK(c.wire_map() == std::vector<int>{0, 1, 2, 3});
  CHECK_THROWS_AS(c.permute_wires({0, 0, 1, 2}), UsageError);
  CHECK_THROWS_AS(c.permute_wires({0, 1}), UsageError);
}

TEST_CASE("invert reverses and adjoints") {
  Circuit c(2);
  c.h(0);
  c.cx(0, 1);
  Circuit inv = invert(c);
  REQUIRE(inv.size() == 2);
  CHECK(inv.gates()[0].kind == GateKind::CX);
  CHECK(inv.gates()[1].kind == GateKind::H);

  Circuit r(1);
  r.ry(0.7, 0);
  r.s(0);
  r.t(0);
  Circuit ri = invert(r);
  CHECK(ri.gates()[0].kind == GateKind::Tdg);
  CHECK(ri.gates()[1].kind == GateKind::Sdg);
  CHECK(ri.gates()[2].params[0] == doctest::Approx(-0.7));
}

TEST_CASE("invert is an involution and gives the adjoint matrix") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Circuit c = qwb::testing::random_circuit(4, 25, rng);
    CHECK(invert(invert(c)) == c);
    auto u = dense_unitary(c);
    auto v = dense_unitary(invert(c));
    CHECK(qwb::testing::max_distance(v, u.adjoint()) < 1e-10);
  }
}

TEST_CASE("circuit then inverse is the identity on random sparse states") {
  std::mt19937_64 rng(12);
  Circuit c = qwb::testing::random_circuit(6, 60, rng);
  Circuit full = c;
  const Circuit inv = invert(c);
  for (const Gate& g : inv.gates()) full.append_physical(g);
  for (int trial = 0; trial < 100; ++trial) {
    SparseState s = qwb::testing::random_state(6, 5, rng);
    SparseState t = apply(s, full);
    CHECK(std::abs(std::abs(s.inner(t)) - 1.0) < 1e-10);
    CHECK(std::abs(t.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("control_generic acts as identity on ctrl=0 and as C on ctrl=1") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    Circuit c = qwb::testing::random_circuit(3, 12, rng);
    Circuit cc = control_generic(c, 3);
    auto u = dense_unitary(c);
    auto w = dense_unitary(cc);
    CHECK(qwb::testing::max_distance(w.block(0, 0, 8, 8), Eigen::MatrixXcd::Identity(8, 8)) < 1e-10);
    CHECK(qwb::testing::max_distance(w.block(8, 8, 8, 8), u) < 1e-10);
    CHECK(w.block(0, 8, 8, 8).cwiseAbs().maxCoeff() < 1e-12);
  }
  Circuit c(2);
  c.cx(0, 1);
  CHECK_THROWS_AS(control_generic(c, 1), UsageError);
  CHECK(control_generic(Circuit(2), 2).size() == 0);
}

TEST_CASE("generically controlled swap costs 18 CX") {
  Circuit s(2);
  s.cx(0, 1);
  s.cx(1, 0);
  s.cx(0, 1);
  Circuit cs = control_generic(s, 2);
  CHECK(metrics(transpile(cs)).cx_count == 18);
}

TEST_CASE("transpile of H is one U3(pi/2, 0, pi)") {
  Circuit c(1);
  c.h(0);
  Circuit t = transpile(c);
  REQUIRE(t.size() == 1);
  const Gate& g = t.gates()[0];
  CHECK(g.kind == GateKind::U3);
  CHECK(g.params[0] == doctest::Approx(pi / 2));
  CHECK(std::remainder(g.params[1], 2 * pi) == doctest::Approx(0).epsilon(1e-12));
  CHECK(std::abs(std::remainder(g.params[2] - pi, 2 * pi)) < 1e-12);
}

TEST_CASE("transpile preserves the unitary up to global phase") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 3;
    Circuit c = qwb::testing::random_circuit(n, 20, rng);
    Circuit t = transpile(c);
    for (const Gate& g : t.gates()) {
      CHECK((g.kind == GateKind::U3 || g.kind == GateKind::CX));
    }
    CHECK(phase_distance(dense_unitary(t), dense_unitary(c)) <= 1e-9);
  }
}

TEST_CASE("transpile fuses single-qubit runs and drops identities") {
  Circuit c(2);
  c.h(0);
  c.h(0);
  c.s(1);
  c.t(1);
  c.t(1);
  c.sdg(1);
  c.sdg(1);
  CHECK(transpile(c).size() == 0);
  Circuit d(2);
  d.h(0);
  d.s(0);
  d.cx(0, 1);
  d.t(0);
  auto m = metrics(transpile(d));
  CHECK(m.u3_count == 2);
  CHECK(m.cx_count == 1);
  CHECK(m.depth == 3);
}

TEST_CASE("metrics depth and kind checks") {
  Circuit a(4);
  a.cx(0, 1);
  a.cx(2, 3);
  CHECK(metrics(a).depth == 1);
  Circuit b(3);
  b.cx(0, 1);
  b.cx(1, 2);
  CHECK(metrics(b).depth == 2);
  CHECK(metrics(b).qubit_count == 3);
  Circuit h(1);
  h.h(0);
  CHECK_THROWS_AS(metrics(h), UsageError);
}

TEST_CASE("text serialization round trips") {
  std::mt19937_64 rng(15);
  Circuit c = qwb::testing::random_circuit(5, 40, rng);
  c.barrier({0, 1});
  const std::string text = to_text(c);
  Circuit back = from_text(text);
  CHECK(to_text(back) == text);
  CHECK(back.gates() == c.gates());
  CHECK_THROWS_AS(from_text("QUBITS 2\nGATE FOO - 0 - -\n"), ParseError);
  CHECK_THROWS_AS(from_text("GATE X - 0 - -\n"), ParseError);
}

TEST_CASE("no gate references a free wire at insertion") {
  Circuit c(3);
  Qubit a = c.allocate();
  synth::mcx(c, {0, 1, 2}, {}, a, synth::MCXMethod::balauca_logdepth);
  const auto pool = c.free_pool();
  CHECK(pool.size() == 1);
  CHECK_THROWS_AS(c.x(pool[0]), UsageError);
}
