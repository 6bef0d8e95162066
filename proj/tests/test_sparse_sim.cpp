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

#include <cmath>
#include <numbers>
#include <random>

#include "qwb/error.hpp"
#include "qwb/sparse_state.hpp"
#include "test_support.hpp"

using namespace qwb;

TEST_CASE("basic gate application") {
  Circuit x(1);
  x.x(0);
  SparseState s = apply(SparseState(1), x);
  CHECK(s.amplitude(1) == cplx(1));
  CHECK(s.amplitude(0) == cplx(0));
  CHECK(SparseState(1).amplitude(0) == cplx(1));

  Circuit bell(2);
  bell.h(0);
  bell.cx(0, 1);
  SparseState b = apply(SparseState(2), bell);
  CHECK(b.support() == 2);
  CHECK(b.amplitude(0).real() == doctest::Approx(std::numbers::sqrt2 / 2));
  CHECK(b.amplitude(3).real() == doctest::Approx(std::numbers::sqrt2 / 2));
}

TEST_CASE("zero-polarity controls") {
  Circuit c(2);
  c.cx(0, 1, false);
  CHECK(apply(SparseState(2), c).amplitude(2) == cplx(1));
  CHECK(apply(SparseState(2, 1), c).amplitude(1) == cplx(1));
}

TEST_CASE("out of range gates and oversized states are refused") {
  Circuit c(3);
  c.x(2);
  SparseState s(2);
  CHECK_THROWS_AS(s.apply(c), UsageError);
  CHECK_THROWS_AS(s.apply(make_gate(GateKind::X, {4})), UsageError);
  CHECK_THROWS_AS(SparseState(65), ResourceError);
}

TEST_CASE("support limit raises a resource error") {
  Circuit c(4);
  for (int i = 0; i < 4; ++i) c.h(i);
  SparseState s(4);
  s.set_max_support(8);
  CHECK_THROWS_AS(s.apply(c), ResourceError);
}

TEST_CASE("pruning removes cancelled amplitudes") {
  Circuit c(1);
  c.h(0);
  c.h(0);
  SparseState s = apply(SparseState(1), c);
  CHECK(s.support() == 1);
}

TEST_CASE("norm is preserved over 10^4 random gates") {
  std::mt19937_64 rng(21);
  Circuit c = qwb::testing::random_circuit(8, 10000, rng);
  SparseState s(8);
  s.apply(c);
  CHECK(std::abs(s.norm() - 1.0) <= 1e-9);
}

TEST_CASE("sampling") {
  Circuit one(1);
  one.x(0);
  auto ones = sample(apply(SparseState(1), one), {0}, 100, 5);
  CHECK(ones.counts.size() == 1);
  CHECK(ones.counts["1"] == 100);

  Circuit bell(2);
  bell.h(0);
  bell.cx(0, 1);
  SparseState b = apply(SparseState(2), bell);
  auto counts = sample(b, {0, 1}, 10000, 7);
  const double sigma = std::sqrt(10000 * 0.25);
  CHECK(std::abs(counts.counts["00"] - 5000) <= 3 * sigma);
  CHECK(std::abs(counts.counts["11"] - 5000) <= 3 * sigma);
  CHECK(counts.counts["00"] + counts.counts["11"] == 10000);

  auto again = sample(b, {0, 1}, 10000, 7);
  CHECK(again.counts == counts.counts);
  CHECK_THROWS_AS(sample(b, {}, 10, 1), UsageError);
  CHECK_THROWS_AS(sample(b, {0}, 0, 1), UsageError);
}

TEST_CASE("outcome bitstrings put the last measured qubit first") {
  Circuit c(3);
  c.x(2);
  auto counts = sample(apply(SparseState(3), c), {2, 0}, 4, 1);
  CHECK(counts.counts["01"] == 4);
}

TEST_CASE("dense_unitary") {
  Circuit x(1);
  x.x(0);
  auto u = dense_unitary(x);
  CHECK(u(0, 1) == cplx(1));
  CHECK(u(1, 0) == cplx(1));
  CHECK(u(0, 0) == cplx(0));
  CHECK_THROWS_AS(dense_unitary(Circuit(13)), UsageError);
}

TEST_CASE("XX+YY matrix with beta = pi/2") {
  for (double phi : {0.0, 0.4, std::numbers::pi}) {
    Circuit c(2);
    c.append(make_gate(GateKind::XXplusYY, {0, 1}, {phi, std::numbers::pi / 2}));
    auto u = dense_unitary(c);
    CHECK(std::abs(u(0, 0) - cplx(1)) < 1e-12);
    CHECK(std::abs(u(3, 3) - cplx(1)) < 1e-12);
    CHECK(std::abs(u(1, 1) - cplx(std::cos(phi / 2))) < 1e-12);
    CHECK(std::abs(u(2, 2) - cplx(std::cos(phi / 2))) < 1e-12);
    CHECK(std::abs(u(1, 2) - cplx(-std::sin(phi / 2))) < 1e-12);
    CHECK(std::abs(u(2, 1) - cplx(std::sin(phi / 2))) < 1e-12);
  }
}

TEST_CASE("state dump format") {
  Circuit c(2);
  c.h(1);
  SparseState s = apply(SparseState(2), c);
  CHECK(s.dump() ==
        "00 0.707106781187 0.000000000000\n"
        "10 0.707106781187 0.000000000000\n");
}
