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
#include <cmath>
#include <complex>
#include <random>

#include "qwb/circuit.hpp"
#include "qwb/sparse_state.hpp"

namespace qwb::testing {

// Max entrywise distance after aligning global phase on the largest entry.
inline double phase_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  const std::complex<double> ratio = a(r, c) / b(r, c);
  const std::complex<double> phase = ratio / std::abs(ratio);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

inline double max_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Random circuit over the whole gate set on n >= 3 wires.
inline Circuit random_circuit(int n, int gates, std::mt19937_64& rng) {
  Circuit c(n);
  std::uniform_int_distribution<int> kind(0, 13);
  std::uniform_real_distribution<double> angle(-3.14, 3.14);
  std::bernoulli_distribution coin(0.5);
  auto pick = [&](int k) {
    std::vector<int> w(n);
    for (int i = 0; i < n; ++i) w[i] = i;
    std::shuffle(w.begin(), w.end(), rng);
    w.resize(k);
    return w;
  };
  for (int g = 0; g < gates; ++g) {
    switch (kind(rng)) {
      case 0: c.x(pick(1)[0]); break;
      case 1: c.h(pick(1)[0]); break;
      case 2: c.s(pick(1)[0]); break;
      case 3: c.tdg(pick(1)[0]); break;
      case 4: c.ry(angle(rng), pick(1)[0]); break;
      case 5: c.u3(angle(rng), angle(rng), angle(rng), pick(1)[0]); break;
      case 6: { auto w = pick(2); c.cx(w[0], w[1], coin(rng)); break; }
      case 7: { auto w = pick(2); c.cz(w[0], w[1]); break; }
      case 8: { auto w = pick(2); c.swap(w[0], w[1]); break; }
      case 9: {
        auto w = pick(2);
        c.append(make_gate(GateKind::XXplusYY, {w[0], w[1]}, {angle(rng), angle(rng)}));
        break;
      }
      case 10: {
        auto w = pick(3);
        c.mcx({w[0], w[1]}, w[2], {coin(rng), coin(rng)});
        break;
      }
      case 11: {
        auto w = pick(3);
        c.mcz(w, {coin(rng), coin(rng), coin(rng)});
        break;
      }
      case 12: {
        auto w = pick(3);
        c.append(make_gate(GateKind::H, {w[0]}, {}, {w[1], w[2]}, {coin(rng), true}));
        break;
      }
      default: {
        auto w = pick(3);
        c.append(make_gate(GateKind::XXplusYY, {w[0], w[1]}, {angle(rng), angle(rng)}, {w[2]},
                           {coin(rng)}));
        break;
      }
    }
  }
  return c;
}

inline SparseState random_state(int n, int terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> idx(0, (std::uint64_t{1} << n) - 1);
  std::normal_distribution<double> g;
  SparseState::Map m;
  for (int i = 0; i < terms; ++i) m[idx(rng)] += std::complex<double>(g(rng), g(rng));
  SparseState s = SparseState::from_amplitudes(n, m);
  s.normalize();
  return s;
}

}  // namespace qwb::testing
