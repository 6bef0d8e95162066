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

#include "qwb/sparse_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "qwb/error.hpp"

namespace qwb {

namespace {

struct ControlMask {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;
  bool fires(std::uint64_t k) const { return (k & mask) == value; }
};

ControlMask control_mask(const Gate& g) {
  ControlMask m;
  for (std::size_t i = 0; i < g.controls.size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << g.controls[i];
    m.mask |= bit;
    if (g.polarity[i]) m.value |= bit;
  }
  return m;
}

}  // namespace

SparseState::SparseState(int num_qubits, std::uint64_t basis) : num_qubits_(num_qubits) {
  if (num_qubits < 0) throw UsageError("negative qubit count");
  if (num_qubits > kMaxQubits) {
    throw ResourceError("state needs " + std::to_string(num_qubits) +
                        " qubits; the sparse simulator supports at most " +
                        std::to_string(kMaxQubits));
  }
  if (num_qubits < 64 && (basis >> num_qubits) != 0) throw UsageError("basis index out of range");
  amp_[basis] = 1.0;
  peak_ = 1;
}

SparseState SparseState::from_amplitudes(int num_qubits, const Map& amplitudes) {
  SparseState s(num_qubits);
  s.amp_.clear();
  for (const auto& [k, a] : amplitudes) {
    if (num_qubits < 64 && (k >> num_qubits) != 0) throw UsageError("basis index out of range");
    if (std::abs(a) >= kPruneEpsilon) s.amp_[k] = a;
  }
  s.peak_ = s.amp_.size();
  return s;
}

cplx SparseState::amplitude(std::uint64_t basis) const {
  auto it = amp_.find(basis);
  return it == amp_.end() ? cplx(0) : it->second;
}

double SparseState::norm() const {
  double s = 0;
  for (const auto& kv : amp_) s += std::norm(kv.second);
  return std::sqrt(s);
}

void SparseState::normalize() {
  const double n = norm();
  if (n == 0) throw UsageError("cannot normalize the zero vector");
  for (auto& kv : amp_) kv.second /= n;
}

cplx SparseState::inner(const SparseState& other) const {
  cplx s = 0;
  const Map& small = amp_.size() <= other.amp_.size() ? amp_ : other.amp_;
  const Map& large = &small == &amp_ ? other.amp_ : amp_;
  for (const auto& [k, a] : small) {
    auto it = large.find(k);
    if (it == large.end()) continue;
    s += &small == &amp_ ? std::conj(a) * it->second : std::conj(it->second) * a;
  }
  return s;
}

void SparseState::check_wire(Qubit q) const {
  if (q < 0 || q >= num_qubits_) {
    throw UsageError("gate on qubit " + std::to_string(q) + " outside a " +
                     std::to_string(num_qubits_) + "-qubit state");
  }
}

void SparseState::prune() {
  for (auto it = amp_.begin(); it != amp_.end();) {
    if (std::abs(it->second) < kPruneEpsilon) {
      it = amp_.erase(it);
    } else {
      ++it;
    }
  }
}

void SparseState::note_support() {
  peak_ = std::max(peak_, amp_.size());
  if (max_support_ && amp_.size() > max_support_) {
    throw ResourceError("sparse state support " + std::to_string(amp_.size()) +
                        " exceeds the limit of " + std::to_string(max_support_) + " amplitudes (" +
                        std::to_string(num_qubits_) + " qubits)");
  }
}

void SparseState::apply(const Gate& g) {
  for (Qubit q : g.wires()) check_wire(q);
  const ControlMask cm = control_mask(g);
  switch (g.kind) {
    case GateKind::Barrier:
      return;
    case GateKind::X:
    case GateKind::CX:
    case GateKind::MCX: {
      const std::uint64_t t = std::uint64_t{1} << g.targets[0];
      Map next;
      next.reserve(amp_.size());
      for (const auto& [k, a] : amp_) next.emplace(cm.fires(k) ? k ^ t : k, a);
      amp_.swap(next);
      return;
    }
    case GateKind::SWAP: {
      const int qa = g.targets[0];
      const int qb = g.targets[1];
      Map next;
      next.reserve(amp_.size());
      for (const auto& [k, a] : amp_) {
        std::uint64_t nk = k;
        if (cm.fires(k) && ((k >> qa) & 1U) != ((k >> qb) & 1U)) {
          nk ^= (std::uint64_t{1} << qa) | (std::uint64_t{1} << qb);
        }
        next.emplace(nk, a);
      }
      amp_.swap(next);
      return;
    }
    case GateKind::CZ:
    case GateKind::MCZ: {
      ControlMask z = cm;
      if (g.kind == GateKind::CZ) {
        z.mask |= std::uint64_t{1} << g.targets[0];
        z.value |= std::uint64_t{1} << g.targets[0];
      }
      for (auto& [k, a] : amp_) {
        if (z.fires(k)) a = -a;
      }
      return;
    }
    case GateKind::XXplusYY: {
      const auto m = xx_plus_yy_matrix(g.params[0], g.params[1]);
      const std::uint64_t b0 = std::uint64_t{1} << g.targets[0];
      const std::uint64_t b1 = std::uint64_t{1} << g.targets[1];
      Map next;
      next.reserve(amp_.size() * 2);
      for (const auto& [k, a] : amp_) {
        const bool on0 = k & b0;
        const bool on1 = k & b1;
        if (!cm.fires(k) || on0 == on1) {
          next[k] += a;
          continue;
        }
        const std::uint64_t base = k & ~(b0 | b1);
        const int col = on0 ? 1 : 2;
        next[base | b0] += m[1 * 4 + col] * a;
        next[base | b1] += m[2 * 4 + col] * a;
      }
      amp_.swap(next);
      prune();
      note_support();
      return;
    }
    default:
      break;
  }
  Gate bare = g;
  bare.controls.clear();
  bare.polarity.clear();
  const Mat2 m = single_qubit_matrix(bare);
  const std::uint64_t t = std::uint64_t{1} << g.targets[0];
  if (std::abs(m[1]) == 0.0 && std::abs(m[2]) == 0.0) {
    for (auto& [k, a] : amp_) {
      if (cm.fires(k)) a *= (k & t) ? m[3] : m[0];
    }
    return;
  }
  Map next;
  next.reserve(amp_.size() * 2);
  for (const auto& [k, a] : amp_) {
    if (!cm.fires(k)) {
      next[k] += a;
      continue;
    }
    const std::uint64_t k0 = k & ~t;
    const std::uint64_t k1 = k | t;
    if (k & t) {
      next[k0] += m[1] * a;
      next[k1] += m[3] * a;
    } else {
      next[k0] += m[0] * a;
      next[k1] += m[2] * a;
    }
  }
  amp_.swap(next);
  prune();
  note_support();
}

void SparseState::apply(const Circuit& c) {
  if (c.num_qubits() > num_qubits_) {
    throw UsageError("circuit has " + std::to_string(c.num_qubits()) + " qubits, state has " +
                     std::to_string(num_qubits_));
  }
  for (const Gate& g : c.gates()) apply(g);
}

std::vector<std::pair<std::uint64_t, cplx>> SparseState::sorted() const {
  std::vector<std::pair<std::uint64_t, cplx>> v(amp_.begin(), amp_.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

std::string bitstring(std::uint64_t value, int width) {
  std::string s(width, '0');
  for (int i = 0; i < width; ++i) {
    if ((value >> i) & 1U) s[width - 1 - i] = '1';
  }
  return s;
}

std::string SparseState::dump() const {
  std::ostringstream out;
  char buf[64];
  for (const auto& [k, a] : sorted()) {
    out << bitstring(k, num_qubits_);
    std::snprintf(buf, sizeof buf, " %.12f %.12f\n", a.real() == 0 ? 0.0 : a.real(),
                  a.imag() == 0 ? 0.0 : a.imag());
    out << buf;
  }
  return out.str();
}

std::map<std::uint64_t, double> SparseState::marginal(const std::vector<Qubit>& qubits) const {
  for (Qubit q : qubits) check_wire(q);
  std::map<std::uint64_t, double> out;
  for (const auto& [k, a] : amp_) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      if ((k >> qubits[i]) & 1U) key |= std::uint64_t{1} << i;
    }
    out[key] += std::norm(a);
  }
  return out;
}

SparseState apply(SparseState state, const Circuit& c) {
  state.apply(c);
  return state;
}

std::map<std::uint64_t, int> sample_indices(const SparseState& state,
                                            const std::vector<Qubit>& qubits, int shots,
                                            std::uint64_t seed) {
  if (qubits.empty()) throw UsageError("sample needs at least one measured qubit");
  if (shots < 1) throw UsageError("shots must be positive");
  const auto dist = state.marginal(qubits);
  std::vector<std::uint64_t> keys;
  std::vector<double> cdf;
  double acc = 0;
  for (const auto& [k, p] : dist) {
    acc += p;
    keys.push_back(k);
    cdf.push_back(acc);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, acc);
  std::map<std::uint64_t, int> counts;
  for (int s = 0; s < shots; ++s) {
    const double r = uni(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    if (it == cdf.end()) --it;
    counts[keys[static_cast<std::size_t>(it - cdf.begin())]] += 1;
  }
  return counts;
}

MeasurementCounts sample(const SparseState& state, const std::vector<Qubit>& qubits, int shots,
                         std::uint64_t seed) {
  MeasurementCounts out;
  out.shots = shots;
  const int width = static_cast<int>(qubits.size());
  for (const auto& [k, n] : sample_indices(state, qubits, shots, seed)) {
    out.counts[bitstring(k, width)] = n;
  }
  return out;
}

Eigen::MatrixXcd dense_unitary(const Circuit& c) {
  const int n = c.num_qubits();
  if (n > kDenseMaxQubits) {
    throw UsageError("dense_unitary supports at most " + std::to_string(kDenseMaxQubits) +
                     " qubits, circuit has " + std::to_string(n));
  }
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    SparseState s(n, j);
    s.apply(c);
    for (const auto& [k, a] : s.amplitudes()) {
      u(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = a;
    }
  }
  return u;
}

}  // namespace qwb
