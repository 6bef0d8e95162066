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

#include "qwb/backtracking.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qwb/error.hpp"
#include "qwb/synthesis.hpp"

namespace qwb {

namespace {

using std::numbers::pi;

bool has_bit(std::uint64_t k, Qubit wire) { return (k >> wire) & 1U; }

void inverse_qft(Circuit& c, const std::vector<Qubit>& q) {
  const int p = static_cast<int>(q.size());
  for (int i = 0; i < p / 2; ++i) c.swap(q[i], q[p - 1 - i]);
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < j; ++k) {
      const double lam = -pi / static_cast<double>(1 << (j - k));
      c.append(make_gate(GateKind::U3, {q[j]}, {0.0, 0.0, lam}, {q[k]}));
    }
    c.h(q[j]);
  }
}

}  // namespace

std::string format_path(const NodePath& path) {
  std::string s = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(path[i]);
  }
  return s + "]";
}

void TreeSpec::validate() const {
  if (depth < 1) throw UsageError("tree depth must be at least 1");
  if (branch_bits < 1 || branch_bits > 8) throw UsageError("branch_bits must be in 1..8");
  if (!accept || !reject) throw UsageError("tree needs accept and reject builders");
}

Qubit constant_false(Circuit& c, const TreeView&) { return c.allocate(); }

OracleBuilder node_set_oracle(std::vector<NodePath> nodes) {
  return [nodes = std::move(nodes)](Circuit& c, const TreeView& v) {
    const Qubit out = c.allocate();
    for (const NodePath& path : nodes) {
      const int height = v.depth - static_cast<int>(path.size());
      if (height < 0) throw UsageError("oracle node " + format_path(path) + " is too deep");
      if (!v.has_height(height)) continue;
      std::vector<Qubit> ctl{v.h[height]};
      std::vector<bool> st{true};
      for (std::size_t j = 0; j < path.size(); ++j) {
        for (int b = 0; b < v.branch_bits; ++b) {
          ctl.push_back(v.branch[v.depth - 1 - j][b]);
          st.push_back((path[j] >> b) & 1);
        }
      }
      c.mcx(ctl, out, st);
    }
    return out;
  };
}

TreeSpec demo_tree_spec(bool subspace_optimization) {
  TreeSpec s;
  s.depth = 3;
  s.branch_bits = 1;
  s.accept = node_set_oracle({{1, 1, 1}});
  s.reject = node_set_oracle({{0}});
  s.subspace_optimization = subspace_optimization;
  return s;
}

BacktrackingTree::BacktrackingTree(TreeSpec spec, NodePath prefix)
    : spec_(std::move(spec)), prefix_(std::move(prefix)) {
  spec_.validate();
  const int n = spec_.depth;
  const int m = spec_.branch_bits;
  if (static_cast<int>(prefix_.size()) > n) throw UsageError("prefix longer than the tree depth");
  for (int label : prefix_) {
    if (label < 0 || label >= (1 << m)) throw UsageError("branch label out of range");
  }
  view_.depth = n;
  view_.height_limit = n - static_cast<int>(prefix_.size());
  view_.branch_bits = m;
  view_.h = circuit_.allocate(view_.height_limit + 1);
  for (int i = 0; i < n; ++i) view_.branch.push_back(circuit_.allocate(m));
  for (std::size_t j = 0; j < prefix_.size(); ++j) {
    const auto& reg = view_.branch[n - 1 - j];
    for (int b = 0; b < m; ++b) {
      if ((prefix_[j] >> b) & 1) circuit_.x(reg[b]);
    }
  }
}

void BacktrackingTree::init_node(const NodePath& relative) {
  const int hl = height_limit();
  if (static_cast<int>(relative.size()) > hl) throw UsageError("path longer than the tree depth");
  const int m = spec_.branch_bits;
  for (std::size_t j = 0; j < relative.size(); ++j) {
    if (relative[j] < 0 || relative[j] >= (1 << m)) throw UsageError("branch label out of range");
    const auto& reg = view_.branch[hl - 1 - j];
    for (int b = 0; b < m; ++b) {
      if ((relative[j] >> b) & 1) circuit_.x(reg[b]);
    }
  }
  circuit_.x(view_.h[hl - relative.size()]);
}

Circuit BacktrackingTree::psi_prep_fragment(bool even) const {
  Circuit f(circuit_.num_qubits());
  const int hl = height_limit();
  const double deg = view_.degree();
  const std::vector<bool> zeros(spec_.branch_bits, false);
  auto pair = [&](int i, double phi) {
    synth::xx_plus_yy(f, phi, view_.h[i + 1], view_.h[i], view_.branch[i], zeros);
    for (Qubit q : view_.branch[i]) synth::controlled_h(f, view_.h[i], q);
  };
  if (hl % 2 != static_cast<int>(even)) pair(hl - 1, 2 * std::atan(std::sqrt(hl * deg)));
  for (int i = static_cast<int>(even); i <= hl - 2; i += 2) pair(i, 2 * std::atan(std::sqrt(deg)));
  return f;
}

void BacktrackingTree::append_fragment(const Circuit& frag, bool inverse) {
  const auto& g = frag.gates();
  if (!inverse) {
    for (const Gate& x : g) circuit_.append(x);
    return;
  }
  for (auto it = g.rbegin(); it != g.rend(); ++it) circuit_.append(adjoint(*it));
}

void BacktrackingTree::psi_prep(bool even) { append_fragment(psi_prep_fragment(even), false); }

void BacktrackingTree::psi_prep_inverse(bool even) {
  append_fragment(psi_prep_fragment(even), true);
}

void BacktrackingTree::lift(bool up) {
  std::vector<int> perm(circuit_.num_qubits());
  for (int i = 0; i < circuit_.num_qubits(); ++i) perm[i] = i;
  const auto& h = view_.h;
  const int n = static_cast<int>(h.size());
  for (int i = 0; i < n; ++i) {
    perm[h[i]] = up ? h[(i + n - 1) % n] : h[(i + 1) % n];
  }
  circuit_.permute_wires(perm);
}

void BacktrackingTree::qstep_diffuser(bool even, std::optional<Qubit> ctrl) {
  Circuit& c = circuit_;
  const int hl = height_limit();
  const int par = static_cast<int>(even);
  psi_prep_inverse(even);

  const std::size_t a0 = c.size();
  const Qubit odd = c.allocate();
  for (int i = 0; i <= hl; ++i) {
    if (i % 2 != par) c.cx(view_.h[i], odd);
  }
  const Qubit acc = spec_.accept(c, view_);
  const std::size_t a1 = c.size();

  std::vector<Qubit> o1{acc, odd};
  std::vector<bool> o1_state{false, true};
  if (ctrl) {
    o1.push_back(*ctrl);
    o1_state.push_back(true);
  }
  c.mcz(o1, o1_state);

  const std::size_t b0 = c.size();
  if (hl % 2 == par) c.cx(view_.h[hl], odd);
  std::vector<Qubit> temp;
  if (!spec_.subspace_optimization) {
    temp = c.allocate(spec_.branch_bits);
    for (int i = 0; i < hl; ++i) {
      if (i % 2 != par) continue;
      for (int b = 0; b < spec_.branch_bits; ++b) {
        synth::fredkin(c, temp[b], view_.branch[i][b], view_.h[i]);
      }
    }
  }
  lift(true);
  const Qubit rej = spec_.reject(c, view_);
  const std::size_t b1 = c.size();

  std::vector<Qubit> o2{rej, odd};
  std::vector<bool> o2_state{true, false};
  if (ctrl) {
    o2.push_back(*ctrl);
    o2_state.push_back(true);
  }
  c.mcz(o2, o2_state);

  c.append_inverse(b0, b1);
  c.deallocate(rej);
  lift(false);
  if (!temp.empty()) c.deallocate(temp);
  c.append_inverse(a0, a1);
  c.deallocate(acc);
  c.deallocate(odd);
  psi_prep(even);
}

void BacktrackingTree::quantum_step(std::optional<Qubit> ctrl) {
  qstep_diffuser(even_a(), ctrl);
  qstep_diffuser(even_b(), ctrl);
}

std::vector<Qubit> BacktrackingTree::estimate_phase(int precision_bits) {
  if (precision_bits < 1) throw UsageError("precision_bits must be at least 1");
  if (precision_bits > 20) throw UsageError("precision_bits above 20 is not supported");
  std::vector<Qubit> anc = circuit_.allocate(precision_bits);
  for (Qubit q : anc) circuit_.h(q);
  for (int k = 0; k < precision_bits; ++k) {
    for (int r = 0; r < (1 << k); ++r) quantum_step(anc[k]);
  }
  inverse_qft(circuit_, anc);
  return anc;
}

std::vector<Qubit> BacktrackingTree::tree_wires() const {
  std::vector<Qubit> w;
  for (Qubit q : view_.h) w.push_back(circuit_.physical(q));
  for (int i = 0; i < height_limit(); ++i) {
    for (Qubit q : view_.branch[i]) w.push_back(circuit_.physical(q));
  }
  return w;
}

std::uint64_t BacktrackingTree::basis_index(const NodePath& path) const {
  const int n = view_.depth;
  if (static_cast<int>(path.size()) > n) throw UsageError("path longer than the tree depth");
  if (!std::equal(prefix_.begin(), prefix_.end(), path.begin()) || path.size() < prefix_.size()) {
    throw UsageError("path " + format_path(path) + " is outside the subtree");
  }
  std::uint64_t k = 0;
  k |= std::uint64_t{1} << circuit_.physical(view_.h[n - path.size()]);
  for (std::size_t j = 0; j < path.size(); ++j) {
    const auto& reg = view_.branch[n - 1 - j];
    for (int b = 0; b < view_.branch_bits; ++b) {
      if ((path[j] >> b) & 1) k |= std::uint64_t{1} << circuit_.physical(reg[b]);
    }
  }
  return k;
}

DecodedState decode_tree_state(const BacktrackingTree& tree, const SparseState& state) {
  const Circuit& c = tree.circuit();
  const TreeView& v = tree.view();
  const int n = v.depth;
  const int hl = v.height_limit;
  std::vector<Qubit> hw;
  for (Qubit q : v.h) hw.push_back(c.physical(q));
  std::vector<std::vector<Qubit>> bw(n);
  std::uint64_t tree_mask = 0;
  for (Qubit q : hw) tree_mask |= std::uint64_t{1} << q;
  for (int i = 0; i < n; ++i) {
    for (Qubit q : v.branch[i]) {
      bw[i].push_back(c.physical(q));
      tree_mask |= std::uint64_t{1} << c.physical(q);
    }
  }
  DecodedState out;
  for (const auto& [k, a] : state.amplitudes()) {
    if (k & ~tree_mask) {
      out.off_register_mass += std::norm(a);
      continue;
    }
    int height = -1;
    int ones = 0;
    for (int i = 0; i <= hl; ++i) {
      if (has_bit(k, hw[i])) {
        height = i;
        ++ones;
      }
    }
    std::vector<int> label(n, 0);
    for (int i = 0; i < n; ++i) {
      for (int b = 0; b < v.branch_bits; ++b) {
        if (has_bit(k, bw[i][b])) label[i] |= 1 << b;
      }
    }
    bool algorithmic = ones == 1;
    for (int i = 0; algorithmic && i < height; ++i) algorithmic = label[i] == 0;
    if (!algorithmic) {
      out.non_algorithmic_mass += std::norm(a);
      continue;
    }
    NodePath path;
    for (int i = n - 1; i >= height; --i) path.push_back(label[i]);
    out.nodes[path] += a;
  }
  return out;
}

std::string to_dot(const DecodedState& decoded, const std::string& title) {
  std::ostringstream out;
  out << "digraph \"" << title << "\" {\n";
  out << "  node [shape=circle, style=filled, fontname=\"Helvetica\"];\n";
  auto id = [](const NodePath& p) { return "\"" + format_path(p) + "\""; };
  for (const auto& [path, amp] : decoded.nodes) {
    const bool positive = amp.real() >= 0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.4f%+.4fi", amp.real(), amp.imag());
    out << "  " << id(path) << " [label=\"" << format_path(path) << "\\n" << buf
        << "\", fillcolor=\"" << (positive ? "#3cb44b" : "#911eb4") << "\"];\n";
  }
  for (const auto& [path, amp] : decoded.nodes) {
    if (path.empty()) continue;
    NodePath parent(path.begin(), path.end() - 1);
    if (decoded.nodes.count(parent)) out << "  " << id(parent) << " -> " << id(path) << ";\n";
  }
  out << "}\n";
  return out.str();
}

void WalkConfig::validate() const {
  if (precision_bits < 1) throw UsageError("precision must be at least 1");
  if (shots < 1) throw UsageError("shots must be positive");
  if (!(delta > 0 && delta < 1)) throw UsageError("delta must lie in (0, 1)");
  if (!(beta_const > 0) || !(gamma_const > 0)) throw UsageError("beta and gamma must be positive");
  if (!(threshold > 0 && threshold <= 1)) throw UsageError("threshold must lie in (0, 1]");
}

OracleValues evaluate_oracles(const TreeSpec& spec, const NodePath& path) {
  auto run = [&](const OracleBuilder& oracle) {
    BacktrackingTree t(spec, path);
    t.init_node({});
    const Qubit r = oracle(t.circuit(), t.view());
    SparseState s(t.circuit().num_qubits());
    s.apply(t.circuit());
    const auto dist = s.marginal({t.circuit().physical(r)});
    auto it = dist.find(1);
    return it != dist.end() && it->second > 0.5;
  };
  OracleValues v{run(spec.accept), run(spec.reject)};
  if (v.accept && v.reject) {
    throw ContractError("accept and reject both hold on node " + format_path(path));
  }
  return v;
}

int detection_precision(const TreeSpec& spec, double beta_const, int height) {
  const double deg = static_cast<double>(1 << spec.branch_bits);
  const double nodes = (std::pow(deg, height + 1) - 1) / (deg - 1);
  const double bits = std::log2(std::sqrt(nodes * height) / beta_const);
  return std::max(1, static_cast<int>(std::ceil(bits - 1e-12)));
}

int detection_repetitions(double gamma_const, double delta) {
  return std::max(1, static_cast<int>(std::ceil(gamma_const * std::log(1 / delta) - 1e-12)));
}

namespace {

struct PhaseRun {
  BacktrackingTree tree;
  std::vector<Qubit> ancillae;  // physical
  SparseState state;
};

PhaseRun run_phase_estimation(const TreeSpec& spec, int p, const NodePath& prefix,
                              std::size_t max_support) {
  BacktrackingTree tree(spec, prefix);
  tree.init_node({});
  std::vector<Qubit> anc = tree.estimate_phase(p);
  for (Qubit& q : anc) q = tree.circuit().physical(q);
  SparseState state(tree.circuit().num_qubits());
  state.set_max_support(max_support);
  state.apply(tree.circuit());
  return PhaseRun{std::move(tree), std::move(anc), std::move(state)};
}

}  // namespace

double zero_outcome_probability(const TreeSpec& spec, int precision_bits, const NodePath& prefix,
                                std::size_t max_support) {
  PhaseRun run = run_phase_estimation(spec, precision_bits, prefix, max_support);
  const auto dist = run.state.marginal(run.ancillae);
  auto it = dist.find(0);
  return it == dist.end() ? 0.0 : it->second;
}

DetectionResult detect_marked(const TreeSpec& spec, const WalkConfig& config,
                              const NodePath& prefix) {
  config.validate();
  spec.validate();
  DetectionResult r;
  const int height = spec.depth - static_cast<int>(prefix.size());
  r.repetitions = detection_repetitions(config.gamma_const, config.delta);
  r.precision_bits = detection_precision(spec, config.beta_const, height);
  PhaseRun run = run_phase_estimation(spec, r.precision_bits, prefix, config.max_support);
  r.qubits = run.tree.circuit().num_qubits();
  r.peak_support = run.state.peak_support();
  const auto dist = run.state.marginal(run.ancillae);
  auto it = dist.find(0);
  r.zero_probability = it == dist.end() ? 0.0 : it->second;
  // One simulation stands in for K independent runs from |r>: each run
  // measures the same pre-measurement state.
  const auto counts = sample_indices(run.state, run.ancillae, r.repetitions, config.seed);
  auto z = counts.find(0);
  r.accept_number = z == counts.end() ? 0 : z->second;
  r.detected = r.accept_number >= config.threshold * r.repetitions;
  return r;
}

SearchResult find_solution(const TreeSpec& spec, const WalkConfig& config) {
  config.validate();
  spec.validate();
  SearchResult result;
  if (config.detect_first) {
    result.detection = detect_marked(spec, config);
    if (!result.detection->detected) return result;
  }
  NodePath current;
  std::uint64_t seed = config.seed;
  while (true) {
    const OracleValues here = evaluate_oracles(spec, current);
    if (here.accept) {
      result.path = current;
      return result;
    }
    const int height = spec.depth - static_cast<int>(current.size());
    if (height == 0 || here.reject) return result;

    LevelReport level;
    level.prefix = current;
    PhaseRun run = run_phase_estimation(spec, config.precision_bits, current, config.max_support);
    level.qubits = run.tree.circuit().num_qubits();
    level.peak_support = run.state.peak_support();

    std::vector<Qubit> measured = run.ancillae;
    const std::vector<Qubit> tw = run.tree.tree_wires();
    measured.insert(measured.end(), tw.begin(), tw.end());
    const auto counts = sample_indices(run.state, measured, config.shots, seed++);

    const std::size_t p = run.ancillae.size();
    const std::uint64_t anc_mask = (std::uint64_t{1} << p) - 1;
    const int hl = run.tree.height_limit();
    const int m = spec.branch_bits;
    for (const auto& [key, n] : counts) {
      if (key & anc_mask) continue;
      level.zero_ancilla_shots += n;
      const std::uint64_t t = key >> p;
      // Children sit at height hl - 1 with label in branch[hl - 1]; the
      // subtree rule also credits deeper nodes to the child above them.
      const std::uint64_t hbits = t & ((std::uint64_t{1} << (hl + 1)) - 1);
      if (hbits == 0 || (hbits & (hbits - 1)) != 0) continue;
      const int g = std::countr_zero(hbits);
      if (g >= hl) continue;
      if (config.selection == CandidateSelection::children && g != hl - 1) continue;
      const std::uint64_t branch = t >> (hl + 1);
      if (g > 0 && (branch & ((std::uint64_t{1} << (g * m)) - 1)) != 0) continue;
      const int label = static_cast<int>((branch >> ((hl - 1) * m)) & ((1U << m) - 1));
      level.child_counts[label] += n;
    }
    int best = -1;
    int best_count = 0;
    for (const auto& [label, n] : level.child_counts) {
      if (n > best_count) {
        best = label;
        best_count = n;
      }
    }
    if (best >= 0) level.chosen = best;
    result.levels.push_back(level);
    if (best < 0) return result;
    current.push_back(best);
  }
}

}  // namespace qwb
