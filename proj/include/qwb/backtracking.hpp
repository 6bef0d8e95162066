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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qwb/circuit.hpp"
#include "qwb/sparse_state.hpp"

namespace qwb {

// Branch labels from the root of the full tree.
using NodePath = std::vector<int>;

std::string format_path(const NodePath& path);

// Registers of a (sub)tree as seen by oracle builders. Heights above
// height_limit are constant zero in a re-rooted tree and have no qubit.
struct TreeView {
  int depth = 0;         // N of the full tree
  int height_limit = 0;  // heights 0..height_limit are live
  int branch_bits = 0;
  std::vector<Qubit> h;                    // height_limit + 1 wires
  std::vector<std::vector<Qubit>> branch;  // depth registers, LSB first

  int degree() const { return 1 << branch_bits; }
  bool has_height(int i) const { return i >= 0 && i <= height_limit; }
};

// Builds an oracle and returns a freshly allocated result wire holding the
// predicate. Temporaries must be released in |0>, and the tree registers
// must be left unchanged.
using OracleBuilder = std::function<Qubit(Circuit&, const TreeView&)>;

struct TreeSpec {
  int depth = 0;
  int branch_bits = 1;
  OracleBuilder accept;
  OracleBuilder reject;
  // Lifting without the controlled swaps; valid only when reject agrees on
  // a node and on its non-algorithmic variants.
  bool subspace_optimization = false;

  void validate() const;
};

// Oracle builders that always return false.
Qubit constant_false(Circuit& c, const TreeView& view);

// True exactly on the listed nodes: one MCX per node on h[height] and the
// branch entries at and above that height, so lifted children of a listed
// node read the same value.
OracleBuilder node_set_oracle(std::vector<NodePath> nodes);

// Demo tree of depth 3: accepts [1,1,1], rejects [0].
TreeSpec demo_tree_spec(bool subspace_optimization = false);

// Walk on the subtree below `prefix`, built gate by gate into an owned
// circuit.
class BacktrackingTree {
 public:
  explicit BacktrackingTree(TreeSpec spec, NodePath prefix = {});

  const TreeSpec& spec() const { return spec_; }
  const TreeView& view() const { return view_; }
  const NodePath& prefix() const { return prefix_; }
  int height_limit() const { return view_.height_limit; }
  Circuit& circuit() { return circuit_; }
  const Circuit& circuit() const { return circuit_; }

  // `even` for R_A and R_B on this subtree.
  bool even_a() const { return height_limit() % 2 == 0; }
  bool even_b() const { return height_limit() % 2 == 1; }

  // X gates for a path relative to the subtree root.
  void init_node(const NodePath& relative);
  void psi_prep(bool even);
  void psi_prep_inverse(bool even);
  void qstep_diffuser(bool even, std::optional<Qubit> ctrl = std::nullopt);
  void quantum_step(std::optional<Qubit> ctrl = std::nullopt);
  // Appends phase estimation of quantum_step and returns the ancillae,
  // least significant first.
  std::vector<Qubit> estimate_phase(int precision_bits);

  // Physical wires of h and of the live branch registers.
  std::vector<Qubit> tree_wires() const;
  // Basis index of the node, all other wires zero. `path` is absolute.
  std::uint64_t basis_index(const NodePath& path) const;

 private:
  Circuit psi_prep_fragment(bool even) const;
  void append_fragment(const Circuit& frag, bool inverse);
  void lift(bool up);

  TreeSpec spec_;
  NodePath prefix_;
  Circuit circuit_;
  TreeView view_;
};

struct DecodedState {
  // Absolute path to amplitude, algorithmic support only.
  std::map<NodePath, cplx> nodes;
  double non_algorithmic_mass = 0;
  // Mass on basis states where a wire outside the tree is set.
  double off_register_mass = 0;
};

DecodedState decode_tree_state(const BacktrackingTree& tree, const SparseState& state);

// DOT digraph of the decoded support; green fill for positive real part,
// purple for negative.
std::string to_dot(const DecodedState& decoded, const std::string& title = "tree");

// How find_solution tallies zero-ancilla samples into a child label.
enum class CandidateSelection {
  children,  // samples that decode to a child of the current node
  subtree,   // samples anywhere below a child, credited to that child
};

struct WalkConfig {
  int precision_bits = 3;
  int shots = 10000;
  double delta = 0.1;
  double beta_const = 0.5;
  double gamma_const = 4.0;
  // Fraction of K that must read eigenvalue 1.
  double threshold = 3.0 / 8.0;
  std::uint64_t seed = 0;
  // Run detect_marked before descending from the root.
  bool detect_first = false;
  CandidateSelection selection = CandidateSelection::subtree;
  // 0 disables the simulator support limit.
  std::size_t max_support = 0;

  void validate() const;
};

struct OracleValues {
  bool accept = false;
  bool reject = false;
};

// Evaluates both oracles on a node by simulation; throws ContractError when
// both hold.
OracleValues evaluate_oracles(const TreeSpec& spec, const NodePath& path);

// Precision from the full-tree bound: ceil(log2(sqrt(T n) / beta)).
int detection_precision(const TreeSpec& spec, double beta_const, int height);
// K = ceil(gamma log(1/delta)).
int detection_repetitions(double gamma_const, double delta);

struct DetectionResult {
  bool detected = false;
  int repetitions = 0;
  int accept_number = 0;
  int precision_bits = 0;
  double zero_probability = 0;
  int qubits = 0;
  std::size_t peak_support = 0;
};

DetectionResult detect_marked(const TreeSpec& spec, const WalkConfig& config,
                              const NodePath& prefix = {});

// Exact probability of the all-zero ancilla register after phase
// estimation from the subtree root.
double zero_outcome_probability(const TreeSpec& spec, int precision_bits,
                                const NodePath& prefix = {}, std::size_t max_support = 0);

struct LevelReport {
  NodePath prefix;
  int qubits = 0;
  std::size_t peak_support = 0;
  int zero_ancilla_shots = 0;
  std::map<int, int> child_counts;
  std::optional<int> chosen;
};

struct SearchResult {
  std::optional<NodePath> path;
  std::vector<LevelReport> levels;
  std::optional<DetectionResult> detection;
};

SearchResult find_solution(const TreeSpec& spec, const WalkConfig& config);

}  // namespace qwb
