// Copyright 2026 The foldqec Authors
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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "foldqec/circuit.hpp"
#include "foldqec/code.hpp"
#include "foldqec/dense.hpp"

namespace foldqec {

class MissingResource : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Qubit pair fused into one d=4 site holding low + 2 * high. */
struct FusionPair {
  int low = 0;
  int high = 0;
  int qudit = 0;
};

struct HybridRegister {
  // Qubit-side register and the fused register it maps onto.
  std::vector<int> qubit_dims;
  std::vector<int> qudit_dims;
  // Unpaired qubit-side sites map one-to-one onto the remaining qudit-side
  // sites in order.
  std::vector<FusionPair> pairs;

  /** Fuses sites (2q, 2q+1) into site q for every q. */
  static HybridRegister pairwise(int n_qudits);
  void validate() const;
  /** Qudit-side index of a qubit-side basis index. */
  long long fuse_index(long long qubit_index) const;
};

/** F applied on each pair of the register. */
StateVector fuse_state(const StateVector &s, const HybridRegister &h);
/** F-dagger applied on each pair of the register. */
StateVector fission_state(const StateVector &s, const HybridRegister &h);

/** (|0> + |1>) / sqrt 2 on one d=4 site. */
StateVector resource_state();

/** True if U maps every n-qubit Pauli to a Pauli up to phase. */
bool is_qubit_clifford(const Eigen::MatrixXcd &U, int n_qubits, double tol = 1e-9);

/** Which qubit of a fused pair sits in the first cell of its slot. */
enum class Orientation { LowFirst, HighFirst };

struct EmbeddedCircuit {
  ScheduledCircuit circuit;  // 2n qubit sites; qudit q owns sites 2q and 2q+1
  std::vector<Orientation> orientation;  // final orientation per qudit
  int routing_swaps = 0;
  // Qudit measurement index -> the two qubit outcomes (low, high) it reads.
  std::vector<std::pair<int, int>> measurement_bits;

  int low_site(int q) const;
  int high_site(int q) const;
  /** Fusion map of the final layout, for comparing with the qudit register. */
  HybridRegister fusion_map() const;
};

/**
 * Replaces every d=4 gate by a nearest-neighbour qubit sequence. Qudit at slot
 * (x, y) occupies qubit cells (x, 2y) and (x, 2y + 1). Circuits without
 * coordinates are laid out on a line. Throws if two interacting qudits are not
 * neighbours.
 */
EmbeddedCircuit embed_circuit_in_qubits(const ScheduledCircuit &c);

struct QubitLayout {
  int n_qudits = 0;
  std::vector<std::array<int, 2>> cells;  // per qubit site
  std::vector<Orientation> orientation;
};

/** Qubit cells of a folded d=4 code, two per slot and four per cluster. */
QubitLayout embed_code_in_qubits(const StabilizerCode &code, const FoldLayout &layout);

/** Unitary of a translated single gate, in the fused basis of its final layout. */
Eigen::MatrixXcd fused_unitary(const EmbeddedCircuit &e);

/**
 * Measurement-based protocol resolved into branches. Each branch map takes
 * input (x) resource to the output register with that branch's correction
 * already applied.
 */
struct ProtocolBranch {
  std::vector<int> outcomes;
  Eigen::MatrixXcd map;
  // Intended action on the input alone for this branch.
  Eigen::MatrixXcd target;
  std::string correction;
};

struct HybridProtocol {
  std::string name;
  std::vector<int> input_dims;
  std::vector<int> resource_dims;
  std::vector<int> output_dims;
  std::vector<std::string> steps;
  std::vector<ProtocolBranch> branches;

  StateVector run(const StateVector &input, std::optional<StateVector> &resource,
                  Rng &rng, std::vector<int> *outcomes = nullptr) const;
  /** Smallest branch fidelity against the target over branches of nonzero weight. */
  double worst_branch_fidelity(const StateVector &input) const;
};

/** Two qubits (low, high) into one qudit, consuming one resource state. */
HybridProtocol teleport_fusion_protocol();
/** One qudit into two qubits (low, high), consuming one resource state. */
HybridProtocol teleport_fission_protocol();
/** High qubit into a qudit whose low digit is the classical bit `low`. */
HybridProtocol partial_fusion_protocol(int low);
/** Qudit into its high qubit; the low digit is read out as the first outcome. */
HybridProtocol partial_fission_protocol();

StateVector teleport_fusion(const StateVector &in, std::optional<StateVector> &resource,
                            Rng &rng);
StateVector teleport_fission(const StateVector &in, std::optional<StateVector> &resource,
                             Rng &rng);

struct IdentityCheck {
  std::string name;
  bool passed = false;
  double error = 0.0;
  std::string detail;
};

std::vector<IdentityCheck> fusion_identity_suite(unsigned seed = 1);

struct OverlapReport {
  int D = 0;
  int stacked = 0;      // generators of the two stacked qubit codes
  int shared = 0;       // of those, equal to the image of a qudit stabilizer
  int commuting = 0;    // of those, commuting with every qudit generator image
  std::vector<std::string> rows;
};

/**
 * Compares the d=4 square code under the fusion map with two stacked d=2
 * square codes on the low and high qubits.
 */
OverlapReport generator_overlap_report(int D = 2, unsigned seed = 1);

}  // namespace foldqec
