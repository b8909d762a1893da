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

#include <string>
#include <vector>

#include "foldqec/circuit.hpp"
#include "foldqec/code.hpp"
#include "foldqec/pauli.hpp"

namespace foldqec {

/** CX orders for X-type and Z-type ancillas as compass letters. */
struct SyndromeOrders {
  std::string x = "NWES";
  std::string z = "NEWS";
};

SyndromeOrders standard_orders();
// X and Z orders exchanged; aligns hooks with the logical strings.
SyndromeOrders adversarial_orders();

enum class Parity { Forward, Reversed };

struct SyndromeCircuit {
  ScheduledCircuit circuit;
  // Site of code qudit q at the start and at the end of the circuit.
  std::vector<int> data_site;
  std::vector<int> data_site_end;
  // Ancilla site per generator when prepared and when measured.
  std::vector<int> ancilla_prep;
  std::vector<int> ancilla_site;
  // Layer of the pairwise swap, or -1.
  int swap_layer = -1;
  // Layer index of each generator's CX events, in time order.
  std::vector<std::vector<int>> cx_layers;
  // Layers holding the ancilla-ancilla corrections on the fold, if any.
  std::vector<int> correction_layers;
};

SyndromeCircuit syndrome_circuit_unfolded(const StabilizerCode &code,
                                          const SyndromeOrders &orders = standard_orders());

/**
 * Syndrome circuit for a folded code on 2-slot clusters. One pairwise swap
 * layer exchanges the data layers; overlapping X/Z pairs on the fold get an
 * ancilla-ancilla CX correction unless `fold_correction` is false. Reversed
 * parity starts from the exchanged layers and runs the CX layers backwards.
 */
SyndromeCircuit syndrome_circuit_folded(const StabilizerCode &code, const FoldLayout &layout,
                                        Parity parity = Parity::Forward,
                                        bool fold_correction = true,
                                        const SyndromeOrders &orders = standard_orders());

/** Swaps moving an unfolded square code onto its folded cluster layout. */
struct SwapSchedule {
  int D = 0;
  // Physical coordinates of every site of the 2-slot cluster grid.
  std::vector<std::array<int, 2>> sites;
  std::vector<std::vector<std::pair<int, int>>> steps;
  // Site of each code qudit before and after folding.
  std::vector<int> start;
  std::vector<int> target;

  int depth() const { return static_cast<int>(steps.size()); }
  // Site of each code qudit after `step` steps.
  std::vector<int> placement(int step) const;
  // Sites visited by code qudit q, one entry per step plus the start.
  std::vector<int> path(int q) const;
};

SwapSchedule fold_schedule(int D);

/**
 * Interleaved folding: cut points (step counts) after which a round of error
 * correction runs, so that no qudit swaps more than `per_round` times
 * between rounds. The last entry is the schedule depth.
 */
std::vector<int> fold_rounds(const SwapSchedule &s, int per_round = 3);

/** Empty if steps are disjoint, local, and end on the folded layout. */
std::string check_fold_schedule(const SwapSchedule &s);

/**
 * Measured operator of the ancilla on `site`: its final measurement basis
 * conjugated back to the start, with prepared-site factors removed.
 */
PauliWord measured_operator(const ScheduledCircuit &c, int site);

/** Measured operator of generator g expressed on the code qudits. */
PauliWord measured_generator(const SyndromeCircuit &s, int g, int n_code);

/** Empty if every ancilla measures exactly its generator; else a witness. */
std::string check_measured_operators(const SyndromeCircuit &s, const StabilizerCode &code);

/** Propagate a register Pauli inserted after layer `after` to the end. */
PauliWord propagate_fault(const ScheduledCircuit &c, int after, const PauliWord &fault);

struct HookEvent {
  int generator = -1;
  std::string fault;
  std::vector<int> support;
  bool parallel = false;
};

struct HookReport {
  int ancillas_checked = 0;
  int parallel_hooks = 0;
  int max_weight = 0;
  // Some ancilla had fewer than three CX events.
  bool partial = false;
  std::vector<HookEvent> events;
};

/**
 * Injects every single-qudit Pauli on each ancilla between its second and
 * third CX and classifies weight-2 data errors against the logical strings.
 */
HookReport hook_error_analysis(const SyndromeCircuit &s, const StabilizerCode &code);

struct Conversion {
  StabilizerCode diamond;
  StabilizerCode cone;
  std::vector<int> embed;  // cone index of each diamond qudit
  std::vector<int> fresh;   // cone qudits prepared from scratch
  std::string fresh_basis;  // 'X' for |+>, 'Z' for |0>, per fresh qudit
  ScheduledCircuit prep;
  // New generating set of the cone's group: a basis of the part shared with
  // the prepared state (deterministic), then the remaining cone generators.
  std::vector<PauliWord> generators;
  std::vector<char> deterministic;
  std::vector<int> outcome;  // forced outcome where deterministic
};

/**
 * Switch a diamond into the compatible cone: prepare the extra qudits in
 * |+> and measure the cone generators. Throws for the minimal cone.
 */
Conversion conversion_diamond_to_cone(int D, int d, ConeVariant v = ConeVariant::Compatible);

/** Preparation bases found by local search on the effective distance. */
std::string conversion_best_basis(int D, int d);

/** Same, with the preparation basis of each fresh qudit given explicitly. */
Conversion conversion_diamond_to_cone(int D, int d, const std::string &fresh_basis);

/** Code on the cone qudits stabilizing the state right after preparation. */
StabilizerCode conversion_start_code(const Conversion &c);

/**
 * Minimum weight of an error that no deterministic generator detects and
 * that acts outside the group generated by both codes.
 */
int conversion_effective_distance(const Conversion &c);

}  // namespace foldqec
