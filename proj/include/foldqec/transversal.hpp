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

namespace foldqec {

/** Generators and logical pairs of one or more stacked codes. */
struct CodeSpace {
  int n = 0;
  int d = 2;
  std::vector<PauliWord> generators;
  std::vector<PauliWord> logical_x;
  std::vector<PauliWord> logical_z;

  static CodeSpace of(const StabilizerCode &c);
  static CodeSpace stack(const StabilizerCode &a, const StabilizerCode &b);
};

/** Image w^{p/2} prod_i Xbar_i^{a_i} Zbar_i^{b_i} modulo the stabilizer. */
struct LogicalImage {
  std::vector<int> a;
  std::vector<int> b;
  int phase = 0;
  bool operator==(const LogicalImage &) const = default;
};

struct LogicalAction {
  bool valid = false;
  std::string message;
  int witness_generator = -1;
  std::vector<LogicalImage> x_images;
  std::vector<LogicalImage> z_images;
};

/** Gate powers keyed by pair type; used to fix the dagger placement. */
struct TransversalConvention {
  int fold_dark = 1;
  int fold_light = -1;
  int top_dark = 1;
  int top_light = -1;
  int bottom_dark = 1;
  int bottom_light = -1;
};

TransversalConvention h_convention();
TransversalConvention s_convention();

ScheduledCircuit logical_H(const FoldLayout &layout, int d,
                           const TransversalConvention &c = h_convention());
ScheduledCircuit logical_S(const FoldLayout &layout, int d,
                           const TransversalConvention &c = s_convention());
ScheduledCircuit transversal_CX(const StabilizerCode &ctrl, const StabilizerCode &tgt);

/** Star-transversal gates on the Steane code and on a pair of Steane codes. */
ScheduledCircuit steane_H(int d);
ScheduledCircuit steane_S(int d);
ScheduledCircuit steane_M(int d);
ScheduledCircuit steane_CZ(int d);

/** Naive strongly transversal single-qudit gate on every qudit. */
ScheduledCircuit strongly_transversal(GateKind k, int n, int d);

/** Decompose `image` as w^{p/2} Xbar^a Zbar^b s with s in the stabilizer. */
bool decompose_logical(const CodeSpace &space, const PauliWord &image, LogicalImage &out);

LogicalAction verify_logical_clifford(const ScheduledCircuit &c, const CodeSpace &space);
LogicalAction verify_logical_clifford(const ScheduledCircuit &c, const StabilizerCode &code);

/** Two-qudit subsystems touched by each gate never mix distinct subsystems. */
bool respects_subsystems(const ScheduledCircuit &c, const FoldLayout &layout);

LogicalImage logical_image(int k, std::vector<int> a, std::vector<int> b, int phase);

struct GateCheck {
  std::string gate;
  // False for controls that are expected to fail verification.
  bool expect_valid = true;
  bool passed = false;
  LogicalAction action;
};

/**
 * Logical gate checks for a code: folded H and S plus a naive strongly
 * transversal S control for the square and cone families; star-transversal
 * H, S, M and CZ for the Steane code.
 */
std::vector<GateCheck> verify_code_gates(const StabilizerCode &code);

}  // namespace foldqec
