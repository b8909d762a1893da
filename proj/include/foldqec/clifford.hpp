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

#include <stdexcept>
#include <vector>

#include "foldqec/circuit.hpp"
#include "foldqec/pauli.hpp"

namespace foldqec {

class UnsupportedGate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/** g P g^dagger. */
PauliWord conjugate(const GateApplication &g, const PauliWord &P);

/** Images of every X_i and Z_i under a Clifford unitary. */
class CliffordMap {
 public:
  CliffordMap() = default;
  explicit CliffordMap(std::vector<int> dims);
  static CliffordMap identity(int n, int d) {
    return CliffordMap(std::vector<int>(n, d));
  }

  int n() const { return static_cast<int>(dims_.size()); }
  const std::vector<int> &dims() const { return dims_; }
  const PauliWord &image_x(int i) const { return img_x_[i]; }
  const PauliWord &image_z(int i) const { return img_z_[i]; }

  PauliWord apply(const PauliWord &P) const;
  // Map of (this after first).
  CliffordMap after(const CliffordMap &first) const;
  void then(const GateApplication &g);
  bool is_identity() const;
  bool operator==(const CliffordMap &o) const = default;

 private:
  std::vector<int> dims_;
  std::vector<PauliWord> img_x_;
  std::vector<PauliWord> img_z_;
};

/** Composition of all gates in time order; rejects non-Clifford events. */
CliffordMap clifford_of_circuit(const ScheduledCircuit &c);

}  // namespace foldqec
